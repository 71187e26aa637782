import pytest

from zpcobordism.suites import SUITES, run_suite

GREEN = [s for s in SUITES if s != "divisibility-claim"]


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("name", GREEN)
def test_suites_pass(name, p):
    result = run_suite(name, p, 12, seed=1)
    assert result.passed, result.failures[:3]
    assert result.cases > 0


@pytest.mark.parametrize("p, failing", [(3, [5, 11]), (5, [9])])
def test_divisibility_suite_reports_findings(p, failing):
    result = run_suite("divisibility-claim", p)
    assert not result.passed
    assert sorted(int(f["case"].split("^")[0].split("_")[1]) for f in result.failures) == failing
    assert all((l + 1) % p == 0 for l in failing)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", 3)
