import pytest

_results = {}
_titles = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(ident, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    ident, title = marker.args
    _titles[ident] = title
    if report.when == "call" or report.failed:
        _results.setdefault(ident, []).append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for ident in sorted(_results, key=lambda s: int(s.split("-")[1])):
        runs = _results[ident]
        failed = [name for name, ok in runs if not ok]
        verdict = "FAIL" if failed else "PASS"
        line = f"{ident} {verdict}: {_titles[ident]} ({len(runs) - len(failed)}/{len(runs)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
