"""Built-in verification suites (``verify --suite NAME``).

Each suite returns a :class:`SuiteResult`; a suite passes when it has no
failures. Randomised suites are deterministic given the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .arith import check_odd_prime, format_rational, is_p_integral, p_valuation
from .bases import GeneratorBasis, alpha_basis, primitive_prime_root, s_numbers
from .conner_floyd import (
    WeightList,
    builtin_action,
    congruent_mod_p_omega,
    gamma_p,
    random_valid_action,
    realize_class,
)
from .fgl import alpha_coeff, cp_class, exponential, k_series, logarithm
from .graded import GradedElement, Partition, classify_partition, is_p_power_minus_one, partitions_of, render
from .obstruction import (
    Classification,
    classify,
    divisibility_claim,
    in_strict_ideal,
    realizable_via_charnum,
    realizable_via_ideal,
    strictly_simple_realizable,
)
from .series import DEFAULT_TRUNC, USeries, ps_compose

SUITES = (
    "roundtrip",
    "power-system",
    "theorem-form",
    "divisibility-claim",
    "charnum-equivalence",
    "smdim",
    "fixed-points",
    "strict-simple",
)


@dataclass
class SuiteResult:
    suite: str
    p: int
    trunc: int
    seed: int
    cases: int = 0
    failures: List[dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, case: str, ok: bool, expected=None, actual=None):
        self.cases += 1
        if not ok:
            self.failures.append({"case": case, "expected": _show(expected), "actual": _show(actual)})

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "p": self.p,
            "trunc": self.trunc,
            "seed": self.seed,
            "passed": self.passed,
            "cases": self.cases,
            "failures": self.failures,
            "notes": self.notes,
        }


def _show(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, GradedElement):
        return render(x)
    return str(x)


# -- random classes ------------------------------------------------------------

def random_p_unit(rng: random.Random, p: int, bound: int = 12) -> int:
    while True:
        d = rng.randint(1, bound)
        if d % p:
            return d


def random_p_integral_class(
    rng: random.Random, p: int, n: int, basis: GeneratorBasis, ideal: Optional[bool] = None
) -> GradedElement:
    """Random element of degree n in Omega_U tensor Z_(p), built over the basis.

    With ``ideal=True`` every filler-only coefficient is a multiple of p;
    with ``ideal=False`` at least one of them (if any exist) is a p-unit.
    """
    if n == 0:
        return GradedElement.scalar(Fraction(rng.randint(-20, 20), random_p_unit(rng, p)))
    coeffs: Dict[Partition, Fraction] = {}
    special = []
    for w in partitions_of(n):
        kind = classify_partition(w, p)
        if kind.divisible_by_p_minus_1 and kind.non_p_adic:
            special.append(w)
        if rng.random() < 0.6:
            coeffs[w] = Fraction(rng.randint(-3 * p, 3 * p), random_p_unit(rng, p))
    if ideal is not None:
        for w in special:
            if ideal:
                coeffs[w] = Fraction(p * rng.randint(-3, 3), random_p_unit(rng, p))
        if ideal is False and special:
            w = rng.choice(special)
            coeffs[w] = Fraction(rng.choice([x for x in range(-p + 1, p) if x % p]), random_p_unit(rng, p))
    return basis.combine(coeffs, n)


def alpha_monomials(basis: GeneratorBasis, n: int):
    for w in partitions_of(n):
        yield w, basis.monomial(w)


# -- suites ------------------------------------------------------------------------

def suite_roundtrip(p: int, T: int, seed: int) -> SuiteResult:
    res = SuiteResult("roundtrip", p, T, seed)
    g, e, u = logarithm(T), exponential(T), USeries.variable(T)
    res.check("g(e(u)) = u", ps_compose(g, e) == u, u, ps_compose(g, e))
    res.check("e(g(u)) = u", ps_compose(e, g) == u, u, ps_compose(e, g))
    return res


def suite_power_system(p: int, T: int, seed: int, T_compose: int = 10) -> SuiteResult:
    res = SuiteResult("power-system", p, T, seed)
    tc = min(T, T_compose)
    primes = (2, 3, 5, 7)
    for a in primes:
        for b in primes:
            ab = ps_compose(k_series(b, tc), k_series(a, tc))
            res.check(f"[[u]_{a}]_{b} = [u]_{a * b}", ab == k_series(a * b, tc), str(k_series(a * b, tc)), str(ab))
            ba = ps_compose(k_series(a, tc), k_series(b, tc))
            res.check(f"[[u]_{a}]_{b} = [[u]_{b}]_{a}", ab == ba, str(ba), str(ab))
    g = logarithm(T)
    for k in range(-7, 8):
        if k == 0:
            continue
        lhs = ps_compose(g, k_series(k, T))
        res.check(f"g([u]_{k}) = {k} g(u)", lhs == g.scale(k), str(g.scale(k)), str(lhs))
    return res


def suite_theorem_form(p: int, T: int, seed: int, max_degree: int = 10) -> SuiteResult:
    res = SuiteResult("theorem-form", p, T, seed)
    basis = alpha_basis(p, T - 1, T)
    top = min(max_degree, T - 1)
    for q in range(2, 8):
        for n in range(1, top + 1):
            x = alpha_coeff(q, n, T)
            coeffs = basis.expand(x)
            bad = {w: r for w, r in coeffs.items() if not is_p_integral(r, p)}
            res.check(f"alpha_{n}^({q}) p-integral over the alpha basis", not bad, "all p-integral",
                      {str(list(w)): format_rational(r) for w, r in bad.items()} or None)
            lead = x.leading_b_coefficient()
            res.check(f"lead(alpha_{n}^({q})) = {q} - {q}^{n + 1}", lead == q - q ** (n + 1), q - q ** (n + 1), lead)
            report = classify(x, p, T)
            res.check(f"alpha_{n}^({q}) is realizable", report.realizable,
                      Classification.REALIZABLE.value, report.classification.value)
    return res


def suite_divisibility_claim(p: int, T: int, seed: int, max_l: int = 12) -> SuiteResult:
    T = max(T, max_l + 1)
    res = SuiteResult("divisibility-claim", p, T, seed)
    failing = []
    for l in range(1, max_l + 1):
        if is_p_power_minus_one(l, p):
            continue
        verdict = divisibility_claim(p, l, T)
        if not verdict.holds:
            failing.append(l)
        worst = min((w.valuation for w in verdict.witnesses), default=None)
        res.check(f"alpha_{l}^({p})/{p} in Omega_U(p)", verdict.holds, "p-integral",
                  None if verdict.holds else f"{len(verdict.witnesses)} coefficients with valuation down to {worst}")
    series = k_series(p, T)
    for j in range(2, T + 1):
        c = series.coefficient(j)
        ok = all(x.denominator == 1 and x.numerator % p == 0 for _, x in c.terms())
        res.check(f"b-coefficients of u^{j} in [u]_{p} divisible by {p}", ok, "divisible", render(c))
    if failing:
        forced = [l for l in failing if (l + 1) % p == 0]
        res.notes.append(
            f"claim fails for l in {failing}; all have p | l+1: {forced == failing}"
        )
    return res


def suite_charnum_equivalence(p: int, T: int, seed: int, samples: int = 100, max_degree: int = 10) -> SuiteResult:
    res = SuiteResult("charnum-equivalence", p, T, seed)
    rng = random.Random(seed)
    basis = alpha_basis(p, T - 1, T)
    top = min(max_degree, T - 1)

    def compare(label, sigma):
        ideal = realizable_via_ideal(sigma, p, T).holds
        charnum = realizable_via_charnum(sigma, p, T).holds
        res.check(label, ideal == charnum, f"ideal={ideal}", f"charnum={charnum}")

    for n in range(1, top + 1):
        for w, x in alpha_monomials(basis, n):
            compare(f"alpha-monomial {list(w)}", x)
        for i in range(samples):
            mode = (None, True, False)[i % 3]
            compare(f"random degree {n} #{i}", random_p_integral_class(rng, p, n, basis, ideal=mode))
    return res


def suite_smdim(p: int, T: int, seed: int, samples: int = 100) -> SuiteResult:
    res = SuiteResult("smdim", p, T, seed)
    rng = random.Random(seed)
    top = 2 * p - 3
    if top > T - 1:
        res.notes.append(f"degrees {T}..{top} need a larger truncation; checked up to {T - 1}")
        top = T - 1
    basis = alpha_basis(p, T - 1, T)
    for n in range(1, top + 1):
        items = [(f"alpha-monomial {list(w)}", x) for w, x in alpha_monomials(basis, n)]
        items += [(f"random degree {n} #{i}", random_p_integral_class(rng, p, n, basis)) for i in range(samples)]
        for label, x in items:
            c = classify(x, p, T).classification
            res.check(label, c is Classification.REALIZABLE, Classification.REALIZABLE.value, c.value)
    return res


def suite_fixed_points(p: int, T: int, seed: int, samples: int = 30, max_degree: int = 8) -> SuiteResult:
    res = SuiteResult("fixed-points", p, T, seed)
    rng = random.Random(seed)
    if p == 3:
        g1, g2 = gamma_p(WeightList.of(3, [1]), T), gamma_p(WeightList.of(3, [2]), T)
        res.check("gamma_3(1) = 2*b[1]", g1 == cp_class(1), "2*b[1]", g1)
        res.check("gamma_3(2) = (3/2)*b[1]", g2 == GradedElement.generator(1).scale(Fraction(3, 2)), "(3/2)*b[1]", g2)
    full = WeightList(p, tuple(range(1, p)))
    lhs = gamma_p(full, T).scale(p)
    res.check(f"[CP^{p - 1}] = p*gamma_p(1..{p - 1}) mod p",
              congruent_mod_p_omega(cp_class(p - 1), lhs, p, T), render(cp_class(p - 1)), lhs)
    target = cp_class(p - 1) * cp_class(1)
    for name in ("cp_p_minus_1", "cp1", "product_first", "product_second"):
        data = builtin_action(name, p)
        got = realize_class(data, T)
        expected = {"cp_p_minus_1": cp_class(p - 1), "cp1": cp_class(1)}.get(name, target)
        res.check(f"realize({name}) congruent to its manifold", congruent_mod_p_omega(got, expected, p, T), expected, got)
        res.check(f"realize({name}) realizable", classify(got, p, T).realizable, True, False)
    top = min(max_degree, T - 1)
    for i in range(samples):
        dim = rng.randint(1, top)
        data, cls = random_valid_action(rng, p, dim)
        got = realize_class(data, T)
        res.check(f"random action #{i} (dim {dim}) congruent", congruent_mod_p_omega(got, cls, p, T), cls, got)
        res.check(f"random action #{i} (dim {dim}) realizable", classify(got, p, T).realizable, True, False)
    return res


def suite_strict_simple(p: int, T: int, seed: int, samples: int = 20, max_degree: int = 10) -> SuiteResult:
    res = SuiteResult("strict-simple", p, T, seed)
    rng = random.Random(seed)
    basis = alpha_basis(p, T - 1, T)
    top = min(max_degree, T - 1)
    x = alpha_coeff(2, 1, T)
    res.check("alpha_1^(2) not strictly simple", not strictly_simple_realizable(x, p, T).holds, False, True)
    res.check("alpha_1^(2) simple", classify(x, p, T).realizable, True, False)
    gens = [(0, GradedElement.scalar(p))]
    k = 1
    while p ** k - 1 <= top:
        gens.append((p ** k - 1, alpha_coeff(p, p ** k - 1, T)))
        k += 1
    for i in range(samples):
        n = rng.randint(1, top)
        sigma = GradedElement.zero(n)
        for d, g in gens:
            if d <= n:
                sigma = sigma + g * random_p_integral_class(rng, p, n - d, basis)
        if sigma.is_zero():
            continue
        bad = [w for w, s in s_numbers(sigma, T).items() if p_valuation(s, p) < 1]
        res.check(f"strict-ideal element #{i} (degree {n}) has all s = 0 mod p", not bad, [], [list(w) for w in bad])
    for i in range(samples):
        n = rng.randint(1, top)
        sigma = random_p_integral_class(rng, p, n, basis)
        strict = strictly_simple_realizable(sigma, p, T).holds
        res.check(f"random #{i}: strict test = strict ideal membership", strict == in_strict_ideal(sigma, p, T).holds,
                  strict, not strict)
        if strict:
            res.check(f"random #{i}: strictly simple implies simple", classify(sigma, p, T).realizable, True, False)
    return res


SUITE_FUNCTIONS: Dict[str, Callable[..., SuiteResult]] = {
    "roundtrip": suite_roundtrip,
    "power-system": suite_power_system,
    "theorem-form": suite_theorem_form,
    "divisibility-claim": suite_divisibility_claim,
    "charnum-equivalence": suite_charnum_equivalence,
    "smdim": suite_smdim,
    "fixed-points": suite_fixed_points,
    "strict-simple": suite_strict_simple,
}


def run_suite(name: str, p: int, T: int = DEFAULT_TRUNC, seed: int = 0, **options) -> SuiteResult:
    check_odd_prime(p)
    if name not in SUITE_FUNCTIONS:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    return SUITE_FUNCTIONS[name](p, T, seed, **options)
