import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zpcobordism.fgl import exponential, k_series, logarithm
from zpcobordism.graded import GradedElement, Partition
from zpcobordism.series import (
    BiSeries,
    SeriesError,
    USeries,
    coefficient_of_u,
    divide_by_u,
    ps_compose,
    ps_inverse,
    ps_multiply,
    ps_reciprocal,
    render_series,
)

b1, b2 = GradedElement.generator(1), GradedElement.generator(2)


def test_products():
    u = USeries.variable(6)
    assert ps_multiply(u, u) == USeries({2: 1}, 6, weight=2)
    f = USeries({0: 1, 1: b1.scale(2)}, 4, weight=0)
    g = USeries({0: 1, 1: b1}, 4, weight=0)
    assert ps_multiply(f, g) == USeries({0: 1, 1: b1.scale(3), 2: (b1 * b1).scale(2)}, 4, weight=0)


def test_reciprocal():
    f = USeries({0: 1, 1: b1.scale(-2)}, 5, weight=0)
    r = ps_reciprocal(f)
    assert [r.coefficient(k) for k in range(4)] == [GradedElement.scalar(1), b1.scale(2), (b1 * b1).scale(4), (b1 ** 3).scale(8)]
    assert ps_multiply(f, r) == USeries.one(5)
    assert ps_reciprocal(USeries({0: 3}, 3, weight=0)).coefficient(0) == GradedElement.scalar(Fraction(1, 3))
    p3 = divide_by_u(k_series(3, 6)).scale(Fraction(1, 3))
    assert ps_reciprocal(p3).coefficient(1) == b1.scale(2)


def test_composition_example():
    f = USeries({2: 1}, 6, weight=2)
    with pytest.raises(SeriesError):
        USeries({1: 1, 2: 1}, 6, weight=1)
    # u^2 composed with u + b1 u^2: the graded form of u^2 + 2u^3 + u^4
    got = ps_compose(f, USeries({1: 1, 2: b1}, 6))
    assert got == USeries({2: 1, 3: b1.scale(2), 4: b1 * b1}, 6, weight=2)


def test_grading_law_enforced():
    with pytest.raises(SeriesError):
        USeries({2: 1}, 4, weight=1)
    with pytest.raises(SeriesError):
        USeries({2: b2}, 4, weight=1)
    with pytest.raises(SeriesError):
        BiSeries({(1, 1): 1}, 4, weight=1)


def test_inverse_examples():
    f = USeries({1: 1, 2: b1, 3: b2}, 5)
    inv = ps_inverse(f)
    assert inv.coefficient(2) == -b1
    assert inv.coefficient(3) == (b1 * b1).scale(2) - b2
    assert ps_inverse(USeries({1: 2}, 5)) == USeries({1: Fraction(1, 2)}, 5)
    assert ps_inverse(inv) == f
    assert ps_compose(logarithm(10), exponential(10)) == USeries.variable(10)


def test_coefficient_extraction():
    f = USeries({1: 1, 3: b2.scale(5)}, 4)
    assert coefficient_of_u(f, 3) == b2.scale(5)
    assert coefficient_of_u(k_series(3, 4), 2) == b1.scale(-6)
    with pytest.raises(SeriesError):
        coefficient_of_u(f, 5)


def test_errors():
    with pytest.raises(SeriesError):
        ps_inverse(USeries({2: b1}, 4))
    with pytest.raises(SeriesError):
        ps_reciprocal(USeries({1: 1}, 4))
    with pytest.raises(SeriesError):
        ps_compose(logarithm(4), USeries.one(4))
    with pytest.raises(SeriesError):
        USeries.variable(40)


def test_render():
    assert render_series(k_series(3, 2)) == "3*u + [-6*b[1]]*u^2 + O(u^3)"


def _scalar_like(rng, T):
    # scalar coefficients c_j carried by b_1^(j-1) so the grading law holds
    coeffs = {1: rng.choice([1, -1, 2, Fraction(1, 2)])}
    for j in range(2, T + 1):
        c = rng.randint(-3, 3)
        if c:
            coeffs[j] = (b1 ** (j - 1)).scale(c)
    return USeries(coeffs, T)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_composition_is_associative(seed):
    rng = random.Random(seed)
    f, g, h = (_scalar_like(rng, 8) for _ in range(3))
    assert ps_compose(f, ps_compose(g, h)) == ps_compose(ps_compose(f, g), h)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_inverse_is_an_involution(seed):
    f = _scalar_like(random.Random(seed), 7)
    inv = ps_inverse(f)
    assert ps_compose(f, inv) == USeries.variable(7)
    assert ps_inverse(inv) == f


def test_bivariate_basics():
    u = BiSeries.from_u(USeries.variable(4))
    v = BiSeries.from_v(USeries.variable(4))
    uv = u * v
    assert uv.coefficient(1, 1) == GradedElement.scalar(1)
    assert (u + v - u).coefficient(0, 1) == GradedElement.scalar(1)
    with pytest.raises(SeriesError):
        uv.coefficient(3, 3)
