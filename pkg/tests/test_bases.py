import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zpcobordism.arith import is_p_integral, p_valuation
from zpcobordism.bases import (
    ALPHA_P,
    ALPHA_P1,
    FILLER,
    BasisError,
    alpha_basis,
    b_basis,
    beta_basis,
    exact_determinant,
    expand_in_basis,
    lattice_index_valuation,
    primitive_prime_root,
    s_numbers,
)
from zpcobordism.fgl import alpha_coeff, beta, cp_class
from zpcobordism.graded import GradedElement, Partition, partitions_of
from zpcobordism.series import SeriesError

import oracles

b1 = GradedElement.generator(1)


def test_primitive_prime_roots():
    assert [primitive_prime_root(p) for p in (3, 5, 7, 11, 13)] == [2, 2, 3, 2, 2]


def test_basis_examples():
    basis3 = alpha_basis(3, 4, 12)
    assert basis3.generator(1) == b1.scale(-2)
    assert basis3.generator(2) == alpha_coeff(3, 2)
    assert [basis3.provenance[i] for i in (1, 2, 3, 4)] == [ALPHA_P1, ALPHA_P, ALPHA_P1, FILLER]
    basis5 = alpha_basis(5, 4, 12)
    assert basis5.generator(4) == alpha_coeff(5, 4)
    assert p_valuation(basis5.leading(4), 5) == 1 == p_valuation(5 - 5 ** 5, 5)


def test_fillers_are_manifolds_with_unit_leading_coefficient():
    for p in (3, 5, 7):
        basis = alpha_basis(p)
        for n, label in basis.filler_sources.items():
            assert basis.provenance[n] == FILLER
            assert p_valuation(basis.leading(n), p) == 0
    assert alpha_basis(3).filler_sources == {4: "CP[4]", 6: "CP[6]", 10: "CP[10]"}


@pytest.mark.parametrize("p", [3, 5, 7])
def test_triangularity(p):
    basis = alpha_basis(p)
    for i in range(1, basis.N + 1):
        g = basis.generator(i)
        assert (g - GradedElement.generator(i).scale(g.leading_b_coefficient())).is_decomposable()


def test_expansion_examples():
    basis = alpha_basis(3)
    assert basis.expand(basis.generator(2)) == {Partition([2]): 1}
    assert expand_in_basis(b1 * b1, basis) == {Partition([1, 1]): Fraction(1, 4)}
    with pytest.raises(BasisError):
        alpha_basis(3, 4, 12).expand(GradedElement.generator(5))


@pytest.mark.parametrize("p", [3, 5])
def test_expansion_matches_dense_solve(p):
    basis = alpha_basis(p)
    rng = random.Random(p)
    for n in range(1, 8):
        sigma = GradedElement.zero(n)
        for w in partitions_of(n):
            sigma = sigma + GradedElement.monomial(w, rng.randint(-5, 5))
        dense = oracles.dense_expansion(sigma, {i: basis.generator(i) for i in range(1, n + 1)}, partitions_of(n))
        got = basis.expand(sigma)
        assert {w: c for w, c in dense.items() if c} == got


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 8), st.sampled_from([3, 5]))
def test_expand_combine_roundtrip(seed, n, p):
    rng = random.Random(seed)
    sigma = GradedElement.zero(n)
    for w in partitions_of(n):
        if rng.random() < 0.6:
            sigma = sigma + GradedElement.monomial(w, Fraction(rng.randint(-20, 20), rng.randint(1, 6)))
    basis = alpha_basis(p)
    assert basis.combine(basis.expand(sigma), n) == sigma


def test_s_number_examples():
    assert s_numbers(cp_class(1))[Partition([1])] == -2
    s = s_numbers(alpha_coeff(3, 2))
    assert s == {Partition([2]): 24, Partition([1, 1]): -12}
    for n in range(1, 9):
        assert s_numbers(cp_class(n))[Partition([n])] == -(n + 1)
    assert list(s_numbers(cp_class(4)).values()) == [-5, 30, 15, -105, 70]


def test_s_numbers_match_dense_beta_solve():
    gens = {i: beta(i) for i in range(1, 8)}
    for n in range(1, 8):
        sigma = cp_class(n) + (cp_class(1) ** n).scale(3) if n > 1 else cp_class(1)
        dense = oracles.dense_expansion(sigma, gens, partitions_of(n))
        assert dense == s_numbers(sigma)


@pytest.mark.parametrize("n", range(1, 13))
def test_beta_and_b_lattices_agree(n):
    assert abs(exact_determinant(beta_basis(13).change_matrix(n))) == 1
    assert exact_determinant(b_basis(12).change_matrix(n)) == 1


def test_integral_classes_have_integral_s_numbers():
    for n in range(1, 9):
        x = cp_class(n) - (cp_class(1) * cp_class(n - 1) if n > 1 else GradedElement.zero(1))
        assert all(v.denominator == 1 for v in s_numbers(x).values())


@pytest.mark.parametrize("p, n", [(3, n) for n in range(1, 9)] + [(5, n) for n in range(1, 9)])
def test_lattice_index_matches_count(p, n):
    assert lattice_index_valuation(alpha_basis(p), n) == oracles.special_part_count(n, p)


def test_lattice_count_examples():
    assert [oracles.special_part_count(n, 3) for n in (2, 4)] == [1, 3]
    assert oracles.special_part_count(3, 5) == 0


@pytest.mark.parametrize("p", [3, 5])
def test_power_coefficients_are_p_integral_over_the_basis(p):
    basis = alpha_basis(p)
    for q in range(2, 8):
        for n in range(1, 11):
            assert all(is_p_integral(r, p) for r in basis.expand(alpha_coeff(q, n)).values()), (q, n)


def test_bounds():
    with pytest.raises(SeriesError):
        alpha_basis(3, 12, 12)
    with pytest.raises(SeriesError):
        s_numbers(cp_class(12), 12)
    with pytest.raises(BasisError):
        alpha_basis(3).generator(20)
