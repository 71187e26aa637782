import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zpcobordism.graded import (
    GradedElement,
    Partition,
    classify_partition,
    is_p_power_minus_one,
    multiply,
    partitions_of,
    render,
    terms_to_json,
)

import oracles

b1, b2, b3 = (GradedElement.generator(n) for n in (1, 2, 3))


def test_partitions_of_four_in_canonical_order():
    assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert partitions_of(0) == ((),)
    assert len(partitions_of(7)) == 15


@pytest.mark.parametrize("n", range(0, 19))
def test_partitions_match_brute_force(n):
    got = partitions_of(n)
    assert len(set(got)) == len(got)
    assert set(got) == oracles.brute_partitions(n)


def test_partition_counts_up_to_twenty():
    assert [len(partitions_of(n)) for n in range(21)] == [oracles.partition_count(n) for n in range(21)]


def test_partition_normalizes_and_validates():
    assert Partition([1, 3, 2]) == (3, 2, 1)
    assert Partition([2, 2, 1]).multiplicities() == {2: 2, 1: 1}
    for bad in ([0], [-1], [1.5]):
        with pytest.raises(ValueError):
            Partition(bad)


def test_classify_partition_examples():
    assert classify_partition(Partition([4, 4]), 3) == (True, True)
    assert classify_partition(Partition([2, 2]), 3) == (True, False)
    assert classify_partition(Partition([3, 1]), 3) == (False, True)
    assert [k for k in range(1, 30) if is_p_power_minus_one(k, 3)] == [2, 8, 26]


@given(st.lists(st.integers(1, 12), max_size=6), st.sampled_from([3, 5, 7]))
def test_divisible_partitions_have_divisible_weight(parts, p):
    w = Partition(parts)
    if classify_partition(w, p).divisible_by_p_minus_1:
        assert w.weight % (p - 1) == 0


def test_multiplication_examples():
    sq = b1 * b1
    assert list(sq.terms()) == [((1, 1), 1)]
    assert (b1.scale(2) * b2.scale(3)) == GradedElement.monomial(Partition([2, 1]), 6)
    z = GradedElement.zero(3) * b2
    assert z.is_zero() and z.degree == 5


def test_coefficient_access():
    x = b1 * b1 * 36 - b2 * 24
    assert x.coefficient_of(Partition([1, 1])) == 36
    assert x.leading_b_coefficient() == -24
    assert b3.coefficient_of(Partition([2, 1])) == 0
    assert render(x) == "-24*b[2] + 36*b[1]^2"
    assert render(b1.scale(Fraction(3, 2))) == "(3/2)*b[1]"
    assert render(GradedElement.zero(2)) == "0"
    assert terms_to_json(x) == [{"partition": [2], "coefficient": "-24"}, {"partition": [1, 1], "coefficient": "36"}]


def test_degree_mismatch_is_an_error():
    with pytest.raises(ValueError):
        b1 + b2
    assert GradedElement.zero(1) != GradedElement.zero(2)


def random_element(rng, degree):
    x = GradedElement.zero(degree)
    for w in partitions_of(degree):
        if rng.random() < 0.5:
            x = x + GradedElement.monomial(w, Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
    return x


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_ring_axioms(seed, da, db, dc):
    rng = random.Random(seed)
    a, b, c = random_element(rng, da), random_element(rng, db), random_element(rng, dc)
    assert multiply(a, b) == multiply(b, a)
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
    assert (a * b).degree == da + db
    if db == dc:
        assert a * (b + c) == a * b + a * c
