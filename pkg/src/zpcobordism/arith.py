"""Exact rationals with p-local predicates.

Scalars are plain :class:`fractions.Fraction` values; this module only adds
the p-adic valuation, integrality and residue helpers the rest of the
package needs.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class ParameterError(ValueError):
    """An argument outside the documented domain (e.g. an even or composite p)."""


@functools.total_ordering
class _Infinity:
    """Valuation of zero.

    Compares above every integer but deliberately supports no arithmetic.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("zpcobordism.INFINITY")

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__


INFINITY = _Infinity()


@functools.lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p) -> int:
    if isinstance(p, bool) or not isinstance(p, int):
        raise ParameterError(f"p must be an integer, got {p!r}")
    if p == 2 or not is_prime(p):
        raise ParameterError(f"p must be an odd prime, got {p}")
    return p


def as_fraction(q: Rational) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int) and not isinstance(q, bool):
        return Fraction(q)
    raise TypeError(f"expected an exact rational, got {type(q).__name__}")


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_valuation(q: Rational, p: int):
    """Return v_p(q), or :data:`INFINITY` when q is zero."""
    check_odd_prime(p)
    q = as_fraction(q)
    if q == 0:
        return INFINITY
    return _int_valuation(abs(q.numerator), p) - _int_valuation(q.denominator, p)


def is_p_integral(q: Rational, p: int) -> bool:
    return p_valuation(q, p) >= 0


def residue_mod_p(q: Rational, p: int) -> int:
    """Image of a p-integral rational in Z/p, as an integer in 0..p-1."""
    q = as_fraction(q)
    if not is_p_integral(q, p):
        raise ParameterError(f"{format_rational(q)} is not {p}-integral")
    return q.numerator * pow(q.denominator, -1, p) % p


def format_rational(q: Rational) -> str:
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ParameterError(f"{a} is not a unit mod {p}")
    k, x = 1, a
    while x != 1:
        x = x * a % p
        k += 1
    return k
