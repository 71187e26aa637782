"""Partitions and homogeneous polynomials in the generators b_1, b_2, ...

A :class:`GradedElement` of degree n is a finite Q-linear combination of
monomials b_w = b_1^{k_1} b_2^{k_2} ... indexed by partitions w of n.
Degrees are complex degrees throughout (degree n lives in cohomological
degree -2n).
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Tuple

from .arith import Rational, as_fraction, check_odd_prime, format_rational


class Partition(tuple):
    """A multiset of positive integers, stored in descending order."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for k in parts:
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise ValueError(f"partition parts must be positive integers, got {parts!r}")
        return tuple.__new__(cls, sorted(parts, reverse=True))

    @classmethod
    def _trusted(cls, parts: tuple) -> "Partition":
        return tuple.__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for k in self:
            out[k] = out.get(k, 0) + 1
        return out

    def __repr__(self):
        return "Partition(" + repr(tuple(self)) + ")"

    def to_json(self) -> List[int]:
        return list(self)


EMPTY = Partition()


@functools.lru_cache(maxsize=None)
def merge(a: Partition, b: Partition) -> Partition:
    """Multiset union of two partitions."""
    if not a:
        return b
    if not b:
        return a
    return Partition._trusted(tuple(sorted(a + b, reverse=True)))


@functools.lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def partitions_of(n: int) -> Tuple[Partition, ...]:
    """All partitions of n, largest part first, in reverse lexicographic order.

    >>> [tuple(w) for w in partitions_of(4)]
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError(f"cannot partition a negative integer: {n}")
    return tuple(Partition._trusted(w) for w in _partitions(n, n))


def is_p_power_minus_one(k: int, p: int) -> bool:
    """True iff k = p^j - 1 for some j >= 1."""
    m = k + 1
    if m < p:
        return False
    while m % p == 0:
        m //= p
    return m == 1


class PartitionClass(NamedTuple):
    divisible_by_p_minus_1: bool
    non_p_adic: bool


def classify_partition(w: Partition, p: int) -> PartitionClass:
    check_odd_prime(p)
    return PartitionClass(
        divisible_by_p_minus_1=all(k % (p - 1) == 0 for k in w),
        non_p_adic=not any(is_p_power_minus_one(k, p) for k in w),
    )


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class GradedElement:
    """Homogeneous element of Q[b_1, b_2, ...].

    Immutable. Zero coefficients are never stored; every stored partition
    has weight equal to ``degree``. A zero element may carry any degree,
    including negative ones (used as the empty coefficient slot of a
    series).
    """

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[Partition, Rational] = ()):
        self.degree = degree
        clean: Dict[Partition, Rational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            if not isinstance(w, Partition):
                w = Partition(w)
            if w.weight != degree:
                raise ValueError(
                    f"monomial {render_monomial(w)} has degree {w.weight}, "
                    f"element has degree {degree}"
                )
            c = _norm(as_fraction(c) if not isinstance(c, int) else c)
            if c:
                clean[w] = clean.get(w, 0) + c
        self._terms = {w: c for w, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, degree: int, terms: Dict[Partition, Rational]) -> "GradedElement":
        obj = cls.__new__(cls)
        obj.degree = degree
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, degree: int = 0) -> "GradedElement":
        return cls._raw(degree, {})

    @classmethod
    def scalar(cls, c: Rational) -> "GradedElement":
        c = _norm(as_fraction(c))
        return cls._raw(0, {EMPTY: c} if c else {})

    @classmethod
    def generator(cls, n: int) -> "GradedElement":
        """The logarithm generator b_n (b_0 = 1)."""
        if n == 0:
            return cls.scalar(1)
        return cls._raw(n, {Partition._trusted((n,)): 1})

    @classmethod
    def monomial(cls, w: Partition, c: Rational = 1) -> "GradedElement":
        w = w if isinstance(w, Partition) else Partition(w)
        return cls(w.weight, {w: c})

    # -- access -----------------------------------------------------------

    def terms(self) -> Iterator[Tuple[Partition, Fraction]]:
        """(partition, coefficient) pairs in the canonical partition order."""
        if self.degree < 0:
            return iter(())
        return ((w, Fraction(self._terms[w])) for w in partitions_of(self.degree) if w in self._terms)

    def support(self) -> List[Partition]:
        return [w for w, _ in self.terms()]

    def coefficient_of(self, w: Partition) -> Fraction:
        w = w if isinstance(w, Partition) else Partition(w)
        return Fraction(self._terms.get(w, 0))

    def leading_b_coefficient(self) -> Fraction:
        """Coefficient of the single-part monomial b_n, n = degree >= 1."""
        if self.degree < 1:
            raise ValueError("leading b-coefficient needs degree >= 1")
        return Fraction(self._terms.get(Partition._trusted((self.degree,)), 0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_decomposable(self) -> bool:
        """True iff every monomial has at least two factors."""
        return all(len(w) >= 2 for w in self._terms)

    def scalar_value(self) -> Fraction:
        if self.degree != 0:
            raise ValueError(f"element of degree {self.degree} is not a scalar")
        return Fraction(self._terms.get(EMPTY, 0))

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "GradedElement":
        if isinstance(other, GradedElement):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GradedElement.scalar(other)
        return NotImplemented

    def _check_same_degree(self, other: "GradedElement"):
        if self.degree != other.degree:
            raise ValueError(f"cannot add elements of degrees {self.degree} and {other.degree}")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        self._check_same_degree(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = _norm(out.get(w, 0) + c)
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return GradedElement._raw(self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement._raw(self.degree, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: Rational) -> "GradedElement":
        c = _norm(as_fraction(c))
        if not c:
            return GradedElement.zero(self.degree)
        return GradedElement._raw(self.degree, {w: _norm(c * x) for w, x in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, GradedElement):
            other = other.scalar_value()
        other = as_fraction(other)
        if other == 0:
            raise ZeroDivisionError("division of a graded element by zero")
        return self.scale(1 / other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = GradedElement.scalar(1)
        base = self
        while k:
            if k & 1:
                result = multiply(result, base)
            k >>= 1
            if k:
                base = multiply(base, base)
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = GradedElement.scalar(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"GradedElement({self.degree}, {render(self)!r})"

    def __str__(self):
        return render(self)


def multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    out: Dict[Partition, Rational] = {}
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            w = merge(wa, wb)
            s = out.get(w, 0) + ca * cb
            out[w] = s
    return GradedElement._raw(
        a.degree + b.degree, {w: _norm(c) for w, c in out.items() if c}
    )


def linear_combination(degree: int, pairs: Iterable[Tuple[Rational, GradedElement]]) -> GradedElement:
    out: Dict[Partition, Rational] = {}
    for c, x in pairs:
        if not c:
            continue
        if x.degree != degree and not x.is_zero():
            raise ValueError(f"degree {x.degree} term in a degree {degree} combination")
        for w, v in x._terms.items():
            out[w] = out.get(w, 0) + c * v
    return GradedElement._raw(degree, {w: _norm(c) for w, c in out.items() if c})


# -- text rendering ---------------------------------------------------------

def render_monomial(w: Partition) -> str:
    factors = []
    for k, m in sorted(w.multiplicities().items()):
        factors.append(f"b[{k}]" if m == 1 else f"b[{k}]^{m}")
    return "*".join(factors)


def _render_coefficient(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"({format_rational(c)})"


def render(x: GradedElement) -> str:
    """Render as e.g. ``-24*b[2] + 36*b[1]^2`` or ``(3/2)*b[1]``."""
    pieces = []
    for w, c in x.terms():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not w:
            body = format_rational(mag)
        elif mag == 1:
            body = render_monomial(w)
        else:
            body = f"{_render_coefficient(mag)}*{render_monomial(w)}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def terms_to_json(x: GradedElement) -> List[dict]:
    return [{"partition": w.to_json(), "coefficient": format_rational(c)} for w, c in x.terms()]
