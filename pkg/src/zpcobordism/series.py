"""Truncated power series with graded coefficients.

``USeries`` is a series in one variable u, known modulo u^(T+1). It carries
a weight w: the coefficient of u^j is homogeneous of degree j - w, so the
logarithm and the k-series have weight 1 while quotients such as [u]_p/u
have weight 0. ``BiSeries`` is the two-variable analogue, truncated by
total degree. Both are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

from .arith import Rational, as_fraction, format_rational
from .graded import GradedElement, linear_combination, multiply, render

DEFAULT_TRUNC = 12
MAX_TRUNC = 16


class SeriesError(ValueError):
    pass


def _check_trunc(trunc: int):
    if not isinstance(trunc, int) or trunc < 0:
        raise SeriesError(f"truncation must be a non-negative integer, got {trunc!r}")
    if trunc > MAX_TRUNC:
        raise SeriesError(f"truncation {trunc} exceeds the supported maximum {MAX_TRUNC}")


def _as_element(c, degree: int) -> GradedElement:
    if isinstance(c, GradedElement):
        return c
    c = as_fraction(c)
    if c == 0:
        return GradedElement.zero(degree)
    if degree != 0:
        return None
    return GradedElement.scalar(c)


class USeries:
    __slots__ = ("trunc", "weight", "_coeffs")

    def __init__(self, coeffs: Mapping[int, object], trunc: int, weight: int = 1):
        _check_trunc(trunc)
        self.trunc = trunc
        self.weight = weight
        slots: List[GradedElement] = [GradedElement.zero(j - weight) for j in range(trunc + 1)]
        for j, c in dict(coeffs).items():
            if not 0 <= j:
                raise SeriesError(f"negative power u^{j}")
            if j > trunc:
                continue
            x = _as_element(c, j - weight)
            if x is None:
                raise SeriesError(f"scalar coefficient {c!r} at u^{j} violates the grading law")
            if x.is_zero():
                continue
            if x.degree != j - weight:
                raise SeriesError(
                    f"coefficient of u^{j} has degree {x.degree}, grading law requires {j - weight}"
                )
            slots[j] = x
        self._coeffs = tuple(slots)

    @classmethod
    def _raw(cls, slots, trunc: int, weight: int) -> "USeries":
        obj = cls.__new__(cls)
        obj.trunc = trunc
        obj.weight = weight
        obj._coeffs = tuple(slots)
        return obj

    @classmethod
    def variable(cls, trunc: int = DEFAULT_TRUNC) -> "USeries":
        """The series u."""
        return cls({1: 1}, trunc, weight=1)

    @classmethod
    def one(cls, trunc: int = DEFAULT_TRUNC) -> "USeries":
        return cls({0: 1}, trunc, weight=0)

    # -- access ------------------------------------------------------------

    def coefficient(self, k: int) -> GradedElement:
        """The coefficient of u^k."""
        if not isinstance(k, int) or k < 0 or k > self.trunc:
            raise SeriesError(f"u^{k} is outside the truncation 0..{self.trunc}")
        return self._coeffs[k]

    def coefficients(self) -> Tuple[GradedElement, ...]:
        return self._coeffs

    def valuation(self) -> int:
        """Lowest power with a nonzero coefficient (trunc + 1 for zero)."""
        for j, c in enumerate(self._coeffs):
            if not c.is_zero():
                return j
        return self.trunc + 1

    def truncate(self, trunc: int) -> "USeries":
        if trunc > self.trunc:
            raise SeriesError("truncation can only be lowered")
        return USeries._raw(self._coeffs[: trunc + 1], trunc, self.weight)

    # -- arithmetic --------------------------------------------------------

    def _same_shape(self, other: "USeries") -> int:
        if self.weight != other.weight:
            raise SeriesError(f"cannot add series of weights {self.weight} and {other.weight}")
        return min(self.trunc, other.trunc)

    def __add__(self, other: "USeries") -> "USeries":
        t = self._same_shape(other)
        return USeries._raw([self._coeffs[j] + other._coeffs[j] for j in range(t + 1)], t, self.weight)

    def __sub__(self, other: "USeries") -> "USeries":
        t = self._same_shape(other)
        return USeries._raw([self._coeffs[j] - other._coeffs[j] for j in range(t + 1)], t, self.weight)

    def __neg__(self) -> "USeries":
        return USeries._raw([-c for c in self._coeffs], self.trunc, self.weight)

    def scale(self, c: Rational) -> "USeries":
        return USeries._raw([x.scale(c) for x in self._coeffs], self.trunc, self.weight)

    def __mul__(self, other):
        if isinstance(other, USeries):
            return ps_multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __call__(self, inner: "USeries") -> "USeries":
        return ps_compose(self, inner)

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return (self.trunc, self.weight, self._coeffs) == (other.trunc, other.weight, other._coeffs)

    def __hash__(self):
        return hash((self.trunc, self.weight, self._coeffs))

    def agrees_with(self, other: "USeries") -> bool:
        """Equality of all coefficients up to the smaller truncation."""
        t = min(self.trunc, other.trunc)
        return all(self._coeffs[j] == other._coeffs[j] for j in range(t + 1))

    def __repr__(self):
        return f"USeries(trunc={self.trunc}, weight={self.weight}, {render_series(self)!r})"

    def __str__(self):
        return render_series(self)


def ps_multiply(f: USeries, g: USeries) -> USeries:
    t = min(f.trunc, g.trunc)
    w = f.weight + g.weight
    fc, gc = f._coeffs, g._coeffs
    nz_f = [(i, c) for i, c in enumerate(fc[: t + 1]) if not c.is_zero()]
    out = []
    for n in range(t + 1):
        acc = GradedElement.zero(n - w)
        for i, c in nz_f:
            if i > n:
                break
            d = gc[n - i]
            if not d.is_zero():
                acc = acc + multiply(c, d)
        out.append(acc)
    return USeries._raw(out, t, w)


def _require_no_constant(h: USeries):
    if not h._coeffs[0].is_zero():
        raise SeriesError("inner series must have zero constant term")
    if h.weight != 1:
        raise SeriesError(f"inner series must have weight 1, got {h.weight}")


def ps_compose(f: USeries, h: USeries) -> USeries:
    """f(h(u)), truncated at the smaller truncation."""
    _require_no_constant(h)
    t = min(f.trunc, h.trunc)
    h = h.truncate(t) if h.trunc > t else h
    acc = [GradedElement.zero(n - f.weight) for n in range(t + 1)]
    acc[0] = f._coeffs[0]
    power = h
    for j in range(1, t + 1):
        fj = f._coeffs[j]
        if not fj.is_zero():
            for n in range(j, t + 1):
                c = power._coeffs[n]
                if not c.is_zero():
                    acc[n] = acc[n] + multiply(fj, c)
        if j < t:
            power = ps_multiply(power, h)
    return USeries._raw(acc, t, f.weight)


def _leading_scalar(f: USeries, k: int, what: str) -> Fraction:
    c = f._coeffs[k]
    if c.degree != 0 or c.is_zero():
        raise SeriesError(f"{what}: coefficient of u^{k} must be a nonzero scalar")
    return c.scalar_value()


def ps_inverse(f: USeries) -> USeries:
    """Compositional inverse of f = c*u + O(u^2), c a nonzero scalar.

    Solved one power at a time: the u^n coefficient of f(g) is
    c*g_n plus terms involving only g_1..g_{n-1}.
    """
    if f.trunc < 1:
        raise SeriesError("compositional inverse needs truncation >= 1")
    if f.weight != 1 or not f._coeffs[0].is_zero():
        raise SeriesError("compositional inverse needs a series c*u + O(u^2)")
    c = _leading_scalar(f, 1, "compositional inverse")
    t = f.trunc
    inv_c = 1 / c
    # pw[j][m] = coefficient of u^m in g^j
    pw: List[List[GradedElement]] = [[] for _ in range(t + 1)]
    for j in range(t + 1):
        pw[j] = [GradedElement.zero(m - j) for m in range(t + 1)]
    pw[1][1] = GradedElement.scalar(inv_c)
    for j in range(2, t + 1):
        pw[j][j] = GradedElement.scalar(inv_c ** j)
    for n in range(2, t + 1):
        for j in range(2, n + 1):
            if j == n:
                continue
            acc = GradedElement.zero(n - j)
            for i in range(1, n - j + 2):
                a, b = pw[1][i], pw[j - 1][n - i]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + multiply(a, b)
            pw[j][n] = acc
        known = GradedElement.zero(n - 1)
        for j in range(2, n + 1):
            fj = f._coeffs[j]
            if not fj.is_zero() and not pw[j][n].is_zero():
                known = known + multiply(fj, pw[j][n])
        pw[1][n] = known.scale(-inv_c)
    return USeries._raw(pw[1], t, 1)


def ps_reciprocal(f: USeries) -> USeries:
    """Multiplicative inverse of a series with nonzero scalar constant term."""
    if f.weight != 0:
        raise SeriesError("reciprocal needs a weight-0 series (scalar constant term)")
    c0 = _leading_scalar(f, 0, "reciprocal")
    inv = 1 / c0
    t = f.trunc
    out = [GradedElement.scalar(inv)]
    for n in range(1, t + 1):
        acc = GradedElement.zero(n)
        for i in range(1, n + 1):
            fi = f._coeffs[i]
            if not fi.is_zero() and not out[n - i].is_zero():
                acc = acc + multiply(fi, out[n - i])
        out.append(acc.scale(-inv))
    return USeries._raw(out, t, 0)


def divide_by_u(f: USeries) -> USeries:
    """f/u for a series without constant term; loses one order of precision."""
    if not f._coeffs[0].is_zero():
        raise SeriesError("series has a constant term, not divisible by u")
    if f.trunc < 1:
        raise SeriesError("nothing left after dividing by u")
    return USeries._raw(f._coeffs[1:], f.trunc - 1, f.weight - 1)


def coefficient_of_u(f: USeries, k: int) -> GradedElement:
    return f.coefficient(k)


def render_series(f: USeries) -> str:
    pieces = []
    for j, c in enumerate(f._coeffs):
        if c.is_zero():
            continue
        mono = "1" if j == 0 else "u" if j == 1 else f"u^{j}"
        if c.degree == 0:
            s = c.scalar_value()
            coeff = format_rational(s)
            coeff = coeff if "/" not in coeff else f"({coeff})"
        else:
            coeff = f"[{render(c)}]"
        pieces.append(coeff if j == 0 else f"{coeff}*{mono}")
    pieces.append(f"O(u^{f.trunc + 1})")
    return " + ".join(pieces)


class BiSeries:
    """Series in u, v known modulo total degree T + 1.

    The coefficient of u^i v^j has degree i + j - weight.
    """

    __slots__ = ("trunc", "weight", "_coeffs")

    def __init__(self, coeffs: Mapping[Tuple[int, int], object], trunc: int, weight: int = 1):
        _check_trunc(trunc)
        self.trunc = trunc
        self.weight = weight
        out: Dict[Tuple[int, int], GradedElement] = {}
        for (i, j), c in dict(coeffs).items():
            if i < 0 or j < 0:
                raise SeriesError("negative exponent in a bivariate series")
            if i + j > trunc:
                continue
            x = _as_element(c, i + j - weight)
            if x is None or (not x.is_zero() and x.degree != i + j - weight):
                raise SeriesError(f"coefficient of u^{i}v^{j} violates the grading law")
            if not x.is_zero():
                out[(i, j)] = x
        self._coeffs = out

    @classmethod
    def _raw(cls, coeffs, trunc, weight) -> "BiSeries":
        obj = cls.__new__(cls)
        obj.trunc = trunc
        obj.weight = weight
        obj._coeffs = coeffs
        return obj

    @classmethod
    def from_u(cls, f: USeries) -> "BiSeries":
        return cls._raw({(i, 0): c for i, c in enumerate(f._coeffs) if not c.is_zero()}, f.trunc, f.weight)

    @classmethod
    def from_v(cls, f: USeries) -> "BiSeries":
        return cls._raw({(0, j): c for j, c in enumerate(f._coeffs) if not c.is_zero()}, f.trunc, f.weight)

    def coefficient(self, i: int, j: int) -> GradedElement:
        if i < 0 or j < 0 or i + j > self.trunc:
            raise SeriesError(f"u^{i}v^{j} is outside the truncation {self.trunc}")
        return self._coeffs.get((i, j), GradedElement.zero(i + j - self.weight))

    def items(self) -> Iterable[Tuple[Tuple[int, int], GradedElement]]:
        return sorted(self._coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    def __add__(self, other: "BiSeries") -> "BiSeries":
        if self.weight != other.weight:
            raise SeriesError("cannot add bivariate series of different weights")
        t = min(self.trunc, other.trunc)
        out = {}
        for key in set(self._coeffs) | set(other._coeffs):
            if key[0] + key[1] > t:
                continue
            s = self.coefficient(*key) + other.coefficient(*key)
            if not s.is_zero():
                out[key] = s
        return BiSeries._raw(out, t, self.weight)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + other.scale(-1)

    def scale(self, c: Rational) -> "BiSeries":
        c = as_fraction(c)
        return BiSeries._raw(
            {k: x.scale(c) for k, x in self._coeffs.items() if c}, self.trunc, self.weight
        )

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        t = min(self.trunc, other.trunc)
        w = self.weight + other.weight
        out: Dict[Tuple[int, int], GradedElement] = {}
        for (i1, j1), a in self._coeffs.items():
            for (i2, j2), b in other._coeffs.items():
                key = (i1 + i2, j1 + j2)
                if key[0] + key[1] > t:
                    continue
                prod = multiply(a, b)
                out[key] = out[key] + prod if key in out else prod
        return BiSeries._raw({k: x for k, x in out.items() if not x.is_zero()}, t, w)

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.trunc, self.weight, self._coeffs) == (other.trunc, other.weight, other._coeffs)

    def __hash__(self):
        return hash((self.trunc, self.weight, frozenset(self._coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"a{i}{j}={render(c)}" for (i, j), c in self.items())
        return f"BiSeries(trunc={self.trunc}, {terms})"


def bis_compose(f: USeries, G: BiSeries) -> BiSeries:
    """f(G(u, v)) for G with zero constant term and weight 1."""
    if (0, 0) in G._coeffs or G.weight != 1:
        raise SeriesError("inner bivariate series must have weight 1 and no constant term")
    t = min(f.trunc, G.trunc)
    out: Dict[Tuple[int, int], GradedElement] = {}
    if not f._coeffs[0].is_zero():
        out[(0, 0)] = f._coeffs[0]
    power = G
    for k in range(1, t + 1):
        fk = f._coeffs[k]
        if not fk.is_zero():
            for key, c in power._coeffs.items():
                if key[0] + key[1] > t:
                    continue
                term = multiply(fk, c)
                out[key] = out[key] + term if key in out else term
        if k < t:
            power = power * G
    return BiSeries._raw({k: x for k, x in out.items() if not x.is_zero()}, t, f.weight)
