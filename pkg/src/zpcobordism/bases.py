"""Multiplicative generator systems and exact change of basis.

A :class:`GeneratorBasis` holds one generator g_i in each degree i with a
nonzero coefficient on b_i. Monomials g_w = prod g_i^{k_i} are then
triangular against b-monomials (g_w = c_w b_w + terms with more factors),
so every homogeneous element has a unique expansion, computed here by
substitution in order of increasing partition length.
"""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import (
    INFINITY,
    check_odd_prime,
    is_prime,
    multiplicative_order,
    p_valuation,
)
from .fgl import alpha_coeff, beta, cp_class, milnor_hypersurface
from .graded import (
    GradedElement,
    Partition,
    is_p_power_minus_one,
    multiply,
    partitions_of,
)
from .series import DEFAULT_TRUNC, SeriesError

ALPHA_P1 = "alpha-p1"
ALPHA_P = "alpha-p"
FILLER = "filler"
BETA = "beta"
B = "b"


class BasisError(ValueError):
    pass


def primitive_prime_root(p: int) -> int:
    """Smallest prime whose multiplicative order mod p is p - 1."""
    check_odd_prime(p)
    q = 2
    while True:
        if is_prime(q) and q % p != 0 and multiplicative_order(q, p) == p - 1:
            return q
        q += 1


@dataclass
class _DegreeTable:
    order: List[Partition]          # partitions of n by increasing length
    products: Dict[Partition, GradedElement]
    leading: Dict[Partition, Fraction]


@dataclass(eq=False)
class GeneratorBasis:
    p: Optional[int]
    N: int
    T: int
    generators: Dict[int, GradedElement]
    provenance: Dict[int, str]
    p1: Optional[int] = None
    filler_sources: Dict[int, str] = field(default_factory=dict)
    _tables: Dict[int, _DegreeTable] = field(default_factory=dict, repr=False)
    _products: Dict[Partition, GradedElement] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        for i in range(1, self.N + 1):
            g = self.generators[i]
            if g.degree != i:
                raise BasisError(f"generator {i} has degree {g.degree}")
            lead = g.leading_b_coefficient()
            if lead == 0:
                raise BasisError(f"generator {i} has zero coefficient on b_{i}")
            if not (g - GradedElement.generator(i).scale(lead)).is_decomposable():
                raise BasisError(f"generator {i} is not triangular")

    def generator(self, i: int) -> GradedElement:
        if i == 0:
            return GradedElement.scalar(1)
        if not 1 <= i <= self.N:
            raise BasisError(f"basis only covers degrees 1..{self.N}, asked for {i}")
        return self.generators[i]

    def leading(self, i: int) -> Fraction:
        return self.generators[i].leading_b_coefficient()

    def monomial(self, w: Partition) -> GradedElement:
        """g_w = product of generators over the parts of w."""
        w = w if isinstance(w, Partition) else Partition(w)
        if len(w) == 0:
            return GradedElement.scalar(1)
        if len(w) == 1:
            return self.generator(w[0])
        hit = self._products.get(w)
        if hit is None:
            rest = Partition._trusted(tuple(w[1:]))
            hit = multiply(self.generator(w[0]), self.monomial(rest))
            self._products[w] = hit
        return hit

    def _table(self, n: int) -> _DegreeTable:
        table = self._tables.get(n)
        if table is not None:
            return table
        if n > self.N:
            raise BasisError(f"degree {n} exceeds the basis range {self.N}")
        with self._lock:
            table = self._tables.get(n)
            if table is None:
                order = sorted(partitions_of(n), key=len)
                products = {w: self.monomial(w) for w in order}
                leading = {}
                for w in order:
                    c = Fraction(1)
                    for k in w:
                        c *= self.leading(k)
                    leading[w] = c
                table = _DegreeTable(order, products, leading)
                self._tables[n] = table
        return table

    def expand(self, sigma: GradedElement) -> Dict[Partition, Fraction]:
        """Coefficients r_w with sum r_w g_w = sigma (nonzero ones only)."""
        n = sigma.degree
        if n < 0:
            raise BasisError("negative degree")
        if n == 0:
            c = sigma.scalar_value()
            return {Partition(): c} if c else {}
        table = self._table(n)
        residual = {w: c for w, c in sigma.terms()}
        out: Dict[Partition, Fraction] = {}
        for w in table.order:
            c = residual.get(w, 0)
            if not c:
                continue
            r = c / table.leading[w]
            out[w] = r
            for v, x in table.products[w].terms():
                s = residual.get(v, 0) - r * x
                if s:
                    residual[v] = s
                else:
                    residual.pop(v, None)
        if residual:
            raise AssertionError("change of basis left a nonzero residual; basis not triangular")
        return {w: out[w] for w in partitions_of(n) if w in out}

    def combine(self, coefficients: Dict[Partition, Fraction], degree: int) -> GradedElement:
        """Inverse of :meth:`expand`: sum r_w g_w."""
        total = GradedElement.zero(degree)
        for w, r in coefficients.items():
            if w.weight != degree:
                raise BasisError(f"partition {w} does not have weight {degree}")
            total = total + self.monomial(w).scale(r)
        return total

    def change_matrix(self, n: int) -> List[List[Fraction]]:
        """Rows indexed by b-monomials, columns by basis monomials (partitions_of order)."""
        parts = partitions_of(n)
        cols = [self.monomial(w) for w in parts]
        return [[col.coefficient_of(row) for col in cols] for row in parts]


def exact_determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination with pivot search."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                row, prow = a[r], a[col]
                for k in range(col, n):
                    row[k] -= f * prow[k]
    return det


def _filler(p: int, n: int, T: int) -> Tuple[GradedElement, str]:
    """First manifold class among CP^n, H(2,n-1), H(3,n-2), ... with a p-unit b_n coefficient."""
    candidates = [("CP[%d]" % n, lambda: cp_class(n))]
    for m in range(2, n):
        candidates.append(("H[%d,%d]" % (m, n + 1 - m), functools.partial(milnor_hypersurface, m, n + 1 - m, T)))
    for label, build in candidates:
        x = build()
        if p_valuation(x.leading_b_coefficient(), p) == 0:
            return x, label
    raise AssertionError(f"no filler generator in degree {n} for p={p}; n+1 must be a power of p")


@functools.lru_cache(maxsize=None)
def alpha_basis(p: int, N: Optional[int] = None, T: int = DEFAULT_TRUNC) -> GeneratorBasis:
    """p-local generators: alpha_n^(p1) if (p-1) does not divide n,
    alpha_n^(p) if n = p^k - 1, and a manifold filler otherwise."""
    check_odd_prime(p)
    if N is None:
        N = T - 1
    if T <= N:
        raise SeriesError(f"alpha basis up to degree {N} needs truncation > {N}, got {T}")
    p1 = primitive_prime_root(p)
    gens, prov, sources = {}, {}, {}
    for n in range(1, N + 1):
        if n % (p - 1) != 0:
            gens[n], prov[n] = alpha_coeff(p1, n, T), ALPHA_P1
        elif is_p_power_minus_one(n, p):
            gens[n], prov[n] = alpha_coeff(p, n, T), ALPHA_P
        else:
            gens[n], sources[n] = _filler(p, n, T)
            prov[n] = FILLER
    return GeneratorBasis(p, N, T, gens, prov, p1=p1, filler_sources=sources)


@functools.lru_cache(maxsize=None)
def beta_basis(T: int = DEFAULT_TRUNC) -> GeneratorBasis:
    N = T - 1
    gens = {i: beta(i, T) for i in range(1, N + 1)}
    return GeneratorBasis(None, N, T, gens, {i: BETA for i in gens})


@functools.lru_cache(maxsize=None)
def b_basis(N: int = DEFAULT_TRUNC - 1) -> GeneratorBasis:
    gens = {i: GradedElement.generator(i) for i in range(1, N + 1)}
    return GeneratorBasis(None, N, N + 1, gens, {i: B for i in gens})


def expand_in_basis(sigma: GradedElement, basis: GeneratorBasis) -> Dict[Partition, Fraction]:
    return basis.expand(sigma)


def s_numbers(sigma: GradedElement, T: int = DEFAULT_TRUNC) -> Dict[Partition, Fraction]:
    """Characteristic numbers s_w(sigma): coefficients in the beta-monomial basis.

    Returns every partition of deg sigma, zeros included, in canonical order.
    """
    n = sigma.degree
    if n < 0:
        raise BasisError("negative degree")
    if n > 0 and n > T - 1:
        raise SeriesError(f"s-numbers in degree {n} need truncation > {n}, got {T}")
    if n == 0:
        return {Partition(): sigma.scalar_value()}
    coeffs = beta_basis(T).expand(sigma)
    return {w: coeffs.get(w, Fraction(0)) for w in partitions_of(n)}


def lattice_index_valuation(basis: GeneratorBasis, n: int) -> int:
    """v_p of the determinant of the degree-n change matrix to b-monomials."""
    if basis.p is None:
        raise BasisError("lattice index is only defined for a p-local basis")
    if n > basis.N:
        raise BasisError(f"degree {n} exceeds the basis range {basis.N}")
    if n == 0:
        return 0
    v = p_valuation(exact_determinant(basis.change_matrix(n)), basis.p)
    if v is INFINITY:
        raise BasisError(f"degree-{n} change matrix is singular")
    return v
