"""The formal group law of geometric cobordisms over Q[b_1, b_2, ...].

Everything is derived from the logarithm g(u) = u + sum b_n u^(n+1),
b_n = [CP^n]/(n+1): the exponential is its compositional inverse, the
k-series is e(k g(u)) and the group law itself is e(g(u) + g(v)).
"""

from __future__ import annotations

import functools

from .graded import GradedElement
from .series import (
    DEFAULT_TRUNC,
    BiSeries,
    SeriesError,
    USeries,
    bis_compose,
    ps_compose,
    ps_inverse,
)


@functools.lru_cache(maxsize=None)
def logarithm(trunc: int = DEFAULT_TRUNC) -> USeries:
    if trunc < 1:
        raise SeriesError("logarithm needs truncation >= 1")
    return USeries({n + 1: GradedElement.generator(n) for n in range(trunc)}, trunc, weight=1)


@functools.lru_cache(maxsize=None)
def exponential(trunc: int = DEFAULT_TRUNC) -> USeries:
    """Compositional inverse of the logarithm; the u^(i+1) coefficient is beta_i."""
    return ps_inverse(logarithm(trunc))


def beta(i: int, trunc: int = DEFAULT_TRUNC) -> GradedElement:
    """Chern-Dold character coefficient beta_i (beta_0 = 1)."""
    if i < 0 or i + 1 > trunc:
        raise SeriesError(f"beta_{i} needs truncation >= {i + 1}, got {trunc}")
    return exponential(trunc).coefficient(i + 1)


@functools.lru_cache(maxsize=None)
def k_series(k: int, trunc: int = DEFAULT_TRUNC) -> USeries:
    """The k-th power [u]_k = e(k g(u)) in the formal group law."""
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError("k must be an integer")
    if k == 0:
        raise SeriesError("the 0-series is degenerate; k must be nonzero")
    if k == 1:
        return USeries.variable(trunc)
    return ps_compose(exponential(trunc), logarithm(trunc).scale(k))


def alpha_coeff(k: int, n: int, trunc: int = None) -> GradedElement:
    """alpha_n^(k): the coefficient of u^(n+1) in [u]_k (degree n)."""
    if n < 0:
        raise SeriesError("alpha index must be non-negative")
    if trunc is None:
        trunc = max(DEFAULT_TRUNC, n + 1)
    if n + 1 > trunc:
        raise SeriesError(f"alpha_{n} needs truncation >= {n + 1}, got {trunc}")
    return k_series(k, trunc).coefficient(n + 1)


@functools.lru_cache(maxsize=None)
def universal_fgl(trunc: int = DEFAULT_TRUNC) -> BiSeries:
    """F(u, v) = e(g(u) + g(v)) up to total degree ``trunc``."""
    if trunc < 2:
        raise SeriesError("the group law needs truncation >= 2")
    g = logarithm(trunc)
    return bis_compose(exponential(trunc), BiSeries.from_u(g) + BiSeries.from_v(g))


def bis_apply_log(F: BiSeries) -> BiSeries:
    """g(F(u, v)), which equals g(u) + g(v) for the universal group law."""
    return bis_compose(logarithm(F.trunc), F)


def cp_class(n: int) -> GradedElement:
    """[CP^n] = (n+1) b_n."""
    if n < 0:
        raise ValueError("CP^n needs n >= 0")
    return GradedElement.generator(n).scale(n + 1)


def milnor_hypersurface(m: int, n: int, trunc: int = None) -> GradedElement:
    """[H(m,n)] = sum over i<=m, j<=n of a_ij [CP^(m-i)] [CP^(n-j)]."""
    if m < 1 or n < 1:
        raise ValueError("Milnor hypersurface H(m,n) needs m, n >= 1")
    if trunc is None:
        trunc = max(DEFAULT_TRUNC, m + n)
    if m + n - 1 >= trunc:
        raise SeriesError(f"H({m},{n}) needs truncation > {m + n - 1}, got {trunc}")
    F = universal_fgl(trunc)
    total = GradedElement.zero(m + n - 1)
    for i in range(m + 1):
        for j in range(n + 1):
            if i + j == 0:
                continue
            a = F.coefficient(i, j)
            if not a.is_zero():
                total = total + a * cp_class(m - i) * cp_class(n - j)
    return total
