"""Fixed-point data of simple Z/p-actions and their mod-p cobordism class.

A fixed component with class lambda and normal weights x_1..x_m contributes
lambda * gamma_p(x_1, ..., x_m), where gamma_p(x) is the u^m coefficient of

    prod_j u/[u]_{x_j}  *  p u/[u]_p.

The sum over components agrees with the class of the ambient manifold
modulo p (Omega_U tensor Z_(p)); values returned here are exact
representatives and are only meaningful under that congruence.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, List, Sequence, Tuple

from .arith import check_odd_prime, p_valuation
from .bases import alpha_basis
from .fgl import alpha_coeff, cp_class, k_series
from .graded import GradedElement
from .obstruction import is_in_omega_p
from .series import DEFAULT_TRUNC, SeriesError, USeries, divide_by_u, ps_multiply, ps_reciprocal


class ActionDataError(ValueError):
    pass


@dataclass(frozen=True)
class WeightList:
    p: int
    weights: Tuple[int, ...]

    def __post_init__(self):
        check_odd_prime(self.p)
        if not self.weights:
            raise ActionDataError("a fixed component needs at least one normal weight")
        for x in self.weights:
            if not 1 <= x <= self.p - 1:
                raise ActionDataError(f"weight {x} is not a canonical residue in 1..{self.p - 1}")

    @classmethod
    def of(cls, p: int, weights: Iterable[int]) -> "WeightList":
        """Reduce arbitrary integers mod p; zero weights are rejected."""
        check_odd_prime(p)
        reduced = []
        for x in weights:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ActionDataError(f"weights must be integers, got {x!r}")
            if x % p == 0:
                raise ActionDataError(f"weight {x} is divisible by p={p}")
            reduced.append(x % p)
        return cls(p, tuple(reduced))

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class FixedComponentDatum:
    component_class: GradedElement
    weights: WeightList


@dataclass(frozen=True)
class SimpleActionData:
    p: int
    dimension: int
    components: Tuple[FixedComponentDatum, ...]

    def __post_init__(self):
        check_odd_prime(self.p)
        if not self.components:
            raise ActionDataError("no fixed components given")
        for j, c in enumerate(self.components):
            if c.weights.p != self.p:
                raise ActionDataError(f"component {j} has weights mod {c.weights.p}, expected {self.p}")
            d, m = c.component_class.degree, len(c.weights)
            if d + m != self.dimension:
                raise ActionDataError(
                    f"component {j}: class degree {d} + {m} weights != dimension {self.dimension}"
                )


def component(p: int, cls: GradedElement, weights: Sequence[int]) -> FixedComponentDatum:
    return FixedComponentDatum(cls, WeightList.of(p, weights))


@functools.lru_cache(maxsize=None)
def _u_over_kseries(x: int, T: int) -> USeries:
    """u/[u]_x, known up to u^(T-1)."""
    return ps_reciprocal(divide_by_u(k_series(x, T)))


@functools.lru_cache(maxsize=4096)
def _coefficient_of_product(factors: Tuple[int, ...], k: int, T: int, with_p: int = None) -> GradedElement:
    if k > T - 1:
        raise SeriesError(f"{k} weights need truncation > {k}, got {T}")
    total = USeries.one(k)
    for x in factors:
        total = ps_multiply(total, _u_over_kseries(x, T).truncate(k))
    if with_p is not None:
        total = ps_multiply(total, _u_over_kseries(with_p, T).truncate(k).scale(with_p))
    return total.coefficient(k)


def gamma_p(w: WeightList, T: int = DEFAULT_TRUNC) -> GradedElement:
    """<prod u/[u]_{x_j} * p u/[u]_p>_k for weights x_1..x_k."""
    return _coefficient_of_product(tuple(sorted(w.weights)), len(w), T, with_p=w.p)


def phi_a(w: WeightList, T: int = DEFAULT_TRUNC) -> GradedElement:
    """<prod u/[u]_{x_i}>_k; meaningful modulo p."""
    return _coefficient_of_product(tuple(sorted(w.weights)), len(w), T)


def phi_ak(k: int, p: int, T: int = DEFAULT_TRUNC) -> GradedElement:
    """-<[u]_p/u>_k = -alpha_k^(p); meaningful modulo p."""
    check_odd_prime(p)
    if k < 1:
        raise ActionDataError("relation index k must be positive")
    return -alpha_coeff(p, k, T)


def realize_class(data: SimpleActionData, T: int = DEFAULT_TRUNC, check_components: bool = True) -> GradedElement:
    """Sum over fixed components of lambda_j * gamma_p(weights_j)."""
    if data.dimension > T - 1:
        raise SeriesError(f"dimension {data.dimension} needs truncation > {data.dimension}, got {T}")
    total = GradedElement.zero(data.dimension)
    for j, c in enumerate(data.components):
        lam = c.component_class
        if check_components and lam.degree > 0 and not is_in_omega_p(lam, data.p, T).holds:
            raise ActionDataError(f"component {j} class is not p-local")
        if check_components and lam.degree == 0 and p_valuation(lam.scalar_value(), data.p) < 0:
            raise ActionDataError(f"component {j} class is not p-local")
        total = total + lam * gamma_p(c.weights, T)
    return total


def congruent_mod_p_omega(sigma: GradedElement, tau: GradedElement, p: int, T: int = DEFAULT_TRUNC) -> bool:
    """sigma - tau lies in p * (Omega_U tensor Z_(p))."""
    check_odd_prime(p)
    if sigma.degree != tau.degree:
        raise ValueError(f"degrees differ: {sigma.degree} and {tau.degree}")
    diff = sigma - tau
    if diff.degree == 0:
        return p_valuation(diff.scalar_value(), p) >= 1
    if diff.degree >= T:
        raise SeriesError(f"degree {diff.degree} needs truncation > {diff.degree}, got {T}")
    coeffs = alpha_basis(p, T - 1, T).expand(diff)
    return all(p_valuation(r, p) >= 1 for r in coeffs.values())


# -- example actions ---------------------------------------------------------

BUILTIN_ACTIONS = ("cp_p_minus_1", "cp1", "product_first", "product_second")


def linear_cp_action(p: int, exponents: Sequence[int]) -> SimpleActionData:
    """CP^n with the generator acting by (z_0 : rho^{e_1} z_1 : ... : rho^{e_n} z_n).

    The exponents must be distinct mod p, so that the fixed points are the
    n+1 coordinate points; the point i has weights e_j - e_i, j != i.
    """
    check_odd_prime(p)
    residues = [e % p for e in exponents]
    if len(set(residues)) != len(residues) or len(residues) < 2:
        raise ActionDataError("exponents must be at least two residues, pairwise distinct mod p")
    n = len(residues) - 1
    comps = []
    for i, ei in enumerate(residues):
        comps.append(component(p, GradedElement.scalar(1), [ej - ei for j, ej in enumerate(residues) if j != i]))
    return SimpleActionData(p, n, tuple(comps))


def builtin_action(name: str, p: int) -> SimpleActionData:
    check_odd_prime(p)
    all_weights = list(range(1, p))
    point = GradedElement.scalar(1)
    if name == "cp_p_minus_1":
        return SimpleActionData(p, p - 1, tuple(component(p, point, all_weights) for _ in range(p)))
    if name == "cp1":
        return SimpleActionData(p, 1, (component(p, point, [1]), component(p, point, [p - 1])))
    if name == "product_first":
        return SimpleActionData(p, p, tuple(component(p, cp_class(1), all_weights) for _ in range(p)))
    if name == "product_second":
        return SimpleActionData(
            p, p, (component(p, cp_class(p - 1), [1]), component(p, cp_class(p - 1), [p - 1]))
        )
    raise ActionDataError(f"unknown built-in action {name!r}; expected one of {', '.join(BUILTIN_ACTIONS)}")


def times_class(lam: GradedElement, data: SimpleActionData) -> SimpleActionData:
    """N x M with the action on M only."""
    comps = tuple(
        FixedComponentDatum(lam * c.component_class, c.weights) for c in data.components
    )
    return SimpleActionData(data.p, data.dimension + lam.degree, comps)


def product_action(a: SimpleActionData, b: SimpleActionData) -> SimpleActionData:
    """M_1 x M_2 with the diagonal action; fixed sets multiply, weights concatenate."""
    if a.p != b.p:
        raise ActionDataError("actions for different primes")
    comps = []
    for ca, cb in cartesian(a.components, b.components):
        comps.append(
            FixedComponentDatum(
                ca.component_class * cb.component_class,
                WeightList(a.p, ca.weights.weights + cb.weights.weights),
            )
        )
    return SimpleActionData(a.p, a.dimension + b.dimension, tuple(comps))


def disjoint_union(a: SimpleActionData, b: SimpleActionData) -> SimpleActionData:
    if a.p != b.p or a.dimension != b.dimension:
        raise ActionDataError("disjoint union needs the same prime and dimension")
    return SimpleActionData(a.p, a.dimension, a.components + b.components)


def random_linear_action(rng: random.Random, p: int, max_dim: int) -> Tuple[SimpleActionData, GradedElement]:
    """A random linear action on some CP^n together with [CP^n]."""
    n = rng.randint(1, min(p - 1, max_dim))
    exps = rng.sample(range(p), n + 1)
    return linear_cp_action(p, exps), cp_class(n)


def random_valid_action(
    rng: random.Random, p: int, dim: int, class_factory=None
) -> Tuple[SimpleActionData, GradedElement]:
    """Random fixed-point data of exact dimension ``dim`` plus the ambient class.

    Built from linear actions on projective spaces, products of those,
    products with a passive factor and disjoint unions; the returned class
    is the exact cobordism class of the manifold the data came from.
    """
    if dim < 1:
        raise ActionDataError("dimension must be positive")

    def one_piece() -> Tuple[SimpleActionData, GradedElement]:
        data, cls = random_linear_action(rng, p, dim)
        while data.dimension < dim:
            room = dim - data.dimension
            if rng.random() < 0.5 and room >= 1:
                other, ocls = random_linear_action(rng, p, room)
                data, cls = product_action(data, other), cls * ocls
            else:
                deg = rng.randint(1, room)
                lam = class_factory(deg) if class_factory else cp_class(deg)
                data, cls = times_class(lam, data), lam * cls
        return data, cls

    data, cls = one_piece()
    if rng.random() < 0.5:
        other, ocls = one_piece()
        data, cls = disjoint_union(data, other), cls + ocls
    return data, cls
