"""Deciding which cobordism classes carry a simple Z/p-action.

Two independent routes are implemented and cross-checked by :func:`classify`:

* the ideal test reads the coefficients of a class in the p-local
  generator basis: the class lies in the ideal generated by p, the
  alpha_n^(p1) and the alpha_{p^k-1}^(p) exactly when every monomial built
  only from filler generators (partitions divisible by p-1 and non
  p-adic) has a coefficient divisible by p;
* the characteristic-number test asks that s_w(sigma) vanish mod p for
  every partition w all of whose parts are divisible by p-1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .arith import (
    check_odd_prime,
    format_rational,
    is_p_integral,
    p_valuation,
    residue_mod_p,
)
from .bases import alpha_basis, s_numbers
from .fgl import alpha_coeff
from .graded import GradedElement, Partition, classify_partition, partitions_of
from .series import DEFAULT_TRUNC, SeriesError


class Classification(str, enum.Enum):
    NOT_P_LOCAL = "NotPLocalClass"
    NOT_REALIZABLE = "NotRealizable"
    REALIZABLE = "Realizable"


class TheoremViolation(AssertionError):
    """The ideal test and the characteristic-number test disagreed."""


class ObstructionError(ValueError):
    pass


@dataclass
class Witness:
    partition: Partition
    value: Fraction
    valuation: object = None
    residue: Optional[int] = None

    def to_json(self, value_key: str = "coefficient") -> dict:
        out = {"partition": self.partition.to_json(), value_key: format_rational(self.value)}
        if self.valuation is not None:
            out["valuation"] = self.valuation
        if self.residue is not None:
            out["residue_mod_p"] = self.residue
        return out


@dataclass
class Verdict:
    holds: bool
    witnesses: List[Witness] = field(default_factory=list)


@dataclass
class ObstructionReport:
    p: int
    degree: int
    in_omega_p: bool
    realizable: bool
    classification: Classification
    omega_witnesses: List[Witness] = field(default_factory=list)
    ideal_witnesses: List[Witness] = field(default_factory=list)
    witnesses: List[Witness] = field(default_factory=list)
    methods: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "degree": self.degree,
            "in_omega_p": self.in_omega_p,
            "realizable": self.realizable,
            "classification": self.classification.value,
            "witnesses": [w.to_json("s_number") for w in self.witnesses],
            "ideal_witnesses": [w.to_json("coefficient") for w in self.ideal_witnesses],
            "omega_witnesses": [w.to_json("coefficient") for w in self.omega_witnesses],
            "methods": list(self.methods),
        }


def _basis_for(sigma: GradedElement, p: int, T: int):
    check_odd_prime(p)
    n = sigma.degree
    if n >= T:
        raise SeriesError(f"degree {n} needs truncation > {n}, got {T}")
    return alpha_basis(p, T - 1, T)


def _residue_or_none(q: Fraction, p: int) -> Optional[int]:
    return residue_mod_p(q, p) if is_p_integral(q, p) else None


def alpha_coefficients(sigma: GradedElement, p: int, T: int = DEFAULT_TRUNC) -> Dict[Partition, Fraction]:
    """Coefficients r_w of sigma over monomials in the p-local generators."""
    return _basis_for(sigma, p, T).expand(sigma)


def is_in_omega_p(sigma: GradedElement, p: int, T: int = DEFAULT_TRUNC) -> Verdict:
    """Membership in the p-localised cobordism ring."""
    bad = [
        Witness(w, r, valuation=p_valuation(r, p))
        for w, r in alpha_coefficients(sigma, p, T).items()
        if not is_p_integral(r, p)
    ]
    return Verdict(not bad, bad)


def _require_positive_degree(sigma: GradedElement):
    if sigma.degree < 1:
        raise ObstructionError("realizability is only defined in positive degree")


def realizable_via_ideal(sigma: GradedElement, p: int, T: int = DEFAULT_TRUNC) -> Verdict:
    _require_positive_degree(sigma)
    coeffs = alpha_coefficients(sigma, p, T)
    if not all(is_p_integral(r, p) for r in coeffs.values()):
        raise ObstructionError("class is not p-local; the ideal test does not apply")
    bad = []
    for w, r in coeffs.items():
        kind = classify_partition(w, p)
        if kind.divisible_by_p_minus_1 and kind.non_p_adic and p_valuation(r, p) < 1:
            bad.append(Witness(w, r, residue=residue_mod_p(r, p)))
    return Verdict(not bad, bad)


def realizable_via_charnum(sigma: GradedElement, p: int, T: int = DEFAULT_TRUNC) -> Verdict:
    _require_positive_degree(sigma)
    check_odd_prime(p)
    s = s_numbers(sigma, T)
    bad = []
    for w, value in s.items():
        if classify_partition(w, p).divisible_by_p_minus_1 and p_valuation(value, p) < 1:
            bad.append(Witness(w, value, residue=_residue_or_none(value, p)))
    return Verdict(not bad, bad)


def strictly_simple_realizable(sigma: GradedElement, p: int, T: int = DEFAULT_TRUNC) -> Verdict:
    """All characteristic numbers of sigma vanish mod p."""
    _require_positive_degree(sigma)
    check_odd_prime(p)
    bad = [
        Witness(w, value, residue=_residue_or_none(value, p))
        for w, value in s_numbers(sigma, T).items()
        if p_valuation(value, p) < 1
    ]
    return Verdict(not bad, bad)


def in_strict_ideal(sigma: GradedElement, p: int, T: int = DEFAULT_TRUNC) -> Verdict:
    """Membership in the ideal generated by p and the alpha_{p^k-1}^(p).

    Over the p-local generators this means every coefficient of a
    monomial without p-adic parts is divisible by p.
    """
    _require_positive_degree(sigma)
    coeffs = alpha_coefficients(sigma, p, T)
    bad = []
    for w, r in coeffs.items():
        if p_valuation(r, p) < 1 and classify_partition(w, p).non_p_adic:
            bad.append(Witness(w, r, residue=_residue_or_none(r, p)))
    return Verdict(not bad, bad)


def classify(sigma: GradedElement, p: int, T: int = DEFAULT_TRUNC) -> ObstructionReport:
    _require_positive_degree(sigma)
    omega = is_in_omega_p(sigma, p, T)
    methods = ["omega-p-membership"]
    if not omega.holds:
        return ObstructionReport(
            p, sigma.degree, False, False, Classification.NOT_P_LOCAL,
            omega_witnesses=omega.witnesses, methods=methods,
        )
    ideal = realizable_via_ideal(sigma, p, T)
    charnum = realizable_via_charnum(sigma, p, T)
    methods += ["ideal", "charnum"]
    if ideal.holds != charnum.holds:
        raise TheoremViolation(
            f"ideal test says {ideal.holds}, characteristic numbers say {charnum.holds} "
            f"for p={p}, degree {sigma.degree}"
        )
    return ObstructionReport(
        p,
        sigma.degree,
        True,
        ideal.holds,
        Classification.REALIZABLE if ideal.holds else Classification.NOT_REALIZABLE,
        ideal_witnesses=ideal.witnesses,
        witnesses=charnum.witnesses,
        methods=methods,
    )


def divisibility_claim(p: int, l: int, T: int = DEFAULT_TRUNC) -> Verdict:
    """Does alpha_l^(p) / p still lie in the p-local cobordism ring?"""
    x = alpha_coeff(p, l, T).scale(Fraction(1, p))
    return is_in_omega_p(x, p, T)


def filler_only_partitions(n: int, p: int) -> List[Partition]:
    """Partitions of n that are divisible by p-1 and non p-adic."""
    out = []
    for w in partitions_of(n):
        kind = classify_partition(w, p)
        if kind.divisible_by_p_minus_1 and kind.non_p_adic:
            out.append(w)
    return out
