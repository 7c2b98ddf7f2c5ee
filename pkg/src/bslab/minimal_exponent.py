"""Minimal exponents from closed forms, and the inequalities they feed.

The minimal exponent is never computed from a Bernstein-Sato polynomial.
Every value carries a provenance naming the formula (or user) it came from.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from bslab.errors import PreconditionError
from bslab.exact_poly import as_rational
from bslab.jacobian import SingularityProfile, WeightVector

PROVENANCES = ("quasi-homogeneous", "f_ab family", "thom-sebastiani", "supplied")
INEQUALITIES = ("(1)", "(3)", "(7)", "(8)", "(11)")


@dataclass(frozen=True)
class MinimalExponent:
    value: Fraction
    provenance: str

    def __post_init__(self):
        object.__setattr__(self, "value", as_rational(self.value))
        if self.value <= 0:
            raise ValueError("a minimal exponent is positive")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")


@dataclass(frozen=True)
class BoundVerdict:
    id: str
    lhs: int | Fraction
    rhs: int | Fraction
    holds: bool = field(init=False)
    tight: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "holds", self.lhs <= self.rhs)
        object.__setattr__(self, "tight", self.lhs == self.rhs)


@dataclass(frozen=True)
class BoundEvaluation:
    verdicts: tuple[BoundVerdict, ...]
    skipped: dict[str, str]

    def __iter__(self):
        return iter(self.verdicts)

    def by_id(self, ident: str) -> BoundVerdict | None:
        return next((v for v in self.verdicts if v.id == ident), None)

    @property
    def all_hold(self) -> bool:
        return all(v.holds for v in self.verdicts)


def alpha_quasihomogeneous(w: WeightVector | Iterable) -> MinimalExponent:
    """Sum of the weights: the minimal spectral number of a quasi-homogeneous isolated singularity."""
    ws = tuple(as_rational(x) for x in w)
    if any(x <= 0 for x in ws):
        raise ValueError("weights must be positive")
    return MinimalExponent(sum(ws, Fraction(0)), "quasi-homogeneous")


def check_fab_parameters(a: int, b: int, d: int) -> None:
    if d < 2:
        raise PreconditionError(f"need d >= 2, got d={d}")
    if a < 2:
        raise PreconditionError(f"need a >= 2, got a={a}")
    if b <= d * a:
        raise PreconditionError(f"need b > d*a, got b={b}, d*a={d * a}")


def alpha_fab(a: int, b: int, d: int) -> MinimalExponent:
    check_fab_parameters(a, b, d)
    return MinimalExponent(Fraction(1, a), "f_ab family")


def alpha_thom_sebastiani(af: MinimalExponent, ag: MinimalExponent) -> MinimalExponent:
    return MinimalExponent(af.value + ag.value, "thom-sebastiani")


def bound_theorem1(d: int, alpha) -> int:
    """floor(d - 2*alpha) + 1, exactly."""
    alpha = as_rational(alpha)
    if d < 1 or alpha <= 0:
        raise ValueError("need d >= 1 and alpha > 0")
    return math.floor(d - 2 * alpha) + 1


def evaluate_bounds(profile: SingularityProfile, ebs: int | None, alpha: MinimalExponent | None,
                    no: int | None = None) -> BoundEvaluation:
    """Verdicts for every applicable inequality; the rest are listed in ``skipped``."""
    d = profile.dimension
    verdicts = []
    skipped = {}
    a = alpha.value if alpha is not None else None

    if a is None:
        skipped["(1)"] = "minimal exponent unavailable"
    elif not profile.singular_at_origin:
        skipped["(1)"] = "nonsingular at the origin"
    else:
        verdicts.append(BoundVerdict("(1)", a, Fraction(d, 2)))

    if a is None:
        skipped["(3)"] = "minimal exponent unavailable"
    elif ebs is None:
        skipped["(3)"] = "Briançon-Skoda exponent unavailable"
    else:
        verdicts.append(BoundVerdict("(3)", ebs, bound_theorem1(d, a)))

    if no is None:
        skipped["(7)"] = "nilpotence order not supplied"
        skipped["(8)"] = "nilpotence order not supplied"
    elif profile.isolated is not True:
        skipped["(7)"] = "singularity not isolated"
        skipped["(8)"] = "singularity not isolated"
    else:
        if ebs is None:
            skipped["(7)"] = "Briançon-Skoda exponent unavailable"
        else:
            verdicts.append(BoundVerdict("(7)", no, ebs))
        if a is None:
            skipped["(8)"] = "minimal exponent unavailable"
        else:
            verdicts.append(BoundVerdict("(8)", no, bound_theorem1(d, a)))

    if a is None:
        skipped["(11)"] = "minimal exponent unavailable"
    elif a <= 1:
        skipped["(11)"] = "minimal exponent <= 1 (singularity not rational)"
    elif ebs is None:
        skipped["(11)"] = "Briançon-Skoda exponent unavailable"
    else:
        verdicts.append(BoundVerdict("(11)", ebs, d - 2))

    return BoundEvaluation(tuple(verdicts), skipped)
