"""Weight filtration on the Milnor algebra of a quasi-homogeneous isolated singularity.

For f quasi-homogeneous with weights w, the V-filtration induced on
O/(∂f) is the filtration by ℓ_w(m + 1) = sum_i w_i (m_i + 1) on a monomial
basis.  Its jumps are the spectral numbers.  The filtration on O itself is
not modelled, only this quotient.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from bslab.errors import PreconditionError
from bslab.exact_poly import MonomialOrder, Polynomial, partial_derivatives
from bslab.jacobian import WeightVector, jacobian_basis
from bslab.standard_basis import StandardBasis, staircase


@dataclass(frozen=True)
class Spectrum:
    entries: tuple[Fraction, ...]  # sorted ascending
    dimension: int
    basis: tuple[tuple, ...] = ()  # basis monomial behind each entry

    @property
    def mu(self) -> int:
        return len(self.entries)

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(e[i] + e[-1 - i] == self.dimension for i in range(len(e)))


@dataclass(frozen=True)
class FiltrationLevel:
    alpha: Fraction
    monomials: frozenset


@dataclass(frozen=True)
class Theorem2Verdict:
    passed: bool
    threshold: Fraction
    degree_cap: int
    checked: int
    exempt_at_threshold: tuple[tuple, ...]
    witnesses: tuple[tuple, ...]  # basis monomials of weight == threshold outside (∂f)
    counterexample: tuple | None = None


@dataclass(frozen=True)
class ShiftVerdict:
    passed: bool
    euler_relation: bool
    f_in_jacobian: bool
    note: str = ""


def _weighted_basis(f: Polynomial, w: WeightVector) -> StandardBasis:
    if not isinstance(w, WeightVector):
        w = WeightVector(tuple(w))
    if f.is_zero() or not w.is_weight_of(f):
        raise PreconditionError("f is not quasi-homogeneous of degree 1 for these weights")
    order = MonomialOrder(MonomialOrder.LOCAL, w.weights)
    basis = jacobian_basis(f, order)
    st = staircase(basis)
    if not basis.generators or not st.finite:
        raise PreconditionError("singularity at the origin is not isolated")
    return basis


def _ell(w: WeightVector, m) -> Fraction:
    return sum((wi * (e + 1) for wi, e in zip(w.weights, m)), Fraction(0))


def spectrum_qh(f: Polynomial, w) -> Spectrum:
    """Spectral numbers ℓ_w(m + 1) over the staircase basis of the Milnor algebra."""
    w = w if isinstance(w, WeightVector) else WeightVector(tuple(w))
    basis = _weighted_basis(f, w)
    monos = staircase(basis).standard_monomials
    pairs = sorted(((_ell(w, m), m) for m in monos), key=lambda t: (t[0], t[1]))
    return Spectrum(tuple(p[0] for p in pairs), f.ring.nvars, tuple(p[1] for p in pairs))


def minimal_spectral_number(s: Spectrum) -> Fraction:
    if not s.entries:
        raise ValueError("empty spectrum")
    return min(s.entries)


def filtration_level(f: Polynomial, w, alpha) -> FiltrationLevel:
    """Basis classes of weight >= alpha."""
    s = spectrum_qh(f, w)
    alpha = Fraction(alpha)
    return FiltrationLevel(alpha, frozenset(m for e, m in zip(s.entries, s.basis) if e >= alpha))


def default_degree_cap(f: Polynomial, w) -> int:
    w = w if isinstance(w, WeightVector) else WeightVector(tuple(w))
    st = staircase(_weighted_basis(f, w))
    return 1 + max(sum(g) for g in st.generators) + f.total_degree()


def check_theorem2_qh(f: Polynomial, w, degree_cap: int | None = None) -> Theorem2Verdict:
    """Every monomial with ℓ_w(m+1) > d - sum(w) and degree <= cap must lie in (∂f).

    Monomials sitting exactly on the threshold are not required to be members;
    those that are basis classes are reported as witnesses of strictness.
    """
    w = w if isinstance(w, WeightVector) else WeightVector(tuple(w))
    basis = _weighted_basis(f, w)
    d = f.ring.nvars
    threshold = d - w.total()
    cap = default_degree_cap(f, w) if degree_cap is None else degree_cap
    ring = f.ring
    checked = 0
    exempt = []
    counterexample = None
    for m in product(range(cap + 1), repeat=d):
        if sum(m) > cap:
            continue
        weight = _ell(w, m)
        if weight == threshold:
            exempt.append(m)
            continue
        if weight < threshold:
            continue
        checked += 1
        if not basis.contains(ring.monomial(m)):
            counterexample = m
            break
    std = set(staircase(basis).standard_monomials)
    witnesses = tuple(m for m in exempt if m in std and not basis.contains(ring.monomial(m)))
    return Theorem2Verdict(counterexample is None, threshold, cap, checked, tuple(exempt),
                           witnesses, counterexample)


def check_shift_consistency(s: Spectrum, f: Polynomial, w) -> ShiftVerdict:
    """f acts as zero on the Milnor algebra, so the shift-by-one inclusion holds trivially.

    Checks both the Euler relation f = sum w_i x_i ∂_i f and membership of f
    in the Jacobian ideal through the standard basis.
    """
    w = w if isinstance(w, WeightVector) else WeightVector(tuple(w))
    basis = _weighted_basis(f, w)
    if s.mu != len(staircase(basis).standard_monomials):
        raise PreconditionError("spectrum does not belong to f")
    euler = f.ring.zero()
    for i, (wi, fi) in enumerate(zip(w.weights, partial_derivatives(f))):
        euler = euler + (f.ring.gen(i) * fi) * wi
    euler_ok = euler == f
    member = basis.contains(f)
    return ShiftVerdict(euler_ok and member, euler_ok, member,
                        "f acts by zero on the Milnor algebra" if member else "")
