"""Invariants of f read off the Jacobian ideal at the origin.

Everything here is computed at the origin only.  The Briançon-Skoda exponent
of f on a neighbourhood of f^{-1}(0) is the maximum of the local exponents
over the singular points; inputs whose interesting singularity is not at the
origin need translating first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from bslab.errors import (
    InternalInconsistencyError,
    NonsingularError,
    PreconditionError,
    ResourceLimitError,
)
from bslab.exact_poly import LOCAL, MonomialOrder, Polynomial, partial_derivatives
from bslab.standard_basis import StandardBasis, compute_standard_basis, staircase

INFINITE = math.inf


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "weights", ws)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def degree(self, m) -> Fraction:
        return sum((w * e for w, e in zip(self.weights, m)), Fraction(0))

    def is_weight_of(self, f: Polynomial) -> bool:
        return len(self.weights) == f.ring.nvars and all(self.degree(m) == 1 for m in f.terms)


@dataclass(frozen=True)
class WeightDetection:
    """Outcome of the weight solve: status is found, inconsistent or inconclusive."""

    status: str
    weights: WeightVector | None = None


@dataclass(frozen=True)
class SingularityProfile:
    dimension: int
    singular_at_origin: bool
    isolated: bool | None  # None: unknown because a resource cap was hit
    milnor_number: int | float | None  # math.inf when not isolated, None when unknown


@lru_cache(maxsize=256)
def jacobian_basis(f: Polynomial, order: MonomialOrder = LOCAL, max_pairs: int | None = None,
                   max_basis: int | None = None) -> StandardBasis:
    """Local standard basis of the Jacobian ideal (cached per polynomial)."""
    gens = [g for g in partial_derivatives(f) if not g.is_zero()]
    if not gens:
        return StandardBasis((), order, (), f.ring, None, True)
    return compute_standard_basis(gens, order, max_pairs=max_pairs, max_basis=max_basis)


def is_singular_at_origin(f: Polynomial) -> bool:
    return all(g.constant_term() == 0 for g in partial_derivatives(f))


def briancon_skoda_exponent(f: Polynomial, *, max_pairs: int | None = None,
                            max_basis: int | None = None) -> int:
    """Smallest k >= 1 with f^k in the Jacobian ideal of the local ring at 0.

    One standard basis of the Jacobian ideal serves every k.  With a highest
    corner the remainders satisfy f^k = r_k mod J, so f^{k+1} is a member
    exactly when f*r_k is, and only that product is reduced at each step.
    """
    if f.is_zero():
        raise PreconditionError("f must be nonzero")
    if f.constant_term() != 0:
        raise PreconditionError("f(0) != 0: the origin is not on the hypersurface")
    if not is_singular_at_origin(f):
        raise NonsingularError("f is nonsingular at the origin")
    basis = jacobian_basis(f, LOCAL, max_pairs, max_basis)
    d = f.ring.nvars
    r = f
    for k in range(1, d + 1):
        if basis.highest_corner is None:
            # non-isolated: decide f^k directly through the leading-ideal test
            if basis.contains(f ** k):
                return k
            continue
        r = basis.reduce(r)
        if r.is_zero():
            return k
        r = r * f
    raise InternalInconsistencyError(f"f^{d} not in the Jacobian ideal, contradicting Briançon-Skoda")


def milnor_number(f: Polynomial, *, max_pairs: int | None = None,
                  max_basis: int | None = None) -> int | float:
    """dim of the local ring modulo (∂f); ``math.inf`` when not isolated."""
    if f.constant_term() != 0:
        raise PreconditionError("f(0) != 0: the origin is not on the hypersurface")
    basis = jacobian_basis(f, LOCAL, max_pairs, max_basis)
    if not basis.generators:
        return INFINITE
    st = staircase(basis)
    return st.count if st.finite else INFINITE


def singularity_profile(f: Polynomial, *, max_pairs: int | None = None,
                        max_basis: int | None = None) -> SingularityProfile:
    d = f.ring.nvars
    singular = is_singular_at_origin(f)
    try:
        mu = milnor_number(f, max_pairs=max_pairs, max_basis=max_basis) if f.constant_term() == 0 else 0
    except ResourceLimitError:
        return SingularityProfile(d, singular, None, None)
    isolated = mu != INFINITE
    return SingularityProfile(d, singular, isolated, mu)


# --- weights ---------------------------------------------------------------

def _rref(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form of an augmented matrix; returns (rows, pivots)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                fac = rows[i][c]
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _candidates(max_den: int):
    seen = set()
    for q in range(1, max_den + 1):
        for p in range(1, 2 * q + 1):
            v = Fraction(p, q)
            if v not in seen:
                seen.add(v)
                yield v


def detect_weights(f: Polynomial, *, max_den: int = 12, max_tries: int = 20000) -> WeightDetection:
    """Solve sum_i w_i m_i = 1 over the support of f for positive rational w.

    Underdetermined systems are completed by trying small rationals for the
    free coordinates (denominators up to ``max_den``); if none gives a
    positive solution the result is ``inconclusive``.  Weighted homogeneity
    up to an analytic change of coordinates is not attempted.
    """
    if f.is_zero():
        raise PreconditionError("f must be nonzero")
    if f.constant_term() != 0:
        raise PreconditionError("f(0) != 0")
    n = f.ring.nvars
    rows = [[Fraction(e) for e in m] + [Fraction(1)] for m in sorted(f.terms)]
    red, pivots = _rref(rows, n)
    for row in red:
        if all(x == 0 for x in row[:n]) and row[n] != 0:
            return WeightDetection("inconsistent")
    free = [c for c in range(n) if c not in pivots]

    def solve(values: dict[int, Fraction]):
        w = [Fraction(0)] * n
        for c, v in values.items():
            w[c] = v
        for row, c in zip(red, pivots):
            w[c] = row[n] - sum(row[k] * values[k] for k in free)
        return w

    if not free:
        w = solve({})
        return WeightDetection("found", WeightVector(tuple(w))) if all(x > 0 for x in w) \
            else WeightDetection("inconsistent")
    cands = list(_candidates(max_den))
    tries = 0
    for combo in product(cands, repeat=len(free)):
        tries += 1
        if tries > max_tries:
            break
        w = solve(dict(zip(free, combo)))
        if all(x > 0 for x in w):
            return WeightDetection("found", WeightVector(tuple(w)))
    return WeightDetection("inconclusive")


def is_weighted_homogeneous(f: Polynomial) -> WeightVector | None:
    """Positive weights making f weighted homogeneous of degree 1, or None."""
    return detect_weights(f).weights
