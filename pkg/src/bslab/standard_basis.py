"""Standard bases for global and local monomial orders.

Global orders use Buchberger's algorithm.  Local orders are handled by
Lazard's homogenization: generators are homogenized with an extra variable
t, a Groebner basis is computed for the order that compares total degree
first and breaks ties with the local order on the x-part, and t is set to 1.
The result is a standard basis in the localization at the origin.  Mora's
tangent cone normal form (reducer pool grown by intermediate remainders,
reducers of minimal ecart) is kept as an independent engine and drives the
cofactor-tracked certificates.

Membership in the localization at the origin decided here also decides
membership in the analytic (convergent or formal) local ring, since the
completion is faithfully flat over the algebraic localization.

Once the leading ideal contains every monomial of (weighted) degree >= N,
those monomials lie in the ideal of the local ring (the "highest corner"),
and all later arithmetic is truncated at degree N.
"""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from bslab.errors import InternalInconsistencyError, ResourceLimitError, RingMismatchError
from bslab.exact_poly import (
    LOCAL,
    MonomialOrder,
    Polynomial,
    PolyRing,
    mono_div,
    mono_divides,
    mono_lcm,
)

DEFAULT_MAX_PAIRS = 10_000
DEFAULT_MAX_BASIS = 1_000


def default_caps() -> tuple[int, int]:
    """Resource caps, overridable through BSLAB_MAX_PAIRS / BSLAB_MAX_BASIS."""
    pairs = int(os.environ.get("BSLAB_MAX_PAIRS", DEFAULT_MAX_PAIRS))
    basis = int(os.environ.get("BSLAB_MAX_BASIS", DEFAULT_MAX_BASIS))
    return pairs, basis


# --- dict-level helpers ----------------------------------------------------

def _axpy(h: dict, c: Fraction, shift: tuple, g: dict, trunc=None, degree=None) -> dict:
    """Return h - c * x^shift * g, optionally dropping terms of degree >= trunc."""
    out = dict(h)
    for m, a in g.items():
        k = tuple(x + y for x, y in zip(m, shift))
        if trunc is not None and degree(k) >= trunc:
            continue
        v = out.get(k)
        if v is None:
            out[k] = -c * a
        else:
            v -= c * a
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            k = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(k)
            out[k] = ca * cb if v is None else v + ca * cb
    return {k: v for k, v in out.items() if v}


def _shift(a: dict, c: Fraction, s: tuple) -> dict:
    return {tuple(x + y for x, y in zip(m, s)): v * c for m, v in a.items()}


def _add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for m, v in b.items():
        w = out.get(m, 0) + sign * v
        if w:
            out[m] = w
        else:
            out.pop(m, None)
    return out


class _Elem:
    __slots__ = ("terms", "lm", "lc", "ecart", "cof")

    def __init__(self, terms: dict, order: MonomialOrder, cof=None):
        self.terms = terms
        self.lm = max(terms, key=order.key)
        self.lc = terms[self.lm]
        if order.is_local:
            self.ecart = max(order.degree(m) for m in terms) - order.degree(self.lm)
        else:
            self.ecart = 0
        self.cof = cof


def _truncate(terms: dict, trunc, degree, keep=None) -> dict:
    if trunc is None:
        return terms
    return {m: c for m, c in terms.items() if degree(m) < trunc or m == keep}


def _monic(terms: dict, lc: Fraction) -> dict:
    if lc == 1:
        return terms
    inv = 1 / lc
    return {m: c * inv for m, c in terms.items()}


# --- normal forms ----------------------------------------------------------

def _reduce_global(h: dict, basis: list[_Elem], order: MonomialOrder) -> dict:
    """Full Buchberger reduction."""
    rem: dict = {}
    key = order.key
    while h:
        lm = max(h, key=key)
        for g in basis:
            if mono_divides(g.lm, lm):
                h = _axpy(h, h[lm] / g.lc, mono_div(lm, g.lm), g.terms)
                break
        else:
            rem[lm] = h.pop(lm)
    return rem


def _mora_weak(h: dict, basis: list[_Elem], order: MonomialOrder) -> dict:
    """Mora's weak normal form: result has an irreducible leading monomial."""
    key, degree = order.key, order.degree
    pool = list(basis)
    while h:
        lm = max(h, key=key)
        best = None
        for t in pool:
            if (best is None or t.ecart < best.ecart) and mono_divides(t.lm, lm):
                best = t
                if t.ecart == 0:
                    break
        if best is None:
            return h
        h_ecart = max(degree(m) for m in h) - degree(lm)
        if best.ecart > h_ecart:
            pool.append(_Elem(h, order))
        h = _axpy(h, h[lm] / best.lc, mono_div(lm, best.lm), best.terms)
    return h


def _reduce_truncated(h: dict, basis: list[_Elem], order: MonomialOrder, trunc: int,
                      full: bool) -> dict:
    """Division modulo monomials of degree >= trunc (which lie in the ideal).

    Terminates without pool growth: leading monomials strictly decrease inside
    the finite set of monomials of degree < trunc.
    """
    key, degree = order.key, order.degree
    h = _truncate(h, trunc, degree)
    rem: dict = {}
    while h:
        lm = max(h, key=key)
        best = None
        for t in basis:
            if (best is None or t.ecart < best.ecart) and mono_divides(t.lm, lm):
                best = t
                if t.ecart == 0:
                    break
        if best is None:
            if not full:
                return h
            rem[lm] = h.pop(lm)
            continue
        h = _axpy(h, h[lm] / best.lc, mono_div(lm, best.lm), best.terms, trunc, degree)
    return rem


def _mora_tracked(h: dict, basis: list[_Elem], order: MonomialOrder, ngens: int, zero_mono):
    """Mora weak normal form with cofactor bookkeeping.

    Maintains u * p = sum(Q_i * gens_i) + h, where every basis element carries
    its own expression in terms of the original generators.
    """
    key, degree = order.key, order.degree
    unit = {zero_mono: Fraction(1)}
    q = [{} for _ in range(ngens)]
    # pool entries: (elem, unit_t, q_t) with unit_t None for basis elements
    pool = [(g, None, None) for g in basis]
    while h:
        lm = max(h, key=key)
        best = None
        for entry in pool:
            t = entry[0]
            if (best is None or t.ecart < best[0].ecart) and mono_divides(t.lm, lm):
                best = entry
        if best is None:
            break
        t, u_t, q_t = best
        h_ecart = max(degree(m) for m in h) - degree(lm)
        if t.ecart > h_ecart:
            pool.append((_Elem(h, order), dict(unit), [dict(x) for x in q]))
        c = h[lm] / t.lc
        s = mono_div(lm, t.lm)
        h = _axpy(h, c, s, t.terms)
        if u_t is None:
            for i in range(ngens):
                if t.cof[i]:
                    q[i] = _add(q[i], _shift(t.cof[i], c, s))
        else:
            unit = _add(unit, _shift(u_t, c, s), -1)
            for i in range(ngens):
                if q_t[i]:
                    q[i] = _add(q[i], _shift(q_t[i], c, s), -1)
    return h, unit, q


# --- data types ------------------------------------------------------------

@dataclass(frozen=True)
class StandardBasis:
    """A standard basis together with its order and leading monomials."""

    generators: tuple[Polynomial, ...]
    order: MonomialOrder
    leading_monomials: tuple[tuple, ...]
    ring: PolyRing
    # degree bound N: every monomial of order-degree >= N lies in the ideal
    highest_corner: int | None = None
    tail_reduced: bool = True

    def __len__(self):
        return len(self.generators)

    def _elems(self) -> list[_Elem]:
        return [_Elem(dict(g.terms), self.order) for g in self.generators]

    def reduce(self, p: Polynomial, full: bool = False) -> Polynomial:
        """Normal form of ``p``; zero iff ``p`` is in the ideal."""
        if p.ring != self.ring:
            raise RingMismatchError("polynomial and basis live in different rings")
        elems = self._elems()
        h = dict(p.terms)
        if not self.order.is_local:
            out = _reduce_global(h, elems, self.order)
        elif self.highest_corner is not None:
            out = _reduce_truncated(h, elems, self.order, self.highest_corner, full)
        else:
            out = _mora_weak(h, elems, self.order)
        return Polynomial(self.ring, out)

    def contains(self, p: Polynomial) -> bool:
        """Ideal membership (in the localization for local orders).

        Without a highest corner, a local weak normal form can take a very
        long detour, so membership is decided on leading ideals instead: for
        I contained in I' = I + (p) with L(I) = L(I'), the ideals coincide.
        """
        if p.ring != self.ring:
            raise RingMismatchError("polynomial and basis live in different rings")
        if not self.order.is_local or self.highest_corner is not None:
            return self.reduce(p).is_zero()
        if p.is_zero():
            return True
        if not self.generators:
            return False
        bigger = compute_standard_basis(list(self.generators) + [p], self.order)
        return (minimal_monomials(bigger.leading_monomials)
                == minimal_monomials(self.leading_monomials))


@dataclass(frozen=True)
class Staircase:
    generators: tuple[tuple, ...]
    finite: bool
    standard_monomials: tuple[tuple, ...] | None

    @property
    def count(self):
        return len(self.standard_monomials) if self.finite else None


@dataclass(frozen=True)
class Certificate:
    """u * p = sum(cofactors[i] * gens[i]) with u(0) != 0."""

    p: Polynomial
    gens: tuple[Polynomial, ...]
    unit: Polynomial
    cofactors: tuple[Polynomial, ...]

    def verify(self) -> bool:
        if self.unit.constant_term() == 0:
            return False
        rhs = self.p.ring.zero()
        for q, g in zip(self.cofactors, self.gens):
            rhs = rhs + q * g
        return self.unit * self.p == rhs


# --- pair handling ---------------------------------------------------------

class _PairQueue:
    """Critical pairs with Gebauer-Moeller pruning and normal selection."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.live: dict[tuple[int, int], tuple] = {}
        self.heap: list = []

    def __len__(self):
        return len(self.live)

    def pop(self):
        while self.heap:
            deg, i, j = heapq.heappop(self.heap)
            if (i, j) in self.live:
                del self.live[(i, j)]
                return i, j
        raise IndexError("no pairs")

    def update(self, lms: list[tuple], new: int) -> None:
        lmf = lms[new]
        # old pairs made redundant by the new element (chain criterion)
        for (i, j), lcm_ij in list(self.live.items()):
            if (mono_divides(lmf, lcm_ij)
                    and mono_lcm(lms[i], lmf) != lcm_ij
                    and mono_lcm(lms[j], lmf) != lcm_ij):
                del self.live[(i, j)]
        groups: dict[tuple, list[int]] = {}
        for i in range(new):
            groups.setdefault(mono_lcm(lms[i], lmf), []).append(i)
        lcms = sorted(groups, key=lambda m: (sum(m), m))
        kept = []
        for lcm in lcms:
            # drop pairs whose lcm is properly divisible by another new lcm
            if any(mono_divides(other, lcm) and other != lcm for other in lcms):
                continue
            members = groups[lcm]
            coprime = [i for i in members if all(a == 0 or b == 0 for a, b in zip(lms[i], lmf))]
            if coprime:
                continue
            kept.append((min(members), lcm))
        for i, lcm in kept:
            self.live[(i, new)] = lcm
            heapq.heappush(self.heap, (self.order.degree(lcm), i, new))


# --- staircase -------------------------------------------------------------

def minimal_monomials(monos: Sequence[tuple]) -> list[tuple]:
    uniq = sorted(set(monos), key=lambda m: (sum(m), m))
    out: list[tuple] = []
    for m in uniq:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def staircase_of(leading: Sequence[tuple], nvars: int) -> Staircase:
    gens = minimal_monomials(leading)
    bounds = []
    for i in range(nvars):
        pure = [g[i] for g in gens if all(e == 0 for k, e in enumerate(g) if k != i)]
        bounds.append(min(pure) if pure else None)
    if any(b is None for b in bounds):
        return Staircase(tuple(gens), False, None)
    std = [m for m in product(*(range(b) for b in bounds))
           if not any(mono_divides(g, m) for g in gens)]
    std.sort(key=lambda m: (sum(m), m))
    return Staircase(tuple(gens), True, tuple(std))


def staircase(basis: StandardBasis) -> Staircase:
    """Minimal leading-ideal generators and, when finite, the standard monomials."""
    return staircase_of(basis.leading_monomials, basis.ring.nvars)


def _corner(lms: Sequence[tuple], nvars: int, order: MonomialOrder) -> int | None:
    st = staircase_of(lms, nvars)
    if not st.finite:
        return None
    return 1 + max((order.degree(m) for m in st.standard_monomials), default=-1)


# --- main algorithm --------------------------------------------------------

def _check_inputs(gens: Sequence[Polynomial], order: MonomialOrder) -> PolyRing:
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for g in gens[1:]:
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
    order.check_arity(ring.nvars)
    return ring


def _spoly(a: _Elem, b: _Elem, lcm: tuple) -> tuple[dict, tuple, Fraction, tuple]:
    sa = mono_div(lcm, a.lm)
    sb = mono_div(lcm, b.lm)
    c = a.lc / b.lc
    s = _shift(a.terms, Fraction(1), sa)
    s = _axpy(s, c, sb, b.terms)
    return s, sa, c, sb


def _standard_basis_elems(gens: Sequence[Polynomial], order: MonomialOrder, *, max_pairs: int,
                          max_basis: int, track: bool = False, truncate: bool = True):
    """Core loop.  Returns (elements, highest_corner)."""
    ring = gens[0].ring
    n = ring.nvars
    zero = (0,) * n
    degree = order.degree
    basis: list[_Elem] = []
    lms: list[tuple] = []
    queue = _PairQueue(order)
    corner: int | None = None
    use_corner = truncate and order.is_local and not track

    def add(terms: dict, cof) -> None:
        nonlocal corner
        if corner is not None:
            terms = _truncate(terms, corner, degree, max(terms, key=order.key))
        e = _Elem(terms, order, cof)
        if track:
            inv = 1 / e.lc
            e.cof = [{m: c * inv for m, c in x.items()} for x in cof]
        e.terms = _monic(terms, e.lc)
        e.lc = Fraction(1)
        basis.append(e)
        lms.append(e.lm)
        if len(basis) > max_basis:
            raise ResourceLimitError(f"basis size exceeded {max_basis}", basis_size=len(basis))
        queue.update(lms, len(basis) - 1)
        if use_corner:
            c = _corner(lms, n, order)
            if c is not None and (corner is None or c < corner):
                corner = c
                for g in basis:
                    g.terms = _truncate(g.terms, corner, degree, g.lm)
                    g.ecart = max(degree(m) for m in g.terms) - degree(g.lm)

    for k, g in enumerate(gens):
        if g.is_zero():
            continue
        cof = None
        if track:
            cof = [{} for _ in gens]
            cof[k] = {zero: Fraction(1)}
        add(dict(g.terms), cof)

    processed = 0
    while len(queue):
        processed += 1
        if processed > max_pairs:
            raise ResourceLimitError(f"pair count exceeded {max_pairs}", pairs=processed,
                                     basis_size=len(basis))
        i, j = queue.pop()
        a, b = basis[i], basis[j]
        lcm = mono_lcm(a.lm, b.lm)
        s, sa, c, sb = _spoly(a, b, lcm)
        if track:
            h, unit, q = _mora_tracked(s, basis, order, len(gens), zero)
        elif not order.is_local:
            h = _reduce_global(s, basis, order)
        elif corner is not None:
            h = _reduce_truncated(s, basis, order, corner, full=False)
        else:
            h = _mora_weak(s, basis, order)
        if not h:
            continue
        cof = None
        if track:
            s_cof = []
            for k in range(len(gens)):
                part = _add(_shift(a.cof[k], Fraction(1), sa), _shift(b.cof[k], c, sb), -1)
                s_cof.append(_add(_mul(unit, part), q[k], -1) if part or q[k] else {})
            cof = s_cof
        add(h, cof)
    return basis, corner


def _minimalize(basis: list[_Elem]) -> list[_Elem]:
    keep = []
    for k, g in enumerate(basis):
        redundant = False
        for l, other in enumerate(basis):
            if l == k or not mono_divides(other.lm, g.lm):
                continue
            if other.lm != g.lm or l < k:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    return keep


class _HomogenizedOrder:
    """Order on x^a t^k: homogeneous degree first, then the local order on x^a.

    Well-ordered on each homogeneous component, so Buchberger applies.
    """

    is_local = False

    def __init__(self, base: MonomialOrder, n: int):
        bkey, bdeg = base.key, base.degree

        def degree(m):
            return bdeg(m[:n]) + m[n]

        def key(m):
            return (degree(m), bkey(m[:n]))

        self.key, self.degree = key, degree


def _homogenize(terms: dict, order: MonomialOrder, extra: int = 0) -> dict:
    top = max(order.degree(m) for m in terms)
    return {m + (top - order.degree(m) + extra,): c for m, c in terms.items()}


def _dehomogenize(terms: dict, n: int) -> dict:
    out: dict = {}
    for m, c in terms.items():
        k = m[:n]
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _lazard_elems(gens: Sequence[Polynomial], order: MonomialOrder, *, max_pairs: int,
                  max_basis: int) -> list[_Elem]:
    """Local standard basis through a homogenized Groebner basis, dehomogenized."""
    ring = gens[0].ring
    n = ring.nvars
    t = next(f"t{k}" for k in range(n + 2) if f"t{k}" not in ring.variables)
    hring = PolyRing(ring.variables + (t,))
    horder = _HomogenizedOrder(order, n)
    hgens = [Polynomial(hring, _homogenize(g.terms, order)) for g in gens if not g.is_zero()]
    helems, _ = _standard_basis_elems(hgens, horder, max_pairs=max_pairs, max_basis=max_basis,
                                      truncate=False)
    return [_Elem(_dehomogenize(e.terms, n), order) for e in _minimalize(helems)]


def compute_standard_basis(gens: Sequence[Polynomial], order: MonomialOrder = LOCAL, *,
                           max_pairs: int | None = None, max_basis: int | None = None,
                           truncate: bool = True) -> StandardBasis:
    """Standard basis of the ideal generated by ``gens`` with respect to ``order``.

    The result is minimal (no leading monomial divides another), monic, and
    tail-reduced.  For a local order tail reduction is only performed modulo
    the highest corner; without one the tails are left as computed and
    ``tail_reduced`` is False.  Local orders go through Lazard's
    homogenization unless ``truncate=False``, which runs plain Mora
    (no homogenization, no corner truncation) as a reference engine.
    """
    ring = _check_inputs(gens, order)
    dp, db = default_caps()
    max_pairs, max_basis = max_pairs or dp, max_basis or db
    if order.is_local and truncate:
        elems = _minimalize(_lazard_elems(gens, order, max_pairs=max_pairs, max_basis=max_basis))
        corner = _corner([e.lm for e in elems], ring.nvars, order)
    else:
        elems, corner = _standard_basis_elems(gens, order, max_pairs=max_pairs,
                                              max_basis=max_basis, truncate=truncate)
        elems = _minimalize(elems)
    elems.sort(key=lambda e: order.key(e.lm), reverse=True)
    tail_reduced = True
    if not order.is_local:
        reduced = []
        for k, e in enumerate(elems):
            others = elems[:k] + elems[k + 1:]
            tail = _reduce_global({m: c for m, c in e.terms.items() if m != e.lm}, others, order)
            tail[e.lm] = Fraction(1)
            reduced.append(tail)
        gens_out = [Polynomial(ring, t) for t in reduced]
    elif corner is not None:
        # recompute the corner from the minimal leading ideal; it can only shrink
        corner = _corner([e.lm for e in elems], ring.nvars, order)
        for e in elems:
            e.terms = _monic(_truncate(e.terms, corner, order.degree, e.lm), e.lc)
            e.lc = Fraction(1)
            e.ecart = max(order.degree(m) for m in e.terms) - order.degree(e.lm)
        gens_out = []
        for k, e in enumerate(elems):
            others = elems[:k] + elems[k + 1:]
            tail = {m: c for m, c in e.terms.items() if m != e.lm}
            tail = _reduce_truncated(tail, others, order, corner, full=True)
            tail[e.lm] = Fraction(1)
            gens_out.append(Polynomial(ring, tail))
    else:
        tail_reduced = False
        gens_out = [Polynomial(ring, _monic(e.terms, e.lc)) for e in elems]
    lms = tuple(g.leading_monomial(order) for g in gens_out)
    return StandardBasis(tuple(gens_out), order, lms, ring, corner, tail_reduced)


def normal_form(p: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = LOCAL) -> Polynomial:
    """Divide ``p`` by ``G``.

    Global orders: full reduction, no monomial of the result is divisible by a
    leading monomial of ``G``.  Local orders: Mora's weak normal form, whose
    leading monomial is not divisible by any leading monomial of the (grown)
    reducer pool; ``p`` minus a unit multiple of the result lies in (G).
    """
    ring = p.ring
    for g in G:
        if g.ring != ring:
            raise RingMismatchError("polynomial and divisors live in different rings")
    order.check_arity(ring.nvars)
    elems = [_Elem(dict(g.terms), order) for g in G if not g.is_zero()]
    if order.is_local:
        out = _mora_weak(dict(p.terms), elems, order)
    else:
        out = _reduce_global(dict(p.terms), elems, order)
    return Polynomial(ring, out)


def ideal_membership_local(p: Polynomial, gens: Sequence[Polynomial], *,
                           basis: StandardBasis | None = None, max_pairs: int | None = None,
                           max_basis: int | None = None) -> bool:
    """Is ``p`` in the ideal generated by ``gens`` in the local ring at the origin?"""
    if basis is None:
        basis = compute_standard_basis(gens, LOCAL, max_pairs=max_pairs, max_basis=max_basis)
    if not basis.order.is_local:
        raise ValueError("membership at the origin needs a local order")
    return basis.contains(p)


def ideal_membership_global(p: Polynomial, gens: Sequence[Polynomial], order=None) -> bool:
    from bslab.exact_poly import GLOBAL
    basis = compute_standard_basis(gens, order or GLOBAL)
    return basis.contains(p)


def membership_certificate(p: Polynomial, gens: Sequence[Polynomial], *,
                           max_pairs: int | None = None,
                           max_basis: int | None = None) -> Certificate | None:
    """Cofactors and a unit witnessing local membership, or None if ``p`` is not a member.

    Runs untruncated Mora with full bookkeeping, so it is far slower than
    :func:`ideal_membership_local`; meant for small inputs.
    """
    ring = _check_inputs(gens, LOCAL)
    if p.ring != ring:
        raise RingMismatchError("polynomial and generators live in different rings")
    dp, db = default_caps()
    elems, _ = _standard_basis_elems(gens, LOCAL, max_pairs=max_pairs or dp,
                                     max_basis=max_basis or db, track=True)
    zero = (0,) * ring.nvars
    h, unit, q = _mora_tracked(dict(p.terms), elems, LOCAL, len(gens), zero)
    if h:
        return None
    cert = Certificate(p, tuple(gens), Polynomial(ring, unit),
                       tuple(Polynomial(ring, x) for x in q))
    if not cert.verify():
        raise InternalInconsistencyError("membership certificate failed exact verification")
    return cert
