"""Exact sparse multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`; exponent vectors are tuples of
non-negative ints.  Polynomials are immutable and hashable.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from bslab.errors import ParseError, RingMismatchError

Rational = Fraction
Monomial = tuple  # tuple[int, ...]

MAX_EXPONENT = 2**31 - 1
_IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def weighted_degree(m: Sequence[int], w: Sequence[Fraction]) -> Fraction:
    if len(m) != len(w):
        raise ValueError(f"weight vector has length {len(w)}, monomial has {len(m)}")
    return sum((Fraction(wi) * mi for wi, mi in zip(w, m)), Fraction(0))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    if out and max(out) > MAX_EXPONENT:
        raise OverflowError("exponent overflow")
    return out


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


class MonomialOrder:
    """Weighted degree-reverse-lexicographic orders, global or local.

    ``global`` compares weighted degree descending (bigger degree is bigger),
    ``local`` ascending (so ``1 > x_i``).  Ties are broken reverse
    lexicographically in both cases.  ``key(m)`` is a sort key that grows
    with the order.
    """

    GLOBAL = "global-degrevlex"
    LOCAL = "local-negdegrevlex"

    def __init__(self, kind: str = LOCAL, weights: Sequence | None = None):
        aliases = {"global": self.GLOBAL, "local": self.LOCAL}
        kind = aliases.get(kind, kind)
        if kind not in (self.GLOBAL, self.LOCAL):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.weights: tuple[Fraction, ...] | None = None
        self._int_weights: tuple[int, ...] | None = None
        if weights is not None:
            ws = tuple(as_rational(w) for w in weights)
            if any(w <= 0 for w in ws):
                raise ValueError("order weights must be positive")
            self.weights = ws
            scale = math.lcm(*(w.denominator for w in ws))
            self._int_weights = tuple(int(w * scale) for w in ws)
            if all(w == 1 for w in self._int_weights):
                self._int_weights = None
        self.key: Callable[[Monomial], tuple] = self._make_key()

    @property
    def is_local(self) -> bool:
        return self.kind == self.LOCAL

    def _make_key(self):
        iw = self._int_weights
        sign = -1 if self.is_local else 1
        if iw is None:
            def key(m):
                return (sign * sum(m), tuple(-e for e in reversed(m)))
        else:
            def key(m):
                return (sign * sum(a * b for a, b in zip(iw, m)), tuple(-e for e in reversed(m)))
        return key

    def degree(self, m: Monomial) -> int:
        """Integer-scaled weighted degree used for ecart and truncation."""
        iw = self._int_weights
        if iw is None:
            return sum(m)
        return sum(a * b for a, b in zip(iw, m))

    def check_arity(self, n: int) -> None:
        if self.weights is not None and len(self.weights) != n:
            raise RingMismatchError(f"order has {len(self.weights)} weights, ring has {n} variables")

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        if self.weights is None:
            return f"MonomialOrder({self.kind!r})"
        return f"MonomialOrder({self.kind!r}, weights={[format_rational(w) for w in self.weights]})"


LOCAL = MonomialOrder(MonomialOrder.LOCAL)
GLOBAL = MonomialOrder(MonomialOrder.GLOBAL)


@dataclass(frozen=True)
class PolyRing:
    """A ring context Q[x_1..x_n]; equality is by variable list."""

    variables: tuple[str, ...]
    order: MonomialOrder = field(default=LOCAL, compare=False)

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if not vs:
            raise ValueError("a ring needs at least one variable")
        for v in vs:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate variable names")
        self.order.check_arity(len(vs))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = as_rational(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def gen(self, i: int) -> Polynomial:
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def var(self, name: str) -> Polynomial:
        return self.gen(self.variables.index(name))

    def monomial(self, exps: Sequence[int], coeff=1) -> Polynomial:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        c = as_rational(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def from_terms(self, terms: Mapping | Iterable) -> Polynomial:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for m, c in items:
            m = tuple(int(e) for e in m)
            if len(m) != self.nvars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m}")
            acc[m] = acc.get(m, Fraction(0)) + as_rational(c)
        return Polynomial(self, {m: c for m, c in acc.items() if c})

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self.variables, order=self.order)

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.variables, order)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        # callers guarantee canonical input: no zero coefficients, right arity
        self.ring = ring
        self._terms = terms
        self._hash = None

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, Fraction]]:
        order = order or self.ring.order
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def support(self) -> list[Monomial]:
        return [m for m, _ in self.sorted_terms()]

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        order = order or self.ring.order
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder | None = None) -> Fraction:
        return self._terms[self.leading_monomial(order)]

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(m) for m in self._terms), default=-1)

    def _check(self, other: Polynomial) -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"rings differ: {self.ring.variables} vs {other.ring.variables}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {m: a * c for m, a in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, Fraction] = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                c = out.get(m)
                out[m] = ca * cb if c is None else c + ca * cb
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, m: Monomial, c) -> Polynomial:
        c = as_rational(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {mono_mul(k, m): v * c for k, v in self._terms.items()})

    def derivative(self, i: int) -> Polynomial:
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial(self.ring, out)

    def evaluate_at_origin(self) -> Fraction:
        return self.constant_term()

    def rename(self, ring: PolyRing) -> Polynomial:
        """Same terms, another ring with the same number of variables."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError("variable counts differ")
        return Polynomial(ring, dict(self._terms))

    def embed(self, ring: PolyRing, positions: Sequence[int]) -> Polynomial:
        """Map variable i of self to variable positions[i] of ``ring``."""
        out = {}
        for m, c in self._terms.items():
            e = [0] * ring.nvars
            for i, p in enumerate(positions):
                e[p] = m[i]
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == self.ring.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, {list(self.ring.variables)})"


def partial_derivatives(f: Polynomial) -> list[Polynomial]:
    return [f.derivative(i) for i in range(f.ring.nvars)]


def format_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    """Render in the parser's grammar, terms in descending ``order``.

    The ring's order is local by default, so low-degree terms come first.
    """
    if f.is_zero():
        return "0"
    names = f.ring.variables
    parts = []
    for m, c in f.sorted_terms(order):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if not factors:
            body = format_rational(a) if a.denominator == 1 else f"({format_rational(a)})"
        elif a == 1:
            body = "*".join(factors)
        elif a.denominator == 1:
            body = f"{a.numerator}*" + "*".join(factors)
        else:
            body = f"({format_rational(a)})*" + "*".join(factors)
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = mt.lastgroup
        start = mt.start(kind)
        tokens.append((kind, mt.group(kind), start))
        pos = mt.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive descent over the term grammar.

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := coeff | '(' ['+'|'-'] coeff ')' | ident ['^' int]
    coeff  := int ['/' int]
    """

    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {v: k for k, v in enumerate(variables)}
        self.n = len(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> dict:
        acc: dict[Monomial, Fraction] = {}
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            self.i += 1
        while True:
            m, c = self.term()
            acc[m] = acc.get(m, Fraction(0)) + sign * c
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                sign = -1 if tok[1] == "-" else 1
                self.i += 1
                continue
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return {m: c for m, c in acc.items() if c}

    def coeff(self) -> Fraction:
        num = self.take("num")
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "/":
            self.i += 1
            den = self.take("num")
            if int(den[1]) == 0:
                raise ParseError("division by zero", den[2])
            return Fraction(int(num[1]), int(den[1]))
        return Fraction(int(num[1]))

    def factor(self, exps: list[int]) -> Fraction:
        tok = self.peek()
        if tok[0] == "num":
            return self.coeff()
        if tok[0] == "op" and tok[1] == "(":
            self.i += 1
            sign = 1
            inner = self.peek()
            if inner[0] == "op" and inner[1] in "+-":
                sign = -1 if inner[1] == "-" else 1
                self.i += 1
            c = self.coeff()
            self.take("op", ")")
            return sign * c
        if tok[0] == "ident":
            self.i += 1
            if tok[1] not in self.index:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            k = 1
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "^":
                self.i += 1
                e = self.take("num")
                k = int(e[1])
                if k > MAX_EXPONENT:
                    raise ParseError("exponent too large", e[2])
            exps[self.index[tok[1]]] += k
            return Fraction(1)
        raise ParseError(f"expected a coefficient or variable, got {tok[1] or 'end of input'!r}", tok[2])

    def term(self) -> tuple[Monomial, Fraction]:
        exps = [0] * self.n
        c = self.factor(exps)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.i += 1
                c *= self.factor(exps)
            else:
                break
        return tuple(exps), c


def parse_polynomial(text: str, variables: Sequence[str], order: MonomialOrder | None = None) -> Polynomial:
    """Parse ``text`` into a polynomial over ``variables``.

    >>> str(parse_polynomial("x^2*y^2 + x^5 + y^5", ["x", "y"]))
    'x^2*y^2 + x^5 + y^5'
    """
    ring = PolyRing(tuple(variables), order or LOCAL)
    return Polynomial(ring, _Parser(text, ring.variables).parse())


def infer_variables(text: str) -> list[str]:
    """Identifiers in order of first appearance."""
    seen: list[str] = []
    for kind, value, _ in _tokenize(text):
        if kind == "ident" and value not in seen:
            seen.append(value)
    return seen
