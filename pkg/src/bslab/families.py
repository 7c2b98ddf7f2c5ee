"""Example families and corpus files.

Corpus files are JSON documents ``{"format": ..., "entries": [...]}`` or
JSON Lines with one entry object per line.  An entry looks like::

    {"label": "fab_2_5_2", "variables": ["x", "y"],
     "polynomial": "x^2*y^2 + x^5 + y^5", "source": "fab",
     "expected": {"ebs": {"value": 2, "provenance": "..."}, ...},
     "alpha": {"value": "1/2", "provenance": "f_ab family"},
     "no": {"value": 2, "provenance": "..."}, "seed": null}

``alpha`` and ``no`` are inputs handed to the bound checks; ``expected``
values are compared against what the engine computes.  Rationals are
written as ``"p/q"`` strings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from bslab.errors import PreconditionError
from bslab.exact_poly import LOCAL, Polynomial, PolyRing, as_rational, format_rational, parse_polynomial
from bslab.jacobian import milnor_number
from bslab.minimal_exponent import check_fab_parameters

CORPUS_FORMAT = "bslab-corpus/1"
SOURCES = ("fab", "brieskorn-pham", "join", "random", "custom")
DEFAULT_NAMES = ("x", "y", "z", "w")

# classical facts used as expectations; not computed by this package
PROV_FAB_ALPHA = "f_ab family: alpha = 1/a"
PROV_FAB_NO = "f_ab family: NO = d (Newton non-degenerate descent)"
PROV_FAB_EBS = "f_ab family: optimality of e^BS <= [d - 2 alpha] + 1"
PROV_QH_EBS = "quasi-homogeneous: Euler relation"
PROV_QH_ALPHA = "quasi-homogeneous: sum of weights"
PROV_QH_NO = "quasi-homogeneous: semisimple monodromy (classical)"
PROV_BP_MU = "Brieskorn-Pham: prod(a_i - 1)"
PROV_TS = "thom-sebastiani"


@dataclass(frozen=True)
class Expected:
    value: Any
    provenance: str

    def __post_init__(self):
        if not self.provenance:
            raise ValueError("expected values need a provenance")


@dataclass
class CorpusEntry:
    label: str
    polynomial: Polynomial
    source: str = "custom"
    expected: dict[str, Expected] = field(default_factory=dict)
    alpha: Expected | None = None  # value is a Fraction; provenance one of PROVENANCES
    no: Expected | None = None
    seed: int | None = None
    retries: int | None = None

    @property
    def variables(self) -> tuple[str, ...]:
        return self.polynomial.ring.variables

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "label": self.label,
            "variables": list(self.variables),
            "polynomial": str(self.polynomial),
            "source": self.source,
        }
        if self.expected:
            out["expected"] = {k: _value_dict(v) for k, v in sorted(self.expected.items())}
        if self.alpha is not None:
            out["alpha"] = _value_dict(self.alpha)
        if self.no is not None:
            out["no"] = _value_dict(self.no)
        if self.seed is not None:
            out["seed"] = self.seed
            out["retries"] = self.retries
        return out

    @classmethod
    def from_dict(cls, data: dict) -> CorpusEntry:
        f = parse_polynomial(data["polynomial"], data["variables"])
        expected = {k: _value_from(k, v) for k, v in data.get("expected", {}).items()}
        alpha = _value_from("alpha", data["alpha"]) if data.get("alpha") else None
        no = _value_from("no", data["no"]) if data.get("no") else None
        return cls(data["label"], f, data.get("source", "custom"), expected, alpha, no,
                   data.get("seed"), data.get("retries"))


def _encode(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if value == float("inf"):
        return "infinite"
    return value


def _value_dict(e: Expected) -> dict:
    return {"value": _encode(e.value), "provenance": e.provenance}


def _value_from(key: str, data: dict) -> Expected:
    v = data["value"]
    if key in ("alpha",):
        v = as_rational(v)
    elif key == "weights":
        v = tuple(as_rational(x) for x in v)
    elif key == "milnor" and v == "infinite":
        v = float("inf")
    return Expected(v, data["provenance"])


def _names(d: int) -> list[str]:
    if d <= len(DEFAULT_NAMES):
        return list(DEFAULT_NAMES[:d])
    return [f"x{i + 1}" for i in range(d)]


def make_fab(a: int, b: int, d: int) -> CorpusEntry:
    """prod x_i^a + sum x_i^b with its known invariants attached."""
    check_fab_parameters(a, b, d)
    ring = PolyRing(tuple(_names(d)), LOCAL)
    terms = {tuple([a] * d): 1}
    for i in range(d):
        e = [0] * d
        e[i] = b
        terms[tuple(e)] = 1
    f = ring.from_terms(terms)
    alpha = Fraction(1, a)
    return CorpusEntry(
        f"fab_{a}_{b}_{d}", f, "fab",
        expected={
            "alpha": Expected(alpha, PROV_FAB_ALPHA),
            "no": Expected(d, PROV_FAB_NO),
            "ebs": Expected(d, PROV_FAB_EBS),
        },
        alpha=Expected(alpha, "f_ab family"),
        no=Expected(d, PROV_FAB_NO),
    )


def make_brieskorn_pham(exponents: Iterable[int]) -> CorpusEntry:
    exps = [int(a) for a in exponents]
    if not exps or any(a < 2 for a in exps):
        raise PreconditionError("Brieskorn-Pham exponents must all be >= 2")
    d = len(exps)
    ring = PolyRing(tuple(_names(d)), LOCAL)
    terms = {}
    for i, a in enumerate(exps):
        e = [0] * d
        e[i] = a
        terms[tuple(e)] = 1
    f = ring.from_terms(terms)
    weights = tuple(Fraction(1, a) for a in exps)
    mu = 1
    for a in exps:
        mu *= a - 1
    return CorpusEntry(
        "bp_" + "_".join(map(str, exps)), f, "brieskorn-pham",
        expected={
            "weights": Expected(weights, PROV_QH_ALPHA),
            "alpha": Expected(sum(weights, Fraction(0)), PROV_QH_ALPHA),
            "milnor": Expected(mu, PROV_BP_MU),
            "ebs": Expected(1, PROV_QH_EBS),
        },
        no=Expected(1, PROV_QH_NO),
    )


def _fresh_names(left: Iterable[str], right: Iterable[str]) -> list[str]:
    used = set(left)
    out = []
    for name in right:
        k = 1
        while f"{name}{k}" in used:
            k += 1
        new = f"{name}{k}"
        used.add(new)
        out.append(new)
    return out


def sum_disjoint(f: CorpusEntry, g: CorpusEntry) -> CorpusEntry:
    """Thom-Sebastiani join f ⊕ g on disjoint variables.

    The left operand keeps its names; the right one is renamed with numeric
    suffixes.  Expectations combine where the classical rules give them.
    """
    for entry in (f, g):
        if entry.polynomial.is_zero() or entry.polynomial.min_degree() < 2:
            raise PreconditionError(f"{entry.label}: join operands must be singular at the origin")
    lv = list(f.variables)
    rv = _fresh_names(lv, g.variables)
    ring = PolyRing(tuple(lv + rv), LOCAL)
    n = len(lv)
    h = f.polynomial.embed(ring, range(n)) + g.polynomial.embed(ring, range(n, n + len(rv)))
    expected: dict[str, Expected] = {}
    fe, ge = f.expected, g.expected
    if "alpha" in fe and "alpha" in ge:
        expected["alpha"] = Expected(fe["alpha"].value + ge["alpha"].value, PROV_TS)
    if "ebs" in fe and "ebs" in ge and ge["ebs"].value == 1:
        expected["ebs"] = Expected(fe["ebs"].value, PROV_TS)
    if "milnor" in fe and "milnor" in ge:
        expected["milnor"] = Expected(fe["milnor"].value * ge["milnor"].value, PROV_TS + ": mu multiplies")
    if "weights" in fe and "weights" in ge:
        expected["weights"] = Expected(tuple(fe["weights"].value) + tuple(ge["weights"].value), PROV_TS)
    no = None
    if f.no is not None and g.no is not None:
        # largest Jordan block of a tensor product of unipotent blocks p, q is p + q - 1
        no = Expected(f.no.value + g.no.value - 1, PROV_TS + ": NO(f) + NO(g) - 1")
        expected["no"] = no
    alpha = None
    if f.alpha is not None and g.alpha is not None:
        alpha = Expected(f.alpha.value + g.alpha.value, "thom-sebastiani")
    elif "alpha" in expected and "weights" not in expected:
        alpha = Expected(expected["alpha"].value, "thom-sebastiani")
    return CorpusEntry(f"{f.label}+{g.label}", h, "join", expected, alpha, no)


def _random_polynomial(rng: np.random.Generator, ring: PolyRing, max_degree: int) -> Polynomial:
    d = ring.nvars
    monos = []
    for total in range(2, max_degree + 1):
        for m in np.ndindex(*([total + 1] * d)):
            if sum(m) == total:
                monos.append(tuple(int(e) for e in m))
    coeffs = [c for c in range(-3, 4) if c]
    nterms = int(rng.integers(d, d + 4))
    picks = rng.choice(len(monos), size=min(nterms, len(monos)), replace=False)
    terms = {monos[int(i)]: int(coeffs[int(rng.integers(len(coeffs)))]) for i in sorted(picks)}
    return ring.from_terms(terms)


def random_isolated(seed: int, d: int, max_degree: int, *, retry_budget: int = 200) -> CorpusEntry:
    """Seeded random polynomial in m^2 with an isolated singularity at 0.

    Draws come from a Philox (counter-based) stream keyed by the seed, so the
    same seed always reproduces the same entry.
    """
    if d not in (2, 3):
        raise PreconditionError("random entries use d in {2, 3}")
    if not 2 <= max_degree <= 8:
        raise PreconditionError("max_degree must be in [2, 8]")
    ring = PolyRing(tuple(_names(d)), LOCAL)
    rng = np.random.Generator(np.random.Philox(key=seed))
    for attempt in range(retry_budget):
        f = _random_polynomial(rng, ring, max_degree)
        mu = milnor_number(f)
        if mu != float("inf"):
            return CorpusEntry(f"random_s{seed}_d{d}_deg{max_degree}", f, "random",
                               seed=seed, retries=attempt)
    raise PreconditionError(f"no isolated singularity found after {retry_budget} draws")


# --- files -----------------------------------------------------------------

def dump_corpus(entries: Iterable[CorpusEntry], path: str | Path | None = None, *,
                lines: bool = False) -> str:
    entries = list(entries)
    if lines:
        text = "".join(json.dumps(e.to_dict(), sort_keys=False) + "\n" for e in entries)
    else:
        doc = {"format": CORPUS_FORMAT, "entries": [e.to_dict() for e in entries]}
        text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def parse_corpus(text: str) -> list[CorpusEntry]:
    """Read a JSON corpus document, a bare JSON list, or JSON Lines."""
    if not text.strip():
        return []
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return [CorpusEntry.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]
    if isinstance(doc, dict) and "entries" in doc:
        return [CorpusEntry.from_dict(e) for e in doc["entries"]]
    if isinstance(doc, list):
        return [CorpusEntry.from_dict(e) for e in doc]
    return [CorpusEntry.from_dict(doc)]


BUNDLED = {"paper_families": "paper_families.json"}


def bundled_corpus_path(name: str) -> Path:
    return Path(__file__).parent / "data" / BUNDLED[name]


def load_corpus(path_or_name: str | Path) -> list[CorpusEntry]:
    if str(path_or_name) in BUNDLED:
        path = bundled_corpus_path(str(path_or_name))
    else:
        path = Path(path_or_name)
    return parse_corpus(path.read_text(encoding="utf-8"))


def paper_families() -> list[CorpusEntry]:
    """The bundled corpus: f_{a,b} family, Brieskorn-Pham entries and joins."""
    fab = [make_fab(2, 5, 2), make_fab(3, 7, 2), make_fab(2, 7, 3), make_fab(3, 10, 2)]
    bp = [make_brieskorn_pham(e) for e in
          ([2, 2], [2, 3], [3, 3], [3, 5], [2, 2, 2], [2, 2, 2, 2], [2, 2, 2, 3], [3, 3, 3])]
    quad2 = make_brieskorn_pham([2, 2])
    joins = [
        sum_disjoint(fab[0], quad2),
        sum_disjoint(make_brieskorn_pham([2, 3]), make_brieskorn_pham([2, 3])),
        sum_disjoint(fab[1], quad2),
    ]
    return fab + bp + joins
