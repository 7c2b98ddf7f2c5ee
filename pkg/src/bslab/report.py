"""Per-polynomial invariant reports, corpus runs, and their serialization."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from bslab.errors import BSLabError, NonsingularError, ParseError, PreconditionError, ResourceLimitError
from bslab.exact_poly import Polynomial, as_rational, format_rational, infer_variables, parse_polynomial
from bslab.families import CorpusEntry, Expected
from bslab.jacobian import (
    INFINITE,
    WeightVector,
    briancon_skoda_exponent,
    detect_weights,
    singularity_profile,
)
from bslab.minimal_exponent import (
    INEQUALITIES,
    BoundVerdict,
    MinimalExponent,
    alpha_fab,
    alpha_quasihomogeneous,
    evaluate_bounds,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
PROV_NO_QH = "quasi-homogeneous: semisimple monodromy (classical)"
PROV_NO_FAB = "f_ab family: NO = d"


@dataclass
class InvariantReport:
    label: str
    dimension: int | None = None
    ebs: int | None = None
    milnor: int | float | None = None
    weights: tuple[Fraction, ...] | None = None
    alpha: MinimalExponent | None = None
    no: Expected | None = None
    verdicts: list[BoundVerdict] = field(default_factory=list)
    skipped: dict[str, str] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)
    error: str | None = None
    error_kind: str | None = None  # "input" or "resource"
    timing_ms: dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if any(not v.holds for v in self.verdicts) or self.mismatches:
            return EXIT_VIOLATION
        if self.error_kind == "input":
            return EXIT_INPUT
        if self.error_kind == "resource":
            return EXIT_RESOURCE
        return EXIT_OK

    def verdict(self, ident: str) -> BoundVerdict | None:
        return next((v for v in self.verdicts if v.id == ident), None)

    def to_dict(self, timing: bool = True) -> dict:
        out: dict[str, Any] = {"label": self.label, "dimension": self.dimension, "ebs": self.ebs,
                               "milnor": _enc(self.milnor)}
        if self.weights is not None:
            out["weights"] = [format_rational(w) for w in self.weights]
        if self.alpha is not None:
            out["alpha"] = {"value": format_rational(self.alpha.value), "provenance": self.alpha.provenance}
        if self.no is not None:
            out["no"] = {"value": self.no.value, "provenance": self.no.provenance}
        out["verdicts"] = [{"id": v.id, "lhs": _enc(v.lhs), "rhs": _enc(v.rhs), "holds": v.holds,
                            "tight": v.tight} for v in self.verdicts]
        out["skipped"] = dict(self.skipped)
        out["flags"] = list(self.flags)
        if self.mismatches:
            out["mismatches"] = list(self.mismatches)
        if self.error is not None:
            out["error"] = {"kind": self.error_kind, "message": self.error}
        if timing:
            out["timing_ms"] = {k: round(v, 3) for k, v in self.timing_ms.items()}
        return out

    @classmethod
    def from_dict(cls, d: dict) -> InvariantReport:
        alpha = d.get("alpha")
        no = d.get("no")
        err = d.get("error")
        return cls(
            label=d["label"], dimension=d.get("dimension"), ebs=d.get("ebs"),
            milnor=_dec(d.get("milnor")),
            weights=tuple(as_rational(w) for w in d["weights"]) if "weights" in d else None,
            alpha=MinimalExponent(as_rational(alpha["value"]), alpha["provenance"]) if alpha else None,
            no=Expected(no["value"], no["provenance"]) if no else None,
            verdicts=[BoundVerdict(v["id"], _dec(v["lhs"]), _dec(v["rhs"])) for v in d.get("verdicts", [])],
            skipped=dict(d.get("skipped", {})), flags=list(d.get("flags", [])),
            mismatches=list(d.get("mismatches", [])),
            error=err["message"] if err else None, error_kind=err["kind"] if err else None,
            timing_ms=dict(d.get("timing_ms", {})),
        )


def _enc(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if v == INFINITE:
        return "infinite"
    return v


def _dec(v):
    if v == "infinite":
        return INFINITE
    if isinstance(v, str):
        return as_rational(v)
    return v


_RAT = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_NUM = {"anyOf": [{"type": "integer"}, _RAT]}
REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "bslab invariant report",
    "type": "object",
    "required": ["label", "dimension", "ebs", "milnor", "verdicts", "flags"],
    "properties": {
        "label": {"type": "string"},
        "dimension": {"type": ["integer", "null"]},
        "ebs": {"type": ["integer", "null"]},
        "milnor": {"anyOf": [{"type": "integer"}, {"const": "infinite"}, {"type": "null"}]},
        "weights": {"type": "array", "items": _RAT},
        "alpha": {"type": "object", "required": ["value", "provenance"],
                  "properties": {"value": _RAT, "provenance": {"type": "string", "minLength": 1}}},
        "no": {"type": "object", "required": ["value", "provenance"],
               "properties": {"value": {"type": "integer"}, "provenance": {"type": "string", "minLength": 1}}},
        "verdicts": {"type": "array", "items": {
            "type": "object", "required": ["id", "lhs", "rhs", "holds", "tight"],
            "properties": {"id": {"enum": list(INEQUALITIES)}, "lhs": _NUM, "rhs": _NUM,
                           "holds": {"type": "boolean"}, "tight": {"type": "boolean"}}}},
        "skipped": {"type": "object", "additionalProperties": {"type": "string"}},
        "flags": {"type": "array", "items": {"type": "string"}},
        "mismatches": {"type": "array", "items": {"type": "string"}},
        "error": {"type": "object", "properties": {"kind": {"enum": ["input", "resource"]},
                                                   "message": {"type": "string"}}},
        "timing_ms": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}


def recognize_fab(f: Polynomial) -> tuple[int, int] | None:
    """(a, b) if f is exactly prod x_i^a + sum x_i^b in some variable order, else None."""
    d = f.ring.nvars
    if d < 2 or len(f) != d + 1 or any(c != 1 for c in f.terms.values()):
        return None
    mixed = [m for m in f.terms if sum(1 for e in m if e) > 1]
    pure = [m for m in f.terms if sum(1 for e in m if e) == 1]
    if len(mixed) != 1 or len(pure) != d:
        return None
    a_set = set(mixed[0])
    if len(a_set) != 1:
        return None
    a = a_set.pop()
    bs = {max(m) for m in pure}
    axes = {m.index(max(m)) for m in pure}
    if len(bs) != 1 or axes != set(range(d)):
        return None
    b = bs.pop()
    if a < 2 or b <= d * a:
        return None
    return a, b


def verify_polynomial(f: Polynomial, *, label: str | None = None, alpha=None, no: int | None = None,
                      no_provenance: str = "supplied", alpha_provenance: str = "supplied",
                      max_pairs: int | None = None, max_basis: int | None = None) -> InvariantReport:
    """Compute every invariant of ``f`` at the origin and evaluate the applicable bounds."""
    rep = InvariantReport(label or str(f), dimension=f.ring.nvars)
    clock = time.perf_counter
    if f.is_zero() or f.constant_term() != 0:
        raise PreconditionError("f(0) must be 0 and f nonzero")

    t = clock()
    profile = singularity_profile(f, max_pairs=max_pairs, max_basis=max_basis)
    rep.timing_ms["profile"] = (clock() - t) * 1000
    if not profile.singular_at_origin:
        raise NonsingularError("nonsingular at origin")
    if profile.isolated is None:
        raise ResourceLimitError("resource limit while computing the Milnor number")
    rep.milnor = profile.milnor_number
    if not profile.isolated:
        rep.flags.append("not-isolated")

    t = clock()
    rep.ebs = briancon_skoda_exponent(f, max_pairs=max_pairs, max_basis=max_basis)
    rep.timing_ms["ebs"] = (clock() - t) * 1000

    t = clock()
    det = detect_weights(f)
    derived: MinimalExponent | None = None
    default_no: Expected | None = None
    if det.weights is not None:
        rep.weights = det.weights.weights
        if profile.isolated:
            derived = alpha_quasihomogeneous(det.weights)
            default_no = Expected(1, PROV_NO_QH)
    elif det.status == "inconclusive":
        rep.flags.append("weights-inconclusive")
    if derived is None:
        ab = recognize_fab(f)
        if ab is not None:
            derived = alpha_fab(ab[0], ab[1], f.ring.nvars)
            default_no = Expected(f.ring.nvars, PROV_NO_FAB)
    supplied = None
    if alpha is not None:
        supplied = alpha if isinstance(alpha, MinimalExponent) else MinimalExponent(as_rational(alpha),
                                                                                     alpha_provenance)
    if derived is not None:
        rep.alpha = derived
        if supplied is not None and supplied.value != derived.value:
            rep.flags.append(f"supplied-alpha-ignored:{format_rational(supplied.value)}")
    else:
        rep.alpha = supplied
    rep.timing_ms["alpha"] = (clock() - t) * 1000

    if no is not None:
        rep.no = Expected(int(no), no_provenance)
    else:
        rep.no = default_no

    t = clock()
    ev = evaluate_bounds(profile, rep.ebs, rep.alpha, rep.no.value if rep.no else None)
    rep.verdicts = list(ev.verdicts)
    rep.skipped = dict(ev.skipped)
    rep.timing_ms["bounds"] = (clock() - t) * 1000
    return rep


def _error_report(label: str, exc: BaseException) -> InvariantReport:
    kind = "resource" if isinstance(exc, ResourceLimitError) else "input"
    return InvariantReport(label, error=str(exc), error_kind=kind)


def verify_single(text: str, variables: Sequence[str] | None = None, **options) -> InvariantReport:
    """Parse ``text`` and run :func:`verify_polynomial`; errors propagate."""
    vs = list(variables) if variables else infer_variables(text)
    if not vs:
        raise PreconditionError("no variables: give --vars or a non-constant polynomial")
    f = parse_polynomial(text, vs)
    options.setdefault("label", text.strip())
    return verify_polynomial(f, **options)


def compare_expected(rep: InvariantReport, expected: dict[str, Expected]) -> list[str]:
    actual = {
        "ebs": rep.ebs,
        "milnor": rep.milnor,
        "alpha": rep.alpha.value if rep.alpha else None,
        "no": rep.no.value if rep.no else None,
        "weights": tuple(rep.weights) if rep.weights is not None else None,
    }
    out = []
    for key in sorted(expected):
        if key not in actual:
            out.append(f"{key}: unknown field")
            continue
        want = expected[key].value
        if key == "weights":
            want = tuple(want)
        if actual[key] != want:
            out.append(f"{key}: expected {_enc(want) if not isinstance(want, tuple) else [format_rational(w) for w in want]}"
                       f" ({expected[key].provenance}), got {_show(actual[key])}")
    return out


def _show(v):
    if isinstance(v, tuple):
        return [format_rational(w) for w in v]
    return _enc(v)


def verify_entry(entry: CorpusEntry, max_pairs: int | None = None,
                 max_basis: int | None = None) -> InvariantReport:
    """Run one corpus entry; errors become part of the report instead of propagating."""
    alpha = None
    if entry.alpha is not None:
        alpha = MinimalExponent(entry.alpha.value, entry.alpha.provenance)
    try:
        rep = verify_polynomial(entry.polynomial, label=entry.label, alpha=alpha,
                                no=entry.no.value if entry.no else None,
                                no_provenance=entry.no.provenance if entry.no else "supplied",
                                max_pairs=max_pairs, max_basis=max_basis)
    except (BSLabError, ValueError) as exc:
        return _error_report(entry.label, exc)
    rep.mismatches = compare_expected(rep, entry.expected)
    return rep


def _verify_entry_dict(args) -> dict:
    data, max_pairs, max_basis = args
    return verify_entry(CorpusEntry.from_dict(data), max_pairs, max_basis).to_dict()


@dataclass
class CorpusSummary:
    reports: list[InvariantReport]

    def counts(self) -> dict[str, dict[str, int]]:
        table = {i: {"pass": 0, "fail": 0, "tight": 0, "skipped": 0} for i in INEQUALITIES}
        for rep in self.reports:
            seen = set()
            for v in rep.verdicts:
                seen.add(v.id)
                table[v.id]["pass" if v.holds else "fail"] += 1
                table[v.id]["tight"] += int(v.tight)
            for i in INEQUALITIES:
                if i not in seen:
                    table[i]["skipped"] += 1
        return table

    @property
    def mismatches(self) -> int:
        return sum(len(r.mismatches) for r in self.reports)

    @property
    def exit_code(self) -> int:
        codes = {r.exit_code for r in self.reports}
        for code in (EXIT_VIOLATION, EXIT_INPUT, EXIT_RESOURCE):
            if code in codes:
                return code
        return EXIT_OK

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "entries": len(self.reports),
            "summary": self.counts(),
            "mismatches": self.mismatches,
            "errors": sum(1 for r in self.reports if r.error is not None),
            "exit_code": self.exit_code,
            "reports": [r.to_dict(timing) for r in self.reports],
        }


def run_corpus(entries: Iterable[CorpusEntry], *, jobs: int = 1, max_pairs: int | None = None,
               max_basis: int | None = None) -> CorpusSummary:
    """Verify every entry; report order follows entry order whatever ``jobs`` is."""
    entries = list(entries)
    if jobs <= 1 or len(entries) <= 1:
        return CorpusSummary([verify_entry(e, max_pairs, max_basis) for e in entries])
    payload = [(e.to_dict(), max_pairs, max_basis) for e in entries]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        dicts = list(pool.map(_verify_entry_dict, payload))
    return CorpusSummary([InvariantReport.from_dict(d) for d in dicts])


# --- rendering -------------------------------------------------------------

def _table_row(rep: InvariantReport) -> list[str]:
    alpha = format_rational(rep.alpha.value) if rep.alpha else "-"
    verdicts = " ".join(f"{v.id}{'=' if v.tight else ('<' if v.holds else '!')}" for v in rep.verdicts)
    status = "ok" if rep.exit_code == EXIT_OK else ("ERROR" if rep.error else "FAIL")
    return [rep.label, str(rep.dimension if rep.dimension is not None else "-"),
            str(rep.ebs if rep.ebs is not None else "-"), str(_enc(rep.milnor) if rep.milnor is not None else "-"),
            alpha, str(rep.no.value if rep.no else "-"), verdicts or "-", status]


def _render_table(rows: list[list[str]]) -> str:
    header = ["label", "d", "ebs", "milnor", "alpha", "NO", "verdicts", "status"]
    rows = [header] + rows
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def emit_report(report: InvariantReport | CorpusSummary, fmt: str = "json", *,
                timing: bool = True) -> bytes:
    """Serialize as ``json`` (structured object) or ``table`` (one row per report)."""
    if fmt == "json":
        return (json.dumps(report.to_dict(timing), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "table":
        if isinstance(report, CorpusSummary):
            text = _render_table([_table_row(r) for r in report.reports])
            lines = [f"{i}: " + ", ".join(f"{k}={v}" for k, v in c.items())
                     for i, c in report.counts().items()]
            text += "\n" + "\n".join(lines) + f"\nmismatches: {report.mismatches}\n"
            for r in report.reports:
                for m in r.mismatches:
                    text += f"  {r.label}: {m}\n"
                if r.error:
                    text += f"  {r.label}: error: {r.error}\n"
        else:
            text = _render_table([_table_row(report)])
        return text.encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
