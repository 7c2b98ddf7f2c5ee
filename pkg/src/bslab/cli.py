"""Command line front end: ``bslab {ebs,milnor,alpha,spectrum,verify,corpus}``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from bslab.errors import BSLabError, ResourceLimitError
from bslab.exact_poly import as_rational, format_rational, infer_variables, parse_polynomial
from bslab.families import BUNDLED, load_corpus, random_isolated
from bslab.jacobian import briancon_skoda_exponent, detect_weights, milnor_number, singularity_profile
from bslab.minimal_exponent import MinimalExponent, alpha_fab, alpha_quasihomogeneous
from bslab.report import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_VIOLATION,
    emit_report,
    recognize_fab,
    run_corpus,
    verify_polynomial,
)
from bslab.vfiltration import check_theorem2_qh, spectrum_qh

log = logging.getLogger("bslab")


def _parse(args):
    vs = args.vars.split(",") if args.vars else infer_variables(args.polynomial)
    vs = [v.strip() for v in vs if v.strip()]
    if not vs:
        raise BSLabError("no variables: pass --vars")
    return parse_polynomial(args.polynomial, vs)


def _emit(obj, args) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    else:
        for k, v in obj.items():
            sys.stdout.write(f"{k}\t{v if not isinstance(v, list) else ' '.join(map(str, v))}\n")


def cmd_ebs(args) -> int:
    f = _parse(args)
    k = briancon_skoda_exponent(f, max_pairs=args.max_pairs, max_basis=args.max_basis)
    _emit({"polynomial": str(f), "dimension": f.ring.nvars, "ebs": k}, args)
    return EXIT_OK


def cmd_milnor(args) -> int:
    f = _parse(args)
    mu = milnor_number(f, max_pairs=args.max_pairs, max_basis=args.max_basis)
    _emit({"polynomial": str(f), "milnor": "infinite" if mu == float("inf") else mu}, args)
    return EXIT_OK


def _alpha_for(f, args) -> MinimalExponent | None:
    det = detect_weights(f)
    if det.weights is not None and singularity_profile(f).isolated:
        return alpha_quasihomogeneous(det.weights)
    ab = recognize_fab(f)
    if ab is not None:
        return alpha_fab(ab[0], ab[1], f.ring.nvars)
    if args.alpha is not None:
        return MinimalExponent(as_rational(args.alpha), "supplied")
    return None


def cmd_alpha(args) -> int:
    f = _parse(args)
    a = _alpha_for(f, args)
    if a is None:
        sys.stderr.write("minimal exponent not derivable: not quasi-homogeneous or f_ab; pass --alpha p/q\n")
        return EXIT_INPUT
    _emit({"polynomial": str(f), "alpha": format_rational(a.value), "provenance": a.provenance}, args)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    f = _parse(args)
    det = detect_weights(f)
    if det.weights is None:
        sys.stderr.write(f"not quasi-homogeneous (weight detection: {det.status})\n")
        return EXIT_INPUT
    s = spectrum_qh(f, det.weights)
    check = check_theorem2_qh(f, det.weights, args.degree_cap)
    _emit({"polynomial": str(f), "weights": [format_rational(w) for w in det.weights],
           "mu": s.mu, "spectrum": [format_rational(e) for e in s.entries],
           "vanishing_threshold": format_rational(check.threshold), "degree_cap": check.degree_cap,
           "vanishing_checked": check.checked, "vanishing_holds": check.passed,
           "threshold_witnesses": [str(f.ring.monomial(m)) for m in check.witnesses]}, args)
    return EXIT_OK if check.passed else EXIT_VIOLATION


def cmd_verify(args) -> int:
    f = _parse(args)
    rep = verify_polynomial(f, label=args.polynomial.strip(), alpha=args.alpha, no=args.no,
                            max_pairs=args.max_pairs, max_basis=args.max_basis)
    sys.stdout.buffer.write(emit_report(rep, args.format, timing=not args.no_timing))
    return rep.exit_code


def cmd_corpus(args) -> int:
    entries = load_corpus(args.corpus) if args.corpus else []
    for k in range(args.random):
        d = args.random_dim if args.random_dim else (2 if k % 2 == 0 else 3)
        entries.append(random_isolated(args.seed + k, d, args.random_degree))
    summary = run_corpus(entries, jobs=args.jobs, max_pairs=args.max_pairs, max_basis=args.max_basis)
    sys.stdout.buffer.write(emit_report(summary, args.format, timing=not args.no_timing))
    return summary.exit_code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-pairs", type=int, default=None, help="cap on processed critical pairs")
    common.add_argument("--max-basis", type=int, default=None, help="cap on standard basis size")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--no-timing", action="store_true", help="omit timing fields (byte-stable output)")
    common.add_argument("-v", "--verbose", action="store_true")

    poly = argparse.ArgumentParser(add_help=False)
    poly.add_argument("polynomial", help='e.g. "x^2*y^2 + x^5 + y^5"')
    poly.add_argument("--vars", help="comma-separated variables (default: order of appearance)")
    poly.add_argument("--alpha", type=str, default=None, help="supplied minimal exponent p/q")
    poly.add_argument("--no", type=int, default=None, help="supplied nilpotence order")
    poly.add_argument("--degree-cap", type=int, default=None,
                      help="monomial degree bound for the spectrum vanishing check")

    parser = argparse.ArgumentParser(prog="bslab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, help_ in [
        ("ebs", cmd_ebs, "Briançon-Skoda exponent at the origin"),
        ("milnor", cmd_milnor, "Milnor number at the origin"),
        ("alpha", cmd_alpha, "minimal exponent with provenance"),
        ("spectrum", cmd_spectrum, "spectrum of a quasi-homogeneous isolated singularity"),
        ("verify", cmd_verify, "full invariant report with bound verdicts"),
    ]:
        p = sub.add_parser(name, parents=[common, poly], help=help_)
        p.set_defaults(func=fn)
    c = sub.add_parser("corpus", parents=[common], help="run a corpus file or bundled corpus")
    c.add_argument("corpus", nargs="?", default=None,
                   help=f"path to a corpus file, or one of: {', '.join(BUNDLED)}")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--random", type=int, default=0, help="append N seeded random entries")
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--random-dim", type=int, choices=(2, 3), default=None)
    c.add_argument("--random-degree", type=int, default=5)
    c.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except (BSLabError, ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
