"""kmc command line: analyze, check, classify, invariants."""
from __future__ import annotations

import argparse
import json
import sys

from .cartan import INDICES, as_cartan, parabolic_profile, subset_label
from .errors import KMCError
from .linalg import FieldSpec

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3


def _field(args) -> FieldSpec:
    if args.coeff == "q":
        if args.p is not None:
            raise ValueError("--p is only meaningful with --coeff fp")
        return FieldSpec()
    if args.p is None:
        raise ValueError("--coeff fp requires --p")
    return FieldSpec.prime(args.p)


def _primes(text: str):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {text!r}") from None


def _truncation(args) -> int:
    from .report import default_truncation
    return default_truncation() if args.truncate is None else args.truncate


def _add_common(sp, coeff=True):
    sp.add_argument("--matrix", required=True, help='rows separated by ";", e.g. "2,-1,-3;-3,2,-1;-2,-4,2"')
    if coeff:
        sp.add_argument("--coeff", choices=("q", "fp"), default="q")
        sp.add_argument("--p", type=int, default=None, help="prime for --coeff fp")
        sp.add_argument("--truncate", type=int, default=None, help="series truncation N (default 60 or $KMC_TRUNCATE)")
        sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kmc", description="Cohomology of rank-3 Kac-Moody groups")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="cohomology series and optional cross-checks")
    _add_common(a)
    a.add_argument("--with-mv-crosscheck", action="store_true")
    a.add_argument("--with-torsion", type=_primes, nargs="?", const=(2, 3), default=(),
                   metavar="PRIMES", help="comma-separated primes (default 2,3)")
    a.add_argument("--with-ring-structure", action="store_true")
    a.add_argument("--compare-paper-example", action="store_true")

    c = sub.add_parser("check", help="run the acceptance suite")
    c.add_argument("--only", type=_primes, default=None, metavar="N,...", help="criterion numbers")

    k = sub.add_parser("classify", help="type, symmetrizability and class")
    _add_common(k, coeff=False)

    i = sub.add_parser("invariants", help="graded dimensions of invariant rings P_J")
    _add_common(i)
    i.add_argument("--subset", action="append", default=None,
                   help="index subset such as 12 or 3 (repeatable; default all finite ones and 123)")
    return ap


def _classify(m) -> dict:
    prof = parabolic_profile(m)
    return {
        "matrix": m.to_text(),
        "type": m.matrix_type.value,
        "symmetrizable": m.symmetrizable,
        "class": prof.class_label.value,
        "refined_class": prof.refined_label,
        "permutation": list(prof.permutation),
        "maximal_finite": sorted(subset_label(J) for J in prof.maximal_finite),
        "pairs": {f"{i}{j}": m.rank2_type(i, j).name for i, j in ((1, 2), (1, 3), (2, 3))},
    }


def _parse_subset(text: str):
    J = tuple(sorted({int(ch) for ch in text if ch.strip()}))
    if not J or any(j not in INDICES for j in J):
        raise ValueError(f"bad subset {text!r}; use digits from 1,2,3")
    return J


def cmd_analyze(args, out, err) -> int:
    from .report import AnalysisRequest, analyze, render
    req = AnalysisRequest(args.matrix, _field(args), _truncation(args), args.format,
                          args.with_mv_crosscheck, tuple(args.with_torsion), args.with_ring_structure,
                          args.compare_paper_example, args.workers)
    report = analyze(req)
    for c in report["torsion"]:
        if c["warning"]:
            print(f"warning: {c['warning']}", file=err)
    out.write(render(report, args.format))
    if report["crosscheck"]["status"] == "mismatch":
        print(f"error: formula and Mayer-Vietoris totals differ at t^{report['crosscheck']['first_mismatch_degree']}",
              file=err)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_check(args, out, err) -> int:
    from .acceptance import format_table, run_all
    results = run_all(args.only)
    out.write(format_table(results))
    for r in results:
        print(f"criterion {r.number}: {r.seconds:.1f}s", file=err)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def cmd_classify(args, out, err) -> int:
    info = _classify(as_cartan(args.matrix))
    if args.format == "json":
        out.write(json.dumps(info, indent=2) + "\n")
    else:
        for key, val in info.items():
            out.write(f"{key:<15} {val}\n")
    return EXIT_OK


def cmd_invariants(args, out, err) -> int:
    from .invariants import InvariantLattice
    m = as_cartan(args.matrix)
    N = _truncation(args)
    if args.subset:
        subsets = [_parse_subset(s) for s in args.subset]
    else:
        subsets = [(j,) for j in INDICES] + [
            (i, j) for i, j in ((1, 2), (1, 3), (2, 3)) if m.rank2_type(i, j).finite] + [INDICES]
    lat = InvariantLattice(m, _field(args), N, args.workers)
    rows = {subset_label(J): list(lat.P(J).degree_dims()) for J in subsets}
    if args.format == "json":
        out.write(json.dumps({"matrix": m.to_text(), "field": str(lat.field), "truncation": N,
                              "dims": rows}, indent=2) + "\n")
    else:
        out.write(f"{m.to_text()} over {lat.field}, even degrees 0..{N}\n")
        for label, dims in rows.items():
            out.write(f"P{label:<4} {' '.join(map(str, dims[::2]))}\n")
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "check": cmd_check, "classify": cmd_classify, "invariants": cmd_invariants}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out, err)
    except (KMCError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
