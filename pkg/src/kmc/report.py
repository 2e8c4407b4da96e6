"""Analysis requests, JSON reports and their plain-text rendering."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Sequence, Tuple

from .assembly import (
    EXAMPLE_MATRIX,
    assemble_by_formula,
    assemble_by_mv,
    compare_with_paper_example,
    crosscheck,
    ring_structure_report,
)
from .cartan import as_cartan, parabolic_profile, subset_label
from .errors import ClassIVUnverifiedConjecture
from .invariants import InvariantLattice
from .linalg import FieldSpec
from .series import render_polynomial
from .torsion import torsion_certificate

DEFAULT_TRUNCATION = 60
TRUNCATION_ENV = "KMC_TRUNCATE"


def default_truncation() -> int:
    raw = os.environ.get(TRUNCATION_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_TRUNCATION
    try:
        N = int(raw)
    except ValueError:
        raise ValueError(f"{TRUNCATION_ENV}={raw!r} is not an integer") from None
    if N < 0:
        raise ValueError(f"{TRUNCATION_ENV} must be non-negative")
    return N


@dataclass(frozen=True)
class AnalysisRequest:
    matrix: str
    field: FieldSpec = FieldSpec()
    truncation: int = DEFAULT_TRUNCATION
    output_format: str = "text"
    with_mv_crosscheck: bool = False
    torsion_primes: Tuple[int, ...] = ()
    with_ring_structure: bool = False
    compare_paper_example: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError("truncation must be non-negative")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown format {self.output_format!r}")
        for p in self.torsion_primes:
            FieldSpec.prime(p)


def analyze(req: AnalysisRequest) -> dict:
    """Run the requested computations and return the report as plain data."""
    m = as_cartan(req.matrix)
    profile = parabolic_profile(m)
    N = req.truncation
    lattice = InvariantLattice(m, req.field, N, req.workers)
    formula = assemble_by_formula(m, profile, req.field, N, lattice)

    xc = {"status": "skipped", "first_mismatch_degree": None}
    if req.with_mv_crosscheck:
        mv = assemble_by_mv(m, profile, req.field, N, lattice)
        xc = crosscheck(formula, mv)

    rational = lattice if req.field.is_rational else None
    torsion = []
    for p in req.torsion_primes:
        if rational is None:
            rational = InvariantLattice(m, FieldSpec(), N, req.workers)
        modular = lattice if req.field.p == p else InvariantLattice(m, FieldSpec(p), N, req.workers)
        torsion.append(torsion_certificate(m, p, N, rational, modular).to_dict())

    ring = None
    if req.with_ring_structure:
        if rational is None:
            rational = InvariantLattice(m, FieldSpec(), N, req.workers)
        try:
            ring = ring_structure_report(m, profile, N, rational,
                                         formula if req.field.is_rational else None)
            ring = {"status": "reported", **ring}
        except ClassIVUnverifiedConjecture as exc:
            ring = {"status": "withheld", "reason": str(exc)}

    diags = []
    if req.compare_paper_example:
        if m == as_cartan(EXAMPLE_MATRIX):
            diags = compare_with_paper_example(formula, lattice)
        else:
            diags = [{"kind": "not_applicable", "degree": None, "computed": None, "paper": None,
                      "note": "printed closed forms exist only for 2,-1,-3;-3,2,-1;-2,-4,2"}]

    return {
        "matrix": m.to_text(),
        "type": m.matrix_type.value,
        "symmetrizable": m.symmetrizable,
        "class": profile.class_label.value,
        "refined_class": profile.refined_label,
        "permutation": list(profile.permutation),
        "maximal_finite": sorted(subset_label(J) for J in profile.maximal_finite),
        "field": str(req.field),
        "truncation": N,
        "series_coefficients": list(formula.total.coefficients),
        "closed_form": None if formula.closed_form is None else str(formula.closed_form),
        "summands": [{"label": s.label, "coefficients": list(s.series.coefficients)} for s in formula.summands],
        "crosscheck": xc,
        "torsion": torsion,
        "ring_structure": ring,
        "paper_diagnostics": diags,
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> dict:
    return json.loads(text)


def _series_line(coeffs: Sequence[int]) -> str:
    return render_polynomial(coeffs) + f" + O(t^{len(coeffs)})"


def to_text(report: dict) -> str:
    """Human-readable rendering carrying the same numbers as the JSON."""
    lines = [
        f"matrix        {report['matrix']}",
        f"type          {report['type']}" + ("  (symmetrizable)" if report["symmetrizable"] else "  (nonsymmetrizable)"),
        f"class         {report['class']}  refined ({report['refined_class']})  "
        f"permutation {','.join(map(str, report['permutation']))}",
        f"P(A)          {{{', '.join('{' + ','.join(J) + '}' for J in report['maximal_finite'])}}}",
        f"field         {report['field']}  truncation t^{report['truncation']}",
        f"series        {_series_line(report['series_coefficients'])}",
        f"coefficients  {' '.join(map(str, report['series_coefficients']))}",
        f"closed form   {report['closed_form'] if report['closed_form'] is not None else 'not reconstructed'}",
        "summands",
    ]
    for s in report["summands"]:
        lines.append(f"  {s['label']:<28} {' '.join(map(str, s['coefficients']))}")
    xc = report["crosscheck"]
    lines.append(f"crosscheck    {xc['status']}"
                 + (f" (first mismatch at t^{xc['first_mismatch_degree']})" if xc["first_mismatch_degree"] is not None else ""))
    for c in report["torsion"]:
        lines.append(f"torsion p={c['prime']}   {c['status']}: {c['explanation']}"
                     f"; dickson bound {'holds' if c['dickson_bound_holds'] else 'fails at ' + str(c['dickson_first_violation'])}"
                     f"; rational model {c['rational_model']}"
                     f" ({'matches' if c['rational_model_matches'] else 'n/a' if c['rational_model_matches'] is None else 'MISMATCH'})"
                     f"; reverified {c['reverified']}")
        if c["warning"]:
            lines.append(f"  warning: {c['warning']}")
    ring = report["ring_structure"]
    if ring is not None:
        if ring["status"] == "withheld":
            lines.append(f"ring          withheld: {ring['reason']}")
        else:
            gens = ", ".join(f"{c} in degree {d}" for d, c in ring["odd_generator_counts"].items()) or "none"
            lines.append(f"ring          {ring['branch']}: {ring['polynomial_part']} tensor odd classes ({gens}); "
                         f"{ring['odd_products']}; even part consistent {ring['even_part_consistent']}")
            lines.append(f"  class reduction {json.dumps(ring['class_reduction'], sort_keys=True)}"
                         f"; conjecture check {json.dumps(ring['conjecture_fc'])}")
    for d in report["paper_diagnostics"]:
        where = f"t^{d['degree']}: computed {d['computed']}, printed {d['paper']}" if d["degree"] is not None and d["computed"] is not None else ""
        lines.append(f"paper [{d['kind']}] {where}{'; ' if where and d['note'] else ''}{d['note']}")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    return to_json(report) if fmt == "json" else to_text(report)
