"""Rational and mod-p cohomology of rank-3 Kac-Moody groups."""
from .cartan import CartanMatrix, ClassLabel, MatrixType, as_cartan, parabolic_profile, parse_matrix
from .linalg import FieldSpec, GradedSubspace
from .series import FactoredRational, TruncatedSeries, poincare
from .invariants import InvariantLattice
from .assembly import assemble_by_formula, assemble_by_mv, crosscheck
from .torsion import torsion_certificate
from .report import AnalysisRequest, analyze

__all__ = [
    "CartanMatrix", "ClassLabel", "MatrixType", "as_cartan", "parabolic_profile", "parse_matrix",
    "FieldSpec", "GradedSubspace", "FactoredRational", "TruncatedSeries", "poincare",
    "InvariantLattice", "assemble_by_formula", "assemble_by_mv", "crosscheck",
    "torsion_certificate", "AnalysisRequest", "analyze",
]
