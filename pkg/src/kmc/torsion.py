"""p-torsion certificates from rational versus mod-p full Weyl invariants.

If the integral cohomology had no p-torsion, every even degree would satisfy
dim P123(Q) >= dim P123(F_p).  A degree where the mod-p side is strictly
larger is therefore a witness.  The Dickson invariants give a lower bound
for the mod-p side, which is checked along the way.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .cartan import INDICES, MatrixType, as_cartan
from .errors import NotPrime
from .invariants import InvariantLattice, poly_mul, poly_pow
from .linalg import FieldSpec, is_prime, monomial_basis, monomial_count, rank
from .series import TruncatedSeries, poincare
from .weyl import ReflectionAction


def dickson_degrees(p: int) -> Tuple[int, int, int]:
    """Cohomological degrees of the rank-3 Dickson invariants over F_p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return 2 * (p ** 3 - p ** 2), 2 * (p ** 3 - p), 2 * (p ** 3 - 1)


def dickson_series(p: int, N: int) -> TruncatedSeries:
    return poincare(*dickson_degrees(p), N=N)


def contradiction_degree(p: int) -> int:
    """2p^2(p^2-1), the degree where the counting argument bites."""
    return 2 * p * p * (p * p - 1)


@dataclass(frozen=True)
class TorsionCertificate:
    prime: int
    truncation: int
    status: str  # "Certified" or "NoWitnessUpToN"
    witness_degree: Optional[int]
    rational_dim: Optional[int]
    modular_dim: Optional[int]
    reverified: Optional[bool]
    dickson_bound_holds: bool
    dickson_first_violation: Optional[int]
    rational_model: str  # "1", "1/(1-t^4)" or "none"
    rational_model_matches: Optional[bool]
    warning: Optional[str]

    @property
    def certified(self) -> bool:
        return self.status == "Certified"

    def explanation(self) -> str:
        if self.certified:
            return (f"dim over F{self.prime} is {self.modular_dim} > {self.rational_dim} over Q "
                    f"at degree {self.witness_degree}")
        return (f"no witness up to t^{self.truncation}; a witness exists at some degree "
                f"(possibly beyond the truncation)")

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "status": self.status,
            "witness_degree": self.witness_degree,
            "dim_rational": self.rational_dim,
            "dim_modular": self.modular_dim,
            "reverified": self.reverified,
            "dickson_bound_holds": self.dickson_bound_holds,
            "dickson_first_violation": self.dickson_first_violation,
            "rational_model": self.rational_model,
            "rational_model_matches": self.rational_model_matches,
            "warning": self.warning,
            "explanation": self.explanation(),
        }


def _direct_substitution(g, k: int, p: int) -> np.ndarray:
    """Substitution matrix at degree k by expanding each monomial directly.

    Independent of the cached recursive construction used elsewhere.
    """
    images = []
    for j in range(3):
        images.append({tuple(1 if r == i else 0 for r in range(3)): int(g[i][j]) for i in range(3) if g[i][j]})
    basis = monomial_basis(k)
    out = np.zeros((len(basis), len(basis)), dtype=object)
    for c, e in enumerate(basis.monomials):
        poly = {(0, 0, 0): 1}
        for j in range(3):
            poly = poly_mul(poly, poly_pow(images[j], e[j]))
        for mono, coeff in poly.items():
            out[basis.index(mono), c] = coeff
    return out % p if p else out


def _single_degree_dim(m, p: int, degree: int) -> int:
    """Dimension of P123 at one even degree, recomputed from scratch."""
    r = ReflectionAction.of(m)
    f = FieldSpec(p)
    k = degree // 2
    n = monomial_count(k)
    ident = np.eye(n, dtype=np.int64)
    blocks = [_direct_substitution(r.generator(j), k, p) - ident for j in INDICES]
    return n - rank(np.vstack(blocks), f)


def torsion_certificate(m, p: int, N: int = 60, rational: InvariantLattice = None,
                        modular: InvariantLattice = None) -> TorsionCertificate:
    """Scan even degrees up to ``N`` for dim P123(F_p) > dim P123(Q)."""
    m = as_cartan(m)
    dickson_degrees(p)
    if rational is None or not rational.field.is_rational or rational.N < N:
        rational = InvariantLattice(m, FieldSpec(), N)
    if modular is None or modular.field.p != p or modular.N < N:
        modular = InvariantLattice(m, FieldSpec(p), N)
    q = rational.P(INDICES).dims[: N // 2 + 1]
    fp = modular.P(INDICES).dims[: N // 2 + 1]

    witness = next((2 * k for k, (a, b) in enumerate(zip(q, fp)) if b > a), None)
    reverified = None
    rd = md = None
    if witness is not None:
        rd, md = q[witness // 2], fp[witness // 2]
        reverified = _single_degree_dim(m, 0, witness) == rd and _single_degree_dim(m, p, witness) == md and md > rd

    bound = dickson_series(p, N)
    violation = next((2 * k for k, b in enumerate(fp) if b < bound[2 * k]), None)

    if m.matrix_type is MatrixType.INDEFINITE:
        model = "1/(1-t^4)" if m.symmetrizable else "1"
        expected = poincare(4, N=N) if m.symmetrizable else TruncatedSeries.one(N)
        matches = all(q[k] == expected[2 * k] for k in range(len(q)))
    else:
        model, matches = "none", None

    warning = None
    if contradiction_degree(p) > N:
        warning = (f"2p^2(p^2-1) = {contradiction_degree(p)} exceeds the truncation {N}; "
                   "certification may need a larger N")
    status = "Certified" if witness is not None and reverified else "NoWitnessUpToN"
    return TorsionCertificate(p, N, status, witness, rd, md, reverified, violation is None, violation,
                              model, matches, warning)
