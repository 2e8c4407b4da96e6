"""Invariant subrings P_J of the weight polynomial ring, degree by degree.

A polynomial is fixed by W_J exactly when it is fixed by every generator
sigma_j, j in J, so P_J is computed as the joint kernel of the stacked
maps ``sub(sigma_j) - I``.  This works the same way for finite and
infinite W_J.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cartan import INDICES, MatrixType, as_cartan
from .errors import PairNotInfinite, PreconditionError, UnexpectedDimension
from .linalg import (
    FieldSpec,
    GradedSubspace,
    columns,
    full_ring,
    kernel,
    map_degrees,
    monomial_basis,
    monomial_count,
    rank,
    subspace_sum_all,
)
from .series import TruncatedSeries
from .weyl import ReflectionAction, _key, _substitution_array, substitution_matrix


@dataclass(frozen=True)
class InvariantRing:
    J: frozenset
    field: FieldSpec
    space: GradedSubspace

    @property
    def dims(self) -> Tuple[int, ...]:
        """Dimensions indexed by polynomial degree (cohomological degree 2k)."""
        return self.space.dims

    def series(self) -> TruncatedSeries:
        return TruncatedSeries.from_even(self.dims, self.space.truncation)


def _as_action(r) -> ReflectionAction:
    return r if isinstance(r, ReflectionAction) else ReflectionAction.of(r)


def _joint_kernel(r: ReflectionAction, J, f: FieldSpec, k: int):
    n = monomial_count(k)
    if not J:
        return f.identity(n)
    ident = np.eye(n, dtype=np.int64)
    blocks = [_substitution_array(_key(r.generator(j)), k, f.p) - ident for j in sorted(J)]
    return kernel(np.vstack(blocks), f)


def invariant_subspace(r, J, f: FieldSpec = FieldSpec(), N: int = 40, workers: int = 1) -> InvariantRing:
    r = _as_action(r)
    J = frozenset(J)
    bases = map_degrees(lambda k: _joint_kernel(r, J, f, k), range(N // 2 + 1), workers)
    return InvariantRing(J, f, GradedSubspace(f, N, tuple(bases)))


def is_fixed(r, ring: InvariantRing) -> bool:
    """Re-verify that every basis vector is fixed by every generator in J."""
    r = _as_action(r)
    f = ring.field
    for k, B in enumerate(ring.space.bases):
        if B.shape[1] == 0:
            continue
        for j in ring.J:
            S = _substitution_array(_key(r.generator(j)), k, f.p)
            image = S.dot(B) if f.is_rational else (S @ B) % f.p
            if not np.array_equal(image, B):
                return False
    return True


class InvariantLattice:
    """Memoized P_J for one (matrix, field, truncation), plus sums and intersections.

    Everything downstream (formula assembly, Mayer-Vietoris, torsion) reads
    invariant rings through this cache so each P_J is computed once.
    """

    def __init__(self, m, f: FieldSpec, N: int, workers: int = 1):
        self.action = _as_action(m)
        self.cartan = self.action.cartan
        self.field = f
        self.N = N
        self.workers = workers
        self._rings: Dict[frozenset, InvariantRing] = {}
        self._exprs: Dict[object, GradedSubspace] = {}

    def P(self, J=()) -> GradedSubspace:
        return self.ring(J).space

    def ring(self, J=()) -> InvariantRing:
        J = frozenset(J)
        if J not in self._rings:
            if not J:
                self._rings[J] = InvariantRing(J, self.field, full_ring(self.field, self.N))
            else:
                self._rings[J] = invariant_subspace(self.action, J, self.field, self.N, self.workers)
        return self._rings[J]

    def total(self) -> GradedSubspace:
        return self.P(())

    def sum(self, *Js) -> GradedSubspace:
        key = ("+",) + tuple(sorted((tuple(sorted(J)) for J in Js)))
        if key not in self._exprs:
            self._exprs[key] = subspace_sum_all([self.P(J) for J in Js], self.workers)
        return self._exprs[key]

    def cached(self, key, build) -> GradedSubspace:
        """Memoize an arbitrary derived subspace under a caller-chosen key."""
        if key not in self._exprs:
            self._exprs[key] = build()
        return self._exprs[key]


# special elements -----------------------------------------------------------

Poly = Dict[Tuple[int, int, int], int]


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def poly_pow(a: Poly, n: int) -> Poly:
    out: Poly = {(0, 0, 0): 1}
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def poly_vector(a: Poly, k: int) -> List[int]:
    """Coordinates of a homogeneous degree-k polynomial in the monomial basis."""
    basis = monomial_basis(k)
    vec = [0] * len(basis)
    for e, c in a.items():
        if sum(e) != k:
            raise ValueError("polynomial is not homogeneous of the requested degree")
        vec[basis.index(e)] = c
    return vec


def vector_poly(vec: Sequence[int], k: int) -> Poly:
    return {e: int(c) for e, c in zip(monomial_basis(k).monomials, vec) if c}


def substitute(r, j: int, a: Poly, p: int = 0) -> Poly:
    """Apply sigma_j to a homogeneous polynomial (coefficients reduced mod p when p > 0)."""
    r = _as_action(r)
    if not a:
        return {}
    k = sum(next(iter(a)))
    S = substitution_matrix(r.generator(j), k, FieldSpec(p))
    v = FieldSpec(p).from_columns([poly_vector(a, k)], monomial_count(k))
    out = [int(x) for x in (S * v).entries()]
    return vector_poly(out, k)


def _normalize(vec: Sequence[int]) -> Tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, int(x))
    vec = [int(x) // g for x in vec] if g else [int(x) for x in vec]
    lead = next((x for x in vec if x), 0)
    if lead < 0:
        vec = [-x for x in vec]
    return tuple(vec)


@dataclass(frozen=True)
class KillingFormResult:
    psi: Optional[Tuple[int, ...]]  # coordinates in the degree-2 monomial basis
    full_invariant_dims: Tuple[int, ...]
    expected_dims: Tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return self.full_invariant_dims == self.expected_dims

    def as_polynomial(self) -> Optional[Poly]:
        return None if self.psi is None else vector_poly(self.psi, 2)


def killing_form(r, m=None, N: int = 4, lattice: InvariantLattice = None) -> KillingFormResult:
    """Degree-4 rational invariant of the full Weyl group, if any.

    Also compares the rational dims of P_123 up to ``N`` with 1/(1-t^4)
    (symmetrizable) or 1 (nonsymmetrizable).
    """
    r = _as_action(r if m is None else m)
    m = r.cartan
    if m.matrix_type is not MatrixType.INDEFINITE:
        raise PreconditionError(f"the Killing-form statement covers indefinite matrices, got {m.matrix_type}")
    N = max(N, 4)
    if lattice is None or not lattice.field.is_rational or lattice.N < N:
        lattice = InvariantLattice(r, FieldSpec(), N)
    dims = lattice.P(INDICES).dims[: N // 2 + 1]
    if m.symmetrizable:
        expected = tuple(1 if k % 2 == 0 else 0 for k in range(N // 2 + 1))
    else:
        expected = (1,) + (0,) * (N // 2)
    deg4 = lattice.P(INDICES).bases[2]
    if deg4.shape[1] >= 2:
        raise UnexpectedDimension(f"degree-4 invariant space has dimension {deg4.shape[1]}")
    if m.symmetrizable and deg4.shape[1] != 1:
        raise UnexpectedDimension("symmetrizable indefinite matrix without a degree-4 invariant")
    if not m.symmetrizable and deg4.shape[1] != 0:
        raise UnexpectedDimension("nonsymmetrizable matrix with a degree-4 invariant")
    psi = _normalize(columns(deg4)[0]) if deg4.shape[1] else None
    return KillingFormResult(psi, tuple(dims), expected)


@dataclass(frozen=True)
class KappaReport:
    kappa: Poly
    fixed_by_sigma1: bool
    fixed_by_sigma2: bool
    span_dims: Tuple[int, ...] = ()
    invariant_dims: Tuple[int, ...] = ()

    @property
    def generates(self) -> bool:
        return self.span_dims == self.invariant_dims


def kappa_polynomial(m) -> Poly:
    m = as_cartan(m)
    a = m.a
    terms = {
        (2, 0, 0): a(1, 2),
        (1, 1, 0): a(1, 2) * a(2, 1),
        (0, 2, 0): a(2, 1),
        (1, 0, 1): a(1, 2) * a(3, 1),
        (0, 1, 1): a(2, 1) * a(3, 2),
    }
    return {e: c for e, c in terms.items() if c}


def build_kappa(m, N: int = 0, lattice: InvariantLattice = None) -> KappaReport:
    """kappa with its sigma_1, sigma_2 invariance check; with ``N > 0`` also compare
    the span of kappa^a w3^b against P_12 degreewise over Q."""
    m = as_cartan(m)
    if m.pair_product(1, 2) < 4:
        raise PairNotInfinite(f"a12*a21 = {m.pair_product(1, 2)} < 4")
    r = ReflectionAction.of(m)
    kappa = kappa_polynomial(m)
    fixed1 = substitute(r, 1, kappa) == kappa
    fixed2 = substitute(r, 2, kappa) == kappa
    if N <= 0:
        return KappaReport(kappa, fixed1, fixed2)
    if lattice is None or not lattice.field.is_rational or lattice.N < N:
        lattice = InvariantLattice(r, FieldSpec(), N)
    f = FieldSpec()
    kappa_pows = [poly_pow(kappa, a) for a in range(N // 4 + 1)]
    span = []
    for k in range(N // 2 + 1):
        vecs = [poly_vector(poly_mul(kappa_pows[a], {(0, 0, k - 2 * a): 1}), k)
                for a in range(k // 2 + 1)]
        span.append(rank(f.from_columns(vecs, monomial_count(k))))
    inv = lattice.P((1, 2)).dims[: N // 2 + 1]
    return KappaReport(kappa, fixed1, fixed2, tuple(span), tuple(inv))


@dataclass(frozen=True)
class SumIdentityReport:
    field: FieldSpec
    parts: Tuple[frozenset, ...]
    truncation: int
    holds_all_degrees: bool
    first_failure_degree: Optional[int]
    degenerate_generators: Tuple[int, ...]
    sum_dims: Tuple[int, ...]
    total_dims: Tuple[int, ...]

    @property
    def status(self) -> str:
        if self.degenerate_generators:
            return "degenerate_generator"
        return "holds_all_degrees" if self.holds_all_degrees else "first_failure_degree"


def check_sum_identity(r, f: FieldSpec, parts, N: int, lattice: InvariantLattice = None) -> SumIdentityReport:
    """Compare dim(sum of P_J over ``parts``) with dim P at every even degree up to N."""
    parts = tuple(frozenset(J) for J in parts)
    if not parts:
        raise PreconditionError("parts must be nonempty")
    r = _as_action(r)
    if lattice is None or lattice.field != f or lattice.N < N:
        lattice = InvariantLattice(r, f, N)
    total = lattice.total().dims[: N // 2 + 1]
    summed = lattice.sum(*parts).dims[: N // 2 + 1]
    fail = next((2 * k for k, (a, b) in enumerate(zip(summed, total)) if a != b), None)
    gens = sorted({j for J in parts for j in J})
    degenerate = tuple(j for j in gens if r.is_degenerate(j, f.p))
    return SumIdentityReport(f, parts, N, fail is None, fail, degenerate, tuple(summed), tuple(total))
