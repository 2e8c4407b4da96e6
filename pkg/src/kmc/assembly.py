"""Cohomology of BK(A) assembled from invariant rings.

Two routes produce the same Poincare series.  The formula route reads a
fixed list of summands per class (quotients of invariant rings, possibly
suspended, plus the mod-2 G2 ideals).  The Mayer-Vietoris route pastes the
maximal finite pieces one at a time and computes kernels and cokernels of
the difference-of-restrictions maps on actual subspaces.  Neither route
looks at the other.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .cartan import (
    INDICES,
    CartanMatrix,
    ClassLabel,
    ParabolicProfile,
    as_cartan,
    parabolic_profile,
    subset,
    subset_label,
)
from .errors import (
    ClassIVUnverifiedConjecture,
    NotASubspace,
    PreconditionError,
)
from .invariants import InvariantLattice, check_sum_identity
from .linalg import (
    FieldSpec,
    GradedSubspace,
    contains,
    quotient_dims,
    subspace_intersect,
    subspace_sum,
)
from .series import FactoredRational, TruncatedSeries, expand, poincare, reconstruct_numerator

# expressions over invariant rings --------------------------------------------


@dataclass(frozen=True)
class Atom:
    J: frozenset

    def relabel(self, fn) -> "Atom":
        return Atom(fn(self.J))

    def __str__(self):
        return "P" if not self.J else "P" + subset_label(self.J)


@dataclass(frozen=True)
class Sum:
    terms: Tuple[object, ...]

    def relabel(self, fn) -> "Sum":
        return Sum(tuple(t.relabel(fn) for t in self.terms))

    def __str__(self):
        return "(" + "+".join(str(t) for t in self.terms) + ")"


@dataclass(frozen=True)
class Meet:
    terms: Tuple[object, ...]

    def relabel(self, fn) -> "Meet":
        return Meet(tuple(t.relabel(fn) for t in self.terms))

    def __str__(self):
        return "∩".join(str(t) for t in self.terms)


Expr = Union[Atom, Sum, Meet]


def _p(*idx) -> Atom:
    return Atom(subset(*idx))


def _plus(*terms) -> Sum:
    return Sum(tuple(terms))


def evaluate(expr: Expr, lattice: InvariantLattice) -> GradedSubspace:
    """Subspace named by ``expr``, memoized on the lattice."""
    if isinstance(expr, Atom):
        return lattice.P(expr.J)
    key = ("expr", str(_sorted_expr(expr)))
    if isinstance(expr, Sum):
        def build():
            parts = [evaluate(t, lattice) for t in expr.terms]
            out = parts[0]
            for q in parts[1:]:
                out = subspace_sum(out, q, lattice.workers)
            return out
    else:
        def build():
            parts = [evaluate(t, lattice) for t in expr.terms]
            out = parts[0]
            for q in parts[1:]:
                out = subspace_intersect(out, q, lattice.workers)
            return out
    return lattice.cached(key, build)


def _sorted_expr(expr):
    if isinstance(expr, Atom):
        return expr
    terms = tuple(sorted((_sorted_expr(t) for t in expr.terms), key=str))
    return type(expr)(terms)


# summands ---------------------------------------------------------------------


@dataclass(frozen=True)
class SummandSpec:
    """One direct summand of a cohomology formula.

    ``kind`` is ``"invariant"`` (an invariant ring, no shift), ``"quotient"``
    (``Sigma^shift(big - small)``) or ``"g2_ideal"`` (the ideal over the G2
    pair that omits ``missing_index``).
    """

    kind: str
    shift: int = 0
    big: Optional[Expr] = None
    small: Optional[Expr] = None
    missing_index: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("invariant", "quotient", "g2_ideal"):
            raise ValueError(f"unknown summand kind {self.kind!r}")
        if self.shift not in (0, 1, 2):
            raise ValueError("suspensions of order 0, 1 or 2 only")

    def relabel(self, profile: ParabolicProfile) -> "SummandSpec":
        fn = profile.to_user
        return SummandSpec(
            self.kind,
            self.shift,
            None if self.big is None else self.big.relabel(fn),
            None if self.small is None else self.small.relabel(fn),
            None if self.missing_index is None else profile.permutation[self.missing_index - 1],
        )

    @property
    def label(self) -> str:
        if self.kind == "g2_ideal":
            return f"I{self.missing_index}"
        if self.kind == "invariant":
            return str(self.big)
        small = str(self.small)
        body = f"{self.big}-{small}"
        return {0: "", 1: "Σ", 2: "Σ²"}[self.shift] + f"({body})"


def _inv(*idx):
    return SummandSpec("invariant", 0, _p(*idx))


def _quot(shift, big, small):
    return SummandSpec("quotient", shift, big, small)


def _ideal(k):
    return SummandSpec("g2_ideal", missing_index=k)


# rational and odd-prime shapes, by coarse class, in canonical labels
FORMULA_ODD = {
    ClassLabel.I: (
        _quot(1, _p(), _plus(_p(1), _p(2))),
        _quot(1, _p(), _plus(_p(1, 2), _p(3))),
        _inv(1, 2, 3),
    ),
    ClassLabel.II: (
        _quot(1, _p(), _plus(_p(1, 2), _p(3))),
        _inv(1, 2, 3),
    ),
    ClassLabel.III: (
        _quot(1, _p(1), _plus(_p(1, 2), _p(1, 3))),
        _inv(1, 2, 3),
    ),
    ClassLabel.IV: (
        _quot(2, _p(), _plus(_p(1), _p(2), _p(3))),
        _quot(1, Meet((_p(1), _plus(_p(2), _p(3)))), _plus(_p(1, 2), _p(1, 3))),
        _inv(1, 2, 3),
    ),
}

_IDEALS_BY_REFINED = {
    "i": (), "ii": (), "iii": (3,),
    "iv": (), "v": (3,), "vi": (3, 2),
    "vii": (), "viii": (3,), "ix": (3, 2), "x": (3, 2, 1),
}

# mod-2 shapes, by refined class, in canonical labels
FORMULA_MOD2 = {
    label: FORMULA_ODD[cls] + tuple(_ideal(k) for k in _IDEALS_BY_REFINED[label])
    for label, cls in (
        ("i", ClassLabel.I), ("ii", ClassLabel.II), ("iii", ClassLabel.II),
        ("iv", ClassLabel.III), ("v", ClassLabel.III), ("vi", ClassLabel.III),
        ("vii", ClassLabel.IV), ("viii", ClassLabel.IV), ("ix", ClassLabel.IV), ("x", ClassLabel.IV),
    )
}


def formula_summands(profile: ParabolicProfile, f: FieldSpec) -> Tuple[SummandSpec, ...]:
    """Summands for the profile over ``f``, written in the input's labels."""
    table = FORMULA_MOD2[profile.refined_label] if f.p == 2 else FORMULA_ODD[profile.class_label]
    return tuple(s.relabel(profile) for s in table)


def g2_ideal_series(N: int) -> TruncatedSeries:
    """Dims of the ideal (y7) in F2[y4, y6, y7] tensor F2[w]: t^7/((1-t^2)(1-t^4)(1-t^6)(1-t^7))."""
    return poincare(2, 4, 6, 7, N=N, numerator=(0,) * 7 + (1,))


def g2_ideal_series_as_displayed(N: int) -> TruncatedSeries:
    """The alternative ideal series t^7/(1-t^2)^3, kept only for comparison."""
    return poincare(2, 2, 2, N=N, numerator=(0,) * 7 + (1,))


def _summand_series(spec: SummandSpec, lattice: InvariantLattice) -> TruncatedSeries:
    N = lattice.N
    if spec.kind == "g2_ideal":
        return g2_ideal_series(N)
    if spec.kind == "invariant":
        return TruncatedSeries.from_even(evaluate(spec.big, lattice).dims, N)
    dims = quotient_dims(evaluate(spec.big, lattice), evaluate(spec.small, lattice))
    return TruncatedSeries.from_even(dims, N).shift(spec.shift)


# reports -----------------------------------------------------------------------


@dataclass(frozen=True)
class SummandResult:
    label: str
    spec: SummandSpec
    series: TruncatedSeries


@dataclass(frozen=True)
class StageRecord:
    """Degreewise bookkeeping of one pasting ``union = left ∪ right`` over ``overlap``."""

    union: str
    left: str
    right: str
    overlap: str
    source_dims: Tuple[int, ...]
    target_dims: Tuple[int, ...]
    kernel_dims: Tuple[int, ...]
    cokernel_dims: Tuple[int, ...]
    union_dims: Tuple[int, ...]

    @property
    def rank_dims(self) -> Tuple[int, ...]:
        return tuple(s - k for s, k in zip(self.source_dims, self.kernel_dims))

    @property
    def consistent(self) -> bool:
        """rank-nullity on both ends and H^n = ker^n + coker^(n-1)."""
        ranks_ok = all(s - k == t - c for s, k, t, c in zip(
            self.source_dims, self.kernel_dims, self.target_dims, self.cokernel_dims))
        split_ok = all(
            u == self.kernel_dims[n] + (self.cokernel_dims[n - 1] if n else 0)
            for n, u in enumerate(self.union_dims))
        return ranks_ok and split_ok


@dataclass
class CohomologyReport:
    matrix: CartanMatrix
    profile: ParabolicProfile
    field: FieldSpec
    truncation: int
    total: TruncatedSeries
    summands: Tuple[SummandResult, ...]
    method: str
    stages: Tuple[StageRecord, ...] = ()
    pasting_order: Tuple[frozenset, ...] = ()
    closed_form: Optional[FactoredRational] = None
    crosscheck: Optional[dict] = None
    torsion: list = field(default_factory=list)
    ring_structure: Optional[dict] = None
    paper_diagnostics: list = field(default_factory=list)

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.total.coefficients

    def summand_total(self) -> TruncatedSeries:
        out = TruncatedSeries.zero(self.truncation)
        for s in self.summands:
            out = out + s.series
        return out


def _prepare(m, profile, f, N, lattice):
    m = as_cartan(m)
    profile = profile or parabolic_profile(m)
    if N < 0:
        raise ValueError("truncation must be non-negative")
    if lattice is None or lattice.field != f or lattice.N != N or lattice.cartan != m:
        lattice = InvariantLattice(m, f, N)
    return m, profile, lattice


# closed forms ----------------------------------------------------------------------

_DENOMINATOR_MENU = (
    (4,),
    (2, 2, 2),
    (2, 2, 4),
    (2, 4, 6),
    (4, 6, 8),
    (2, 2, 4, 12),
    (2, 2, 4, 6),
    (2, 2, 4, 8),
    (2, 2, 4, 6, 7, 8),
)


def closed_form(total: TruncatedSeries, f: FieldSpec) -> Optional[FactoredRational]:
    """Shortest q / prod(1 - t^d) over a small denominator menu (Dickson degrees
    included over F_p) that reconstructs ``total`` with a clean guard window."""
    menu = list(_DENOMINATOR_MENU)
    if f.p:
        from .torsion import dickson_degrees

        menu.insert(0, dickson_degrees(f.p))
    best = None
    for dens in menu:
        num = reconstruct_numerator(total, dens)
        if num is None:
            continue
        size = (len(num) - 1 + sum(dens), sum(dens))
        if best is None or size < best[0]:
            best = (size, FactoredRational(num, dens))
    return None if best is None else best[1]


# formula route ----------------------------------------------------------------


def assemble_by_formula(m, profile: ParabolicProfile = None, f: FieldSpec = FieldSpec(), N: int = 60,
                        lattice: InvariantLattice = None) -> CohomologyReport:
    """Sum the summands of the class formula, each read off the invariant lattice."""
    m, profile, lattice = _prepare(m, profile, f, N, lattice)
    results = []
    total = TruncatedSeries.zero(N)
    for spec in formula_summands(profile, f):
        s = _summand_series(spec, lattice)
        results.append(SummandResult(spec.label, spec, s))
        total = total + s
    return CohomologyReport(m, profile, f, N, total, tuple(results), "formula",
                            closed_form=closed_form(total, f))


# Mayer-Vietoris route ---------------------------------------------------------------


@dataclass(frozen=True)
class Vertex:
    J: frozenset

    def meet(self, K) -> "Vertex":
        return Vertex(self.J & K)

    def __str__(self):
        return "X" + subset_label(self.J)


@dataclass(frozen=True)
class Pasting:
    left: object
    right: frozenset

    def meet(self, K) -> "Pasting":
        return Pasting(self.left.meet(K), self.right & K)

    @property
    def overlap(self):
        return self.left.meet(self.right)

    def __str__(self):
        return f"({self.left}∪X{subset_label(self.right)})"


@dataclass(frozen=True)
class SpaceModel:
    """Cohomology of a pasted space, split into three kinds of pieces.

    even: subspace of P (restriction to the torus is injective on it);
    odd: path -> (top, bottom) giving Sigma(top/bottom), restricted through
    the inclusion of tops; hidden: (label, series) pieces, killed by every
    restriction.
    """

    even: GradedSubspace
    odd: Dict[str, Tuple[GradedSubspace, GradedSubspace]]
    hidden: Tuple[Tuple[str, TruncatedSeries], ...]

    def series(self) -> TruncatedSeries:
        N = self.even.truncation
        out = TruncatedSeries.from_even(self.even.dims, N)
        for top, bottom in self.odd.values():
            out = out + TruncatedSeries.from_even(quotient_dims(top, bottom), N).shift(1)
        for _, s in self.hidden:
            out = out + s
        return out


def _require(big, small, what):
    ok, deg = contains(big, small)
    if not ok:
        raise NotASubspace(deg, f"{what} fails at degree {deg}")


class MVEngine:
    """Iterated Mayer-Vietoris over left-deep pastings of finite pieces."""

    def __init__(self, lattice: InvariantLattice, profile: ParabolicProfile):
        self.lattice = lattice
        self.profile = profile
        self.N = lattice.N
        self._models: Dict[object, SpaceModel] = {}
        self.stages: List[StageRecord] = []

    def _sum(self, a, b):
        return subspace_sum(a, b, self.lattice.workers)

    def _meet(self, a, b):
        return subspace_intersect(a, b, self.lattice.workers)

    def vertex_model(self, J) -> SpaceModel:
        J = frozenset(J)
        hidden = ()
        if self.lattice.field.p == 2 and len(J) == 2 and self.lattice.cartan.pair_product(*sorted(J)) == 3:
            k = next(i for i in INDICES if i not in J)
            hidden = ((f"I{k}", g2_ideal_series(self.N)),)
        return SpaceModel(self.lattice.P(J), {}, hidden)

    def model(self, space) -> SpaceModel:
        if space in self._models:
            return self._models[space]
        if isinstance(space, Vertex):
            out = self.vertex_model(space.J)
        else:
            out = self._paste(space)
        self._models[space] = out
        return out

    def _paste(self, space: Pasting) -> SpaceModel:
        N = self.N
        S = self.model(space.left)
        X = self.vertex_model(space.right)
        Y = self.model(space.overlap)

        # even degrees: j(u, v) = u - v lands in the even part of the overlap
        _require(Y.even, S.even, "restriction of the left piece")
        _require(Y.even, X.even, "restriction of the right piece")
        even_ker = self._meet(S.even, X.even)
        image = self._sum(S.even, X.even)
        odd = {"": (Y.even, image)}

        # odd degrees: only the left piece carries odd classes, mapped pathwise
        hidden = list(S.hidden) + list(X.hidden)
        coker_hidden = []
        for path, (C, D) in Y.odd.items():
            src = S.odd.get(path)
            if src is None:
                coker_hidden.append((C, D, None))
                continue
            A, B = src
            _require(C, A, "odd restriction (tops)")
            _require(D, B, "odd restriction (bottoms)")
            odd["L" + path] = (self._meet(A, D), B)
            coker_hidden.append((C, self._sum(A, D), path))
        for path, comp in S.odd.items():
            if path not in Y.odd:
                odd["L" + path] = comp

        ker = TruncatedSeries.from_even(even_ker.dims, N)
        for path, (A, B) in odd.items():
            if path:
                ker = ker + TruncatedSeries.from_even(quotient_dims(A, B), N).shift(1)
        for _, s in hidden:
            ker = ker + s

        coker = TruncatedSeries.from_even(quotient_dims(Y.even, image), N)
        new_hidden = []
        for C, D, path in coker_hidden:
            s = TruncatedSeries.from_even(quotient_dims(C, D), N).shift(1)
            coker = coker + s
            new_hidden.append((f"Σ²coker[{space}]", s.shift(1)))
        for label, s in Y.hidden:
            coker = coker + s
            new_hidden.append((f"Σ{label}", s.shift(1)))

        out = SpaceModel(even_ker, odd, tuple(hidden + new_hidden))
        src = S.series() + X.series()
        tgt = Y.series()
        union_series = out.series()
        self.stages.append(StageRecord(
            str(space), str(space.left), f"X{subset_label(space.right)}", str(space.overlap),
            src.coefficients, tgt.coefficients, ker.coefficients, coker.coefficients,
            union_series.coefficients,
        ))
        return out


def pasting_tree(order: Sequence) -> object:
    order = [frozenset(J) for J in order]
    if not order:
        raise PreconditionError("empty pasting order")
    space = Vertex(order[0])
    for J in order[1:]:
        space = Pasting(space, J)
    return space


def assemble_by_mv(m, profile: ParabolicProfile = None, f: FieldSpec = FieldSpec(), N: int = 60,
                   lattice: InvariantLattice = None, order: Sequence = None) -> CohomologyReport:
    """Paste the maximal finite pieces in ``order`` (default: the canonical one)."""
    m, profile, lattice = _prepare(m, profile, f, N, lattice)
    order = tuple(frozenset(J) for J in (order or profile.pasting_order()))
    if sorted(map(sorted, order)) != sorted(map(sorted, profile.maximal_finite)):
        raise PreconditionError("a pasting order must list each maximal finite subset once")
    engine = MVEngine(lattice, profile)
    space = pasting_tree(order)
    model = engine.model(space)
    total = model.series()
    bad = [s.union for s in engine.stages if not s.consistent]
    if bad:
        raise ArithmeticError(f"Mayer-Vietoris bookkeeping inconsistent at {bad}")
    parts = [SummandResult("even kernel", SummandSpec("invariant"), TruncatedSeries.from_even(model.even.dims, N))]
    for path, (top, bottom) in sorted(model.odd.items()):
        parts.append(SummandResult(f"Σ odd[{path or 'root'}]", SummandSpec("quotient", 1),
                                   TruncatedSeries.from_even(quotient_dims(top, bottom), N).shift(1)))
    for label, s in model.hidden:
        parts.append(SummandResult(label, SummandSpec("quotient"), s))
    return CohomologyReport(m, profile, f, N, total, tuple(parts), "mv",
                            stages=tuple(engine.stages), pasting_order=order,
                            closed_form=closed_form(total, f))


def all_pasting_orders(profile: ParabolicProfile) -> List[Tuple[frozenset, ...]]:
    base = profile.pasting_order()
    return [tuple(p) for p in itertools.permutations(base)]


def crosscheck(formula: CohomologyReport, mv: CohomologyReport) -> dict:
    first = formula.total.first_difference(mv.total)
    return {"status": "match" if first is None else "mismatch", "first_mismatch_degree": first}


# worked example comparison ---------------------------------------------------------

EXAMPLE_MATRIX = "2,-1,-3;-3,2,-1;-2,-4,2"

# numerator of the printed mod-3 closed form, odd exponents 7..131
_G_ODD = (2, 3, 6, 7, 11, 13, 18, 21, 27, 30, 37, 41, 49, 54, 63, 69, 78, 84, 93, 99, 108, 115, 123,
          130, 136, 141, 145, 149, 151, 154, 154, 155, 153, 153, 149, 148, 142, 139, 131, 126, 117,
          111, 102, 96, 87, 81, 72, 65, 57, 51, 44, 39, 33, 28, 23, 19, 15, 12, 9, 6, 4, 2, 1)


def paper_g_numerator() -> Tuple[int, ...]:
    g = [0] * 132
    g[0] = 1
    for i, c in enumerate(_G_ODD):
        g[7 + 2 * i] = c
    return tuple(g)


PAPER_MOD3 = FactoredRational(paper_g_numerator(), (36, 48, 52))
PAPER_MOD2 = FactoredRational((1, 0, 0, 0, 0, 1, 0, 3, 0, 6, 0, 7, 0, 7, 0, 5, 0, 3, 0, 1), (4, 6, 8))


def rational_example_oracle(N: int) -> TruncatedSeries:
    """1 + t(1/(1-t^2)^3 - H(P12) - H(P3) + 1) with the ring series computed
    for the example matrix (generator degrees 2,4,12 and 2,2,4)."""
    inner = poincare(2, 2, 2, N=N) - poincare(2, 4, 12, N=N) - poincare(2, 2, 4, N=N) + TruncatedSeries.one(N)
    return TruncatedSeries.one(N) + inner.shift(1)


def _mismatches(computed: TruncatedSeries, paper: TruncatedSeries, kind: str, note: str = "") -> list:
    out = []
    for d, (a, b) in enumerate(zip(computed, paper)):
        if a != b:
            out.append({"kind": kind, "degree": d, "computed": a, "paper": b, "note": note})
    return out


def compare_with_paper_example(report: CohomologyReport, lattice: InvariantLattice = None) -> List[dict]:
    """Coefficientwise comparison with the printed closed forms for the example matrix.

    Every disagreement is listed; nothing is reconciled.
    """
    if report.matrix != as_cartan(EXAMPLE_MATRIX):
        raise PreconditionError("the printed closed forms belong to the matrix 2,-1,-3;-3,2,-1;-2,-4,2")
    N = report.truncation
    f = report.field
    diags: List[dict] = []
    if f.p == 3:
        paper = expand(PAPER_MOD3, N)
        diags += _mismatches(report.total, paper, "mod3_total")
        diags.append({"kind": "summary", "degree": None, "computed": None, "paper": None,
                      "note": f"mod 3 series vs printed closed form through t^{N}: "
                              + ("agree" if not diags else f"{len(diags)} disagreements")})
    elif f.p == 2:
        paper = expand(PAPER_MOD2, N)
        rows = _mismatches(report.total, paper, "mod2_total",
                           "printed closed form uses the ideal series t^7/(1-t^2)^3")
        kunneth = g2_ideal_series(N)
        displayed = g2_ideal_series_as_displayed(N)
        first = next((r["degree"] for r in rows), None)
        diags += rows
        diags.append({
            "kind": "g2_ideal_adjudication",
            "degree": first,
            "computed": None if first is None else report.total[first],
            "paper": None if first is None else paper[first],
            "note": ("ideal (y7) in F2[y4,y6,y7,w] has series t^7/((1-t^2)(1-t^4)(1-t^6)(1-t^7)); "
                     f"at t^9 it contributes {kunneth[9] if N >= 9 else 'n/a'} against "
                     f"{displayed[9] if N >= 9 else 'n/a'} from t^7/(1-t^2)^3; "
                     "the Mayer-Vietoris total uses the former; the printed closed form is a candidate erratum"),
        })
    elif f.is_rational:
        oracle = rational_example_oracle(N)
        rows = _mismatches(report.total, oracle, "rational_total", "derived oracle series")
        diags += rows
        diags.append({"kind": "rational_display", "degree": None, "computed": None, "paper": None,
                      "note": "paper display incomplete; compared against the derived series "
                              "1 + t(1/(1-t^2)^3 - 1/((1-t^2)(1-t^4)(1-t^12)) - 1/((1-t^2)^2(1-t^4)) + 1): "
                              + ("agree" if not rows else f"{len(rows)} disagreements")})
        if lattice is not None and lattice.field.is_rational:
            p12 = TruncatedSeries.from_even(lattice.P((1, 2)).dims, N)
            printed = poincare(2, 6, 22, N=N)
            d = p12.first_difference(printed)
            diags.append({"kind": "g2_rational_generators", "degree": d,
                          "computed": None if d is None else p12[d],
                          "paper": None if d is None else printed[d],
                          "note": "P12 over Q has generator degrees 2, 4, 12; the printed Q[y6, y22] "
                                  "does not match and is a candidate erratum"})
    else:
        diags.append({"kind": "no_printed_form", "degree": None, "computed": None, "paper": None,
                      "note": f"no closed form is printed for {f}"})
    return diags


# rational ring structure -------------------------------------------------------------


def ring_structure_report(m, profile: ParabolicProfile = None, N: int = 60,
                          lattice: InvariantLattice = None, report: CohomologyReport = None) -> dict:
    """Rational ring description: Q[psi] (or Q) tensor a trivial algebra on odd classes."""
    m = as_cartan(m)
    profile = profile or parabolic_profile(m)
    f = FieldSpec()
    if lattice is None or not lattice.field.is_rational or lattice.N != N:
        lattice = InvariantLattice(m, f, N)
    fc = None
    if profile.class_label is ClassLabel.IV:
        rep = check_sum_identity(lattice.action, f, [(1,), (2,), (3,)], N, lattice)
        fc = rep.holds_all_degrees
        if not fc:
            raise ClassIVUnverifiedConjecture(
                f"P = P1+P2+P3 fails over Q at degree {rep.first_failure_degree}; ring structure withheld")
    if report is None:
        report = assemble_by_formula(m, profile, f, N, lattice)
    H = report.total
    reduction = _class_reduction(profile, lattice)
    if m.symmetrizable:
        G = H.times_one_minus(4)
        coeffs = {2 * i + 1: G[2 * i + 1] for i in range(2, (N - 1) // 2 + 1) if G[2 * i + 1]}
        even_ok = all(G[d] == (1 if d == 0 else 0) for d in range(0, N + 1 - 4, 2))
        branch = "symmetrizable"
        polynomial_part = "Q[psi], deg psi = 4"
    else:
        G = H
        coeffs = {2 * i + 1: H[2 * i + 1] for i in range(2, (N - 1) // 2 + 1) if H[2 * i + 1]}
        even_ok = all(H[d] == (1 if d == 0 else 0) for d in range(0, N + 1, 2))
        branch = "nonsymmetrizable"
        polynomial_part = "Q"
    low = [d for d in (1, 3) if d <= N and G[d]]
    return {
        "branch": branch,
        "polynomial_part": polynomial_part,
        "odd_generator_counts": {str(d): c for d, c in sorted(coeffs.items())},
        "odd_products": "all products of odd generators vanish",
        "even_part_consistent": even_ok and not low,
        "class_reduction": reduction,
        "conjecture_fc": None if fc is None else {"holds_up_to": N},
        "truncation": N,
    }


def _class_reduction(profile: ParabolicProfile, lattice: InvariantLattice) -> dict:
    """Checks behind reducing classes I and II to the class-III shape over Q."""
    u = profile.to_user
    out = {"class": profile.class_label.value}
    if profile.class_label is ClassLabel.I:
        P = lattice.total()
        s = lattice.sum(u(subset(1)), u(subset(2)))
        out["first_summand_zero"] = list(s.dims) == list(P.dims)
    if profile.class_label in (ClassLabel.I, ClassLabel.II):
        P = lattice.total()
        a = quotient_dims(P, lattice.sum(u(subset(1, 2)), u(subset(3))))
        P1 = lattice.P(u(subset(1)))
        b = quotient_dims(P1, lattice.sum(u(subset(1, 2)), u(subset(1, 3))))
        out["matches_class_iii_shape"] = a == b
    return out
