"""Built-in acceptance suite: nine criteria, each a named pass/fail row."""
from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .assembly import (
    EXAMPLE_MATRIX,
    PAPER_MOD2,
    PAPER_MOD3,
    assemble_by_formula,
    assemble_by_mv,
    compare_with_paper_example,
    crosscheck,
)
from .cartan import INDICES, MatrixType, as_cartan, parabolic_profile
from .fixtures import CORPUS, SUM_IDENTITY_SAMPLES, Fixture
from .invariants import InvariantLattice, check_sum_identity
from .linalg import (
    FieldSpec,
    column_basis,
    GradedSubspace,
    monomial_count,
    rank,
    subspace_intersect,
    subspace_sum,
)
from .report import AnalysisRequest, analyze, to_json
from .series import TruncatedSeries, expand, poincare
from .torsion import _direct_substitution, torsion_certificate
from .weyl import ReflectionAction, coxeter_relation_holds, enumerate_group, molien_series

# Hand-enumerated mod-2 data at t^8/t^9 for the example matrix, fixed before any
# pipeline output was looked at: dim P^8 = 15, dim P12^8 = 4, dim P3^8 = 9,
# dim (P12 cap P3)^8 = 2, and ker j^9 is spanned by y7*w3.
MOD2_T8_ORACLE = {"P": 15, "P12": 4, "P3": 9, "P12^P3": 2}
MOD2_KER_T9 = 1
MOD2_T9_ORACLE = MOD2_T8_ORACLE["P"] - (MOD2_T8_ORACLE["P12"] + MOD2_T8_ORACLE["P3"] - MOD2_T8_ORACLE["P12^P3"]) + MOD2_KER_T9
MOD2_T9_PRINTED = 7
MOD2_LISTED_HEAD = (1, 0, 0, 0, 0, 1, 0, 3, 2)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.name}: {self.detail}"


def _series_eq(a: TruncatedSeries, b: TruncatedSeries, upto: int) -> Tuple[bool, int]:
    for d in range(upto + 1):
        if a[d] != b[d]:
            return False, d
    return True, -1


def criterion_1() -> Tuple[bool, str]:
    f = FieldSpec(3)
    rep = assemble_by_formula(EXAMPLE_MATRIX, f=f, N=60)
    paper = expand(PAPER_MOD3, 60)
    ok, bad = _series_eq(rep.total, paper, 60)
    spot = [rep.total[d] for d in (7, 9, 11, 13, 15)]
    ok = ok and spot == [2, 3, 6, 7, 11]
    where = "agrees through t^60" if bad < 0 else f"differs at t^{bad}"
    return ok, f"F3 series {where}; t^7..t^15 odd coefficients {spot}"


def criterion_2() -> Tuple[bool, str]:
    lat = InvariantLattice(EXAMPLE_MATRIX, FieldSpec(3), 60)
    p12 = TruncatedSeries.from_even(lat.P((1, 2)).dims, 60)
    p3 = TruncatedSeries.from_even(lat.P((3,)).dims, 60)
    ok12, b12 = _series_eq(p12, poincare(2, 4, 12, N=60), 40)
    ok3, b3 = _series_eq(p3, poincare(2, 2, 4, N=60), 40)
    full = lat.P(INDICES).degree_dims()
    expected = [1 if d in (0, 36, 48, 52) else 0 for d in range(61)]
    ok123 = full[::2] == expected[::2]
    support = [d for d in range(0, 61, 2) if full[d]]
    return ok12 and ok3 and ok123, (
        f"P12 {'ok' if ok12 else f'differs at t^{b12}'}, P3 {'ok' if ok3 else f'differs at t^{b3}'}, "
        f"P123 nonzero at {support} with dims {[full[d] for d in support]}")


FIELDS = (FieldSpec(), FieldSpec(2), FieldSpec(3), FieldSpec(5))


def _oracle_pair(job) -> List[str]:
    fx, N = job
    m = as_cartan(fx.text)
    prof = parabolic_profile(m)
    got = (prof.class_label.value, prof.refined_label, m.symmetrizable, m.matrix_type.value)
    want = (fx.class_label, fx.refined_label, fx.symmetrizable, fx.matrix_type)
    if got != want:
        return [f"{fx.name}: labelled {want}, classifies as {got}"]
    out = []
    for f in FIELDS:
        lat = InvariantLattice(m, f, N)
        xc = crosscheck(assemble_by_formula(m, prof, f, N, lat), assemble_by_mv(m, prof, f, N, lat))
        if xc["status"] != "match":
            out.append(f"{fx.name}/{f}: mismatch at t^{xc['first_mismatch_degree']}")
    return out


def criterion_3(corpus: Sequence[Fixture] = None, N: int = 40, processes: int = None) -> Tuple[bool, str]:
    corpus = CORPUS if corpus is None else corpus
    processes = min(len(corpus), os.cpu_count() or 1) if processes is None else processes
    jobs = [(fx, N) for fx in corpus]
    if processes > 1:
        with ProcessPoolExecutor(processes) as pool:
            results = list(pool.map(_oracle_pair, jobs))
    else:
        results = [_oracle_pair(j) for j in jobs]
    failures = [line for r in results for line in r]
    refined = sorted({fx.refined_label for fx in corpus})
    if failures:
        return False, "; ".join(failures)
    return True, f"{len(corpus)} fixtures x {{Q,F2,F3,F5}} agree through t^{N}; refined classes {','.join(refined)}"


def _independent_dim(m, J, p: int, k: int) -> int:
    r = ReflectionAction.of(m)
    n = monomial_count(k)
    ident = np.eye(n, dtype=np.int64)
    blocks = [_direct_substitution(r.generator(j), k, p) - ident for j in sorted(J)]
    return n - rank(np.vstack(blocks), FieldSpec(p))


def criterion_4() -> Tuple[bool, str]:
    m = as_cartan(EXAMPLE_MATRIX)
    k = 4  # t^8
    # independent oracle: direct monomial expansion, no cached machinery
    ind = {
        "P": monomial_count(k),
        "P12": _independent_dim(m, (1, 2), 2, k),
        "P3": _independent_dim(m, (3,), 2, k),
        "P12^P3": _independent_dim(m, (1, 2, 3), 2, k),
    }
    # P12 cap P3 is fixed by all three reflections, i.e. it is P123
    oracle_ok = ind == MOD2_T8_ORACLE
    f = FieldSpec(2)
    lat = InvariantLattice(m, f, 20)
    rep = assemble_by_formula(m, f=f, N=20, lattice=lat)
    mv = assemble_by_mv(m, f=f, N=20, lattice=lat)
    paper = expand(PAPER_MOD2, 20)
    head = list(rep.total.coefficients[:9])
    # The listed values 1,0,0,0,0,1,0,3,2 cannot all be series coefficients: the
    # printed denominator (1-t^4)(1-t^6)(1-t^8) already forces 1 at t^4 and t^6,
    # as does the degree-4 mod-2 invariant behind the p = 2 torsion witness.
    # Compare with the expansion of the printed closed form and with the listed
    # values at every degree other than 4 and 6.
    listed = dict(zip(range(9), MOD2_LISTED_HEAD))
    head_ok = head == list(paper.coefficients[:9]) and all(
        head[d] == v for d, v in listed.items() if d not in (4, 6))
    diags = compare_with_paper_example(rep, lat)
    t9 = next((d for d in diags if d["kind"] == "mod2_total" and d["degree"] == 9), None)
    adj = next((d for d in diags if d["kind"] == "g2_ideal_adjudication"), None)
    diag_ok = (t9 is not None and t9["computed"] == MOD2_T9_ORACLE and t9["paper"] == MOD2_T9_PRINTED
               and adj is not None and adj["degree"] == 9)
    ok = oracle_ok and head_ok and diag_ok and rep.total[9] == mv.total[9] == MOD2_T9_ORACLE
    return ok, (f"t^0..t^8 = {head} (printed closed form expands to {list(paper.coefficients[:9])}); oracle dims {ind}; t^9 computed {rep.total[9]} (oracle "
                f"{MOD2_T9_ORACLE}), printed {MOD2_T9_PRINTED}, flagged as candidate erratum")


def criterion_5(N: int = 40) -> Tuple[bool, str]:
    m = as_cartan(EXAMPLE_MATRIX)
    lat = InvariantLattice(m, FieldSpec(), N)
    r = lat.action
    parts = {}
    for J in ((), (1, 2), (3,)):
        kern = TruncatedSeries.from_even(lat.P(J).dims, N)
        mol = molien_series(enumerate_group(r, J), FieldSpec(), N)
        if kern.first_difference(mol) is not None:
            return False, f"P{''.join(map(str, J)) or ''} kernels and Molien differ at t^{kern.first_difference(mol)}"
        parts[J] = kern
    one = TruncatedSeries.one(N)
    oracle = one + (parts[()] - parts[(1, 2)] - parts[(3,)] + one).shift(1)
    closed = one + (poincare(2, 2, 2, N=N) - poincare(2, 4, 12, N=N) - poincare(2, 2, 4, N=N) + one).shift(1)
    rep = assemble_by_formula(m, f=FieldSpec(), N=N, lattice=lat)
    d1, d2 = rep.total.first_difference(oracle), oracle.first_difference(closed)
    ok = d1 is None and d2 is None
    return ok, ("Q series equals the dual-method oracle and the closed expression through t^%d" % N if ok
                else f"differs: computed vs oracle at {d1}, oracle vs closed at {d2}")


def criterion_6(N: int = 40) -> Tuple[bool, str]:
    bad = []
    for text in SUM_IDENTITY_SAMPLES:
        m = as_cartan(text)
        if m.pair_product(1, 2) < 4 or m.matrix_type is not MatrixType.INDEFINITE:
            bad.append(f"{text}: not an admissible sample")
            continue
        rep = check_sum_identity(ReflectionAction.of(m), FieldSpec(), [(1,), (2,)], N)
        if not rep.holds_all_degrees:
            bad.append(f"{text}: fails at t^{rep.first_failure_degree}")
    if bad:
        return False, "; ".join(bad)
    return True, f"P1+P2 = P over Q through t^{N} for {len(SUM_IDENTITY_SAMPLES)} samples"


def criterion_7(N: int = 60) -> Tuple[bool, str]:
    m = as_cartan(EXAMPLE_MATRIX)
    rational = InvariantLattice(m, FieldSpec(), N)
    rows, ok = [], True
    for p, want in ((2, 4), (3, 36)):
        c = torsion_certificate(m, p, N, rational=rational)
        good = c.certified and c.witness_degree == want and c.reverified
        ok = ok and good
        rows.append(f"p={p} {c.status} at t^{c.witness_degree} ({c.rational_dim} vs {c.modular_dim}), reverified {c.reverified}")
    return ok, "; ".join(rows)


def criterion_8(corpus: Sequence[Fixture] = None, N: int = 40) -> Tuple[bool, str]:
    corpus = CORPUS if corpus is None else corpus
    checked, bad = 0, []
    for fx in corpus:
        m = as_cartan(fx.text)
        lat = InvariantLattice(m, FieldSpec(), N)
        subsets = [()] + [(j,) for j in INDICES] + [
            (i, j) for i, j in itertools.combinations(INDICES, 2) if m.rank2_type(i, j).finite]
        for J in subsets:
            mol = molien_series(enumerate_group(lat.action, J), FieldSpec(), N)
            kern = TruncatedSeries.from_even(lat.P(J).dims, N)
            checked += 1
            d = kern.first_difference(mol)
            if d is not None:
                bad.append(f"{fx.name} J={J}: differs at t^{d}")
    if bad:
        return False, "; ".join(bad)
    return True, f"{checked} finite parabolics agree through t^{N}"


def _random_subspace(rng, f: FieldSpec, N: int) -> GradedSubspace:
    bases = []
    for k in range(N // 2 + 1):
        n = monomial_count(k)
        c = int(rng.integers(0, n + 1))
        raw = rng.integers(-3, 4, size=(n, c)) if f.is_rational else rng.integers(0, f.p, size=(n, c))
        raw = f.normalize(np.asarray(raw, dtype=np.int64))
        bases.append(f.normalize(np.asarray(column_basis(raw, f))) if c else f.zeros(n, 0))
    return GradedSubspace(f, N, tuple(bases))


def criterion_9(seed: int = 20240611) -> Tuple[bool, str]:
    problems = []
    for fx in CORPUS:
        r = ReflectionAction.of(fx.matrix)
        for j in INDICES:
            g = r.generator(j)
            if not (g @ g == np.eye(3, dtype=np.int64)).all():
                problems.append(f"{fx.name}: s{j}^2 != 1")
        for i, j in itertools.combinations(INDICES, 2):
            if fx.matrix.rank2_type(i, j).finite and not coxeter_relation_holds(r, i, j):
                problems.append(f"{fx.name}: Coxeter relation fails for ({i},{j})")
    rng = np.random.default_rng(seed)
    trials = 0
    for f in FIELDS:
        for _ in range(4):
            a, b = _random_subspace(rng, f, 12), _random_subspace(rng, f, 12)
            s, m = subspace_sum(a, b), subspace_intersect(a, b)
            trials += 1
            if any(x + y != u + v for x, y, u, v in zip(s.dims, m.dims, a.dims, b.dims)):
                problems.append(f"Grassmann identity fails over {f}")
    for fx in CORPUS:
        for f in FIELDS:
            rep = assemble_by_formula(fx.text, f=f, N=12)
            if rep.total[0] != 1:
                problems.append(f"{fx.name}/{f}: degree-0 coefficient {rep.total[0]}")
    runs = [to_json(analyze(AnalysisRequest(EXAMPLE_MATRIX, FieldSpec(3), 40, "json",
                                            with_mv_crosscheck=True, workers=w))) for w in (1, 4, 1)]
    if len(set(runs)) != 1:
        problems.append("analysis output depends on run or thread count")
    if problems:
        return False, "; ".join(problems)
    return True, (f"involutions and Coxeter relations on {len(CORPUS)} fixtures, {trials} Grassmann trials, "
                  "degree-0 coefficients, identical output for 1 and 4 workers")


CRITERIA: Tuple[Tuple[int, str, Callable[[], Tuple[bool, str]]], ...] = (
    (1, "mod-3 worked example", criterion_1),
    (2, "mod-3 invariant inputs", criterion_2),
    (3, "formula/Mayer-Vietoris equivalence", criterion_3),
    (4, "mod-2 worked example adjudication", criterion_4),
    (5, "rational worked example", criterion_5),
    (6, "rational sum identity", criterion_6),
    (7, "torsion certificates", criterion_7),
    (8, "Molien cross-check", criterion_8),
    (9, "structural invariants", criterion_9),
)


def run_criterion(number: int) -> CriterionResult:
    for n, name, fn in CRITERIA:
        if n == number:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a named failure, not an abort
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return CriterionResult(n, name, ok, detail, time.perf_counter() - t0)
    raise KeyError(number)


def run_all(numbers: Sequence[int] = None) -> List[CriterionResult]:
    numbers = [n for n, _, _ in CRITERIA] if numbers is None else list(numbers)
    return [run_criterion(n) for n in numbers]


def format_table(results: Sequence[CriterionResult]) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
