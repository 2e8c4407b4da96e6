import pytest
from hypothesis import given

from kmc.cartan import INDICES, as_cartan
from kmc.errors import PairNotInfinite, PreconditionError
from kmc.fixtures import CORPUS, EXAMPLE, SUM_IDENTITY_SAMPLES
from kmc.invariants import (InvariantLattice, build_kappa, check_sum_identity, invariant_subspace,
                            is_fixed, killing_form, poly_mul, poly_pow, substitute)
from kmc.linalg import FieldSpec, monomial_count
from kmc.series import poincare
from kmc.weyl import ReflectionAction
from strategies import cartan_texts

FIELDS = [FieldSpec(), FieldSpec(2), FieldSpec(3), FieldSpec(5)]


@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_invariant_bases_are_fixed(f):
    r = ReflectionAction.of(EXAMPLE.text)
    for J in [(1,), (3,), (1, 2), INDICES]:
        assert is_fixed(r, invariant_subspace(r, J, f, 16))


@given(cartan_texts())
def test_invariant_dims_shrink_with_larger_subsets(text):
    lat = InvariantLattice(text, FieldSpec(3), 12)
    for J in [(1,), (2,), (3,)]:
        for K in [(1, 2, 3)]:
            assert all(a >= b for a, b in zip(lat.P(J).dims, lat.P(K).dims))
    assert lat.P(()).dims == tuple(monomial_count(k) for k in range(7))


def test_single_reflection_invariants_over_q():
    # a single reflection fixes a hyperplane pointwise: generators in degrees 2, 2, 4
    lat = InvariantLattice(EXAMPLE.text, FieldSpec(), 20)
    for j in INDICES:
        assert lat.P((j,)).dims == tuple(poincare(2, 2, 4, N=20)[::2])


def test_example_g2_pair_over_q_and_f3():
    for f in (FieldSpec(), FieldSpec(3)):
        lat = InvariantLattice(EXAMPLE.text, f, 40)
        assert lat.P((1, 2)).dims == tuple(poincare(2, 4, 12, N=40)[::2])


@given(cartan_texts(allow_affine=False))
def test_killing_form_exists_iff_symmetrizable(text):
    m = as_cartan(text)
    res = killing_form(m, N=8)
    assert (res.psi is not None) == m.symmetrizable
    assert res.consistent
    if m.symmetrizable:
        psi = res.as_polynomial()
        for j in INDICES:
            assert substitute(ReflectionAction.of(m), j, psi) == psi


def test_killing_form_needs_indefinite_type():
    with pytest.raises(PreconditionError):
        killing_form("2,-1,-1;-1,2,-1;-1,-1,2")


@pytest.mark.parametrize("text", SUM_IDENTITY_SAMPLES)
def test_kappa_generates_p12_with_w3(text):
    rep = build_kappa(text, N=20)
    assert rep.fixed_by_sigma1 and rep.fixed_by_sigma2
    assert rep.generates


def test_kappa_requires_infinite_pair():
    with pytest.raises(PairNotInfinite):
        build_kappa(EXAMPLE.text)


@pytest.mark.parametrize("text", SUM_IDENTITY_SAMPLES)
def test_sum_identity_over_q(text):
    rep = check_sum_identity(ReflectionAction.of(text), FieldSpec(), [(1,), (2,)], 24)
    assert rep.holds_all_degrees and rep.status == "holds_all_degrees"


def test_sum_identity_reports_degenerate_generators():
    rep = check_sum_identity(ReflectionAction.of("2,-2,-2;-2,2,-2;-2,-2,2"), FieldSpec(2), [(1,), (2,)], 8)
    assert rep.status == "degenerate_generator"
    assert rep.degenerate_generators == (1, 2)


def test_polynomial_helpers():
    x = {(1, 0, 0): 1, (0, 1, 0): 1}
    assert poly_pow(x, 2) == {(2, 0, 0): 1, (1, 1, 0): 2, (0, 2, 0): 1}
    assert poly_mul(x, {(0, 0, 0): 0}) == {}


def test_lattice_caches_rings():
    lat = InvariantLattice(CORPUS[0].text, FieldSpec(2), 10)
    assert lat.P((1,)) is lat.P((1,))
    assert lat.sum((1,), (2,)) is lat.sum((1,), (2,))
