import itertools

import numpy as np
import pytest
from hypothesis import given

from kmc.cartan import INDICES, as_cartan
from kmc.errors import InfiniteGroup, ModularNotSupported
from kmc.fixtures import CORPUS, EXAMPLE
from kmc.invariants import InvariantLattice
from kmc.linalg import FieldSpec
from kmc.series import TruncatedSeries
from kmc.torsion import _direct_substitution
from kmc.weyl import (ReflectionAction, coxeter_relation_holds, enumerate_group, molien_series,
                      simple_root, substitution_array)
from strategies import cartan_texts

I3 = np.eye(3, dtype=np.int64)


@given(cartan_texts())
def test_reflections_are_involutions(text):
    r = ReflectionAction.of(text)
    for j in INDICES:
        g = r.generator(j)
        assert (g @ g == I3).all()
        assert round(np.linalg.det(g)) == -1


@given(cartan_texts())
def test_coxeter_relations_for_finite_pairs(text):
    m = as_cartan(text)
    r = ReflectionAction.of(m)
    for i, j in itertools.combinations(INDICES, 2):
        if m.rank2_type(i, j).finite:
            assert coxeter_relation_holds(r, i, j)
            assert coxeter_relation_holds(r, j, i)
        else:
            with pytest.raises(InfiniteGroup):
                coxeter_relation_holds(r, i, j)


def test_simple_root_is_column_of_cartan_matrix():
    m = as_cartan(EXAMPLE.text)
    assert simple_root(m, 1) == (2, -3, -2)
    assert simple_root(m, 3) == (-3, -1, 2)


@pytest.mark.parametrize("fx", CORPUS, ids=lambda fx: fx.name)
def test_finite_parabolic_orders(fx):
    m = fx.matrix
    r = ReflectionAction.of(m)
    for J in [()] + [(j,) for j in INDICES] + [
            (i, j) for i, j in itertools.combinations(INDICES, 2) if m.rank2_type(i, j).finite]:
        g = enumerate_group(r, J)
        assert g.order == g.expected_order(m)


def test_infinite_groups_rejected():
    r = ReflectionAction.of(EXAMPLE.text)
    with pytest.raises(InfiniteGroup):
        enumerate_group(r, (1, 3))
    with pytest.raises(InfiniteGroup):
        enumerate_group(r, INDICES)


@given(cartan_texts())
def test_substitution_is_a_homomorphism(text):
    r = ReflectionAction.of(text)
    g, h = r.generator(1), r.generator(2)
    for k in range(4):
        lhs = substitution_array(g @ h, k)
        rhs = substitution_array(g, k).dot(substitution_array(h, k))
        assert (lhs == rhs).all()


@pytest.mark.parametrize("p", [0, 2, 3])
def test_cached_substitution_matches_direct_expansion(p):
    r = ReflectionAction.of(EXAMPLE.text)
    for j in INDICES:
        for k in range(6):
            a = np.asarray(substitution_array(r.generator(j), k, p), dtype=object)
            b = _direct_substitution(r.generator(j), k, p)
            assert (a == b).all()


def test_molien_equals_kernel_dims_for_example():
    lat = InvariantLattice(EXAMPLE.text, FieldSpec(), 30)
    for J in [(), (1,), (2,), (3,), (1, 2)]:
        mol = molien_series(enumerate_group(lat.action, J), FieldSpec(), 30)
        assert mol == TruncatedSeries.from_even(lat.P(J).dims, 30)


def test_molien_is_rational_only():
    r = ReflectionAction.of(EXAMPLE.text)
    with pytest.raises(ModularNotSupported):
        molien_series(enumerate_group(r, (1,)), FieldSpec(2), 10)


def test_degenerate_generator_detection():
    r = ReflectionAction.of("2,-2,-2;-2,2,-2;-2,-2,2")
    assert all(r.is_degenerate(j, 2) for j in INDICES)
    assert not any(r.is_degenerate(j, 3) for j in INDICES)
    assert not r.is_degenerate(1, 0)
