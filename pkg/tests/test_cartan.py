import pytest
from hypothesis import given

from kmc.cartan import ClassLabel, MatrixType, as_cartan, classify_type, parabolic_profile, parse_matrix, subset
from kmc.errors import (AxiomViolation, DecomposableInput, FiniteTypeInput, MatrixSyntaxError,
                        NotRank3)
from kmc.fixtures import CORPUS, EXAMPLE, by_name
from strategies import cartan_texts, permutations


def test_example_matrix_is_class_ii_refined_iii():
    m = parse_matrix(EXAMPLE.text)
    prof = parabolic_profile(m)
    assert m.matrix_type is MatrixType.INDEFINITE
    assert not m.symmetrizable
    assert prof.class_label is ClassLabel.II and prof.refined_label == "iii"
    assert prof.maximal_finite == {subset(1, 2), subset(3)}
    assert prof.rank2_types[subset(1, 2)].is_g2


@pytest.mark.parametrize("fx", CORPUS, ids=lambda fx: fx.name)
def test_corpus_labels(fx):
    m = fx.matrix
    prof = parabolic_profile(m)
    assert (prof.class_label.value, prof.refined_label) == (fx.class_label, fx.refined_label)
    assert m.symmetrizable == fx.symmetrizable
    assert m.matrix_type.value == fx.matrix_type


def test_corpus_covers_every_refined_class():
    assert {fx.refined_label for fx in CORPUS} == set("i ii iii iv v vi vii viii ix x".split())
    assert all(-4 <= x <= 0 for fx in CORPUS for i, row in enumerate(fx.matrix.entries)
               for j, x in enumerate(row) if i != j)


@pytest.mark.parametrize("text, err", [
    ("", MatrixSyntaxError),
    ("2,-1;x,2", MatrixSyntaxError),
    ("2,-1;-1,2", NotRank3),
    ("2,-1,0;-1,2", MatrixSyntaxError),
    ("3,-1,-1;-1,2,-1;-1,-1,2", AxiomViolation),
    ("2,1,-1;-1,2,-1;-1,-1,2", AxiomViolation),
    ("2,0,-1;-1,2,-1;-1,-1,2", AxiomViolation),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_matrix(text)


def test_finite_and_decomposable_inputs_are_rejected():
    with pytest.raises(FiniteTypeInput):
        parabolic_profile("2,-1,0;-1,2,-1;0,-1,2")
    with pytest.raises(DecomposableInput):
        classify_type("2,-1,0;-1,2,0;0,0,2")


def test_affine_detection():
    assert classify_type("2,-1,-1;-1,2,-1;-1,-1,2") is MatrixType.AFFINE
    assert by_name("viii-affine").matrix.matrix_type is MatrixType.AFFINE


def test_symmetrizable_cycle_condition():
    assert as_cartan("2,-4,-4;-4,2,-4;-4,-4,2").symmetrizable
    assert not as_cartan(EXAMPLE.text).symmetrizable
    # a12 a23 a31 = -4 against a13 a32 a21 = -2
    assert not as_cartan("2,-2,-1;-1,2,-1;-2,-2,2").symmetrizable


@given(cartan_texts(), permutations)
def test_classification_is_relabelling_invariant(text, perm):
    m = as_cartan(text)
    p = m.permuted(perm)
    a, b = parabolic_profile(m), parabolic_profile(p)
    assert (a.class_label, a.refined_label) == (b.class_label, b.refined_label)
    assert m.matrix_type is p.matrix_type and m.symmetrizable == p.symmetrizable


@given(cartan_texts())
def test_profile_permutation_maps_canonical_shape(text):
    prof = parabolic_profile(text)
    pasted = set(prof.pasting_order())
    assert pasted == set(prof.maximal_finite)
    for J in prof.maximal_finite:
        assert prof.to_user(prof.to_canonical(J)) == J


@given(cartan_texts())
def test_text_round_trip(text):
    m = parse_matrix(text)
    assert parse_matrix(m.to_text()) == m
