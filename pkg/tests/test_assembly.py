import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmc import assembly
from kmc.assembly import (EXAMPLE_MATRIX, all_pasting_orders, assemble_by_formula, assemble_by_mv,
                          closed_form, compare_with_paper_example, crosscheck, formula_summands,
                          g2_ideal_series, ring_structure_report)
from kmc.cartan import ClassLabel, parabolic_profile
from kmc.errors import ClassIVUnverifiedConjecture, PreconditionError
from kmc.fixtures import CORPUS, by_name
from kmc.invariants import InvariantLattice
from kmc.linalg import FieldSpec
from kmc.series import FactoredRational, expand, poincare
from strategies import cartan_texts

FIELDS = [FieldSpec(), FieldSpec(2), FieldSpec(3), FieldSpec(5)]


@given(cartan_texts(), st.sampled_from(FIELDS))
def test_formula_equals_mayer_vietoris(text, f):
    lat = InvariantLattice(text, f, 14)
    a = assemble_by_formula(text, f=f, N=14, lattice=lat)
    b = assemble_by_mv(text, f=f, N=14, lattice=lat)
    assert crosscheck(a, b) == {"status": "match", "first_mismatch_degree": None}
    assert a.total[0] == 1
    assert a.summand_total() == a.total
    assert all(s.consistent for s in b.stages)


@pytest.mark.parametrize("name", ["i-nonsym", "iv-sym", "vii-nonsym", "x-nonsym"])
@pytest.mark.parametrize("f", [FieldSpec(), FieldSpec(2)], ids=str)
def test_every_pasting_order_agrees(name, f):
    fx = by_name(name)
    lat = InvariantLattice(fx.text, f, 16)
    ref = assemble_by_formula(fx.text, f=f, N=16, lattice=lat).total
    for order in all_pasting_orders(parabolic_profile(fx.text)):
        assert assemble_by_mv(fx.text, f=f, N=16, lattice=lat, order=order).total == ref


def test_pasting_order_must_cover_maximal_subsets():
    with pytest.raises(PreconditionError):
        assemble_by_mv(EXAMPLE_MATRIX, N=6, order=[frozenset({1, 2})])


def test_mod2_formula_includes_g2_ideals_by_refined_class():
    for fx in CORPUS:
        prof = parabolic_profile(fx.text)
        ideals = [s for s in formula_summands(prof, FieldSpec(2)) if s.kind == "g2_ideal"]
        assert len(ideals) == len(prof.g2_pairs)
        odd = formula_summands(prof, FieldSpec(3))
        assert not any(s.kind == "g2_ideal" for s in odd)


def test_g2_ideal_series_low_degrees():
    s = g2_ideal_series(13)
    assert list(s) == [0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 2, 0, 3]


def test_example_mod3_matches_printed_closed_form_through_t40():
    rep = assemble_by_formula(EXAMPLE_MATRIX, f=FieldSpec(3), N=40)
    assert rep.total == expand(assembly.PAPER_MOD3, 40)
    diags = compare_with_paper_example(rep)
    assert [d["kind"] for d in diags] == ["summary"]


def test_example_mod2_flags_first_disagreement_at_t9():
    lat = InvariantLattice(EXAMPLE_MATRIX, FieldSpec(2), 16)
    rep = assemble_by_formula(EXAMPLE_MATRIX, f=FieldSpec(2), N=16, lattice=lat)
    diags = compare_with_paper_example(rep, lat)
    rows = [d for d in diags if d["kind"] == "mod2_total"]
    assert rows[0]["degree"] == 9 and (rows[0]["computed"], rows[0]["paper"]) == (5, 7)
    assert any(d["kind"] == "g2_ideal_adjudication" and d["degree"] == 9 for d in diags)


def test_example_rational_diagnostics():
    lat = InvariantLattice(EXAMPLE_MATRIX, FieldSpec(), 30)
    rep = assemble_by_formula(EXAMPLE_MATRIX, N=30, lattice=lat)
    assert rep.total == assembly.rational_example_oracle(30)
    kinds = [d["kind"] for d in compare_with_paper_example(rep, lat)]
    assert kinds == ["rational_display", "g2_rational_generators"]


def test_printed_form_comparison_only_for_the_example():
    rep = assemble_by_formula(CORPUS[0].text, N=6)
    with pytest.raises(PreconditionError):
        compare_with_paper_example(rep)


def test_closed_form_recovers_a_known_series():
    s = poincare(2, 4, 12, N=40)
    fr = closed_form(s, FieldSpec())
    assert fr is not None and expand(fr, 40) == s


def test_closed_form_prefers_none_to_a_guess():
    s = poincare(2, 4, 12, N=12)
    assert closed_form(s, FieldSpec()) is None


def test_ring_structure_nonsymmetrizable_example():
    ring = ring_structure_report(EXAMPLE_MATRIX, N=20)
    assert ring["branch"] == "nonsymmetrizable"
    assert ring["odd_generator_counts"]["7"] == 2
    assert ring["even_part_consistent"]
    assert ring["class_reduction"] == {"class": "II", "matches_class_iii_shape": True}


def test_ring_structure_symmetrizable_uses_psi():
    ring = ring_structure_report(by_name("iv-sym").text, N=20)
    assert ring["branch"] == "symmetrizable"
    assert ring["even_part_consistent"]


def test_ring_structure_class_iv_checks_sum_identity():
    ring = ring_structure_report(by_name("vii-sym").text, N=16)
    assert ring["conjecture_fc"] == {"holds_up_to": 16}


def test_ring_structure_withheld_when_sum_identity_fails(monkeypatch):
    real = assembly.check_sum_identity

    def failing(*args, **kwargs):
        rep = real(*args, **kwargs)
        return type(rep)(rep.field, rep.parts, rep.truncation, False, 4, (), rep.sum_dims, rep.total_dims)

    monkeypatch.setattr(assembly, "check_sum_identity", failing)
    with pytest.raises(ClassIVUnverifiedConjecture):
        ring_structure_report(by_name("vii-nonsym").text, N=8)


def test_class_i_reduction_checks():
    prof = parabolic_profile(by_name("i-sym").text)
    assert prof.class_label is ClassLabel.I
    ring = ring_structure_report(by_name("i-sym").text, N=16)
    assert ring["class_reduction"]["first_summand_zero"]
    assert ring["class_reduction"]["matches_class_iii_shape"]


def test_factored_rational_expansion_of_printed_mod2_form():
    assert list(expand(assembly.PAPER_MOD2, 9)) == [1, 0, 0, 0, 1, 1, 1, 3, 2, 7]
    assert isinstance(assembly.PAPER_MOD2, FactoredRational)
