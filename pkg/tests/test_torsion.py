import pytest

from kmc.assembly import EXAMPLE_MATRIX
from kmc.errors import NotPrime
from kmc.invariants import InvariantLattice
from kmc.linalg import FieldSpec
from kmc.torsion import (_single_degree_dim, contradiction_degree, dickson_degrees, dickson_series,
                         torsion_certificate)


def test_dickson_degrees():
    assert dickson_degrees(2) == (8, 12, 14)
    assert dickson_degrees(3) == (36, 48, 52)
    with pytest.raises(NotPrime):
        dickson_degrees(9)


def test_contradiction_degree():
    assert contradiction_degree(2) == 24
    assert contradiction_degree(3) == 144


def test_example_mod2_certificate():
    c = torsion_certificate(EXAMPLE_MATRIX, 2, 12)
    assert c.certified and c.witness_degree == 4
    assert (c.rational_dim, c.modular_dim) == (0, 1)
    assert c.reverified and c.dickson_bound_holds
    assert c.rational_model == "1" and c.rational_model_matches
    assert "24 exceeds the truncation 12" in c.warning


def test_example_mod3_needs_degree_36():
    short = torsion_certificate(EXAMPLE_MATRIX, 3, 12)
    assert short.status == "NoWitnessUpToN" and short.witness_degree is None
    assert "beyond the truncation" in short.explanation()
    lat = InvariantLattice(EXAMPLE_MATRIX, FieldSpec(3), 40)
    long = torsion_certificate(EXAMPLE_MATRIX, 3, 40, modular=lat)
    assert long.certified and long.witness_degree == 36


def test_mod3_invariants_dominate_dickson_bound():
    lat = InvariantLattice(EXAMPLE_MATRIX, FieldSpec(3), 60)
    dims = lat.P((1, 2, 3)).degree_dims()
    bound = dickson_series(3, 60)
    assert all(dims[d] >= bound[d] for d in range(0, 61, 2))


def test_single_degree_recomputation_is_independent_of_lattice():
    lat = InvariantLattice(EXAMPLE_MATRIX, FieldSpec(2), 10)
    for d in range(0, 11, 2):
        assert _single_degree_dim(lat.cartan, 2, d) == lat.P((1, 2, 3)).dim(d)


def test_certificate_dict_shape():
    d = torsion_certificate("2,-4,-4;-4,2,-4;-4,-4,2", 2, 6).to_dict()
    assert d["status"] == "Certified" and d["witness_degree"] == 2
    assert d["rational_model"] == "1/(1-t^4)"
    assert set(d) >= {"prime", "witness_degree", "dim_rational", "dim_modular", "reverified", "explanation"}


def test_affine_matrices_have_no_rational_model():
    c = torsion_certificate("2,-1,-1;-1,2,-1;-1,-1,2", 2, 8)
    assert c.rational_model == "none" and c.rational_model_matches is None
