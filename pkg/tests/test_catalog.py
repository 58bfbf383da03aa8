from fractions import Fraction

import pytest

from dglapair import catalog as cat
from dglapair import oracles
from dglapair.artin import make_artin
from dglapair.cone import mc_pair_verify, obstruction_class
from dglapair.artin import make_small_extension
from dglapair.dgla import validate_dgla


def test_list_contents():
    assert cat.catalog_list() == sorted(["abelian-line", "gl2-wedge", "heisenberg-theta", "identity-cone",
                                         "obstructed-pair", "product-pair"])
    with pytest.raises(KeyError):
        cat.load("nope")


def test_entries_satisfy_their_invariants(entry):
    P = entry.diagram
    assert P.validate().ok
    for L in (P.L, P.M, P.N):
        assert not oracles.naive_dgla_failures(L)
    assert entry.h_injective == P.h_injective()
    assert all(d >= 0 for d in entry.cone_dims.values())


def test_pinned_cohomology():
    assert cat.load("abelian-line").cone_dims.get(1) == 1
    ic = cat.load("identity-cone").cone_dims
    assert not any(ic.values())


def test_tensor_dgla_exterior_signs():
    D = cat.make_tensor_dgla(cat.gl2_structure(), [("a", 1), ("b", 1)])
    assert len(D.names) == 16
    assert validate_dgla(D).ok
    # [x⊗a, y⊗b] = [x,y]⊗ab and [x⊗b, y⊗a] = −[x,y]⊗ab
    assert D.bracket({"E12.a": 1}, {"E21.b": 1}) == {"E11.a.b": 1, "E22.a.b": -1}
    assert D.bracket({"E12.b": 1}, {"E21.a": 1}) == {"E11.a.b": -1, "E22.a.b": 1}


def test_tensor_dgla_with_differential():
    D = cat.make_tensor_dgla(cat.gl2_structure(), [("a", 1), ("b", 2)], {"a": {("b",): 1}})
    assert validate_dgla(D).ok
    assert D.d({"E12.a": 1}) == {"E12.b": 1}


def test_tensor_dgla_rejects_non_derivation():
    # u·u = 0 but d(u·u) would be 2uv
    with pytest.raises(ValueError, match="derivation"):
        cat.make_tensor_dgla(cat.gl2_structure(), [("u", 0), ("v", 1)], {"u": {("v",): 1}})


def test_tensor_dgla_rejects_bad_differential():
    with pytest.raises(ValueError):
        cat.make_tensor_dgla(cat.gl2_structure(), [("u", 0), ("v", 1)], {"u": {("v",): 1}, "v": {("u",): 1}})


def test_random_mc_is_deterministic_and_mc(entry):
    if entry.name == "obstructed-pair":
        pytest.skip("random lifts may be obstructed here")
    A = make_artin(["e"], 4)
    w = cat.random_mc(entry.diagram, A, 11)
    again = cat.random_mc(entry.diagram, A, 11)
    assert (w.x, w.y, w.p) == (again.x, again.y, again.p)
    assert mc_pair_verify(entry.diagram, w)


def test_obstructed_pair_witness():
    E = cat.load("obstructed-pair")
    P, w = E.diagram, E.obstructed_witness
    assert mc_pair_verify(P, w)
    se = make_small_extension(make_artin(["eps"], 3), ["eps^2"])
    ob = obstruction_class(P, se, w)
    assert not ob.is_zero
    assert oracles.lift_exists(P, se, w)[0] is False


def test_fixture_documents_are_reproducible():
    for name in cat.catalog_list():
        assert cat.fixture_document(name) == cat.fixture_document(name)
