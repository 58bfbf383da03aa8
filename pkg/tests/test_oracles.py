"""Self-checks of the brute-force references against hand-computed values."""
from fractions import Fraction

import pytest

from dglapair import catalog as cat
from dglapair import oracles
from dglapair.artin import make_artin, make_small_extension
from dglapair.cone import PairMCWitness
from dglapair.dgla import DglaPresentation
from dglapair.elements import Element


def test_bubble_sign_by_hand():
    # swapping two odd vectors costs a sign, an even one does not
    assert oracles.koszul_sign_bubble([2, 1], [1, 1]) == -1
    assert oracles.koszul_sign_bubble([2, 1], [0, 1]) == 1
    assert oracles.koszul_sign_bubble([3, 1, 2], [1, 1, 1]) == 1
    assert oracles.koszul_sign_bubble([1, 2, 3], [1, 1, 1]) == 1


def test_unshuffle_counts():
    assert len(oracles.unshuffles_bruteforce(2, 2)) == 6
    assert len(oracles.unshuffles_bruteforce(0, 3)) == 1
    assert oracles.unshuffles_bruteforce(1, 1) == [(1, 2), (2, 1)]


def test_bernoulli_series_by_hand():
    assert oracles.bernoulli_series(6) == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0,
                                           Fraction(1, 42)]


def test_naive_failures_on_hand_made_structures():
    ok = DglaPresentation.build([("a", 0), ("b", 0)], {}, {("a", "b"): {"b": 1}})
    assert oracles.naive_dgla_failures(ok) == set()
    dd = DglaPresentation.build([("a", 0), ("b", 1), ("c", 2)], {"a": {"b": 1}, "b": {"c": 1}})
    assert "d∘d = 0" in oracles.naive_dgla_failures(dd)
    jac = DglaPresentation.build([("a", 0), ("b", 0), ("c", 0)], {},
                                 {("a", "b"): {"b": 1}, ("a", "c"): {"a": 1}, ("b", "c"): {"c": 1}})
    assert "Jacobi" in oracles.naive_dgla_failures(jac)


def test_perturbations_enumerate_every_slot():
    L = DglaPresentation.build([("a", 0), ("b", 1)], {}, {})
    labels = [lab for lab, _ in oracles.perturbations(L)]
    # [a,a]->a, [a,b]->b and d a -> b
    assert sorted(labels) == sorted(["[a,a] -> a", "[a,b] -> b", "d a -> b"])


def test_tangent_dimension_abelian_line(dual):
    assert oracles.tangent_dimension(cat.load("abelian-line").diagram, dual) == 1
    assert oracles.tangent_dimension(cat.load("identity-cone").diagram, dual) == 0
    with pytest.raises(ValueError):
        oracles.tangent_dimension(cat.load("abelian-line").diagram, make_artin(["e"], 3))


def test_lift_exists_by_hand():
    P = cat.load("abelian-line").diagram
    se = make_small_extension(make_artin(["eps"], 3), ["eps^2"])
    A = se.quotient
    w = PairMCWitness(Element.from_coeffs(P.L, A, {("e", "eps"): 1}),
                      Element.from_coeffs(P.N, A, {("e", "eps"): 1}), Element.zero(P.M, A))
    found, lift = oracles.lift_exists(P, se, w)
    assert found and lift is not None
    ob = cat.load("obstructed-pair")
    assert oracles.lift_exists(ob.diagram, se, ob.obstructed_witness.change_ring(A))[0] is False
