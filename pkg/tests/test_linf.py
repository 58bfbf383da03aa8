import itertools
import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from dglapair import catalog as cat
from dglapair import oracles
from dglapair.artin import make_artin
from dglapair.cone import ConeTriple, PairMCWitness, mc_pair_verify
from dglapair.dgla import DglaPresentation
from dglapair.elements import Element, Q
from dglapair.linf import (I_bar_coefficient, I_coefficient, LInfinityStructure, bernoulli, bracket_one,
                           dgla_to_linf, mc_infinity_residual, mc_infinity_residual_generic,
                           mc_infinity_verify, phi_sequence, transferred_bracket_closed,
                           transferred_bracket_tree, transferred_structure, validate_linf)

F = Fraction


def gl2():
    names, br = cat.gl2_structure()
    half = {(a, b): v for (a, b), v in br.items() if names.index(a) <= names.index(b)}
    return DglaPresentation.build([(n, 0) for n in names], {}, half, "gl2")


def test_bernoulli_values():
    assert [bernoulli(j) for j in range(5)] == [1, F(-1, 2), F(1, 6), 0, F(-1, 30)]
    assert [bernoulli(j) for j in range(13)] == oracles.bernoulli_series(12)
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_phi_low_order():
    p1, I1 = phi_sequence(1)
    assert p1 == {1: 1} and I1 == F(1, 2)
    p2, I2 = phi_sequence(2)
    assert p2 == {2: F(1, 2), 1: F(-1, 2)} and I2 == F(-1, 12)
    pb2, _ = phi_sequence(2, bar=True)
    assert pb2 == {k: -v for k, v in p2.items()}
    assert phi_sequence(1, bar=True)[0] == {0: 1, 1: -1}


@pytest.mark.parametrize("j", range(1, 9))
def test_I_is_bernoulli(j):
    assert I_coefficient(j) == -bernoulli(j) / factorial(j)
    if j >= 2:
        assert I_bar_coefficient(j) == -I_coefficient(j)
        assert phi_sequence(j, bar=True)[0] == {k: -v for k, v in phi_sequence(j)[0].items()}


def test_phi_vanishes_at_ends():
    for j in range(2, 7):
        p, _ = phi_sequence(j)
        assert sum(p.values()) == 0 and p.get(0, 0) == 0


def test_abelian_dgla_linf():
    L = cat.abelian_dgla([("a", 0), ("b", 1)], {"a": {"b": 1}})
    T = dgla_to_linf(L)
    assert T.q([{"a": 1}]) == {"b": -1}
    assert T.q([{"a": 1}, {"b": 1}]) == {}
    assert validate_linf(T, 3).ok


def test_q1_squares_to_zero_and_q2_symmetry():
    L = cat.load("gl2-wedge").diagram.M
    T = dgla_to_linf(L)
    for n in L.space.names:
        assert T.q([T.q([{n: 1}])]) == {}
    names = L.space.names
    for a, b in itertools.product(names[:8], repeat=2):
        s = (-1) ** (T.shifted_degree(a) * T.shifted_degree(b))
        x, y = T.q([{a: 1}, {b: 1}]), T.q([{b: 1}, {a: 1}])
        assert x == {k: s * v for k, v in y.items() if s * v}


def test_valid_dgla_gives_valid_linf():
    assert validate_linf(dgla_to_linf(gl2()), 3).ok


def test_broken_jacobi_fails_at_weight_three():
    L = DglaPresentation.build([("a", 0), ("b", 0), ("c", 0)], {},
                               {("a", "b"): {"b": 1}, ("a", "c"): {"a": 1}, ("b", "c"): {"c": 1}})
    T = dgla_to_linf(L)
    rep = validate_linf(T, 3)
    assert not rep.ok
    assert all(len(tup) == 3 for tup, _ in rep.failures)
    assert validate_linf(T, 2).ok


def test_zero_structure_is_valid():
    from dglapair.graded import GradedSpace
    T = LInfinityStructure(GradedSpace((("x", 0), ("y", 1))), lambda names: {}, 4)
    rep = validate_linf(T, 4)
    assert rep.ok


def test_weight_above_cap_is_rejected():
    with pytest.raises(ValueError):
        validate_linf(dgla_to_linf(gl2(), arity_cap=2), 5)


@pytest.mark.parametrize("name", ["gl2-wedge", "heisenberg-theta", "identity-cone", "product-pair"])
def test_transferred_structure_is_linf(name):
    P = cat.load(name).diagram
    assert validate_linf(transferred_structure(P, 4), 4).ok


def _inputs(rng, P, n, ring):
    degs = sorted(set(P.cone.degrees()))
    return [cat.random_cone_element(rng, P, rng.choice(degs), ring) for _ in range(n)]


@pytest.mark.parametrize("name", ["gl2-wedge", "heisenberg-theta", "product-pair"])
def test_tree_equals_closed(name, rng):
    P = cat.load(name).diagram
    for n in (2, 3, 4):
        for _ in range(4):
            xs = _inputs(rng, P, n, Q)
            assert transferred_bracket_tree(P, xs) == transferred_bracket_closed(P, xs)


def test_tree_rejects_arity_one(rng):
    P = cat.load("gl2-wedge").diagram
    with pytest.raises(ValueError):
        transferred_bracket_tree(P, _inputs(rng, P, 1, Q))


def test_bracket_one_formula(rng):
    P = cat.load("gl2-wedge").diagram
    c = _inputs(rng, P, 1, Q)[0]
    out = bracket_one(P, c)
    assert out.l == -c.l.d() and out.n == -c.n.d()
    assert out.m == c.m.d() + P.g(c.n) - P.h(c.l)


def test_zero_is_mc_infinity():
    for e in cat.all_entries():
        assert mc_infinity_verify(e.diagram, ConeTriple.zero(e.diagram, make_artin(["e"], 3)))


@pytest.mark.parametrize("name", ["gl2-wedge", "heisenberg-theta", "product-pair", "abelian-line"])
def test_mc_pairs_give_mc_infinity(name):
    P = cat.load(name).diagram
    A = make_artin(["e"], 4)
    for seed in range(3):
        w = cat.random_mc(P, A, seed)
        gam = w.as_cone()
        assert mc_infinity_verify(P, gam)
        assert mc_infinity_residual_generic(P, gam) == mc_infinity_residual(P, gam)


def test_mc_infinity_matches_pair_equations(rng):
    P = cat.load("gl2-wedge").diagram
    A = make_artin(["e"], 3)
    w = cat.random_mc(P, A, 1)
    bumped = PairMCWitness(w.x + Element.from_coeffs(P.L, A, {("E12.eta1", "e^2"): 1}), w.y, w.p)
    for cand in (w, bumped):
        assert mc_infinity_verify(P, cand.as_cone()) == mc_pair_verify(P, cand)
    assert not mc_pair_verify(P, bumped)


def test_mc_infinity_rejects_wrong_degrees():
    P = cat.load("gl2-wedge").diagram
    A = make_artin(["e"], 3)
    w = cat.random_mc(P, A, 1)
    with pytest.raises(ValueError):
        mc_infinity_verify(P, ConeTriple(w.x, w.y, w.x.scaled(0) + Element.from_coeffs(P.M, A, {(P.M.names[-1], "e"): 1})))
