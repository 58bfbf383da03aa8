from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dglapair import catalog as cat
from dglapair.artin import make_artin
from dglapair.dgla import DglaPresentation, validate_dgla
from dglapair.elements import (Element, bch, bch_many, exp_ad, gauge_action, is_mc, mc_residual,
                               random_element, stabilizer_element)

A4 = make_artin(["e"], 4)
A3 = make_artin(["eps"], 3)


def heis_M():
    return cat.load("heisenberg-theta").diagram.M


def gl2_M():
    return cat.load("gl2-wedge").diagram.M


def test_elements_reject_floats():
    M = gl2_M()
    with pytest.raises(TypeError):
        Element.from_coeffs(M, A3, {("E11", "eps"): 0.5})


def test_bch_identity_and_inverse(rng):
    M = gl2_M()
    p = random_element(rng, M, A4, 0)
    assert bch(p, Element.zero(M, A4)) == p
    assert bch(Element.zero(M, A4), p) == p
    assert not bch(p, -p)


def test_bch_second_order_term():
    M = gl2_M()
    A = make_artin(["eps", "delta"], 3)
    p = Element.from_coeffs(M, A, {("E12", "eps"): 1})
    q = Element.from_coeffs(M, A, {("E21", "delta"): 1})
    want = p + q + Element.from_coeffs(M, A, {("E11", "eps*delta"): Fraction(1, 2),
                                              ("E22", "eps*delta"): Fraction(-1, 2)})
    assert bch(p, q) == want


@given(st.randoms(use_true_random=False))
def test_bch_associative(r):
    M = gl2_M()
    a, b, c = (random_element(r, M, A4, 0, density=0.4) for _ in range(3))
    assert bch(bch(a, b), c) == bch(a, bch(b, c)) == bch_many(a, b, c)


def test_gauge_zero_and_abelian(rng):
    M = heis_M()
    x = random_element(rng, M, A3, 1, dt=0)
    assert gauge_action(Element.zero(M, A3), x) == x
    Ab = cat.abelian_dgla([("u", 0), ("v", 1)], {"u": {"v": 1}})
    a = random_element(rng, Ab, A3, 0)
    y = random_element(rng, Ab, A3, 1)
    assert gauge_action(a, y) == y - a.d()


def gl2_dual():
    """gl2 ⊗ span(1, u, v) with u² = uv = v² = 0, |u| = 0, |v| = 1, du = v."""
    names, br = cat.gl2_structure()
    basis = [(n, 0) for n in names] + [(n + ".u", 0) for n in names] + [(n + ".v", 1) for n in names]
    idx = {n: i for i, (n, _) in enumerate(basis)}
    brackets = {}
    for (a, b), out in br.items():
        for sa, sb, so in (("", "", ""), ("", ".u", ".u"), ("", ".v", ".v")):
            if idx[a + sa] <= idx[b + sb]:
                brackets[(a + sa, b + sb)] = {c + so: x for c, x in out.items()}
    d = {n + ".u": {n + ".v": 1} for n in names}
    return DglaPresentation.build(basis, d, brackets, "gl2-dual")


def test_gl2_dual_is_a_dgla():
    assert validate_dgla(gl2_dual()).ok


def test_gauge_first_terms():
    M = gl2_dual()
    abar = Element.from_coeffs(M, A3, {("E12.u", "eps"): 1, ("E21", "eps"): 2})
    xbar = Element.from_coeffs(M, A3, {("E11.v", "eps"): 1, ("E12.v", "eps"): -1})
    got = gauge_action(abar, xbar)
    # with a = ā ε and x = x̄ ε only the first two series terms survive
    want = xbar - abar.d() + abar.bracket(xbar) - abar.bracket(abar.d()).scaled(Fraction(1, 2))
    assert got == want
    assert abar.d()


def test_mc_basics(rng):
    M = gl2_M()
    assert is_mc(Element.zero(M, A3))
    Ab = cat.abelian_dgla([("v", 1), ("w", 2)], {"v": {"w": 1}})
    x = Element.from_coeffs(Ab, A3, {("v", "eps"): 1})
    assert not is_mc(x)
    assert mc_residual(x) == x.d()


@given(st.randoms(use_true_random=False))
def test_gauge_is_group_action_and_preserves_mc(r):
    P = cat.load("gl2-wedge").diagram
    A = make_artin(["e"], 3)
    w = cat.random_mc(P, A, r.randrange(10 ** 6), gauge=False)
    a, b = random_element(r, P.M, A, 0, density=0.4), random_element(r, P.M, A, 0, density=0.4)
    x = P.h(w.x)
    assert is_mc(x)
    assert gauge_action(bch(a, b), x) == gauge_action(a, gauge_action(b, x))
    assert is_mc(gauge_action(a, x))


@given(st.randoms(use_true_random=False))
def test_stabilizer_fixes_mc(r):
    P = cat.load("heisenberg-theta").diagram
    A = make_artin(["e"], 3)
    w = cat.random_mc(P, A, r.randrange(10 ** 6))
    x = P.h(w.x)
    hh = random_element(r, P.M, A, -1, density=0.6)
    T = stabilizer_element(x, hh)
    assert gauge_action(T, x) == x
    # conjugating by e^a moves the stabilizer of x to that of e^a*x
    a = random_element(r, P.M, A, 0, density=0.5)
    conj = bch_many(a, T, -a)
    y = gauge_action(a, x)
    assert gauge_action(conj, y) == y


def test_stabilizer_trivial_cases(rng):
    M = heis_M()
    x = Element.zero(M, A3)
    assert not stabilizer_element(x, Element.zero(M, A3))
    hh = random_element(rng, M, A3, -1)
    T = stabilizer_element(x, hh)
    assert T == hh.d()
    assert not gauge_action(T, x)


def test_exp_ad_inverse(rng):
    M = gl2_M()
    a = random_element(rng, M, A4, 0)
    v = random_element(rng, M, A4, 1)
    assert exp_ad(-a, exp_ad(a, v)) == v


def test_upper_triangular_gauge_terminates():
    # nilpotent coefficients plus a nilpotent Lie algebra: long rings stay cheap
    names = ["n12", "n13", "n23"]
    br = {("n12", "n23"): {"n13": 1}}
    L = cat.make_tensor_dgla((names, br), [("eta", 1)], name="n")
    A = make_artin(["e"], 12)
    a = Element.from_coeffs(L, A, {("n12", "e"): 1, ("n23", "e"): 1})
    assert not a.bracket(a.bracket(a.bracket(Element.from_coeffs(L, A, {("n12.eta", "e"): 1}))))
    x = Element.from_coeffs(L, A, {("n12.eta", "e"): 1})
    y = gauge_action(a, x)
    assert is_mc(y) == is_mc(x)
