import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dglapair import catalog as cat
from dglapair import oracles
from dglapair.artin import ArtinMorphism, fiber_product, make_artin, make_small_extension
from dglapair.cone import (EquivWitness, ObstructionClass, PairDiagram, PairMCWitness, cone_les_check,
                           failed_equations, gamma_map, injective_action, lift_mc, mc_pair_verify,
                           mc_pair_verify_injective, obstruction_class, pair_action, pair_equiv_verify,
                           tangent_space)
from dglapair.dgla import DglaMorphism, DglaPresentation, cohomology
from dglapair.elements import Element, gauge_action, is_mc, random_element, stabilizer_element

A3 = make_artin(["eps"], 3)
DUAL = make_artin(["eps"], 2)


def zero_pair():
    Z = DglaPresentation.zero("Z")
    return PairDiagram(Z, Z, Z, DglaMorphism.identity(Z), DglaMorphism.identity(Z), "zero")


def only_L(L):
    Z = DglaPresentation.zero("Z")
    return PairDiagram(L, Z, Z, DglaMorphism.zero(L, Z), DglaMorphism.zero(Z, Z), "only-L")


def identity_pair(L):
    Z = DglaPresentation.zero("Z")
    return PairDiagram(L, L, Z, DglaMorphism.identity(L), DglaMorphism.zero(Z, L), "id")


def test_cone_of_L_alone():
    L = cat.load("heisenberg-theta").diagram.M
    C = only_L(L).cone
    assert [(n[2:], d) for n, d in C.space.basis] == list(L.space.basis)
    for n in L.names:
        assert C.D({f"L:{n}": 1}) == {f"L:{k}": c for k, c in L.d({n: 1}).items()}


def test_cone_differential_restrictions():
    P = cat.load("heisenberg-theta").diagram
    C = P.cone
    for n in P.M.names:
        assert C.D({f"M:{n}": 1}) == {f"M:{k}": -c for k, c in P.M.d({n: 1}).items()}
    for n in P.L.names:
        want = {f"L:{k}": c for k, c in P.L.d({n: 1}).items()}
        want.update({f"M:{k}": c for k, c in P.h.apply({n: 1}).items()})
        assert C.D({f"L:{n}": 1}) == want


def test_cone_squares_to_zero(entry):
    assert entry.diagram.cone.complex.check_square_zero().ok


def test_les_trivial_cases():
    assert cone_les_check(zero_pair()).ok
    L = cat.load("gl2-wedge").diagram.L
    P = identity_pair(L)
    rep = cone_les_check(P)
    assert rep.ok
    assert all(cohomology(P.cone.complex, i)[0] == 0 for i in range(-1, 4))


def test_les_gl2_wedge_matches_direct_dims():
    rep = cone_les_check(cat.load("gl2-wedge").diagram)
    assert rep.ok
    assert all(node["dim"] == node["independent_dim"] for node in rep.nodes)
    assert any(node["dim"] for node in rep.nodes)


def test_gamma_cases():
    L = cat.load("gl2-wedge").diagram.L
    G = gamma_map(identity_pair(L))
    assert G.quasi_isomorphism
    assert all(a == 0 for a, _ in G.dims.values())
    P = cat.load("identity-cone").diagram
    G = gamma_map(P)
    for n in P.M.names:
        img = G.gamma.apply({f"M:{n}": 1})
        assert all(k.startswith("Q:") for k in img)
    G = gamma_map(cat.load("gl2-wedge").diagram)
    assert G.quasi_isomorphism
    assert any(a for a, _ in G.dims.values())
    with pytest.raises(ValueError):
        gamma_map(cat.load("obstructed-pair").diagram)


def test_zero_witness_is_mc(entry):
    assert mc_pair_verify(entry.diagram, PairMCWitness.zero(entry.diagram, A3))


def test_reduces_to_mc_when_M_and_N_vanish(rng):
    L = cat.load("gl2-wedge").diagram.L
    P = only_L(L)
    for _ in range(20):
        x = random_element(rng, L, DUAL, 1, density=0.3)
        w = PairMCWitness(x, Element.zero(P.N, DUAL), Element.zero(P.M, DUAL))
        assert mc_pair_verify(P, w) == is_mc(x)


def test_reduces_to_mc_h_when_N_vanishes(rng):
    P = cat.load("identity-cone").diagram
    for _ in range(20):
        x = random_element(rng, P.L, A3, 1, density=0.3)
        p = random_element(rng, P.M, A3, 0, density=0.3)
        w = PairMCWitness(x, Element.zero(P.N, A3), p)
        want = is_mc(x) and not gauge_action(p, P.h(x))
        assert mc_pair_verify(P, w) == want


def test_equivalence_basics(entry, rng):
    P = entry.diagram
    try:
        w = cat.random_mc(P, A3, 5)
    except cat.ObstructedSeed:
        w = PairMCWitness.zero(P, A3)
    assert pair_equiv_verify(P, w, w, EquivWitness.zero(P, A3))
    ew = cat.random_equiv(rng, P, A3)
    w2 = pair_action(P, w, ew)
    assert mc_pair_verify(P, w2)
    assert pair_equiv_verify(P, w, w2, ew)
    # a pure stabilizer move
    c = random_element(rng, P.M, A3, -1)
    z = Element.zero(P.L, A3), Element.zero(P.N, A3)
    w3 = pair_action(P, w, EquivWitness(z[0], z[1], c))
    T = stabilizer_element(P.g(w.y), c)
    assert w3.x == w.x and w3.y == w.y
    from dglapair.elements import bch
    assert w3.p == bch(T, w.p)


def test_tangent_space_cases():
    assert tangent_space(zero_pair())[0] == 0
    P = cat.load("abelian-line").diagram
    assert tangent_space(P)[0] == oracles.tangent_dimension(P, DUAL) == 1
    L = cat.load("gl2-wedge").diagram.L
    assert tangent_space(identity_pair(L))[0] == 0


def test_first_order_cocycles_are_witnesses(entry):
    P = entry.diagram
    C = P.cone
    for v in cat._cocycles(P):
        l, n, m = C.split(v)
        w = PairMCWitness(Element.from_vector(P.L, l, DUAL, "eps"), Element.from_vector(P.N, n, DUAL, "eps"),
                          Element.from_vector(P.M, m, DUAL, "eps"))
        assert mc_pair_verify(P, w)


def test_obstruction_fixture(rng):
    E = cat.load("obstructed-pair")
    P = E.diagram
    se = make_small_extension(A3, ["eps^2"])
    w = E.obstructed_witness
    ob = obstruction_class(P, se, w)
    assert not ob.is_zero
    assert ob.coordinates == [[Fraction(1, 2)]]
    for _ in range(3):
        assert obstruction_class(P, se, w, rng).coordinates == ob.coordinates
    res = lift_mc(P, se, w)
    assert isinstance(res, ObstructionClass)
    assert oracles.lift_exists(P, se, w) == (False, None)


def test_liftable_witness_has_zero_class(entry, rng):
    P = entry.diagram
    se = make_small_extension(A3, ["eps^2"])
    try:
        full = cat.random_mc(P, A3, 11)
    except cat.ObstructedSeed:
        return
    w = full.change_ring(se.quotient, se.data.projection)
    assert obstruction_class(P, se, w).is_zero
    # the lift itself is an admissible lift choice
    assert obstruction_class(P, se, w, full).is_zero
    out = lift_mc(P, se, w)
    assert mc_pair_verify(P, out)


def test_trivial_extension_returns_input():
    P = cat.load("gl2-wedge").diagram
    se = make_small_extension(A3, [])
    w = cat.random_mc(P, A3, 3)
    assert lift_mc(P, se, w) is w


@given(st.integers(0, 10 ** 6))
def test_abelian_line_always_lifts(seed):
    P = cat.load("abelian-line").diagram
    A = make_artin(["eps"], 4)
    se = make_small_extension(A, ["eps^3"])
    assert cohomology(P.cone.complex, 2)[0] == 0
    w = cat.random_mc(P, se.quotient, seed)
    assert mc_pair_verify(P, lift_mc(P, se, w))


def test_fiber_product_witnesses_glue():
    P = cat.load("gl2-wedge").diagram
    B, C, A = make_artin(["s"], 3), make_artin(["t"], 3), make_artin(["u"], 2)
    beta = ArtinMorphism(B, A, {"s": {"u": 1}})
    gamma = ArtinMorphism(C, A, {"t": {"u": 1}})
    F = fiber_product(beta, gamma)
    wB = cat.random_mc(P, B, 1)
    rename = {"s": {"t": 1}, "s^2": {"t^2": 1}}
    wC = pair_action(P, wB.change_ring(C, rename), cat.random_equiv(random.Random(2), P, C))
    # make wC agree with wB over A by keeping its first-order part
    wC = PairMCWitness(*[_match_first_order(b, c, rename) for b, c in ((wB.x, wC.x), (wB.y, wC.y), (wB.p, wC.p))])
    if not mc_pair_verify(P, wC):
        wC = wB.change_ring(C, rename)
    glued = _glue_witness(F, P, wB, wC)
    assert mc_pair_verify(P, glued)
    assert glued.change_ring(B, F.left.images) == wB
    assert glued.change_ring(C, F.right.images) == wC


def _match_first_order(b, c, rename):
    keep = {k: v for k, v in c.terms.items() if k[3] != "t"}
    keep.update({(n, i, e, "t"): v for (n, i, e, lab), v in b.terms.items() if lab == "s"})
    return Element(c.ambient, c.ring, keep)


def _glue_witness(F, P, wB, wC):
    parts = []
    for eb, ec in ((wB.x, wC.x), (wB.y, wC.y), (wB.p, wC.p)):
        names = {k[0] for k in eb.terms} | {k[0] for k in ec.terms}
        terms = {}
        for n in names:
            rb = {lab: c for (m, _, _, lab), c in eb.terms.items() if m == n}
            rc = {lab: c for (m, _, _, lab), c in ec.terms.items() if m == n}
            for lab, c in F.glue(rb, rc).items():
                terms[(n, 0, 0, lab)] = c
        parts.append(Element(eb.ambient, F.ring, terms))
    return PairMCWitness(*parts)


@pytest.mark.parametrize("name", ["abelian-line", "gl2-wedge", "identity-cone", "product-pair"])
def test_injective_h_simplification(name, rng):
    P = cat.load(name).diagram
    assert P.h_injective() and P.m_nonnegative()
    for k in range(8):
        w = cat.random_mc(P, A3, k)
        x = mc_pair_verify_injective(P, w.y, w.p)
        assert x == w.x
        bad_y = w.y + random_element(rng, P.N, A3, 1, density=0.5)
        x2 = mc_pair_verify_injective(P, bad_y, w.p)
        full = mc_pair_verify(P, PairMCWitness(x2, bad_y, w.p)) if x2 is not None else False
        assert (x2 is not None) == full
        ew = cat.random_equiv(rng, P, A3)
        moved = pair_action(P, w, ew)
        y2, p2 = injective_action(P, w.y, w.p, -ew.a, ew.b)
        assert (y2, p2) == (moved.y, moved.p)


def test_failed_equations_named():
    doc = cat.corrupted_document()
    P = doc.diagram
    assert failed_equations(P, doc.witnesses["w_bad"]) == ["g(y) = e^p*h(x)"]
