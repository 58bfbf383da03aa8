import random

import pytest

from dglapair import catalog as cat
from dglapair.artin import make_artin
from dglapair.cone import EquivWitness, PairMCWitness, pair_action, pair_equiv_verify
from dglapair.elements import Element
from dglapair.homotopy import (HomotopyPath, VerificationError, gauge_to_homotopy, homotopy_to_gauge,
                               homotopy_verify)

A = make_artin(["e"], 3)
NAMES = ["abelian-line", "gl2-wedge", "heisenberg-theta", "identity-cone", "product-pair"]


def zero_equiv(P):
    return EquivWitness(Element.zero(P.L, A), Element.zero(P.N, A), Element.zero(P.M, A))


@pytest.mark.parametrize("name", NAMES)
def test_zero_equivalence_gives_constant_path(name):
    P = cat.load(name).diagram
    w = cat.random_mc(P, A, 3)
    path = gauge_to_homotopy(P, w, w, zero_equiv(P))
    assert path.l == w.x and path.n == w.y and path.m == w.p
    assert all(x.is_constant() for x in (path.l, path.n, path.m))


@pytest.mark.parametrize("name", NAMES)
def test_round_trip(name):
    P = cat.load(name).diagram
    rng = random.Random(7)
    for seed in range(3):
        w0 = cat.random_mc(P, A, seed)
        ew = cat.random_equiv(rng, P, A)
        w1 = pair_action(P, w0, ew)
        path = gauge_to_homotopy(P, w0, w1, ew)
        assert path.endpoint(0) == w0 and path.endpoint(1) == w1
        assert homotopy_verify(P, path, w0, w1) == []
        back = homotopy_to_gauge(P, path)
        assert pair_equiv_verify(P, w0, w1, back)
        # idempotent up to the path it regenerates
        again = gauge_to_homotopy(P, w0, w1, back)
        assert homotopy_to_gauge(P, again) is not None


def test_constant_path_gives_an_equivalence():
    P = cat.load("gl2-wedge").diagram
    w = cat.random_mc(P, A, 5)
    back = homotopy_to_gauge(P, HomotopyPath(w.x, w.y, w.p))
    assert pair_equiv_verify(P, w, w, back)


def test_bad_equivalence_is_rejected():
    P = cat.load("abelian-line").diagram
    w = cat.random_mc(P, A, 1)
    bump = Element.from_coeffs(P.L, A, {("e", "e^2"): 1})
    other = PairMCWitness(w.x + bump, w.y + Element.from_coeffs(P.N, A, {("e", "e^2"): 1}), w.p)
    with pytest.raises(VerificationError) as err:
        gauge_to_homotopy(P, w, other, zero_equiv(P))
    assert err.value.stage == "equivalence"


def test_non_mc_path_is_rejected():
    P = cat.load("abelian-line").diagram
    w = cat.random_mc(P, A, 1)
    bad = HomotopyPath(w.x, w.y + Element.from_coeffs(P.N, A, {("e", "e"): 1}), w.p)
    assert homotopy_verify(P, bad)
    with pytest.raises(VerificationError) as err:
        homotopy_to_gauge(P, bad)
    assert err.value.stage == "input path"
