import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from dglapair import oracles
from dglapair.graded import (GradedMap, GradedSpace, Permutation, koszul_sign, parity_sign, scalar,
                             shift, unshuffles)


def test_scalar_rejects_floats():
    assert scalar(3) == Fraction(3)
    assert scalar("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        scalar(0.5)


def test_parity_sign_negative_exponents():
    assert [parity_sign(k) for k in (-3, -2, 0, 1, 2)] == [-1, 1, 1, -1, 1]
    assert all(type(parity_sign(k)) is int for k in range(-4, 4))


def test_koszul_identity_and_transpositions():
    assert koszul_sign(Permutation.identity(4), [1, 2, 3, 1]) == 1
    assert koszul_sign(Permutation((2, 1)), [1, 1]) == -1
    assert koszul_sign(Permutation((2, 1)), [1, 2]) == 1


perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


@given(perms, st.data())
def test_koszul_matches_bubble_sort(images, data):
    degs = data.draw(st.lists(st.integers(-3, 3), min_size=len(images), max_size=len(images)))
    assert koszul_sign(Permutation(tuple(images)), degs) == oracles.koszul_sign_bubble(images, degs)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.permutations(list(range(1, n + 1))),
                                                     st.permutations(list(range(1, n + 1))),
                                                     st.lists(st.integers(-2, 3), min_size=n, max_size=n))))
def test_koszul_multiplicative(args):
    s, t, degs = args
    sigma, tau = Permutation(tuple(s)), Permutation(tuple(t))
    # v ↦ v∘σ, then the permuted list is reordered by τ
    permuted = sigma.apply(degs)
    assert koszul_sign(sigma * tau, degs) == koszul_sign(sigma, degs) * koszul_sign(tau, permuted)


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (0, 3), (2, 2), (3, 2), (1, 4)])
def test_unshuffles_against_bruteforce(p, q):
    got = [u.images for u in unshuffles(p, q)]
    assert len(got) == comb(p + q, p)
    assert sorted(got) == sorted(oracles.unshuffles_bruteforce(p, q))
    assert len({(g[:p], g[p:]) for g in got}) == len(got)


def test_unshuffle_small_cases():
    assert [u.images for u in unshuffles(1, 1)] == [(1, 2), (2, 1)]
    assert len(unshuffles(2, 1)) == 3
    assert [u.images for u in unshuffles(0, 3)] == [(1, 2, 3)]


def test_shift():
    V = GradedSpace((("a", 0), ("b", 1)))
    assert shift(V, 1).basis == (("a", -1), ("b", 0))
    assert shift(shift(V, 1), -1) == V
    assert shift(V, 0) == V


def test_graded_map_composition_degrees():
    V = GradedSpace((("a", 0), ("b", 1), ("c", 2)))
    f = GradedMap.from_columns(V, V, 1, {"a": {"b": 2}, "b": {"c": Fraction(1, 3)}})
    g = f.compose(f)
    assert g.degree == 2
    assert g.apply({"a": 1}) == {"c": Fraction(2, 3)}
    ident = GradedMap.identity(V)
    assert f.compose(ident).columns == f.columns
    assert ident.compose(f).columns == f.columns


def test_graded_map_rejects_wrong_degree():
    V = GradedSpace((("a", 0), ("b", 1)))
    with pytest.raises(ValueError):
        GradedMap.from_columns(V, V, 0, {"a": {"b": 1}})
