import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dglapair import catalog as cat
from dglapair import oracles
from dglapair.dgla import (Complex, DglaMorphism, DglaPresentation, cohomology, euler_characteristic,
                           product_dgla, validate_dgla, validate_morphism)
from dglapair.graded import GradedMap, GradedSpace
from dglapair.linalg import rank


def gl2():
    names, br = cat.gl2_structure()
    half = {(a, b): v for (a, b), v in br.items() if names.index(a) <= names.index(b)}
    return DglaPresentation.build([(n, 0) for n in names], {}, half, "gl2")


def test_abelian_is_valid():
    L = cat.abelian_dgla([("a", 0), ("b", 1), ("c", 1)])
    assert validate_dgla(L).ok
    assert not oracles.naive_dgla_failures(L)


def test_gl2_is_valid_and_matches_bruteforce():
    L = gl2()
    assert validate_dgla(L).ok
    assert oracles.naive_dgla_failures(L) == set()
    assert L.bracket({"E12": 1}, {"E21": 1}) == {"E11": 1, "E22": -1}


def test_d_squared_failure_names_element():
    L = DglaPresentation.build([("a", 0), ("b", 1), ("c", 2)], {"a": {"b": 1}, "b": {"c": 1}})
    rep = validate_dgla(L)
    assert rep.axioms() == {"d∘d = 0"}
    assert [f.basis for f in rep.failures] == [("a",)]
    assert "a" in str(rep.failures[0])


def test_bracket_degree_mismatch_rejected():
    with pytest.raises(ValueError, match=r"\[a,b\]"):
        DglaPresentation.build([("a", 0), ("b", 1), ("c", 0)], {}, {("a", "b"): {"c": 1}})


def test_identity_and_zero_morphisms():
    L = gl2()
    assert validate_morphism(DglaMorphism.identity(L)).ok
    assert validate_morphism(DglaMorphism.zero(L, L)).ok


def test_scaled_morphism_breaks_brackets():
    L = gl2()
    f = DglaMorphism(L, L, GradedMap.identity(L.space).scaled(2))
    rep = validate_morphism(f)
    assert rep.axioms() == {"f[x,y] = [fx,fy]"}


def test_cohomology_small_complexes():
    assert all(cohomology(Complex(GradedSpace(()), GradedMap.zero(GradedSpace(()), GradedSpace(()), 1)), i)[0] == 0
               for i in range(-2, 3))
    V = GradedSpace((("x", 0), ("y", 1)))
    acyclic = Complex(V, GradedMap.from_columns(V, V, 1, {"x": {"y": 1}}))
    assert [cohomology(acyclic, i)[0] for i in (0, 1)] == [0, 0]
    split = Complex(V, GradedMap.zero(V, V, 1))
    assert [cohomology(split, i)[0] for i in (0, 1)] == [1, 1]


def test_product_dgla():
    L1 = gl2()
    assert product_dgla(L1, DglaPresentation.zero()).structure == L1.structure
    A1 = cat.abelian_dgla([("a", 1)])
    A2 = cat.abelian_dgla([("b", 1), ("c", 2)], {"b": {"c": 1}})
    P = product_dgla(A1, A2)
    assert P.is_abelian()
    for i in range(0, 3):
        assert cohomology(P.as_complex(), i)[0] == cohomology(A1.as_complex(), i)[0] + cohomology(A2.as_complex(), i)[0]


@pytest.mark.parametrize("name", cat.catalog_list())
def test_rank_nullity_and_euler(name):
    P = cat.load(name).diagram
    for C in (P.L.as_complex(), P.M.as_complex(), P.N.as_complex(), P.cone.complex):
        for i in C.degrees():
            mat = C.d_matrix(i)
            r = rank(mat) if mat and mat[0] else 0
            Z = C.space.dim(i) - r
            assert Z >= cohomology(C, i)[0]
        lo, hi = (min(C.degrees()) - 1, max(C.degrees()) + 1) if C.degrees() else (0, 0)
        alt = sum((-1) ** (i % 2) * cohomology(C, i)[0] for i in range(lo, hi + 1))
        assert alt == euler_characteristic(C)


def _small_catalog_dglas():
    out = []
    for E in cat.all_entries():
        for L in (E.diagram.L, E.diagram.M, E.diagram.N):
            if 0 < len(L.names) <= 12:
                out.append((f"{E.name}/{L.name}", L))
    return out


@pytest.mark.parametrize("label,L", _small_catalog_dglas(), ids=lambda x: x if isinstance(x, str) else "")
def test_perturbations_agree_with_dense_oracle(label, L):
    assert validate_dgla(L).ok
    for desc, Lp in oracles.perturbations(L):
        assert validate_dgla(Lp).axioms() == oracles.naive_dgla_failures(Lp), desc


@given(st.randoms(use_true_random=False))
def test_random_structure_constants_agree_with_oracle(r):
    names = [("a", 0), ("b", 0), ("c", 1), ("d", 1)]
    V = GradedSpace(tuple(names))
    br = {}
    for i, (x, dx) in enumerate(names):
        for y, dy in names[i:]:
            outs = V.piece(dx + dy)
            if outs and r.random() < 0.4:
                br[(x, y)] = {r.choice(outs): Fraction(r.randint(-2, 2))}
    d = {"a": {"c": r.randint(-1, 1)}} if r.random() < 0.5 else {}
    L = DglaPresentation.build(V, d, br)
    assert validate_dgla(L).axioms() == oracles.naive_dgla_failures(L)
