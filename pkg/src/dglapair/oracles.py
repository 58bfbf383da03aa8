"""Deliberately naive reference computations used as ground truth by the tests.

Nothing in the production code paths imports this module.  Everything here is
dense and brute force: full permutation groups, full basis triples, dense
linear solves over the whole affine family of lifts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial, lcm
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .artin import ArtinAlgebra, SmallExtension
from .cone import (EquivWitness, PairDiagram, PairMCWitness, mc_pair_residuals, naive_lift,
                   pair_action)
from .dgla import DglaPresentation
from .elements import Element
from .graded import GradedMap, parity_sign
from .linalg import rank, solve


# -- signs and permutations ---------------------------------------------------------------

def koszul_sign_bubble(images: List[int], degrees: List[int]) -> int:
    """Bubble-sort the arrangement v_σ(1)…v_σ(n) back to v_1…v_n, one sign per odd/odd swap."""
    seq = list(images)
    sign = 1
    for end in range(len(seq) - 1, 0, -1):
        for j in range(end):
            if seq[j] > seq[j + 1]:
                if degrees[seq[j] - 1] % 2 and degrees[seq[j + 1] - 1] % 2:
                    sign = -sign
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
    return sign


def unshuffles_bruteforce(p: int, q: int) -> List[Tuple[int, ...]]:
    out = []
    for perm in itertools.permutations(range(1, p + q + 1)):
        if list(perm[:p]) == sorted(perm[:p]) and list(perm[p:]) == sorted(perm[p:]):
            out.append(perm)
    assert len(out) == comb(p + q, p)
    return out


def bernoulli_series(n: int) -> List[Fraction]:
    """B_0..B_n as j!·(coefficient of x^j in x/(e^x − 1)), by power series division."""
    den = [Fraction(1, factorial(k + 1)) for k in range(n + 1)]   # (e^x − 1)/x
    inv = [Fraction(0)] * (n + 1)
    inv[0] = Fraction(1)
    for k in range(1, n + 1):
        inv[k] = -sum(den[i] * inv[k - i] for i in range(1, k + 1))
    return [inv[j] * factorial(j) for j in range(n + 1)]


# -- DGLA axioms ------------------------------------------------------------------------------

def _dense(L: DglaPresentation):
    """Integer arrays br[i, j, k] and d[i, k], each rescaled by a common denominator.

    Every axiom is homogeneous in the bracket and in d separately, so clearing
    denominators does not change which axioms hold, and int64 keeps it exact.
    """
    names = list(L.names)
    idx = {n: i for i, n in enumerate(names)}
    n = len(names)
    deg = np.array([L.space.degree(x) for x in names], dtype=np.int64)
    entries = [x for out in L.structure.values() for x in out.values()]
    dent = [x for a in names for x in L.differential.column(a).values()]
    lb = lcm(*(Fraction(x).denominator for x in entries)) if entries else 1
    ld = lcm(*(Fraction(x).denominator for x in dent)) if dent else 1
    br = np.zeros((n, n, n), dtype=np.int64)
    for (a, b), out in L.structure.items():
        i, j = idx[a], idx[b]
        for c, x in out.items():
            v = int(x * lb)
            br[i, j, idx[c]] += v
            if i != j:
                br[j, i, idx[c]] += -parity_sign(int(deg[i] * deg[j])) * v
    d = np.zeros((n, n), dtype=np.int64)
    for a in names:
        for c, x in L.differential.column(a).items():
            d[idx[a], idx[c]] = int(x * ld)
    return names, deg, br, d


def naive_dgla_failures(L: DglaPresentation) -> set:
    """Axioms violated by L, checked on dense arrays with the cyclic form of Jacobi.

    Row convention: d[i, k] is the coefficient of e_k in d(e_i), br[i, j, k]
    that of e_k in [e_i, e_j].
    """
    names, deg, br, d = _dense(L)
    n = len(names)
    bad = set()
    if n == 0:
        return bad
    if (d @ d).any():
        bad.add("d∘d = 0")
    if any(deg[i] % 2 == 0 and br[i, i].any() for i in range(n)):
        bad.add("antisymmetry")
    # d[e_i, e_j] = [d e_i, e_j] + (−1)^{|i|} [e_i, d e_j]
    lhs = np.einsum("ijm,mk->ijk", br, d)
    r1 = np.einsum("ia,ajk->ijk", d, br)
    r2 = np.einsum("jb,ibk->ijk", d, br)
    sign_i = np.where(deg % 2 == 0, 1, -1)[:, None, None]
    if (lhs - r1 - sign_i * r2).any():
        bad.add("Leibniz")
    # (−1)^{|i||k|}[e_i,[e_j,e_k]] + (−1)^{|j||i|}[e_j,[e_k,e_i]] + (−1)^{|k||j|}[e_k,[e_i,e_j]]
    inner = np.einsum("jkm,imp->ijkp", br, br)        # [e_i, [e_j, e_k]]
    par = deg % 2
    s = np.where(np.outer(par, par) % 2 == 0, 1, -1)  # s[a, b] = (−1)^{|a||b|}
    t1 = inner * s[:, None, :, None]
    t2 = np.transpose(inner, (2, 0, 1, 3)) * s[:, :, None, None]   # [e_j,[e_k,e_i]] at (i,j,k)
    t3 = np.transpose(inner, (1, 2, 0, 3)) * s[None, :, :, None]   # [e_k,[e_i,e_j]] at (i,j,k)
    if (t1 + t2 + t3).any():
        bad.add("Jacobi")
    return bad


def perturbations(L: DglaPresentation) -> Iterator[Tuple[str, DglaPresentation]]:
    """Every single-entry change (+1) of a degree-compatible structure constant or d-entry."""
    V = L.space
    names = V.names
    for a, b in itertools.combinations_with_replacement(names, 2):
        for c in V.piece(V.degree(a) + V.degree(b)):
            struct = {k: dict(v) for k, v in L.structure.items()}
            row = struct.setdefault((a, b), {})
            row[c] = row.get(c, 0) + 1
            yield f"[{a},{b}] -> {c}", DglaPresentation(V, L.differential, struct, L.name)
    for a in names:
        for c in V.piece(V.degree(a) + 1):
            cols = {k: dict(L.differential.column(k)) for k in names}
            cols[a][c] = cols[a].get(c, 0) + 1
            D = GradedMap.from_columns(V, V, 1, cols)
            yield f"d {a} -> {c}", DglaPresentation(V, D, L.structure, L.name)


# -- tangent space ---------------------------------------------------------------------------

def _flatten(res: Dict[str, Element]) -> Dict[Tuple, Fraction]:
    out = {}
    for eq, el in res.items():
        for k, c in el.terms.items():
            out[(eq,) + k] = c
    return out


def _unknowns(P: PairDiagram):
    return ([("x", n) for n in P.L.space.piece(1)] + [("y", n) for n in P.N.space.piece(1)]
            + [("p", n) for n in P.M.space.piece(0)])


def _witness_from(P: PairDiagram, A: ArtinAlgebra, assignment: Dict[Tuple[str, str, str], Fraction],
                  base: Optional[PairMCWitness] = None) -> PairMCWitness:
    parts = {"x": {}, "y": {}, "p": {}}
    for (slot, name, lab), c in assignment.items():
        parts[slot][(name, lab)] = c
    w = PairMCWitness(Element.from_coeffs(P.L, A, parts["x"]), Element.from_coeffs(P.N, A, parts["y"]),
                      Element.from_coeffs(P.M, A, parts["p"]))
    if base is not None:
        w = PairMCWitness(base.x + w.x, base.y + w.y, base.p + w.p)
    return w


def tangent_dimension(P: PairDiagram, A: ArtinAlgebra) -> int:
    """dim {first-order witnesses} − dim {first-order action}, over a ring with m² = 0.

    Witnesses are found by evaluating the library's MC residual on every basis
    direction (it is linear because m² = 0); the action by moving the zero
    witness along every basis direction of (L⁰ ⊕ N⁰ ⊕ M⁻¹) ⊗ m.
    """
    if A.nilpotency_order not in (None, 1, 2):
        raise ValueError("the tangent oracle needs m_A² = 0")
    labels = list(A.labels)
    cols = []
    for slot, name in _unknowns(P):
        for lab in labels:
            w = _witness_from(P, A, {(slot, name, lab): Fraction(1)})
            cols.append(_flatten(mc_pair_residuals(P, w)))
    keys = sorted({k for c in cols for k in c}, key=repr)
    mat = [[c.get(k, Fraction(0)) for c in cols] for k in keys]
    kernel = len(cols) - (rank(mat) if keys else 0)
    zero = PairMCWitness.zero(P, A)
    moves = []
    for ambient, deg, slot in ((P.L, 0, "a"), (P.N, 0, "b"), (P.M, -1, "c")):
        for name in ambient.space.piece(deg):
            for lab in labels:
                el = Element.from_coeffs(ambient, A, {(name, lab): Fraction(1)})
                ew = EquivWitness.zero(P, A)
                ew = EquivWitness(el if slot == "a" else ew.a, el if slot == "b" else ew.b,
                                  el if slot == "c" else ew.c)
                moved = pair_action(P, zero, ew)
                moves.append(_flatten({"x": moved.x, "y": moved.y, "p": moved.p}))
    mkeys = sorted({k for c in moves for k in c}, key=repr)
    image = rank([[c.get(k, Fraction(0)) for c in moves] for k in mkeys]) if mkeys else 0
    return kernel - image


# -- lifting through a small extension -----------------------------------------------------

def lift_exists(P: PairDiagram, se: SmallExtension, w: PairMCWitness) -> Tuple[bool, Optional[PairMCWitness]]:
    """Search the whole coset of lifts w̃ + δ, δ ∈ (L¹ ⊕ N¹ ⊕ M⁰) ⊗ J.

    The MC residual is affine in δ (J·m = 0), so evaluating it at δ = 0 and at
    every unit direction determines it; a dense solve decides solvability.
    """
    base = naive_lift(se, w)
    Jlabels = []
    for j in se.ideal:
        Jlabels.append(j)
    dirs = []
    for slot, name in _unknowns(P):
        for jv in Jlabels:
            dirs.append((slot, name, jv))

    def with_delta(coeffs):
        extra = {"x": Element.zero(P.L, se.total), "y": Element.zero(P.N, se.total),
                 "p": Element.zero(P.M, se.total)}
        amb = {"x": P.L, "y": P.N, "p": P.M}
        for (slot, name, jv), c in zip(dirs, coeffs):
            if c:
                extra[slot] = extra[slot] + Element.from_coeffs(
                    amb[slot], se.total, {(name, lab): c * x for lab, x in jv.items()})
        return PairMCWitness(base.x + extra["x"], base.y + extra["y"], base.p + extra["p"])

    r0 = _flatten(mc_pair_residuals(P, base))
    cols = []
    for i in range(len(dirs)):
        unit = [Fraction(int(i == k)) for k in range(len(dirs))]
        ri = _flatten(mc_pair_residuals(P, with_delta(unit)))
        cols.append({k: ri.get(k, 0) - r0.get(k, 0) for k in set(ri) | set(r0)})
    keys = sorted(set(r0) | {k for c in cols for k in c}, key=repr)
    if not keys:
        return True, base
    mat = [[c.get(k, Fraction(0)) for c in cols] for k in keys]
    rhs = [-r0.get(k, Fraction(0)) for k in keys]
    sol = solve(mat, rhs, len(dirs)) if dirs else (None if any(rhs) else [])
    if sol is None:
        return False, None
    lift = with_delta(sol)
    assert not any(mc_pair_residuals(P, lift).values())
    return True, lift
