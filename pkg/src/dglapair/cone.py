"""The suspended mapping cone of a pair h: L → M ← N: g and its MC theory.

Cone pieces are C^i = L^i ⊕ N^i ⊕ M^{i-1} with basis names prefixed
``L:``, ``N:`` and ``M:`` and differential D(l,n,m) = (dl, dn, −dm − g(n) + h(l)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .artin import UNIT, ArtinAlgebra, SmallExtension
from .dgla import (Complex, CohomologyGroup, DglaMorphism, DglaPresentation, ValidityReport,
                   cohomology, cohomology_group, induced_map, validate_dgla, validate_morphism)
from .elements import Element, Q, bch, bch_many, gauge_action, mc_residual, stabilizer_element
from .graded import GradedMap, GradedSpace, Vector, vec_add
from .linalg import rank, solve, transpose, matmul, EchelonBasis


@dataclass(frozen=True, eq=False)
class PairDiagram:
    L: DglaPresentation
    M: DglaPresentation
    N: DglaPresentation
    h: DglaMorphism
    g: DglaMorphism
    name: str = ""

    def __post_init__(self):
        if self.h.source != self.L or self.h.target != self.M:
            raise ValueError("h must map L to M")
        if self.g.source != self.N or self.g.target != self.M:
            raise ValueError("g must map N to M")

    def validate(self) -> ValidityReport:
        rep = ValidityReport()
        for part in (validate_dgla(self.L), validate_dgla(self.M), validate_dgla(self.N),
                     validate_morphism(self.h), validate_morphism(self.g)):
            rep.failures.extend(part.failures)
        return rep

    @cached_property
    def cone(self) -> "ConeComplex":
        return build_cone(self)

    def h_injective(self) -> bool:
        return self.h.is_injective()

    def m_nonnegative(self) -> bool:
        return all(d >= 0 for _, d in self.M.space.basis)


@dataclass(frozen=True)
class ConeComplex:
    complex: Complex
    diagram: PairDiagram

    @property
    def space(self) -> GradedSpace:
        return self.complex.space

    @property
    def differential(self) -> GradedMap:
        return self.complex.differential

    def split(self, v: Mapping[str, Fraction]) -> Tuple[Vector, Vector, Vector]:
        parts: Tuple[Vector, Vector, Vector] = ({}, {}, {})
        for k, c in v.items():
            parts["LNM".index(k[0])][k[2:]] = c
        return parts

    def join(self, l=None, n=None, m=None) -> Vector:
        out: Vector = {}
        for tag, part in (("L", l), ("N", n), ("M", m)):
            for k, c in (part or {}).items():
                if c:
                    out[f"{tag}:{k}"] = Fraction(c)
        return out

    def D(self, v: Mapping[str, Fraction]) -> Vector:
        return self.differential.apply(v)

    def cohomology(self, i: int):
        return cohomology(self.complex, i)

    def degrees(self) -> List[int]:
        return self.space.degrees()


def build_cone(P: PairDiagram) -> ConeComplex:
    L, M, N = P.L, P.M, P.N
    basis = [(f"L:{n}", d) for n, d in L.space.basis]
    basis += [(f"N:{n}", d) for n, d in N.space.basis]
    basis += [(f"M:{n}", d + 1) for n, d in M.space.basis]
    V = GradedSpace(tuple(basis))
    cols: Dict[str, Vector] = {}
    for n in L.names:
        col = {f"L:{k}": c for k, c in L.d({n: 1}).items()}
        col.update({f"M:{k}": c for k, c in P.h.apply({n: 1}).items()})
        cols[f"L:{n}"] = col
    for n in N.names:
        col = {f"N:{k}": c for k, c in N.d({n: 1}).items()}
        col.update({f"M:{k}": -c for k, c in P.g.apply({n: 1}).items()})
        cols[f"N:{n}"] = col
    for n in M.names:
        cols[f"M:{n}"] = {f"M:{k}": -c for k, c in M.d({n: 1}).items()}
    C = Complex(V, GradedMap.from_columns(V, V, 1, cols))
    rep = C.check_square_zero()
    if not rep.ok:
        raise ValueError(f"cone differential does not square to zero: {rep.failures[0]}")
    return ConeComplex(C, P)


# -- cone elements with coefficients ------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConeTriple:
    """(l, n, m) in C ⊗ A; the cone degree is deg l = deg n = deg m + 1."""

    l: Element
    n: Element
    m: Element

    @classmethod
    def zero(cls, P: PairDiagram, ring: ArtinAlgebra = Q) -> "ConeTriple":
        return cls(Element.zero(P.L, ring), Element.zero(P.N, ring), Element.zero(P.M, ring))

    @classmethod
    def from_vector(cls, P: PairDiagram, v: Mapping[str, Fraction], ring=Q, label=UNIT) -> "ConeTriple":
        l, n, m = P.cone.split(v)
        return cls(Element.from_vector(P.L, l, ring, label), Element.from_vector(P.N, n, ring, label),
                   Element.from_vector(P.M, m, ring, label))

    @property
    def ring(self):
        return self.l.ring

    def __add__(self, o):
        return ConeTriple(self.l + o.l, self.n + o.n, self.m + o.m)

    def __sub__(self, o):
        return ConeTriple(self.l - o.l, self.n - o.n, self.m - o.m)

    def __neg__(self):
        return ConeTriple(-self.l, -self.n, -self.m)

    def scaled(self, c):
        return ConeTriple(self.l.scaled(c), self.n.scaled(c), self.m.scaled(c))

    def __eq__(self, o):
        return isinstance(o, ConeTriple) and self.l == o.l and self.n == o.n and self.m == o.m

    def __bool__(self):
        return bool(self.l or self.n or self.m)

    def degrees(self) -> set:
        return self.l.degrees() | self.n.degrees() | {d + 1 for d in self.m.degrees()}

    def pieces(self) -> List[Tuple[str, int, "ConeTriple"]]:
        """Split into (summand, cone degree, piece) with each piece homogeneous."""
        out = []
        zl, zn, zm = self.l.scaled(0), self.n.scaled(0), self.m.scaled(0)
        for d, part in self.l.homogeneous_parts().items():
            out.append(("L", d, ConeTriple(part, zn, zm)))
        for d, part in self.n.homogeneous_parts().items():
            out.append(("N", d, ConeTriple(zl, part, zm)))
        for d, part in self.m.homogeneous_parts().items():
            out.append(("M", d + 1, ConeTriple(zl, zn, part)))
        return out

    def vectors(self) -> Dict[str, Vector]:
        """{ring label: cone vector} for constant coefficients."""
        out: Dict[str, Vector] = {}
        for tag, el in (("L", self.l), ("N", self.n), ("M", self.m)):
            for (name, lab), c in el.coefficients().items():
                out.setdefault(lab, {})[f"{tag}:{name}"] = c
        return out

    def eval_at(self, a):
        return ConeTriple(self.l.eval_at(a), self.n.eval_at(a), self.m.eval_at(a))

    def format(self, var="t") -> str:
        return f"({self.l.format(var)}, {self.n.format(var)}, {self.m.format(var)})"

    __repr__ = format


def cone_differential(P: PairDiagram, c: ConeTriple) -> ConeTriple:
    """D(l,n,m) = (dl, dn, −dm − g(n) + h(l)) on coefficient-carrying triples."""
    return ConeTriple(c.l.d(), c.n.d(), -c.m.d() - P.g(c.n) + P.h(c.l))


# -- Maurer-Cartan witnesses --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PairMCWitness:
    x: Element   # L^1 ⊗ m_A
    y: Element   # N^1 ⊗ m_A
    p: Element   # logarithm in M^0 ⊗ m_A

    @classmethod
    def zero(cls, P: PairDiagram, ring: ArtinAlgebra) -> "PairMCWitness":
        return cls(Element.zero(P.L, ring), Element.zero(P.N, ring), Element.zero(P.M, ring))

    @property
    def ring(self):
        return self.x.ring

    def __eq__(self, o):
        return isinstance(o, PairMCWitness) and (self.x, self.y, self.p) == (o.x, o.y, o.p)

    def as_cone(self) -> ConeTriple:
        return ConeTriple(self.x, self.y, self.p)

    def change_ring(self, ring, label_map=None) -> "PairMCWitness":
        return PairMCWitness(self.x.change_ring(ring, label_map), self.y.change_ring(ring, label_map),
                             self.p.change_ring(ring, label_map))


@dataclass(frozen=True, eq=False)
class EquivWitness:
    a: Element   # L^0 ⊗ m_A
    b: Element   # N^0 ⊗ m_A
    c: Element   # M^{-1} ⊗ m_A

    @classmethod
    def zero(cls, P: PairDiagram, ring: ArtinAlgebra) -> "EquivWitness":
        return cls(Element.zero(P.L, ring), Element.zero(P.N, ring), Element.zero(P.M, ring))


EQ_X = "dx + 1/2[x,x] = 0"
EQ_Y = "dy + 1/2[y,y] = 0"
EQ_P = "g(y) = e^p*h(x)"


def mc_pair_residuals(P: PairDiagram, w: PairMCWitness) -> Dict[str, Element]:
    _witness_degrees(w)
    return {
        EQ_X: mc_residual(w.x),
        EQ_Y: mc_residual(w.y),
        EQ_P: P.g(w.y) - gauge_action(w.p, P.h(w.x)),
    }


def _witness_degrees(w: PairMCWitness):
    for el, deg, what in ((w.x, 1, "x"), (w.y, 1, "y"), (w.p, 0, "p")):
        ds = el.degrees()
        if ds and ds != {deg}:
            raise ValueError(f"witness component {what} must have degree {deg}")


def mc_pair_verify(P: PairDiagram, w: PairMCWitness) -> bool:
    return not any(mc_pair_residuals(P, w).values())


def failed_equations(P: PairDiagram, w: PairMCWitness) -> List[str]:
    return [k for k, v in mc_pair_residuals(P, w).items() if v]


def stabilizer_T(P: PairDiagram, y1: Element, c: Element) -> Element:
    """T = dc + [g(y1), c]."""
    return stabilizer_element(P.g(y1), c)


def pair_action(P: PairDiagram, w: PairMCWitness, ew: EquivWitness) -> PairMCWitness:
    """The witness related to w by (a, b, c)."""
    T = stabilizer_T(P, w.y, ew.c)
    p2 = bch_many(P.g(ew.b), T, w.p, -P.h(ew.a))
    return PairMCWitness(gauge_action(ew.a, w.x), gauge_action(ew.b, w.y), p2)


EQ_X2 = "x2 = e^a*x1"
EQ_Y2 = "y2 = e^b*y1"
EQ_P2 = "e^p2 = e^g(b) e^T e^p1 e^-h(a)"


def pair_equiv_residuals(P, w1, w2, ew) -> Dict[str, Element]:
    moved = pair_action(P, w1, ew)
    return {EQ_X2: w2.x - moved.x, EQ_Y2: w2.y - moved.y, EQ_P2: w2.p - moved.p}


def pair_equiv_verify(P: PairDiagram, w1: PairMCWitness, w2: PairMCWitness, ew: EquivWitness) -> bool:
    for w in (w1, w2):
        if not mc_pair_verify(P, w):
            raise ValueError(f"witness is not Maurer-Cartan: {failed_equations(P, w)}")
    return not any(pair_equiv_residuals(P, w1, w2, ew).values())


# -- injective h ---------------------------------------------------------------------

def _h_preimage(P: PairDiagram, z: Element) -> Optional[Element]:
    """The unique x with h(x) = z, or None when z is not in the image."""
    cols = [P.h.apply({n: 1}) for n in P.L.names]
    Mn = P.M.names
    A = transpose([[col.get(k, Fraction(0)) for k in Mn] for col in cols]) if cols else []
    out = {}
    per_label: Dict[str, Vector] = {}
    for (name, _, _, lab), c in z.terms.items():
        per_label.setdefault(lab, {})[name] = c
    for lab, vec in per_label.items():
        if not cols:
            return None
        sol = solve(A, [vec.get(k, Fraction(0)) for k in Mn], len(cols))
        if sol is None:
            return None
        for n, s in zip(P.L.names, sol):
            if s:
                out[(n, 0, 0, lab)] = s
    return Element(P.L, z.ring, out)


def mc_pair_verify_injective(P: PairDiagram, y: Element, p: Element) -> Optional[Element]:
    """Injective-h form: y MC and e^{-p}*g(y) ∈ h(L)⊗m_A; returns the recovered x or None."""
    if not P.h_injective():
        raise ValueError("h is not injective")
    if mc_residual(y):
        return None
    return _h_preimage(P, gauge_action(-p, P.g(y)))


def injective_action(P: PairDiagram, y: Element, p: Element, a: Element, b: Element):
    """(y, e^p) ↦ (e^b*y, e^{g(b)} e^p e^{h(a)}) for M concentrated in degrees ≥ 0."""
    return gauge_action(b, y), bch_many(P.g(b), p, P.h(a))


# -- exact sequence and injective-h quasi-isomorphism ---------------------------------

@dataclass
class ExactnessReport:
    nodes: List[dict] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def _prefixed_complex(parts) -> Complex:
    basis, cols = [], {}
    for tag, L in parts:
        basis += [(f"{tag}:{n}", d) for n, d in L.space.basis]
        for n in L.names:
            cols[f"{tag}:{n}"] = {f"{tag}:{k}": c for k, c in L.d({n: 1}).items()}
    V = GradedSpace(tuple(basis))
    return Complex(V, GradedMap.from_columns(V, V, 1, cols))


def cone_les_check(P: PairDiagram) -> ExactnessReport:
    """H^i(C) → H^i(L⊕N) → H^i(M) → H^{i+1}(C), exact at every node."""
    C = P.cone.complex
    LN = _prefixed_complex([("L", P.L), ("N", P.N)])
    M = P.M.as_complex()
    f1 = GradedMap.from_columns(C.space, LN.space, 0,
                                {k: {k: 1} for k in C.space.names if k[0] in "LN"})
    cols2 = {f"L:{n}": P.h.apply({n: 1}) for n in P.L.names}
    cols2.update({f"N:{n}": {k: -c for k, c in P.g.apply({n: 1}).items()} for n in P.N.names})
    f2 = GradedMap.from_columns(LN.space, M.space, 0, cols2)
    f3 = GradedMap.from_columns(M.space, C.space, 1, {n: {f"M:{n}": 1} for n in P.M.names})

    degs = sorted(set(C.space.degrees()) | set(M.space.degrees()) | set(LN.space.degrees()))
    lo, hi = (min(degs) - 1, max(degs) + 1) if degs else (0, 0)
    rep = ExactnessReport()
    # the sequence as a list of (label, complex, degree) with maps between consecutive nodes
    seq = []
    for i in range(lo, hi + 1):
        seq += [("C", C, i), ("L+N", LN, i), ("M", M, i)]
    maps = {"C": f1, "L+N": f2, "M": f3}
    mats = []
    for k in range(len(seq) - 1):
        tag, src, i = seq[k]
        _, tgt, j = seq[k + 1]
        mat, Hs, Ht = induced_map(src, tgt, maps[tag], i, j)
        mats.append((mat, Hs.dimension, Ht.dimension))
    for k in range(1, len(seq) - 1):
        tag, cx, i = seq[k]
        a, da_src, dim = mats[k - 1]
        b, _, db_tgt = mats[k]
        ra = rank(a) if a and a[0] else 0
        rb = rank(b) if b and b[0] else 0
        comp_zero = True
        if a and b and a[0] and b[0]:
            comp_zero = not any(x for row in matmul(b, a) for x in row)
        direct = _independent_dim(P, tag, i)
        node = {"node": f"H^{i}({tag})", "dim": dim, "rank_in": ra, "rank_out": rb,
                "independent_dim": direct}
        rep.nodes.append(node)
        if not comp_zero or ra + rb != dim:
            rep.failures.append(f"not exact at H^{i}({tag}): rank in {ra}, rank out {rb}, dim {dim}")
        if direct != dim:
            rep.failures.append(f"H^{i}({tag}) dimension {dim} disagrees with direct computation {direct}")
    return rep


def _independent_dim(P: PairDiagram, tag: str, i: int) -> int:
    if tag == "C":
        return cohomology(P.cone.complex, i)[0]
    if tag == "M":
        return cohomology(P.M.as_complex(), i)[0]
    return cohomology(P.L.as_complex(), i)[0] + cohomology(P.N.as_complex(), i)[0]


@dataclass
class GammaData:
    complement: List[str]            # M basis names spanning a complement of h(L)
    target: Complex                  # C_{π∘g}
    gamma: GradedMap                 # C_{(h,g)} → C_{π∘g}
    dims: Dict[int, Tuple[int, int]]
    ranks: Dict[int, int]

    @property
    def quasi_isomorphism(self) -> bool:
        return all(a == b == self.ranks[i] for i, (a, b) in self.dims.items())


def gamma_map(P: PairDiagram) -> GammaData:
    """γ(l,n,m) = (−n, π(m)) into the cone of π∘g: N → M/h(L)."""
    if not P.h_injective():
        raise ValueError("h is not injective")
    M = P.M
    images = [P.h.apply({n: 1}) for n in P.L.names]
    eb = EchelonBasis(len(M.names))
    for v in images:
        eb.add([v.get(k, Fraction(0)) for k in M.names])
    complement = []
    for k in M.names:
        if eb.add([Fraction(int(k == j)) for j in M.names]):
            complement.append(k)
    # π: M → coker, coordinates on the complement along h(L)
    basis_cols = images + [{k: Fraction(1)} for k in complement]
    A = transpose([[v.get(k, Fraction(0)) for k in M.names] for v in basis_cols]) if basis_cols else []
    nimg = len(images)

    def proj(m: Mapping[str, Fraction]) -> Vector:
        if not m:
            return {}
        sol = solve(A, [Fraction(m.get(k, 0)) for k in M.names], len(basis_cols))
        return {k: s for k, s in zip(complement, sol[nimg:]) if s}

    basis = [(f"N:{n}", d) for n, d in P.N.space.basis]
    basis += [(f"Q:{k}", M.degree(k) + 1) for k in complement]
    V = GradedSpace(tuple(basis))
    cols: Dict[str, Vector] = {}
    for n in P.N.names:
        col = {f"N:{k}": c for k, c in P.N.d({n: 1}).items()}
        col.update({f"Q:{k}": c for k, c in proj(P.g.apply({n: 1})).items()})
        cols[f"N:{n}"] = col
    for k in complement:
        cols[f"Q:{k}"] = {f"Q:{j}": -c for j, c in proj(M.d({k: 1})).items()}
    target = Complex(V, GradedMap.from_columns(V, V, 1, cols))
    rep = target.check_square_zero()
    if not rep.ok:
        raise ValueError("cokernel cone differential does not square to zero")
    C = P.cone.complex
    gcols: Dict[str, Vector] = {}
    for n in P.N.names:
        gcols[f"N:{n}"] = {f"N:{n}": Fraction(-1)}
    for n in M.names:
        gcols[f"M:{n}"] = {f"Q:{k}": c for k, c in proj({n: 1}).items()}
    gamma = GradedMap.from_columns(C.space, V, 0, gcols)
    dims, ranks = {}, {}
    degs = sorted(set(C.space.degrees()) | set(V.degrees()))
    for i in degs:
        mat, Hs, Ht = induced_map(C, target, gamma, i)
        dims[i] = (Hs.dimension, Ht.dimension)
        ranks[i] = rank(mat) if mat and mat[0] else 0
    return GammaData(complement, target, gamma, dims, ranks)


def gamma_chain_map_defect(P: PairDiagram, G: GammaData) -> Dict[str, Vector]:
    """γ∘D − δ∘γ on each cone basis element (empty when γ is a chain map)."""
    C = P.cone.complex
    out = {}
    for n in C.space.names:
        lhs = G.gamma.apply(C.differential.column(n))
        rhs = G.target.differential.apply(G.gamma.column(n))
        diff = vec_add(lhs, rhs, coeffs=[1, -1])
        if diff:
            out[n] = diff
    return out


# -- tangent space, obstructions, lifting ------------------------------------------------

def tangent_space(P: PairDiagram):
    return P.cone.cohomology(1)


@dataclass
class ObstructionClass:
    cocycles: List[Vector]          # one cone 2-cocycle per basis vector of J
    coordinates: List[List[Fraction]]
    canonical: List[Vector]
    extension: SmallExtension
    lift: PairMCWitness             # the lift used

    @property
    def is_zero(self) -> bool:
        return not any(any(c) for c in self.coordinates)

    def __bool__(self):
        return not self.is_zero


def _split_J(se: SmallExtension, el: Element) -> List[Vector]:
    """Write an element with coefficients in J as Σ_k v_k ⊗ j_k."""
    per_name: Dict[str, Dict[str, Fraction]] = {}
    for (name, i, e, lab), c in el.terms.items():
        if i or e:
            raise ValueError("constant element expected")
        per_name.setdefault(name, {})[lab] = c
    out: List[Vector] = [dict() for _ in se.ideal]
    for name, ringvec in per_name.items():
        coords = se.coordinates_in_J(ringvec)
        for k, c in enumerate(coords):
            if c:
                out[k][name] = c
    return out


def _from_J(se: SmallExtension, ambient: DglaPresentation, parts: Sequence[Mapping[str, Fraction]]) -> Element:
    el = Element.zero(ambient, se.total)
    for v, j in zip(parts, se.ideal):
        for name, c in v.items():
            el = el + Element(ambient, se.total, {(name, 0, 0, lab): c * jc for lab, jc in j.items()})
    return el


def naive_lift(se: SmallExtension, w: PairMCWitness) -> PairMCWitness:
    """Lift through the label inclusion A → Ã (a linear section of the projection)."""
    for lab in w.x.labels() | w.y.labels() | w.p.labels():
        if lab not in se.total.labels:
            raise ValueError(f"label {lab} is not a label of the total ring")
    return w.change_ring(se.total)


def random_lift(P: PairDiagram, se: SmallExtension, w: PairMCWitness, rng: random.Random) -> PairMCWitness:
    """naive_lift plus random J-valued corrections."""
    base = naive_lift(se, w)

    def noise(ambient, deg):
        parts = [{n: Fraction(rng.randint(-3, 3)) for n in ambient.space.piece(deg)} for _ in se.ideal]
        return _from_J(se, ambient, parts)

    return PairMCWitness(base.x + noise(P.L, 1), base.y + noise(P.N, 1), base.p + noise(P.M, 0))


def project_witness(se: SmallExtension, w: PairMCWitness) -> PairMCWitness:
    return w.change_ring(se.quotient, se.data.projection)


def obstruction_cocycles(P: PairDiagram, se: SmallExtension, lift: PairMCWitness) -> List[Vector]:
    """(l, k, r) per J basis vector for a lift (x̃, ỹ, q)."""
    l = mc_residual(lift.x)
    k = mc_residual(lift.y)
    r = -P.g(lift.y) + gauge_action(lift.p, P.h(lift.x))
    cone = P.cone
    ls, ks, rs = _split_J(se, l), _split_J(se, k), _split_J(se, r)
    return [cone.join(a, b, c) for a, b, c in zip(ls, ks, rs)]


def obstruction_class(P: PairDiagram, se: SmallExtension, w: PairMCWitness,
                      lift_choice=None) -> ObstructionClass:
    if not mc_pair_verify(P, w):
        raise ValueError(f"witness is not Maurer-Cartan over the quotient: {failed_equations(P, w)}")
    if lift_choice is None:
        lift = naive_lift(se, w)
    elif isinstance(lift_choice, random.Random):
        lift = random_lift(P, se, w, lift_choice)
    else:
        lift = lift_choice
        if project_witness(se, lift) != w:
            raise ValueError("lift choice does not project to the witness")
    cocycles = obstruction_cocycles(P, se, lift)
    cone = P.cone
    H2 = cohomology_group(cone.complex, 2)
    for z in cocycles:
        if cone.D(z):
            raise ValueError("obstruction is not a cocycle")  # would indicate a defect
    coords = [H2.coordinates(z) for z in cocycles]
    canon = [H2.canonical(z) for z in cocycles]
    return ObstructionClass(cocycles, coords, canon, se, lift)


def lift_mc(P: PairDiagram, se: SmallExtension, w: PairMCWitness):
    """A witness over Ã projecting to w, or the nonzero obstruction class."""
    if not se.ideal:
        return w
    ob = obstruction_class(P, se, w)
    if not ob.is_zero:
        return ob
    cone = P.cone
    C = cone.complex
    src = C.space.piece(1)
    tgt = C.space.piece(2)
    A = [[C.differential.column(s).get(t, Fraction(0)) for s in src] for t in tgt]
    dx, dy, dq = [], [], []
    for z in ob.cocycles:
        rhs = [-z.get(t, Fraction(0)) for t in tgt]
        sol = solve(A, rhs, len(src)) if tgt else [Fraction(0)] * len(src)
        if sol is None:
            raise AssertionError("zero obstruction class but no correction found")
        l, n, m = cone.split({s: c for s, c in zip(src, sol) if c})
        dx.append(l)
        dy.append(n)
        dq.append(m)
    lift = ob.lift
    out = PairMCWitness(lift.x + _from_J(se, P.L, dx), lift.y + _from_J(se, P.N, dy),
                        lift.p + _from_J(se, P.M, dq))
    if not mc_pair_verify(P, out):
        raise AssertionError(f"lift fails {failed_equations(P, out)}")
    return out


def _graded_labels(A: ArtinAlgebra) -> Dict[str, int]:
    """Order of each label: largest k with the label in m^k (labels of presented rings)."""
    out = {}
    N = A.nilpotency_order or 1
    for k in range(1, N):
        span = A.power_basis(k)
        eb = EchelonBasis(A.dim)
        for v in span:
            eb.add(A.vector(v))
        for lab in A.labels:
            if eb.contains(A.vector({lab: 1})):
                out[lab] = k
    return out
