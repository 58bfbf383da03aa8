"""DGLA presentations, morphisms, complexes and their cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .graded import GradedMap, GradedSpace, Vector, parity_sign, scalar, vec_add, vec_scale
from .linalg import EchelonBasis, nullspace, rank, solve, transpose


@dataclass
class Failure:
    axiom: str
    basis: Tuple[str, ...]
    residual: Vector

    def __str__(self):
        res = ", ".join(f"{k}: {v}" for k, v in sorted(self.residual.items()))
        return f"{self.axiom} fails on {self.basis}: {{{res}}}"


@dataclass
class ValidityReport:
    failures: List[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def add(self, axiom, basis, residual):
        if residual:
            self.failures.append(Failure(axiom, tuple(basis), dict(residual)))

    def axioms(self) -> set:
        return {f.axiom for f in self.failures}


@dataclass(frozen=True)
class DglaPresentation:
    """Finite-dimensional DGLA given by a differential and structure constants.

    ``structure`` holds [e_i, e_j] only for index(e_i) <= index(e_j); the other
    order follows from graded antisymmetry.
    """

    space: GradedSpace
    differential: GradedMap
    structure: Mapping[Tuple[str, str], Mapping[str, Fraction]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        V = self.space
        if self.differential.source != V or self.differential.target != V or self.differential.degree != 1:
            raise ValueError("differential must be a degree +1 endomorphism of the space")
        clean = {}
        for (a, b), out in dict(self.structure).items():
            if a not in V or b not in V:
                raise ValueError(f"bracket [{a},{b}] refers to unknown basis element")
            if V.index(a) > V.index(b):
                raise ValueError(f"bracket [{a},{b}] must be stored as [{b},{a}]")
            vals = {}
            for c, x in dict(out).items():
                x = scalar(x)
                if x == 0:
                    continue
                if c not in V:
                    raise ValueError(f"bracket [{a},{b}] lands on unknown basis element {c}")
                if V.degree(c) != V.degree(a) + V.degree(b):
                    raise ValueError(
                        f"bracket [{a},{b}] -> {c}: degree {V.degree(c)} is not "
                        f"{V.degree(a)} + {V.degree(b)}")
                vals[c] = x
            if vals:
                clean[(a, b)] = vals
        object.__setattr__(self, "structure", clean)

    @classmethod
    def build(cls, basis, d=None, brackets=None, name=""):
        """Convenience constructor.

        ``d`` maps basis names to vectors; ``brackets`` maps ordered pairs to
        vectors in either order (normalized by antisymmetry).
        """
        V = basis if isinstance(basis, GradedSpace) else GradedSpace(tuple(basis))
        D = GradedMap.from_columns(V, V, 1, d or {})
        struct: Dict[Tuple[str, str], Vector] = {}
        for (a, b), out in (brackets or {}).items():
            if V.index(a) > V.index(b):
                s = -parity_sign(V.degree(a) * V.degree(b))
                out = {c: s * scalar(x) for c, x in out.items()}
                a, b = b, a
            prev = struct.get((a, b), {})
            struct[(a, b)] = vec_add(prev, {c: scalar(x) for c, x in out.items()})
        return cls(V, D, struct, name)

    @classmethod
    def zero(cls, name="0"):
        V = GradedSpace(())
        return cls(V, GradedMap.zero(V, V, 1), {}, name)

    @cached_property
    def table(self) -> Dict[Tuple[str, str], Vector]:
        """[e_a, e_b] for every ordered pair with nonzero value."""
        t: Dict[Tuple[str, str], Vector] = {}
        deg = self.space.degree
        for (a, b), out in self.structure.items():
            t[(a, b)] = dict(out)
            if a != b:
                s = -parity_sign(deg(a) * deg(b))
                t[(b, a)] = {c: s * x for c, x in out.items()}
        return t

    def bracket_basis(self, a: str, b: str) -> Vector:
        return self.table.get((a, b), {})

    def bracket(self, x: Mapping[str, Fraction], y: Mapping[str, Fraction]) -> Vector:
        out: Vector = {}
        tab = self.table
        for a, ca in x.items():
            for b, cb in y.items():
                for c, s in tab.get((a, b), {}).items():
                    v = out.get(c, 0) + ca * cb * s
                    if v:
                        out[c] = v
                    else:
                        out.pop(c, None)
        return out

    def d(self, x: Mapping[str, Fraction]) -> Vector:
        return self.differential.apply(x)

    @property
    def names(self):
        return self.space.names

    def degree(self, name):
        return self.space.degree(name)

    def is_abelian(self) -> bool:
        return not self.structure

    def as_complex(self) -> "Complex":
        return Complex(self.space, self.differential)


@dataclass(frozen=True)
class DglaMorphism:
    source: DglaPresentation
    target: DglaPresentation
    map: GradedMap
    name: str = ""

    def __post_init__(self):
        if self.map.source != self.source.space or self.map.target != self.target.space:
            raise ValueError("morphism map does not match source/target spaces")
        if self.map.degree != 0:
            raise ValueError("DGLA morphisms have degree 0")

    @classmethod
    def build(cls, source, target, images: Mapping[str, Mapping[str, Fraction]], name=""):
        return cls(source, target, GradedMap.from_columns(source.space, target.space, 0, images), name)

    @classmethod
    def identity(cls, L: DglaPresentation, name="id"):
        return cls(L, L, GradedMap.identity(L.space), name)

    @classmethod
    def zero(cls, source, target, name="0"):
        return cls(source, target, GradedMap.zero(source.space, target.space, 0), name)

    def apply(self, v: Mapping[str, Fraction]) -> Vector:
        return self.map.apply(v)

    def __call__(self, x):
        # Elements with coefficients carry their own extension of the map.
        if hasattr(x, "map_by"):
            return x.map_by(self)
        return self.map.apply(x)

    def compose(self, other: "DglaMorphism") -> "DglaMorphism":
        return DglaMorphism(other.source, self.target, self.map.compose(other.map))

    def is_injective(self) -> bool:
        names = self.source.names
        cols = [[self.map.column(s).get(t, Fraction(0)) for t in self.target.names] for s in names]
        return rank(cols) == len(names) if names else True


@dataclass(frozen=True)
class Complex:
    space: GradedSpace
    differential: GradedMap

    def __post_init__(self):
        if self.differential.degree != 1:
            raise ValueError("complex differential must have degree +1")

    def degrees(self) -> List[int]:
        return self.space.degrees()

    def d_matrix(self, i: int):
        return self.differential.matrix(i)

    def check_square_zero(self) -> ValidityReport:
        rep = ValidityReport()
        for n in self.space.names:
            rep.add("d∘d = 0", (n,), self.differential.apply(self.differential.column(n)))
        return rep


def validate_dgla(L: DglaPresentation) -> ValidityReport:
    """Check d²=0, antisymmetry, Leibniz and Jacobi on basis tuples."""
    rep = ValidityReport()
    V = L.space
    deg = V.degree
    names = V.names
    for a in names:
        rep.add("d∘d = 0", (a,), L.d(L.d({a: 1})))
    for a in names:
        if deg(a) % 2 == 0 and L.bracket_basis(a, a):
            rep.add("antisymmetry", (a, a), L.bracket_basis(a, a))
    for a in names:
        for b in names:
            lhs = L.d(L.bracket_basis(a, b))
            rhs = vec_add(L.bracket(L.d({a: 1}), {b: 1}),
                          L.bracket({a: 1}, L.d({b: 1})), coeffs=[1, parity_sign(deg(a))])
            rep.add("Leibniz", (a, b), vec_add(lhs, rhs, coeffs=[1, -1]))
    for a in names:
        for b in names:
            ab = L.bracket_basis(a, b)
            for c in names:
                lhs = L.bracket({a: 1}, L.bracket_basis(b, c))
                r1 = L.bracket(ab, {c: 1})
                r2 = L.bracket({b: 1}, L.bracket_basis(a, c))
                res = vec_add(lhs, r1, r2, coeffs=[1, -1, -parity_sign(deg(a) * deg(b))])
                rep.add("Jacobi", (a, b, c), res)
    return rep


def validate_morphism(f: DglaMorphism) -> ValidityReport:
    rep = ValidityReport()
    L, M = f.source, f.target
    for a in L.names:
        lhs = f.apply(L.d({a: 1}))
        rhs = M.d(f.apply({a: 1}))
        rep.add("f∘d = d∘f", (a,), vec_add(lhs, rhs, coeffs=[1, -1]))
    for a in L.names:
        fa = f.apply({a: 1})
        for b in L.names:
            lhs = f.apply(L.bracket_basis(a, b))
            rhs = M.bracket(fa, f.apply({b: 1}))
            rep.add("f[x,y] = [fx,fy]", (a, b), vec_add(lhs, rhs, coeffs=[1, -1]))
    return rep


def product_dgla(L1: DglaPresentation, L2: DglaPresentation, name="") -> DglaPresentation:
    """Direct product; basis names must be disjoint."""
    V = GradedSpace(L1.space.basis + L2.space.basis)
    d = {**L1.differential.columns, **L2.differential.columns}
    struct = {**L1.structure, **L2.structure}
    return DglaPresentation(V, GradedMap.from_columns(V, V, 1, d), struct,
                            name or f"{L1.name}x{L2.name}")


def _vec_from_list(names, xs) -> Vector:
    return {n: x for n, x in zip(names, xs) if x != 0}


@dataclass
class CohomologyGroup:
    degree: int
    dimension: int
    representatives: List[Vector]
    boundaries: List[Vector]
    cocycles: List[Vector]
    names: List[str]

    def coordinates(self, z: Mapping[str, Fraction]) -> List[Fraction]:
        """Coordinates of a cocycle on the representatives, modulo coboundaries."""
        n = self.names
        cols = [[r.get(k, Fraction(0)) for k in n] for r in self.representatives + self.boundaries]
        if not n:
            return []
        A = transpose(cols) if cols else [[] for _ in n]
        b = [Fraction(z.get(k, 0)) for k in n]
        x = solve(A, b, len(cols))
        if x is None:
            raise ValueError("vector is not a cocycle")
        return x[:self.dimension]

    def is_coboundary(self, z: Mapping[str, Fraction]) -> bool:
        if not z:
            return True
        eb = EchelonBasis(len(self.names))
        for v in self.boundaries:
            eb.add([v.get(k, Fraction(0)) for k in self.names])
        return eb.contains([Fraction(z.get(k, 0)) for k in self.names])

    def canonical(self, z: Mapping[str, Fraction]) -> Vector:
        """Reduce a cocycle against the fixed coboundary basis."""
        eb = EchelonBasis(len(self.names))
        for v in self.boundaries:
            eb.add([v.get(k, Fraction(0)) for k in self.names])
        return _vec_from_list(self.names, eb.reduce([Fraction(z.get(k, 0)) for k in self.names]))


def cohomology_group(C: Complex, i: int) -> CohomologyGroup:
    names = C.space.piece(i)
    prev = C.space.piece(i - 1)
    D = C.differential
    dim = len(names)
    # cocycles: kernel of d^i
    d_i = D.matrix(i)
    if dim == 0:
        return CohomologyGroup(i, 0, [], [], [], names)
    if d_i:
        Z = nullspace(d_i, dim)
    else:
        Z = [[Fraction(int(r == c)) for c in range(dim)] for r in range(dim)]
    B = [[D.column(p).get(k, Fraction(0)) for k in names] for p in prev]
    eb = EchelonBasis(dim)
    boundaries = []
    for v in B:
        if eb.add(v):
            boundaries.append(_vec_from_list(names, v))
    reps = []
    for z in Z:
        if eb.add(z):
            reps.append(_vec_from_list(names, z))
    return CohomologyGroup(i, len(reps), reps, boundaries,
                           [_vec_from_list(names, z) for z in Z], names)


def cohomology(C: Complex, i: int) -> Tuple[int, List[Vector]]:
    """(dim H^i, cocycle representatives of a complement of the coboundaries)."""
    H = cohomology_group(C, i)
    return H.dimension, H.representatives


def induced_map(src: Complex, tgt: Complex, f: GradedMap, i: int, j: Optional[int] = None):
    """Matrix of H^i(src) → H^j(tgt) induced by the chain-level map f (rows: target)."""
    j = i + f.degree if j is None else j
    Hs = cohomology_group(src, i)
    Ht = cohomology_group(tgt, j)
    cols = [Ht.coordinates(f.apply(r)) for r in Hs.representatives]
    return [[cols[c][r] for c in range(len(cols))] for r in range(Ht.dimension)], Hs, Ht


def euler_characteristic(C: Complex) -> int:
    return sum(parity_sign(i) * C.space.dim(i) for i in C.degrees())
