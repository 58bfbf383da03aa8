"""Built-in pair diagrams and random samplers for property tests."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .artin import UNIT, ArtinAlgebra, make_artin
from .cone import (ConeTriple, EquivWitness, PairDiagram, PairMCWitness, _graded_labels,
                   cone_les_check, mc_pair_verify, pair_action)
from .dgla import (DglaMorphism, DglaPresentation, cohomology, product_dgla, validate_dgla,
                   validate_morphism)
from .elements import Element, random_element
from .graded import GradedSpace, Vector, koszul_sign_0, parity_sign, scalar


# -- Lie algebras and graded-commutative algebras ---------------------------------------

def gl2_structure() -> Tuple[List[str], Dict[Tuple[str, str], Vector]]:
    names = ["E11", "E12", "E21", "E22"]
    br: Dict[Tuple[str, str], Vector] = {}
    for i, j, k, l in itertools.product((1, 2), repeat=4):
        out: Vector = {}
        if j == k:
            out[f"E{i}{l}"] = out.get(f"E{i}{l}", 0) + 1
        if l == i:
            out[f"E{k}{j}"] = out.get(f"E{k}{j}", 0) - 1
        out = {a: Fraction(b) for a, b in out.items() if b}
        if out:
            br[(f"E{i}{j}", f"E{k}{l}")] = out
    return names, br


def sl2_structure():
    names = ["H", "E", "F"]
    br = {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"H": 1}}
    return names, br


def heisenberg_structure():
    names = ["X", "Y", "Z"]
    return names, {("X", "Y"): {"Z": 1}}


def abelian_structure(names):
    return list(names), {}


def _lie_table(names, br) -> Dict[Tuple[str, str], Vector]:
    """All ordered pairs for a degree-0 Lie algebra (antisymmetric completion)."""
    tab: Dict[Tuple[str, str], Vector] = {}
    for (a, b), out in br.items():
        out = {k: scalar(v) for k, v in out.items() if v}
        tab[(a, b)] = out
        if (b, a) not in br:
            tab[(b, a)] = {k: -v for k, v in out.items()}
    return tab


def _check_lie(names, tab) -> List[str]:
    errs = []
    for a, b in itertools.product(names, repeat=2):
        ab, ba = tab.get((a, b), {}), tab.get((b, a), {})
        if any(ab.get(k, 0) + ba.get(k, 0) for k in set(ab) | set(ba)):
            errs.append(f"antisymmetry fails on {a},{b}")

    def br(x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for p, cp in x.items():
            for q, cq in y.items():
                for k, v in tab.get((p, q), {}).items():
                    out[k] = out.get(k, 0) + cp * cq * v
        return {k: v for k, v in out.items() if v}

    for a, b, c in itertools.combinations_with_replacement(names, 3):
        A, B, C = {a: 1}, {b: 1}, {c: 1}
        total: Vector = {}
        for x, y, z in ((A, B, C), (B, C, A), (C, A, B)):
            for k, v in br(x, br(y, z)).items():
                total[k] = total.get(k, 0) + v
        if any(total.values()):
            errs.append(f"Jacobi fails on {a},{b},{c}")
    return errs


@dataclass(frozen=True)
class ExteriorAlgebra:
    """Free graded-commutative algebra on generators with every generator squaring to zero."""

    generators: Tuple[Tuple[str, int], ...]
    differential: Mapping[str, Mapping[Tuple[str, ...], Fraction]] = field(default_factory=dict)

    @property
    def monomials(self) -> List[Tuple[str, ...]]:
        gens = [g for g, _ in self.generators]
        out = []
        for k in range(len(gens) + 1):
            out += list(itertools.combinations(gens, k))
        return out

    def degree(self, mono: Tuple[str, ...]) -> int:
        deg = dict(self.generators)
        return sum(deg[g] for g in mono)

    def multiply(self, a: Tuple[str, ...], b: Tuple[str, ...]) -> Tuple[int, Tuple[str, ...]]:
        if set(a) & set(b):
            return 0, ()
        order = {g: i for i, (g, _) in enumerate(self.generators)}
        word = list(a) + list(b)
        perm = sorted(range(len(word)), key=lambda k: order[word[k]])
        degs = [dict(self.generators)[g] for g in word]
        return koszul_sign_0(perm, degs), tuple(word[k] for k in perm)

    def mult_vec(self, x: Mapping[Tuple[str, ...], Fraction], y: Mapping[Tuple[str, ...], Fraction]):
        out: Dict[Tuple[str, ...], Fraction] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                s, m = self.multiply(a, b)
                if s:
                    out[m] = out.get(m, 0) + s * ca * cb
        return {k: v for k, v in out.items() if v}

    def d(self, mono: Tuple[str, ...]) -> Dict[Tuple[str, ...], Fraction]:
        """Derivation extension: d(x_1⋯x_k) = Σ (−1)^{|x_1⋯x_{i−1}|} x_1⋯dx_i⋯x_k."""
        out: Dict[Tuple[str, ...], Fraction] = {}
        deg = dict(self.generators)
        for i, g in enumerate(mono):
            dg = {tuple(k): scalar(v) for k, v in self.differential.get(g, {}).items()}
            if not dg:
                continue
            sign = parity_sign(sum(deg[h] for h in mono[:i]))
            left = {mono[:i]: Fraction(sign)}
            right = {mono[i + 1:]: Fraction(1)}
            term = self.mult_vec(self.mult_vec(left, dg), right)
            for k, v in term.items():
                out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v}


def _tensor_name(x: str, mono: Tuple[str, ...]) -> str:
    return ".".join((x,) + mono)


def make_tensor_dgla(lie, exterior_generators: Sequence[Tuple[str, int]],
                     differential_spec: Optional[Mapping[str, Mapping]] = None,
                     name: str = "") -> DglaPresentation:
    """g ⊗ B for a Lie algebra g in degree 0 and B exterior on the given generators.

    ``lie`` is (names, {(a, b): vector}); ``differential_spec`` sends a
    generator to {monomial tuple: coefficient}.  [x⊗α, y⊗β] = [x,y]⊗αβ and
    d(x⊗α) = x⊗dα, since g sits in degree 0.
    """
    names, br = lie
    tab = _lie_table(names, br)
    errs = _check_lie(names, tab)
    if errs:
        raise ValueError(f"invalid Lie data: {errs[0]}")
    B = ExteriorAlgebra(tuple((g, int(d)) for g, d in exterior_generators), differential_spec or {})
    for mono in B.monomials:
        dd: Dict[Tuple[str, ...], Fraction] = {}
        for m, c in B.d(mono).items():
            for k, v in B.d(m).items():
                dd[k] = dd.get(k, 0) + c * v
        if any(dd.values()):
            raise ValueError(f"exterior differential does not square to zero on {mono}")
        for m in B.d(mono):
            if B.degree(m) != B.degree(mono) + 1:
                raise ValueError(f"exterior differential has wrong degree on {mono}")
    # generators square to zero, so d must be compatible with that relation
    for ma in B.monomials:
        for mb in B.monomials:
            s, m = B.multiply(ma, mb)
            lhs = {k: s * v for k, v in B.d(m).items()} if s else {}
            rhs = B.mult_vec(B.d(ma), {mb: 1})
            for k, v in B.mult_vec({ma: parity_sign(B.degree(ma))}, B.d(mb)).items():
                rhs[k] = rhs.get(k, 0) + v
            if lhs != {k: v for k, v in rhs.items() if v}:
                raise ValueError(f"exterior differential is not a derivation on {ma}·{mb}")
    basis = [(_tensor_name(x, mono), B.degree(mono)) for mono in B.monomials for x in names]
    d = {}
    for mono in B.monomials:
        dm = B.d(mono)
        for x in names:
            if dm:
                d[_tensor_name(x, mono)] = {_tensor_name(x, m): c for m, c in dm.items()}
    brackets = {}
    for (a, b), out in tab.items():
        for ma in B.monomials:
            for mb in B.monomials:
                s, m = B.multiply(ma, mb)
                if not s:
                    continue
                key = (_tensor_name(a, ma), _tensor_name(b, mb))
                brackets[key] = {_tensor_name(c, m): s * v for c, v in out.items()}
    V = GradedSpace(tuple(basis))
    # keep one orientation per unordered pair, as build() expects consistency
    seen = {}
    for (p, q), out in brackets.items():
        if V.index(p) <= V.index(q):
            seen[(p, q)] = out
    return DglaPresentation.build(V, d, seen, name)


def inclusion(source: DglaPresentation, target: DglaPresentation, name="") -> DglaMorphism:
    """The morphism sending each basis name to the same name in the target."""
    return DglaMorphism.build(source, target, {n: {n: 1} for n in source.names}, name)


def abelian_dgla(basis, d=None, name="") -> DglaPresentation:
    return DglaPresentation.build(basis, d or {}, {}, name)


# -- catalog entries ----------------------------------------------------------------------

@dataclass
class CatalogEntry:
    name: str
    diagram: PairDiagram
    description: str
    cone_dims: Dict[int, int]
    h_injective: bool
    m_nonnegative: bool
    obstructed_witness: Optional[PairMCWitness] = None


def _abelian_line():
    L = abelian_dgla([("e", 1)], name="L")
    M = abelian_dgla([("e", 1)], name="M")
    N = abelian_dgla([("e", 1)], name="N")
    return PairDiagram(L, M, N, inclusion(L, M, "h"), inclusion(N, M, "g"), "abelian-line")


def _gl2_wedge():
    gl2 = gl2_structure()
    M = make_tensor_dgla(gl2, [("eta1", 1), ("eta2", 1)], name="M")
    L = make_tensor_dgla(gl2, [("eta1", 1)], name="L")
    diag = (["E11", "E22"], {})
    N = make_tensor_dgla(diag, [("eta2", 1)], name="N")
    return PairDiagram(L, M, N, inclusion(L, M, "h"), inclusion(N, M, "g"), "gl2-wedge")


def _obstructed_pair():
    L = DglaPresentation.build([("u", 1), ("v", 2)], {}, {("u", "u"): {"v": 1}}, "L")
    M = abelian_dgla([("u'", 1)], name="M")
    N = abelian_dgla([("w", 1)], name="N")
    h = DglaMorphism.build(L, M, {"u": {"u'": 1}}, "h")
    g = DglaMorphism.build(N, M, {"w": {"u'": 1}}, "g")
    return PairDiagram(L, M, N, h, g, "obstructed-pair")


def _heisenberg_path():
    n3 = heisenberg_structure()
    theta_d = {"theta": {("theta", "eta"): 1}}
    M = make_tensor_dgla(n3, [("theta", -1), ("eta", 1)], theta_d, name="M")
    L = make_tensor_dgla(n3, [("eta", 1)], name="L")
    N = make_tensor_dgla(n3, [("eta", 1)], name="N")
    return PairDiagram(L, M, N, inclusion(L, M, "h"), inclusion(N, M, "g"), "heisenberg-theta")


def _identity_cone():
    sl2 = sl2_structure()
    L = make_tensor_dgla(sl2, [("eta", 1)], name="L")
    M = make_tensor_dgla(sl2, [("eta", 1)], name="M")
    N = DglaPresentation.zero("N")
    return PairDiagram(L, M, N, inclusion(L, M, "h"), DglaMorphism.zero(N, M, "g"), "identity-cone")


def _product_pair():
    Na = abelian_dgla([("a", 1)], name="Na")
    Nb = abelian_dgla([("b", 1)], name="Nb")
    N = product_dgla(Na, Nb, "N")
    M = DglaPresentation.build([("z", 0), ("a", 1), ("b", 1)], {},
                               {("z", "a"): {"a": 1}, ("z", "b"): {"b": -1}}, "M")
    L = DglaPresentation.build([("z", 0)], {}, {}, "L")
    return PairDiagram(L, M, N, inclusion(L, M, "h"), inclusion(N, M, "g"), "product-pair")


_BUILDERS = {
    "abelian-line": (_abelian_line, "L = M = N one-dimensional in degree 1, h = g = id"),
    "gl2-wedge": (_gl2_wedge, "gl2⊗Λ(η1) → gl2⊗Λ(η1,η2) ← t⊗Λ(η2), zero differential"),
    "heisenberg-theta": (_heisenberg_path,
                         "n3⊗Λ(η) → n3⊗Λ(θ,η) ← n3⊗Λ(η) with dθ = θη, so M^{-1} ≠ 0"),
    "identity-cone": (_identity_cone, "h = id on sl2⊗Λ(η), N = 0: acyclic cone"),
    "obstructed-pair": (_obstructed_pair, "[u,u] = v in L, abelian M, N: nonzero H^2 and an obstructed witness"),
    "product-pair": (_product_pair, "N = Na × Nb included into a nonabelian M with a degree-0 gauge direction"),
}


def catalog_list() -> List[str]:
    return sorted(_BUILDERS)


@lru_cache(maxsize=None)
def load(name: str) -> CatalogEntry:
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(catalog_list())}")
    builder, desc = _BUILDERS[name]
    P = builder()
    rep = P.validate()
    if not rep.ok:
        raise AssertionError(f"catalog entry {name} is invalid: {rep.failures[0]}")
    cone = P.cone
    dims = {i: cohomology(cone.complex, i)[0] for i in range(min(cone.degrees()) - 1, max(cone.degrees()) + 2)}
    ob = None
    if name == "obstructed-pair":
        A = make_artin(["eps"], 2)
        ob = PairMCWitness(Element.from_coeffs(P.L, A, {("u", "eps"): 1}),
                           Element.from_coeffs(P.N, A, {("w", "eps"): 1}),
                           Element.zero(P.M, A))
    return CatalogEntry(name, P, desc, dims, P.h_injective(), P.m_nonnegative(), ob)


def all_entries() -> List[CatalogEntry]:
    return [load(n) for n in catalog_list()]


# -- random samplers -----------------------------------------------------------------------

def random_cone_element(rng: random.Random, P: PairDiagram, degree: int, ring: ArtinAlgebra = None,
                        labels=None, density=0.6) -> ConeTriple:
    from .elements import Q
    ring = ring or Q
    labels = labels if labels is not None else (ring.labels or (UNIT,))
    return ConeTriple(random_element(rng, P.L, ring, degree, labels=labels, density=density, dt=0),
                      random_element(rng, P.N, ring, degree, labels=labels, density=density, dt=0),
                      random_element(rng, P.M, ring, degree - 1, labels=labels, density=density, dt=0))


def random_equiv(rng: random.Random, P: PairDiagram, ring: ArtinAlgebra, density=0.5) -> EquivWitness:
    return EquivWitness(random_element(rng, P.L, ring, 0, density=density, dt=0),
                        random_element(rng, P.N, ring, 0, density=density, dt=0),
                        random_element(rng, P.M, ring, -1, density=density, dt=0))


class ObstructedSeed(Exception):
    """random_mc hit a genuine obstruction."""

    def __init__(self, order, obstruction):
        super().__init__(f"obstructed at order {order}")
        self.order = order
        self.obstruction = obstruction


def random_mc(P: PairDiagram, A: ArtinAlgebra, seed, gauge: bool = True, density=0.6) -> PairMCWitness:
    """Random witness: a random first-order cocycle lifted order by order, then gauge-moved.

    Raises ObstructedSeed when a lift is obstructed.
    """
    from .artin import make_small_extension
    from .cone import lift_mc, ObstructionClass
    rng = random.Random(seed)
    graded = _graded_labels(A)
    N = A.nilpotency_order or 1
    cone = P.cone
    Z1 = _cocycles(P)
    # start over A/m^2 with random cocycles per first-order label
    first = [lab for lab in A.labels if graded.get(lab) == 1]
    w = _witness_from_cocycles(P, A, first, Z1, rng, density)
    # lift through the filtration A/m^{k+1} ⊂ … : re-solve each layer linearly
    for k in range(2, N):
        layer = [lab for lab in A.labels if graded.get(lab) == k]
        if not layer:
            continue
        Ak = A.quotient(A.power_basis(k + 1)).quotient
        se = make_small_extension(Ak, [{lab: 1} for lab in layer if lab in Ak.labels])
        cur = w.change_ring(se.quotient, _restrict_map(w.ring, se.quotient))
        res = lift_mc(P, se, cur)
        if isinstance(res, ObstructionClass):
            raise ObstructedSeed(k, res)
        # random cocycle in the new layer keeps the lift MC (J·m = 0)
        extra = _witness_from_cocycles(P, se.total, layer, Z1, rng, density)
        w = PairMCWitness(res.x + extra.x, res.y + extra.y, res.p + extra.p)
    w = w.change_ring(A)
    if gauge:
        w = pair_action(P, w, random_equiv(rng, P, A, density=0.5))
    if not mc_pair_verify(P, w):
        raise AssertionError("random_mc produced a non-MC witness")
    return w


def _restrict_map(src: ArtinAlgebra, tgt: ArtinAlgebra):
    return {lab: ({lab: Fraction(1)} if lab in tgt.labels else {}) for lab in src.labels}


def _cocycles(P: PairDiagram) -> List[Vector]:
    from .linalg import nullspace
    C = P.cone.complex
    names = C.space.piece(1)
    mat = C.differential.matrix(1)
    if not names:
        return []
    basis = nullspace(mat, len(names)) if mat else [[Fraction(int(i == j)) for j in range(len(names))]
                                                    for i in range(len(names))]
    return [{n: c for n, c in zip(names, v) if c} for v in basis]


def _witness_from_cocycles(P, A, labels, Z1, rng, density) -> PairMCWitness:
    w = PairMCWitness.zero(P, A)
    cone = P.cone
    for lab in labels:
        if lab not in A.labels:
            continue
        z: Vector = {}
        for vec in Z1:
            if rng.random() < density:
                c = Fraction(rng.randint(-2, 2))
                for k, v in vec.items():
                    z[k] = z.get(k, 0) + c * v
        l, n, m = cone.split({k: v for k, v in z.items() if v})
        w = PairMCWitness(w.x + Element.from_vector(P.L, l, A, lab),
                          w.y + Element.from_vector(P.N, n, A, lab),
                          w.p + Element.from_vector(P.M, m, A, lab))
    return w


# -- fixture documents -------------------------------------------------------------------------

FIXTURE_SEED = 7


def fixture_document(name: str, seed: int = FIXTURE_SEED):
    """The shipped text fixture for a catalog entry.

    Ring Q[eps]/(eps^3) with the small extension eps^2, pinned cohomology and
    property data, and when the entry allows it two equivalent random
    witnesses, the equivalence between them and the homotopy built from it.
    """
    from .homotopy import gauge_to_homotopy
    from .textformat import RingSpec, document_for
    E = load(name)
    P = E.diagram
    ring = RingSpec(("eps",), 3, (), ("eps^2",))
    doc = document_for(P, ring)
    A = ring.algebra
    obstructed = []
    if E.obstructed_witness is not None:
        ob = E.obstructed_witness
        doc.witnesses["w_obstructed"] = ob.change_ring(A)
        obstructed.append("w_obstructed")
    try:
        w0 = random_mc(P, A, seed)
    except ObstructedSeed:
        w0 = PairMCWitness.zero(P, A)
    if w0 is not None:
        rng = random.Random(seed + 1)
        ew = random_equiv(rng, P, A)
        w1 = pair_action(P, w0, ew)
        doc.witnesses["w0"] = w0
        doc.witnesses["w1"] = w1
        doc.equivs["e01"] = ("w0", "w1", ew)
        doc.paths["h01"] = ("s", gauge_to_homotopy(P, w0, w1, ew))
    dims = ", ".join(f"{i}:{d}" for i, d in sorted(E.cone_dims.items()) if d)
    doc.expect = {
        "cone_dims": dims or "none",
        "h_injective": "yes" if E.h_injective else "no",
        "m_nonnegative": "yes" if E.m_nonnegative else "no",
        "tangent_dim": str(E.cone_dims.get(1, 0)),
        "obstructed": ", ".join(obstructed) or "none",
    }
    return doc


def corrupted_document():
    """abelian-line with a witness violating only g(y) = e^p*h(x)."""
    from .textformat import RingSpec, document_for
    P = load("abelian-line").diagram
    ring = RingSpec(("eps",), 3, (), ("eps^2",))
    doc = document_for(P, ring)
    A = ring.algebra
    doc.witnesses["w_bad"] = PairMCWitness(Element.from_coeffs(P.L, A, {("e", "eps"): 1}),
                                           Element.from_coeffs(P.N, A, {("e", "eps"): 2}),
                                           Element.zero(P.M, A))
    return doc
