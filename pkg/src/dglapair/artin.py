"""Local Artinian Q-algebras, quotients, small extensions and fiber products.

An algebra is stored by a basis of its maximal ideal (string labels) and a
multiplication table on that basis; the unit has the reserved label ``"1"``.
Presented algebras Q[x_1..x_k]/((x)^N + I) use monomial labels such as
``"eps^2"`` or ``"s*t"``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Sequence, Tuple

from .graded import Vector, scalar, vec_add, vec_scale
from .linalg import EchelonBasis, nullspace, rref, solve, transpose

UNIT = "1"


class ArtinAlgebra:
    def __init__(self, labels: Sequence[str], table: Mapping[Tuple[str, str], Mapping[str, Fraction]],
                 generators: Sequence[str] = (), name: str = ""):
        self.labels = tuple(labels)
        if UNIT in self.labels:
            raise ValueError("the unit is not part of the maximal ideal")
        self._index = {l: i for i, l in enumerate(self.labels)}
        tab = {}
        for (a, b), out in table.items():
            out = {c: scalar(x) for c, x in out.items() if scalar(x) != 0}
            for c in out:
                if c not in self._index:
                    raise ValueError(f"product {a}*{b} leaves the maximal ideal ({c})")
            if out:
                tab[(a, b)] = out
        self.table = tab
        self.generators = tuple(generators)
        self.name = name
        self._mult_cache: Dict[Tuple[str, str], Vector] = {}

    # -- basic structure -------------------------------------------------
    def __repr__(self):
        return f"ArtinAlgebra({self.name or list(self.labels)})"

    @property
    def dim(self) -> int:
        """Dimension of the maximal ideal."""
        return len(self.labels)

    def key(self):
        return (self.labels, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.table.items())))

    def __eq__(self, other):
        return isinstance(other, ArtinAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    def mult(self, a: str, b: str) -> Vector:
        if a == UNIT:
            return {b: Fraction(1)}
        if b == UNIT:
            return {a: Fraction(1)}
        return self.table.get((a, b), {})

    def multiply(self, x: Mapping[str, Fraction], y: Mapping[str, Fraction]) -> Vector:
        out: Vector = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, s in self.mult(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * s
        return {k: v for k, v in out.items() if v}

    def vector(self, x: Mapping[str, Fraction]) -> List[Fraction]:
        return [Fraction(x.get(l, 0)) for l in self.labels]

    def from_list(self, xs) -> Vector:
        return {l: x for l, x in zip(self.labels, xs) if x != 0}

    # -- axioms ------------------------------------------------------------
    def check(self) -> List[str]:
        """Commutativity, associativity and nilpotency problems (empty when fine)."""
        errs = []
        L = self.labels
        for a in L:
            for b in L:
                if self.mult(a, b) != self.mult(b, a):
                    errs.append(f"not commutative on {a},{b}")
        for a in L:
            for b in L:
                ab = self.mult(a, b)
                for c in L:
                    lhs = self.multiply(ab, {c: 1})
                    rhs = self.multiply({a: 1}, self.mult(b, c))
                    if lhs != rhs:
                        errs.append(f"not associative on {a},{b},{c}")
        if self.nilpotency_order is None:
            errs.append("maximal ideal is not nilpotent")
        return errs

    def power_basis(self, k: int) -> List[Vector]:
        """Echelon basis of m^k (k >= 1)."""
        cur = [{l: Fraction(1)} for l in self.labels]
        for _ in range(k - 1):
            eb = EchelonBasis(self.dim)
            nxt = []
            for v in cur:
                for l in self.labels:
                    w = self.multiply(v, {l: 1})
                    if w and eb.add(self.vector(w)):
                        nxt.append(w)
            cur = nxt
            if not cur:
                break
        eb = EchelonBasis(self.dim)
        for v in cur:
            eb.add(self.vector(v))
        return [self.from_list(r) for _, r in eb.rows]

    @cached_property
    def nilpotency_order(self):
        """Smallest N with m^N = 0 (1 for the residue field Q)."""
        for k in range(1, self.dim + 2):
            if not self.power_basis(k):
                return k
        return None

    # -- quotients ---------------------------------------------------------
    def ideal_span(self, gens: Sequence[Mapping[str, Fraction]]) -> List[Vector]:
        """Basis of the ideal generated by elements of m (as a subspace of m)."""
        vecs = []
        for g in gens:
            if Fraction(g.get(UNIT, 0)) != 0:
                raise ValueError("ideal generators must lie in the maximal ideal")
            g = {k: scalar(v) for k, v in g.items() if k != UNIT}
            vecs.append(g)
            for l in self.labels:
                vecs.append(self.multiply(g, {l: 1}))
        return [v for v in vecs if v]

    def quotient(self, gens: Sequence[Mapping[str, Fraction]], name="") -> "QuotientData":
        """A / (gens). Basis labels of the quotient are a subset of ours.

        Pivots are chosen from the last label backwards, so the surviving
        labels are the earliest (lowest-degree for presented algebras).
        """
        span = self.ideal_span(gens)
        order = list(reversed(range(self.dim)))
        rows = [[self.vector(v)[i] for i in order] for v in span]
        R, piv = rref(rows, self.dim) if rows else ([], [])
        pivot_labels = [self.labels[order[p]] for p in piv]
        ideal = []
        reducer = {}
        for row, p in zip(R, piv):
            vec = {self.labels[order[i]]: x for i, x in enumerate(row) if x != 0}
            ideal.append(vec)
            lab = self.labels[order[p]]
            # lab ≡ -(rest of row) modulo the ideal
            reducer[lab] = {k: -x for k, x in vec.items() if k != lab}
        kept = [l for l in self.labels if l not in set(pivot_labels)]

        def reduce(x: Mapping[str, Fraction]) -> Vector:
            out = {}
            for k, v in x.items():
                if k == UNIT:
                    out[k] = out.get(k, 0) + v
                elif k in reducer:
                    for kk, vv in reducer[k].items():
                        out[kk] = out.get(kk, 0) + v * vv
                else:
                    out[k] = out.get(k, 0) + v
            return {k: v for k, v in out.items() if v}

        table = {}
        for a in kept:
            for b in kept:
                p = reduce(self.mult(a, b))
                if p:
                    table[(a, b)] = p
        gens_q = tuple(g for g in self.generators if g in kept) if self.generators else ()
        Q = ArtinAlgebra(kept, table, gens_q, name or f"{self.name}/I")
        Q._presentation = getattr(self, "_presentation", None)
        projection = {l: reduce({l: Fraction(1)}) for l in self.labels}
        return QuotientData(self, Q, projection, ideal)

    def residue(self) -> "ArtinAlgebra":
        return ArtinAlgebra((), {}, (), "Q")

    def filtration_quotient(self, k: int) -> "QuotientData":
        """A / m^{k+1}."""
        return self.quotient(self.power_basis(k + 1), name=f"{self.name}/m^{k + 1}")

    # -- presentation helpers ---------------------------------------------
    def parse_element(self, text: str) -> Vector:
        pres = getattr(self, "_presentation", None)
        if pres is None:
            raise ValueError("algebra has no polynomial presentation")
        gens, order = pres
        poly = parse_polynomial(text, gens)
        out = {}
        for mono, c in poly.items():
            if sum(mono) >= order:
                continue
            lab = monomial_label(mono, gens)
            out[lab] = out.get(lab, 0) + c
        # reduce through the presentation's ideal when a label was eliminated
        bad = [l for l in out if l != UNIT and l not in self._index]
        if bad:
            red = getattr(self, "_reduce_full", None)
            if red is None:
                raise ValueError(f"monomials {bad} are not basis labels")
            out = red(out)
        return {k: v for k, v in out.items() if v}


@dataclass
class QuotientData:
    total: ArtinAlgebra
    quotient: ArtinAlgebra
    projection: Dict[str, Vector]      # total label -> quotient vector
    ideal: List[Vector]                # echelon basis of the kernel inside m_total

    def project(self, x: Mapping[str, Fraction]) -> Vector:
        out: Vector = {}
        for k, v in x.items():
            img = {UNIT: Fraction(1)} if k == UNIT else self.projection[k]
            for kk, vv in img.items():
                out[kk] = out.get(kk, 0) + v * vv
        return {k: v for k, v in out.items() if v}

    def section_label(self, label: str) -> str:
        return label


# -- presented algebras ------------------------------------------------------

_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def monomial_label(exps: Sequence[int], gens: Sequence[str]) -> str:
    parts = []
    for g, e in zip(gens, exps):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else UNIT


def parse_monomial(text: str, gens: Sequence[str]) -> Tuple[int, ...]:
    exps = [0] * len(gens)
    text = text.strip()
    if text in ("", UNIT):
        return tuple(exps)
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            g, e = factor.split("^", 1)
            e = int(e)
        else:
            g, e = factor, 1
        g = g.strip()
        if g not in gens:
            raise ValueError(f"unknown ring variable {g!r}")
        exps[gens.index(g)] += e
    return tuple(exps)


def parse_polynomial(text: str, gens: Sequence[str]) -> Dict[Tuple[int, ...], Fraction]:
    """Parse e.g. ``"s^2 - 3/2 s*t + t"`` into {exponents: coefficient}."""
    out: Dict[Tuple[int, ...], Fraction] = {}
    s = text.replace(" ", "")
    if not s:
        return out
    tokens = re.findall(r"[+-]?[^+-]+", s)
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        m = re.match(r"^(\d+(?:/\d+)?)\*?(.*)$", tok)
        if m:
            coef = Fraction(m.group(1))
            rest = m.group(2)
        else:
            coef, rest = Fraction(1), tok
        mono = parse_monomial(rest, gens)
        out[mono] = out.get(mono, 0) + sign * coef
    return {k: v for k, v in out.items() if v}


def make_artin(generators: Sequence[str], truncation_order: int,
               extra_relations: Sequence = (), name: str = "") -> ArtinAlgebra:
    """Q[generators] / ((generators)^truncation_order + extra_relations)."""
    gens = tuple(generators)
    if truncation_order < 1:
        raise ValueError("truncation order must be at least 1")
    if len(set(gens)) != len(gens):
        raise ValueError("duplicate ring variables")
    monos = [e for e in itertools.product(range(truncation_order), repeat=len(gens))
             if 0 < sum(e) < truncation_order]
    monos.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    labels = [monomial_label(e, gens) for e in monos]
    lab_of = dict(zip(monos, labels))
    table = {}
    for a in monos:
        for b in monos:
            c = tuple(x + y for x, y in zip(a, b))
            if sum(c) < truncation_order:
                table[(lab_of[a], lab_of[b])] = {lab_of[c]: Fraction(1)}
    free = ArtinAlgebra(labels, table, gens, name or _default_name(gens, truncation_order))
    free._presentation = (gens, truncation_order)
    rels = []
    for r in extra_relations:
        poly = parse_polynomial(r, gens) if isinstance(r, str) else {tuple(k): scalar(v) for k, v in r.items()}
        const = poly.get(tuple([0] * len(gens)), 0)
        if const != 0:
            raise ValueError(f"relation {r!r} has a nonzero constant term; the quotient would not be local")
        vec = {}
        for mono, c in poly.items():
            if sum(mono) < truncation_order:
                vec[lab_of[mono]] = vec.get(lab_of[mono], 0) + c
        vec = {k: v for k, v in vec.items() if v}
        if vec:
            rels.append(vec)
    if not rels:
        return free
    q = free.quotient(rels, name=name or f"{free.name}/({', '.join(map(str, extra_relations))})")
    A = q.quotient
    A._presentation = (gens, truncation_order)
    A._reduce_full = q.project
    A._relations = tuple(str(r) for r in extra_relations)
    return A


def _default_name(gens, order):
    return f"Q[{','.join(gens)}]/(m^{order})"


def presentation(A: ArtinAlgebra):
    """(generators, truncation order, relations) for presented algebras, else None."""
    p = getattr(A, "_presentation", None)
    if p is None:
        return None
    return p[0], p[1], getattr(A, "_relations", ())


def dual_numbers(var="eps") -> ArtinAlgebra:
    return make_artin([var], 2)


# -- small extensions ----------------------------------------------------------

@dataclass
class SmallExtension:
    total: ArtinAlgebra          # Ã
    ideal: List[Vector]          # basis of J inside m_Ã
    quotient: ArtinAlgebra       # A = Ã / J
    data: QuotientData

    def project(self, x: Mapping[str, Fraction]) -> Vector:
        return self.data.project(x)

    def coordinates_in_J(self, x: Mapping[str, Fraction]) -> List[Fraction]:
        if not self.ideal:
            if any(x.values()):
                raise ValueError("element is not in J")
            return []
        A = transpose([self.total.vector(j) for j in self.ideal])
        sol = solve(A, self.total.vector(x), len(self.ideal))
        if sol is None:
            raise ValueError("element is not in J")
        return sol


def make_small_extension(total: ArtinAlgebra, ideal_generators: Sequence) -> SmallExtension:
    gens = []
    for g in ideal_generators:
        gens.append(total.parse_element(g) if isinstance(g, str) else {k: scalar(v) for k, v in g.items()})
    data = total.quotient(gens)
    J = data.ideal
    for j in J:
        for l in total.labels:
            if total.multiply(j, {l: 1}):
                raise ValueError(f"J·m is not zero: {j} * {l} != 0; the extension is not small")
    return SmallExtension(total, J, data.quotient, data)


# -- ring maps and fiber products ------------------------------------------------

@dataclass
class ArtinMorphism:
    source: ArtinAlgebra
    target: ArtinAlgebra
    images: Dict[str, Vector]   # source label -> target vector (in m_target)

    def apply_vector(self, x: Mapping[str, Fraction]) -> Vector:
        out: Vector = {}
        for k, v in x.items():
            img = {UNIT: Fraction(1)} if k == UNIT else self.images.get(k, {})
            for kk, vv in img.items():
                out[kk] = out.get(kk, 0) + v * vv
        return {k: v for k, v in out.items() if v}

    def check(self) -> List[str]:
        errs = []
        for a in self.source.labels:
            for b in self.source.labels:
                lhs = self.apply_vector(self.source.mult(a, b))
                rhs = self.target.multiply(self.images.get(a, {}), self.images.get(b, {}))
                if lhs != rhs:
                    errs.append(f"not multiplicative on {a},{b}")
        return errs


def projection_morphism(q: QuotientData) -> ArtinMorphism:
    return ArtinMorphism(q.total, q.quotient, dict(q.projection))


@dataclass
class FiberProduct:
    ring: ArtinAlgebra
    left: ArtinMorphism     # D -> B
    right: ArtinMorphism    # D -> C
    beta: ArtinMorphism     # B -> A
    gamma: ArtinMorphism    # C -> A

    def glue(self, xb: Mapping[str, Fraction], xc: Mapping[str, Fraction]) -> Vector:
        """Unique element of m_D with the given images (they must agree over A)."""
        if self.beta.apply_vector(xb) != self.gamma.apply_vector(xc):
            raise ValueError("elements do not agree over the base")
        D = self.ring
        B, C = self.beta.source, self.gamma.source
        M = []
        for l in D.labels:
            M.append(B.vector(self.left.images.get(l, {})) + C.vector(self.right.images.get(l, {})))
        A = transpose(M) if M else []
        rhs = B.vector(xb) + C.vector(xc)
        if not D.labels:
            if any(rhs):
                raise ValueError("cannot glue")
            return {}
        sol = solve(A, rhs, len(D.labels))
        if sol is None:
            raise ValueError("cannot glue")
        return D.from_list(sol)


def fiber_product(beta: ArtinMorphism, gamma: ArtinMorphism, name="") -> FiberProduct:
    """B ×_A C for ring maps beta: B → A and gamma: C → A."""
    B, C, A = beta.source, gamma.source, beta.target
    if gamma.target != A:
        raise ValueError("fiber product needs a common base")
    nb, nc = B.dim, C.dim
    # (b, c) with beta(b) - gamma(c) = 0, inside m_B ⊕ m_C
    rows = []
    for la in A.labels:
        row = [beta.images.get(lb, {}).get(la, Fraction(0)) for lb in B.labels]
        row += [-gamma.images.get(lc, {}).get(la, Fraction(0)) for lc in C.labels]
        rows.append(row)
    basis = nullspace(rows, nb + nc) if rows else [
        [Fraction(int(i == j)) for j in range(nb + nc)] for i in range(nb + nc)]
    labels = [f"f{i + 1}" for i in range(len(basis))]
    parts = [(B.from_list(v[:nb]), C.from_list(v[nb:])) for v in basis]
    big = transpose([B.vector(b) + C.vector(c) for b, c in parts]) if parts else []
    table = {}
    for i, (b1, c1) in enumerate(parts):
        for j, (b2, c2) in enumerate(parts):
            pb = B.multiply(b1, b2)
            pc = C.multiply(c1, c2)
            if not pb and not pc:
                continue
            sol = solve(big, B.vector(pb) + C.vector(pc), len(parts))
            if sol is None:
                raise ValueError("fiber product is not closed under multiplication")
            table[(labels[i], labels[j])] = {labels[k]: x for k, x in enumerate(sol) if x}
    D = ArtinAlgebra(labels, table, (), name or f"{B.name}x_{A.name}{C.name}")
    left = ArtinMorphism(D, B, {l: b for l, (b, _) in zip(labels, parts)})
    right = ArtinMorphism(D, C, {l: c for l, (_, c) in zip(labels, parts)})
    return FiberProduct(D, left, right, beta, gamma)
