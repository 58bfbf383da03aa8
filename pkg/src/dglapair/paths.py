"""Polynomial forms M[t,dt], the path DGLA H of a pair and its contraction onto the cone.

Path elements are `Element`s with t-powers and a dt flag.  For a pair
h: L → M ← N: g the DGLA H consists of triples (l, n, m(t,dt)) with
h(l) = m(1) and g(n) = m(0); it contracts onto the cone through

    ι(l,n,m) = (l, n, (1−t)g(n) + t h(l) + dt·m)
    π(l,n,m) = (l, n, ∫_0^1 m)
    K(l,n,m) = (0, 0, t∫_0^1 m − ∫_0^t m)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence

from .cone import ConeTriple, PairDiagram
from .elements import Element, bch, exp_ad, gauge_action, mc_residual

T = {(1, 0): Fraction(1)}
ONE_MINUS_T = {(0, 0): Fraction(1), (1, 0): Fraction(-1)}
DT = {(0, 1): Fraction(1)}


def eval_at(m: Element, a) -> Element:
    return m.eval_at(a)


def integrate(m: Element, a=0, b=1) -> Element:
    return m.integrate(a, b)


def path_dgla_ops(p: Element, q: Element):
    """(d p, [p, q]) in M[t,dt]."""
    return p.d(), p.bracket(q)


@dataclass(frozen=True, eq=False)
class PathTriple:
    l: Element
    n: Element
    m: Element

    def __add__(self, o):
        return PathTriple(self.l + o.l, self.n + o.n, self.m + o.m)

    def __sub__(self, o):
        return PathTriple(self.l - o.l, self.n - o.n, self.m - o.m)

    def __neg__(self):
        return PathTriple(-self.l, -self.n, -self.m)

    def scaled(self, c):
        return PathTriple(self.l.scaled(c), self.n.scaled(c), self.m.scaled(c))

    def __eq__(self, o):
        return isinstance(o, PathTriple) and (self.l, self.n, self.m) == (o.l, o.n, o.m)

    def __bool__(self):
        return bool(self.l or self.n or self.m)

    def degrees(self) -> set:
        return self.l.degrees() | self.n.degrees() | self.m.degrees()

    def d(self) -> "PathTriple":
        return PathTriple(self.l.d(), self.n.d(), self.m.d())

    def bracket(self, o: "PathTriple") -> "PathTriple":
        return PathTriple(self.l.bracket(o.l), self.n.bracket(o.n), self.m.bracket(o.m))

    def membership_defects(self, P: PairDiagram) -> List[str]:
        out = []
        if P.h(self.l) != self.m.eval_at(1):
            out.append("h(l) = m(1)")
        if P.g(self.n) != self.m.eval_at(0):
            out.append("g(n) = m(0)")
        return out

    def in_H(self, P: PairDiagram) -> bool:
        return not self.membership_defects(P)


def q1(v: PathTriple) -> PathTriple:
    return -v.d()


def q2(v: PathTriple, w: PathTriple) -> PathTriple:
    """(−1)^{|v|}[v, w], extended bilinearly over homogeneous parts of v."""
    total = None
    for deg, part in _homogeneous(v):
        term = part.bracket(w)
        if deg % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else v.bracket(w)


def _homogeneous(v: PathTriple):
    degs = sorted(v.degrees())
    if len(degs) <= 1:
        return [(degs[0] if degs else 0, v)]
    out = []
    for d in degs:
        out.append((d, PathTriple(*(_deg_part(x, d) for x in (v.l, v.n, v.m)))))
    return out


def _deg_part(x: Element, d: int) -> Element:
    return x._new({k: c for k, c in x.terms.items() if x.term_degree(k) == d})


def iota(P: PairDiagram, c: ConeTriple) -> PathTriple:
    m = P.g(c.n).form_multiply(ONE_MINUS_T) + P.h(c.l).form_multiply(T) + c.m.form_multiply(DT)
    return PathTriple(c.l, c.n, m)


def pi(P: PairDiagram, pt: PathTriple, check: bool = True) -> ConeTriple:
    if check and not pt.in_H(P):
        raise ValueError(f"not an element of H: {pt.membership_defects(P)}")
    return ConeTriple(pt.l, pt.n, pt.m.integrate(0, 1))


def homotopy_K(P: PairDiagram, pt: PathTriple, check: bool = True) -> PathTriple:
    if check and not pt.in_H(P):
        raise ValueError(f"not an element of H: {pt.membership_defects(P)}")
    whole = pt.m.integrate(0, 1).form_multiply(T)
    return PathTriple(pt.l.scaled(0), pt.n.scaled(0), whole - pt.m.antiderivative())


def random_path_triple(rng, P: PairDiagram, degree: int, tmax: int = 4, ring=None) -> PathTriple:
    """Random element of H of the given degree with t-degree ≤ tmax.

    A random m(t,dt) is corrected by (1−t)(g(n) − m(0)) + t(h(l) − m(1)) so
    that both endpoint conditions hold.
    """
    from .elements import Q, random_element
    ring = ring or Q
    labels = ring.labels or ("1",)
    l = random_element(rng, P.L, ring, degree, labels=labels, dt=0)
    n = random_element(rng, P.N, ring, degree, labels=labels, dt=0)
    m = random_element(rng, P.M, ring, degree, labels=labels, tmax=tmax, density=0.4)
    fix = (P.g(n) - m.eval_at(0)).form_multiply(ONE_MINUS_T) + (P.h(l) - m.eval_at(1)).form_multiply(T)
    return PathTriple(l, n, m + fix)


@dataclass
class ContractionReport:
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def contraction_check(P: PairDiagram, samples: Sequence[PathTriple],
                      cone_samples: Sequence[ConeTriple] = ()) -> ContractionReport:
    """π∘ι = id, id − ιπ = K q1 + q1 K, and q2(Im K ⊗ Im K) ⊆ ker π ∩ ker K."""
    rep = ContractionReport()
    for c in cone_samples:
        rep.checked += 1
        if pi(P, iota(P, c)) != c:
            rep.failures.append(f"π∘ι ≠ id on {c}")
    images = []
    for pt in samples:
        rep.checked += 1
        if not pt.in_H(P):
            rep.failures.append(f"sample not in H: {pt.membership_defects(P)}")
            continue
        lhs = pt - iota(P, pi(P, pt))
        rhs = homotopy_K(P, q1(pt)) + q1(homotopy_K(P, pt))
        if lhs != rhs:
            rep.failures.append("id − ιπ ≠ Kq1 + q1K")
        images.append(homotopy_K(P, pt))
    for a, b in zip(images, images[1:]):
        z = q2(a, b)
        if pi(P, z) or homotopy_K(P, z):
            rep.failures.append("q2(Im K ⊗ Im K) not in ker π ∩ ker K")
    return rep


# -- the quadruple DGLA and the barycentric embedding -----------------------------------

@dataclass(frozen=True, eq=False)
class KQuadruple:
    l: Element
    n: Element
    m1: Element   # path in t
    m2: Element   # path in s

    def __eq__(self, o):
        return isinstance(o, KQuadruple) and (self.l, self.n, self.m1, self.m2) == (o.l, o.n, o.m1, o.m2)

    def d(self):
        return KQuadruple(self.l.d(), self.n.d(), self.m1.d(), self.m2.d())

    def bracket(self, o):
        return KQuadruple(self.l.bracket(o.l), self.n.bracket(o.n), self.m1.bracket(o.m1), self.m2.bracket(o.m2))

    def membership_defects(self, P: PairDiagram) -> List[str]:
        out = []
        if P.h(self.l) != self.m2.eval_at(1):
            out.append("h(l) = m2(1)")
        if P.g(self.n) != self.m1.eval_at(0):
            out.append("g(n) = m1(0)")
        return out

    def matching(self) -> bool:
        return self.m1.eval_at(1) == self.m2.eval_at(0)


def barycentric_embed(P: PairDiagram, pt: PathTriple, check: bool = True) -> KQuadruple:
    """(l, n, m) ↦ (l, n, m(t/2), m((s+1)/2))."""
    if check and not pt.in_H(P):
        raise ValueError(f"not an element of H: {pt.membership_defects(P)}")
    half = Fraction(1, 2)
    return KQuadruple(pt.l, pt.n, pt.m.substitute({1: half}), pt.m.substitute({0: half, 1: half}))


# -- Maurer-Cartan paths ------------------------------------------------------------------

def mc_path_from_gauge(M, x: Element, gpoly: Element) -> Element:
    """e^{g(t)} * x in M[t,dt] for a constant MC element x and g(0) = 0."""
    if gpoly.eval_at(0):
        raise ValueError("the gauge family must vanish at t = 0")
    if any(k[2] for k in gpoly.terms):
        raise ValueError("the gauge family has no dt part")
    out = gauge_action(gpoly, x)
    if mc_residual(out):
        raise AssertionError("gauge path is not Maurer-Cartan")
    return out


def mc_path_decompose(M, xpath: Element) -> Element:
    """λ(t) with λ(0) = 0 and e^{λ(t)} * xpath(0) = xpath.

    Writing xpath = α(t) + dt·β(t), the dt-part of e^λ * x0 is
    −dt·Σ_{n≥0} ad_λ^n λ'/(n+1)!, so λ solves
    λ' = −β − Σ_{n≥1} ad_λ^n λ'/(n+1)!; iterating this gains one m_A-adic
    order per step.
    """
    if mc_residual(xpath):
        raise ValueError("path is not Maurer-Cartan")
    x0 = xpath.eval_at(0)
    beta = xpath.dt_part()
    lam = xpath.scaled(0)
    N = xpath.ring.nilpotency_order or 1
    for _ in range(N + 1):
        lp = lam.t_derivative()
        corr = -beta
        cur, n = lp, 0
        while True:
            n += 1
            cur = lam.bracket(cur)
            if not cur:
                break
            corr = corr - cur.scaled(Fraction(1, _fact(n + 1)))
        new = corr.form_multiply(DT).antiderivative()
        if new == lam:
            break
        lam = new
    if gauge_action(lam, x0) != xpath:
        raise AssertionError("decomposition does not reproduce the path")
    return lam


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def stabilizer_from_loop(M, xpath: Element, mu: Element) -> Element:
    """C ∈ M^{-1}⊗m_A with μ(1) = dC + [x(1), C], given e^μ * xpath = xpath and μ(0) = 0."""
    if mu.eval_at(0):
        raise ValueError("μ(0) must vanish")
    if gauge_action(mu, xpath) != xpath:
        raise ValueError("μ does not stabilize the path")
    if xpath.is_constant():
        C = mu.integrate(0, 1)
    else:
        lam = mc_path_decompose(M, xpath)
        q = bch(bch(-lam, mu), lam)
        C = exp_ad(lam.eval_at(1), q.integrate(0, 1))
    x1 = xpath.eval_at(1)
    if mu.eval_at(1) != C.d() + x1.bracket(C):
        raise AssertionError("extracted C does not satisfy μ(1) = dC + [x(1), C]")
    return C
