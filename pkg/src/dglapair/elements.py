"""Elements of Q[t,dt] ⊗ L ⊗ A for a DGLA L and an Artinian ring A.

One class covers plain tensored elements (t-degree 0, no dt) and polynomial
path elements.  A term is keyed by ``(basis name, power of t, dt flag, ring
label)``.  Forms sit to the left of the DGLA factor:

    [α⊗x, β⊗y] = (-1)^{|x||β|} αβ⊗[x,y]
    d(α⊗x)    = dα⊗x + (-1)^{|α|} α⊗dx

The ring is concentrated in degree 0 and contributes no signs.  Nilpotent
constructions (BCH, gauge action) require every ring label to lie in the
maximal ideal.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .artin import UNIT, ArtinAlgebra
from .dgla import DglaPresentation
from .graded import Vector, scalar

Key = Tuple[str, int, int, str]
Q = ArtinAlgebra((), {}, (), "Q")


class Element:
    __slots__ = ("ambient", "ring", "terms")

    def __init__(self, ambient: DglaPresentation, ring: ArtinAlgebra, terms: Mapping[Key, Fraction] = ()):
        self.ambient = ambient
        self.ring = ring
        clean = {}
        for k, v in dict(terms).items():
            if v:
                clean[k] = v if type(v) is Fraction else scalar(v)
        self.terms: Dict[Key, Fraction] = clean

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, ambient, ring=Q):
        return cls(ambient, ring, {})

    @classmethod
    def from_vector(cls, ambient, v: Mapping[str, Fraction], ring=Q, label=UNIT, tpow=0, dt=0):
        return cls(ambient, ring, {(n, tpow, dt, label): scalar(c) for n, c in v.items()})

    @classmethod
    def from_coeffs(cls, ambient, ring, coeffs: Mapping[Tuple[str, str], Fraction]):
        """From {(basis name, ring label): coefficient}."""
        names, labels = set(ambient.names), {UNIT, *ring.labels}
        for n, lab in coeffs:
            if n not in names:
                raise ValueError(f"unknown basis element {n!r}")
            if lab not in labels:
                raise ValueError(f"unknown ring label {lab!r}")
        return cls(ambient, ring, {(n, 0, 0, lab): scalar(c) for (n, lab), c in coeffs.items()})

    def _new(self, terms):
        return Element(self.ambient, self.ring, terms)

    def _check(self, other: "Element"):
        if self.ambient is not other.ambient and self.ambient != other.ambient:
            raise ValueError("elements live in different DGLAs")
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("elements have different coefficient rings")

    # -- inspection ---------------------------------------------------------
    def __repr__(self):
        return f"Element({self.format()})"

    def format(self, var="t") -> str:
        if not self.terms:
            return "0"
        parts = []
        for (n, i, e, lab), c in sorted(self.terms.items(), key=_term_order):
            form = []
            if i == 1:
                form.append(var)
            elif i > 1:
                form.append(f"{var}^{i}")
            if e:
                form.append(f"d{var}")
            if lab != UNIT:
                form.append(lab)
            parts.append(f"{c} {'*'.join(form + [n])}" if form else f"{c} {n}")
        return " + ".join(parts)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def term_degree(self, k: Key) -> int:
        return self.ambient.degree(k[0]) + k[2]

    def degrees(self) -> set:
        return {self.term_degree(k) for k in self.terms}

    def degree(self) -> Optional[int]:
        """The common degree, or None for zero; raises if inhomogeneous."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError(f"inhomogeneous element (degrees {sorted(ds)})")
        return ds.pop()

    def homogeneous_parts(self) -> Dict[int, "Element"]:
        parts: Dict[int, Dict[Key, Fraction]] = {}
        for k, v in self.terms.items():
            parts.setdefault(self.term_degree(k), {})[k] = v
        return {d: self._new(t) for d, t in sorted(parts.items())}

    def is_constant(self) -> bool:
        """No t and no dt."""
        return all(i == 0 and e == 0 for _, i, e, _ in self.terms)

    def t_degree(self) -> int:
        return max((i for _, i, _, _ in self.terms), default=0)

    def is_nilpotent(self) -> bool:
        return all(lab != UNIT for *_, lab in self.terms)

    def coefficients(self) -> Dict[Tuple[str, str], Fraction]:
        """{(name, label): coeff} for a constant element."""
        if not self.is_constant():
            raise ValueError("element depends on t")
        return {(n, lab): c for (n, _, _, lab), c in self.terms.items()}

    def component(self, label: str) -> Vector:
        """DGLA vector multiplying a ring label (constant elements)."""
        return {n: c for (n, i, e, lab), c in self.terms.items() if lab == label and i == 0 and e == 0}

    def labels(self) -> set:
        return {lab for *_, lab in self.terms}

    # -- linear structure ------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "Element":
        c = scalar(c)
        if c == 0:
            return self._new({})
        return self._new({k: c * v for k, v in self.terms.items()})

    def __mul__(self, c):
        return self.scaled(c)

    __rmul__ = __mul__

    def ring_multiply(self, r: Mapping[str, Fraction]) -> "Element":
        """Multiply by a ring element {label: coeff}."""
        out: Dict[Key, Fraction] = {}
        for (n, i, e, lab), v in self.terms.items():
            for rl, rc in r.items():
                for l2, s in self.ring.mult(lab, rl).items():
                    k = (n, i, e, l2)
                    out[k] = out.get(k, 0) + v * rc * s
        return self._new(out)

    def form_multiply(self, poly: Mapping[Tuple[int, int], Fraction]) -> "Element":
        """Left multiplication by a form Σ c·t^i dt^e given as {(i, e): c}."""
        out: Dict[Key, Fraction] = {}
        for (i2, e2), c in poly.items():
            for (n, i, e, lab), v in self.terms.items():
                if e and e2:
                    continue
                k = (n, i + i2, e + e2, lab)
                out[k] = out.get(k, 0) + c * v
        return self._new(out)

    def change_ring(self, ring: ArtinAlgebra, label_map=None) -> "Element":
        """Re-read coefficients in another ring; label_map sends labels to ring vectors."""
        if label_map is None:
            return Element(self.ambient, ring, self.terms)
        out: Dict[Key, Fraction] = {}
        for (n, i, e, lab), v in self.terms.items():
            img = {UNIT: Fraction(1)} if lab == UNIT else label_map[lab]
            for l2, c in img.items():
                k = (n, i, e, l2)
                out[k] = out.get(k, 0) + v * c
        return Element(self.ambient, ring, out)

    # -- DGLA structure -----------------------------------------------------------
    def bracket(self, other: "Element") -> "Element":
        self._check(other)
        tab = self.ambient.table
        deg = self.ambient.space.degree
        mult = self.ring.mult
        out: Dict[Key, Fraction] = {}
        for (a, i1, e1, l1), c1 in self.terms.items():
            da = deg(a)
            for (b, i2, e2, l2), c2 in other.terms.items():
                if e1 and e2:
                    continue
                br = tab.get((a, b))
                if not br:
                    continue
                prod = mult(l1, l2)
                if not prod:
                    continue
                s = c1 * c2
                if da % 2 and e2:
                    s = -s
                for lab, rc in prod.items():
                    for c, bc in br.items():
                        k = (c, i1 + i2, e1 + e2, lab)
                        out[k] = out.get(k, 0) + s * rc * bc
        return self._new(out)

    def d(self) -> "Element":
        cols = self.ambient.differential.columns
        out: Dict[Key, Fraction] = {}
        for (a, i, e, lab), c in self.terms.items():
            if e == 0 and i > 0:
                k = (a, i - 1, 1, lab)
                out[k] = out.get(k, 0) + i * c
            s = -c if e else c
            for b, dc in cols.get(a, {}).items():
                k = (b, i, e, lab)
                out[k] = out.get(k, 0) + s * dc
        return self._new(out)

    def map_by(self, f) -> "Element":
        """Apply a degree-0 DGLA morphism coefficientwise."""
        cols = f.map.columns
        out: Dict[Key, Fraction] = {}
        for (a, i, e, lab), c in self.terms.items():
            for b, fc in cols.get(a, {}).items():
                k = (b, i, e, lab)
                out[k] = out.get(k, 0) + c * fc
        return Element(f.target, self.ring, out)

    # -- forms ----------------------------------------------------------------------
    def eval_at(self, a) -> "Element":
        a = scalar(a)
        out: Dict[Key, Fraction] = {}
        for (n, i, e, lab), c in self.terms.items():
            if e:
                continue
            k = (n, 0, 0, lab)
            out[k] = out.get(k, 0) + c * a ** i
        return self._new(out)

    def integrate(self, a=0, b=1) -> "Element":
        a, b = scalar(a), scalar(b)
        out: Dict[Key, Fraction] = {}
        for (n, i, e, lab), c in self.terms.items():
            if not e:
                continue
            k = (n, 0, 0, lab)
            out[k] = out.get(k, 0) + c * (b ** (i + 1) - a ** (i + 1)) / (i + 1)
        return self._new(out)

    def antiderivative(self) -> "Element":
        """∫_0^t: sends t^i dt⊗n to t^{i+1}/(i+1)⊗n and kills dt-free terms."""
        out: Dict[Key, Fraction] = {}
        for (n, i, e, lab), c in self.terms.items():
            if e:
                out[(n, i + 1, 0, lab)] = c / (i + 1)
        return self._new(out)

    def dt_part(self) -> "Element":
        """β with self = α + dt⊗β, as an element without dt."""
        return self._new({(n, i, 0, lab): c for (n, i, e, lab), c in self.terms.items() if e})

    def t_part(self) -> "Element":
        return self._new({k: c for k, c in self.terms.items() if not k[2]})

    def t_derivative(self) -> "Element":
        """∂/∂t of the dt-free part."""
        return self._new({(n, i - 1, 0, lab): i * c for (n, i, e, lab), c in self.terms.items()
                          if not e and i > 0})

    def substitute(self, poly: Mapping[int, Fraction]) -> "Element":
        """Pull back along t ↦ φ(t) = Σ poly[i] t^i; dt picks up the factor φ'(t)."""
        phi = {i: scalar(c) for i, c in poly.items() if c}
        dphi = {i - 1: i * c for i, c in phi.items() if i > 0}
        powers = [{0: Fraction(1)}]

        def power(k):
            while len(powers) <= k:
                powers.append(_pmul(powers[-1], phi))
            return powers[k]

        out: Dict[Key, Fraction] = {}
        for (n, i, e, lab), c in self.terms.items():
            p = power(i)
            if e:
                p = _pmul(p, dphi)
            for j, pc in p.items():
                k = (n, j, e, lab)
                out[k] = out.get(k, 0) + c * pc
        return self._new(out)

    def filtration_part(self, labels: Iterable[str]) -> "Element":
        keep = set(labels)
        return self._new({k: c for k, c in self.terms.items() if k[3] in keep})


def _pmul(p, q):
    out: Dict[int, Fraction] = {}
    for i, a in p.items():
        for j, b in q.items():
            out[i + j] = out.get(i + j, 0) + a * b
    return {k: v for k, v in out.items() if v}


def _term_order(item):
    (n, i, e, lab), _ = item
    return (lab, i, e, n)


# -- nilpotent Lie calculus -----------------------------------------------------

def _require_nilpotent(*xs: Element):
    for x in xs:
        if not x.is_nilpotent():
            raise ValueError("series constructions need coefficients in the maximal ideal")


def ad_series(a: Element, x: Element, coeff) -> Element:
    """Σ_{n≥0} coeff(n) ad_a^n(x), stopping when the iterate vanishes."""
    _require_nilpotent(a)
    total = x.scaled(coeff(0))
    cur = x
    n = 0
    while True:
        n += 1
        cur = a.bracket(cur)
        if not cur:
            return total
        total = total + cur.scaled(coeff(n))


def exp_ad(a: Element, x: Element) -> Element:
    """e^{ad a}(x)."""
    return ad_series(a, x, lambda n: Fraction(1, factorial(n)))


def gauge_action(a: Element, x: Element) -> Element:
    """e^a * x = x + Σ_{n≥0} ad_a^n/(n+1)! ([a,x] − da)."""
    _check_degrees(a, 0, "gauge parameter")
    _check_degrees(x, 1, "gauge target")
    _require_nilpotent(a)
    if not a:
        return x
    return x + ad_series(a, a.bracket(x) - a.d(), lambda n: Fraction(1, factorial(n + 1)))


def _check_degrees(x: Element, deg: int, what: str):
    ds = x.degrees()
    if ds and ds != {deg}:
        raise ValueError(f"{what} must have degree {deg}, got {sorted(ds)}")


def mc_residual(x: Element) -> Element:
    return x.d() + x.bracket(x).scaled(Fraction(1, 2))


def is_mc(x: Element) -> bool:
    _check_degrees(x, 1, "Maurer-Cartan candidate")
    return not mc_residual(x)


def stabilizer_element(x: Element, hh: Element) -> Element:
    """T = d(hh) + [x, hh]."""
    _check_degrees(hh, -1, "stabilizer generator")
    return hh.d() + x.bracket(hh)


# BCH via log(e^X e^Y) in the free associative algebra, then the
# Dynkin-Specht-Wever projection: a Lie polynomial P of word length k equals
# (1/k) Σ_w coeff_w · [w_1,[w_2,…,w_k]].

@lru_cache(maxsize=None)
def _log_exp_words(maxlen: int) -> Dict[Tuple[int, ...], Fraction]:
    """Coefficients of log(e^X e^Y) on words in {0: X, 1: Y} up to maxlen."""
    # e^X e^Y - 1 as a word series
    u: Dict[Tuple[int, ...], Fraction] = {}
    for r in range(maxlen + 1):
        for s in range(maxlen + 1 - r):
            if r + s == 0:
                continue
            u[(0,) * r + (1,) * s] = Fraction(1, factorial(r) * factorial(s))

    def mul(p, q):
        out: Dict[Tuple[int, ...], Fraction] = {}
        for w1, a in p.items():
            for w2, b in q.items():
                if len(w1) + len(w2) <= maxlen:
                    w = w1 + w2
                    out[w] = out.get(w, 0) + a * b
        return out

    log: Dict[Tuple[int, ...], Fraction] = {}
    power = dict(u)
    for n in range(1, maxlen + 1):
        c = Fraction((-1) ** (n - 1), n)
        for w, v in power.items():
            log[w] = log.get(w, 0) + c * v
        power = mul(power, u)
    return {w: v / len(w) for w, v in log.items() if v}


def bch(p: Element, q: Element) -> Element:
    """p•q with exp(p•q) = exp(p)exp(q)."""
    p._check(q)
    _check_degrees(p, 0, "group logarithm")
    _check_degrees(q, 0, "group logarithm")
    _require_nilpotent(p, q)
    if not p:
        return q
    if not q:
        return p
    N = p.ring.nilpotency_order or 1
    coeffs = _log_exp_words(max(N - 1, 1))
    gens = (p, q)
    cache: Dict[Tuple[int, ...], Element] = {}

    def nested(w):
        if w in cache:
            return cache[w]
        if len(w) == 1:
            val = gens[w[0]]
        else:
            inner = nested(w[1:])
            val = gens[w[0]].bracket(inner) if inner else inner
        cache[w] = val
        return val

    total = p.scaled(0)
    for w in sorted(coeffs, key=lambda w: (len(w), w)):
        v = nested(w)
        if v:
            total = total + v.scaled(coeffs[w])
    return total


def bch_many(*xs: Element) -> Element:
    out = xs[0]
    for x in xs[1:]:
        out = bch(out, x)
    return out


def random_element(rng, ambient: DglaPresentation, ring: ArtinAlgebra, degree: int,
                   labels=None, tmax=0, dt=None, density=0.6, coeff_range=3) -> Element:
    """Random element with small integer/half-integer coefficients.

    With ``tmax > 0`` the element is a path element; ``dt`` restricts the dt
    flag (None: both, respecting the total degree).
    """
    labels = list(ring.labels) if labels is None else list(labels)
    terms = {}
    for e in (0, 1):
        if dt is not None and e != dt:
            continue
        names = ambient.space.piece(degree - e)
        for n in names:
            for lab in labels:
                for i in range(tmax + 1):
                    if rng.random() < density:
                        c = Fraction(rng.randint(-coeff_range, coeff_range), rng.choice((1, 1, 2)))
                        if c:
                            terms[(n, i, e, lab)] = c
    return Element(ambient, ring, terms)
