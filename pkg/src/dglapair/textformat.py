"""Line-oriented text format for pair diagrams, coefficient rings and witnesses.

    # comment
    ring: vars=eps; order=3; extension=eps^2
    dgla L
    basis: u:1, v:2
    d: u -> 0
    bracket: [u,u] -> 1 v
    morphism h: L -> M
    map: u -> 1 u'
    pair obstructed-pair: h, g
    expect: cone_dims=1:1, 2:1; h_injective=no
    witness w0
    x: u*eps -> 1
    equiv e: w0 -> w1
    a: z*eps -> 1/2
    path H: var=s
    m: z*eps*s^2*ds -> 3

Sections may come in any order; names are resolved after the whole file is
read.  `serialize` writes the canonical form, which `parse` reads back to an
equal document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from .artin import UNIT, ArtinAlgebra, SmallExtension, make_artin, make_small_extension
from .cone import EquivWitness, PairDiagram, PairMCWitness
from .dgla import DglaMorphism, DglaPresentation
from .elements import Element, Q
from .graded import GradedMap, GradedSpace, parity_sign
from .homotopy import HomotopyPath

NAME = r"[A-Za-z_][A-Za-z0-9_.']*"
_NAME_RE = re.compile(NAME + r"$")
_SECTION_RE = re.compile(r"(dgla|morphism|pair|witness|equiv|path)\b\s*(.*)$")
_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?$")

SECTION_KEYS = {
    "dgla": ("basis", "d", "bracket"),
    "morphism": ("map",),
    "pair": (),
    "witness": ("x", "y", "p"),
    "equiv": ("a", "b", "c"),
    "path": ("l", "n", "m"),
}
RING_KEYS = ("vars", "order", "relations", "extension")
EXPECT_KEYS = ("cone_dims", "h_injective", "m_nonnegative", "tangent_dim", "obstructed")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)
        self.message = message
        self.line = line
        self.col = col


@dataclass
class RingSpec:
    vars: Tuple[str, ...]
    order: int
    relations: Tuple[str, ...] = ()
    extension: Tuple[str, ...] = ()

    @cached_property
    def algebra(self) -> ArtinAlgebra:
        return make_artin(self.vars, self.order, self.relations)

    @cached_property
    def small_extension(self) -> Optional[SmallExtension]:
        if not self.extension:
            return None
        return make_small_extension(self.algebra, list(self.extension))


@dataclass
class DiagramDocument:
    dglas: Dict[str, DglaPresentation] = field(default_factory=dict)
    morphisms: Dict[str, DglaMorphism] = field(default_factory=dict)
    pair: Optional[Tuple[str, str, str]] = None          # (name, h, g)
    ring: Optional[RingSpec] = None
    expect: Dict[str, str] = field(default_factory=dict)
    witnesses: Dict[str, PairMCWitness] = field(default_factory=dict)
    equivs: Dict[str, Tuple[str, str, EquivWitness]] = field(default_factory=dict)
    paths: Dict[str, Tuple[str, HomotopyPath]] = field(default_factory=dict)

    @cached_property
    def diagram(self) -> PairDiagram:
        if self.pair is None:
            raise ValueError("the document has no pair section")
        name, h, g = self.pair
        hm, gm = self.morphisms[h], self.morphisms[g]
        return PairDiagram(hm.source, hm.target, gm.source, hm, gm, name)

    @property
    def algebra(self) -> ArtinAlgebra:
        return self.ring.algebra if self.ring else Q

    def __eq__(self, other):
        if not isinstance(other, DiagramDocument):
            return NotImplemented
        return (self.dglas == other.dglas and self.morphisms == other.morphisms
                and self.pair == other.pair and self.ring == other.ring and self.expect == other.expect
                and _witness_data(self) == _witness_data(other))


def _witness_data(doc: DiagramDocument):
    w = {k: (v.x.terms, v.y.terms, v.p.terms) for k, v in doc.witnesses.items()}
    e = {k: (s, t, v.a.terms, v.b.terms, v.c.terms) for k, (s, t, v) in doc.equivs.items()}
    p = {k: (var, v.l.terms, v.n.terms, v.m.terms) for k, (var, v) in doc.paths.items()}
    return w, e, p


# -- raw structure -----------------------------------------------------------------------------

@dataclass
class _Line:
    no: int
    key: str
    value: str
    col: int          # column of the value


@dataclass
class _Section:
    kind: str
    header: str
    no: int
    col: int
    lines: List[_Line] = field(default_factory=list)


def _strip_comment(text: str) -> str:
    i = text.find("#")
    return text if i < 0 else text[:i]


def _split_raw(text: str):
    sections: List[_Section] = []
    ring = expect = None
    cur: Optional[_Section] = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _SECTION_RE.match(body)
        if m and ":" not in body.split()[0]:
            cur = _Section(m.group(1), m.group(2).strip(), no, indent + m.start(2) + 1)
            sections.append(cur)
            continue
        if ":" not in body:
            raise ParseError(f"expected 'key: value' or a section header, got {body!r}", no, indent + 1)
        key, value = body.split(":", 1)
        key = key.strip()
        vcol = indent + len(body.split(":", 1)[0]) + 2 + (len(value) - len(value.lstrip()))
        value = value.strip()
        if key == "ring":
            if ring is not None:
                raise ParseError("duplicate ring line", no, indent + 1)
            ring = _Line(no, key, value, vcol)
            continue
        if key == "expect":
            if expect is not None:
                raise ParseError("duplicate expect line", no, indent + 1)
            expect = _Line(no, key, value, vcol)
            continue
        if cur is None:
            raise ParseError(f"key {key!r} outside of any section", no, indent + 1)
        if key not in SECTION_KEYS[cur.kind]:
            allowed = ", ".join(SECTION_KEYS[cur.kind]) or "none"
            raise ParseError(f"unknown key {key!r} in {cur.kind} section (allowed: {allowed})", no, indent + 1)
        cur.lines.append(_Line(no, key, value, vcol))
    return sections, ring, expect


# -- small parsers ------------------------------------------------------------------------------

def _rational(tok: str, no: int, col: int) -> Fraction:
    if not _RATIONAL_RE.match(tok):
        raise ParseError(f"expected a rational literal p/q or an integer, got {tok!r}", no, col)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {tok!r}", no, col)


def _name(tok: str, no: int, col: int, what="name") -> str:
    if not _NAME_RE.match(tok):
        raise ParseError(f"invalid {what} {tok!r}", no, col)
    return tok


_VTERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*(" + NAME + r")\s*")


def _vector(text: str, no: int, col: int, space: GradedSpace, what: str) -> Dict[str, Fraction]:
    """``3/2 e2 + -1 e3``, ``e2 - e3`` or ``0``."""
    if text.strip() == "0":
        return {}
    out: Dict[str, Fraction] = {}
    pos = 0
    s = text.replace("+ -", "- ").replace("+-", "-")
    # keep column information relative to the original text
    offset_map = _offsets(text, s)
    first = True
    while pos < len(s):
        m = _VTERM.match(s, pos)
        if not m or (not first and not m.group(1)):
            raise ParseError(f"cannot read {what} term at {s[pos:].strip()!r}", no, col + offset_map(pos))
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if coef.denominator == 0:
            raise ParseError("zero denominator", no, col + offset_map(m.start(2)))
        name = m.group(3)
        if name not in space:
            raise ParseError(f"unknown basis element {name!r} in {what}", no, col + offset_map(m.start(3)))
        out[name] = out.get(name, 0) + sign * coef
        pos = m.end()
        first = False
    return {k: v for k, v in out.items() if v}


def _offsets(orig: str, new: str):
    if orig == new:
        return lambda p: p
    return lambda p: min(p, len(orig))


def _parse_header_arrow(header: str, no: int, col: int, what: str) -> Tuple[str, str, str]:
    m = re.match(r"(" + NAME + r")\s*:\s*(" + NAME + r")\s*->\s*(" + NAME + r")$", header)
    if not m:
        raise ParseError(f"expected '{what} <name>: <source> -> <target>'", no, col)
    return m.group(1), m.group(2), m.group(3)


def _keyvals(text: str, no: int, col: int, allowed) -> Dict[str, Tuple[str, int]]:
    out = {}
    pos = 0
    for part in text.split(";"):
        pcol = col + pos + (len(part) - len(part.lstrip()))
        pos += len(part) + 1
        if not part.strip():
            continue
        if "=" not in part:
            raise ParseError(f"expected key=value, got {part.strip()!r}", no, pcol)
        k, v = part.split("=", 1)
        k = k.strip()
        if k not in allowed:
            raise ParseError(f"unknown key {k!r} (allowed: {', '.join(allowed)})", no, pcol)
        if k in out:
            raise ParseError(f"duplicate key {k!r}", no, pcol)
        out[k] = (v.strip(), pcol)
    return out


# -- the document parser ------------------------------------------------------------------------

def parse(text: str) -> DiagramDocument:
    sections, ring_line, expect_line = _split_raw(text)
    doc = DiagramDocument()
    seen = {}
    for s in sections:
        nm = s.header.split(":")[0].strip()
        key = (s.kind if s.kind in ("dgla", "morphism") else "w", nm)
        if key in seen and s.kind != "pair":
            raise ParseError(f"duplicate {s.kind} name {nm!r}", s.no, s.col)
        seen[key] = s
    if ring_line:
        doc.ring = _parse_ring(ring_line)
    for s in sections:
        if s.kind == "dgla":
            doc.dglas[_name(s.header, s.no, s.col, "dgla name")] = _parse_dgla(s)
    for s in sections:
        if s.kind == "morphism":
            name, src, tgt = _parse_header_arrow(s.header, s.no, s.col, "morphism")
            for ref in (src, tgt):
                if ref not in doc.dglas:
                    raise ParseError(f"unresolved dgla {ref!r} in morphism {name}", s.no, s.col)
            doc.morphisms[name] = _parse_morphism(s, name, doc.dglas[src], doc.dglas[tgt])
    pairs = [s for s in sections if s.kind == "pair"]
    if len(pairs) > 1:
        raise ParseError("more than one pair section", pairs[1].no, pairs[1].col)
    if pairs:
        s = pairs[0]
        if s.lines:
            raise ParseError("pair sections take no keys", s.lines[0].no, 1)
        m = re.match(r"(\S+)\s*:\s*(" + NAME + r")\s*,\s*(" + NAME + r")$", s.header)
        if not m:
            raise ParseError("expected 'pair <name>: <h>, <g>'", s.no, s.col)
        name, h, g = m.groups()
        for ref in (h, g):
            if ref not in doc.morphisms:
                raise ParseError(f"unresolved morphism {ref!r} in pair {name}", s.no, s.col)
        if doc.morphisms[h].target != doc.morphisms[g].target:
            raise ParseError(f"morphisms {h} and {g} have different targets", s.no, s.col)
        doc.pair = (name, h, g)
    if expect_line:
        doc.expect = {k: v for k, (v, _) in _keyvals(expect_line.value, expect_line.no, expect_line.col,
                                                     EXPECT_KEYS).items()}
    needs_pair = [s for s in sections if s.kind in ("witness", "equiv", "path")]
    if needs_pair and doc.pair is None:
        raise ParseError(f"{needs_pair[0].kind} section without a pair section", needs_pair[0].no, 1)
    if needs_pair and doc.ring is None:
        raise ParseError(f"{needs_pair[0].kind} section without a ring line", needs_pair[0].no, 1)
    for s in sections:
        if s.kind == "witness":
            nm = _name(s.header, s.no, s.col, "witness name")
            doc.witnesses[nm] = _parse_witness(s, doc)
    for s in sections:
        if s.kind == "equiv":
            name, w1, w2 = _parse_header_arrow(s.header, s.no, s.col, "equiv")
            for ref in (w1, w2):
                if ref not in doc.witnesses:
                    raise ParseError(f"unresolved witness {ref!r} in equiv {name}", s.no, s.col)
            doc.equivs[name] = (w1, w2, _parse_equiv(s, doc))
    for s in sections:
        if s.kind == "path":
            m = re.match(r"(" + NAME + r")\s*(?::\s*var\s*=\s*(" + NAME + r"))?$", s.header)
            if not m:
                raise ParseError("expected 'path <name>' or 'path <name>: var=<v>'", s.no, s.col)
            var = m.group(2) or "s"
            if var in doc.ring.vars or "d" + var in doc.ring.vars:
                raise ParseError(f"path variable {var!r} clashes with a ring variable", s.no, s.col)
            doc.paths[m.group(1)] = (var, _parse_path(s, doc, var))
    return doc


def _parse_ring(line: _Line) -> RingSpec:
    kv = _keyvals(line.value, line.no, line.col, RING_KEYS)
    if "vars" not in kv or "order" not in kv:
        raise ParseError("ring needs vars=... and order=...", line.no, line.col)
    v, c = kv["vars"]
    gens = tuple(_name(x.strip(), line.no, c, "ring variable") for x in v.split(","))
    o, c = kv["order"]
    if not re.match(r"\d+$", o):
        raise ParseError(f"ring order must be a positive integer, got {o!r}", line.no, c)
    rels = tuple(x.strip() for x in kv.get("relations", ("", 0))[0].split(",") if x.strip())
    ext = tuple(x.strip() for x in kv.get("extension", ("", 0))[0].split(",") if x.strip())
    spec = RingSpec(gens, int(o), rels, ext)
    try:
        spec.algebra
        spec.small_extension
    except ValueError as exc:
        raise ParseError(f"invalid ring: {exc}", line.no, line.col)
    return spec


def _parse_dgla(s: _Section) -> DglaPresentation:
    basis_lines = [ln for ln in s.lines if ln.key == "basis"]
    if len(basis_lines) != 1:
        raise ParseError(f"dgla {s.header} needs exactly one basis line", s.no, s.col)
    bl = basis_lines[0]
    basis = []
    if bl.value:
        for item in bl.value.split(","):
            m = re.match(r"\s*(" + NAME + r")\s*:\s*(-?\d+)\s*$", item)
            if not m:
                raise ParseError(f"expected name:degree in basis, got {item.strip()!r}", bl.no, bl.col)
            basis.append((m.group(1), int(m.group(2))))
    try:
        V = GradedSpace(tuple(basis))
    except ValueError as exc:
        raise ParseError(str(exc), bl.no, bl.col)
    dcols: Dict[str, Dict[str, Fraction]] = {}
    struct: Dict[Tuple[str, str], Dict[str, Fraction]] = {}
    for ln in s.lines:
        if ln.key == "d":
            src, rhs = _arrow(ln)
            src = _name(src, ln.no, ln.col)
            if src not in V:
                raise ParseError(f"unknown basis element {src!r} in d", ln.no, ln.col)
            if src in dcols:
                raise ParseError(f"duplicate d entry for {src}", ln.no, ln.col)
            vec = _vector(rhs, ln.no, ln.col, V, f"d {src}")
            for t in vec:
                if V.degree(t) != V.degree(src) + 1:
                    raise ParseError(f"d: {src} -> {t} does not raise the degree by one", ln.no, ln.col)
            dcols[src] = vec
        elif ln.key == "bracket":
            lhs, rhs = _arrow(ln)
            m = re.match(r"\[\s*(" + NAME + r")\s*,\s*(" + NAME + r")\s*\]$", lhs)
            if not m:
                raise ParseError(f"expected [a,b] on the left of a bracket entry, got {lhs!r}", ln.no, ln.col)
            a, b = m.groups()
            for x in (a, b):
                if x not in V:
                    raise ParseError(f"unknown basis element {x!r} in bracket [{a},{b}]", ln.no, ln.col)
            vec = _vector(rhs, ln.no, ln.col, V, f"bracket [{a},{b}]")
            for t in vec:
                if V.degree(t) != V.degree(a) + V.degree(b):
                    raise ParseError(f"bracket [{a},{b}] -> {t}: degree {V.degree(t)} is not "
                                     f"{V.degree(a)} + {V.degree(b)}", ln.no, ln.col)
            if V.index(a) > V.index(b):
                sgn = -parity_sign(V.degree(a) * V.degree(b))
                vec = {k: sgn * v for k, v in vec.items()}
                a, b = b, a
            if (a, b) in struct:
                raise ParseError(f"duplicate bracket entry [{a},{b}]", ln.no, ln.col)
            struct[(a, b)] = vec
    return DglaPresentation(V, GradedMap.from_columns(V, V, 1, dcols), struct, s.header)


def _arrow(ln: _Line) -> Tuple[str, str]:
    if "->" not in ln.value:
        raise ParseError(f"expected '<lhs> -> <rhs>' in {ln.key} line", ln.no, ln.col)
    lhs, rhs = ln.value.split("->", 1)
    return lhs.strip(), rhs.strip()


def _parse_morphism(s: _Section, name, src: DglaPresentation, tgt: DglaPresentation) -> DglaMorphism:
    cols = {}
    for ln in s.lines:
        a, rhs = _arrow(ln)
        if a not in src.space:
            raise ParseError(f"unknown basis element {a!r} of {src.name} in morphism {name}", ln.no, ln.col)
        if a in cols:
            raise ParseError(f"duplicate map entry for {a}", ln.no, ln.col)
        vec = _vector(rhs, ln.no, ln.col, tgt.space, f"map {a}")
        for t in vec:
            if tgt.space.degree(t) != src.space.degree(a):
                raise ParseError(f"map: {a} -> {t} changes the degree", ln.no, ln.col)
        cols[a] = vec
    return DglaMorphism(src, tgt, GradedMap.from_columns(src.space, tgt.space, 0, cols), name)


def _term_key(lhs: str, ln: _Line, ambient: DglaPresentation, ring: ArtinAlgebra,
              var: Optional[str]) -> Tuple[str, int, int, Dict[str, Fraction]]:
    """``name*mono[*var^k][*dvar]`` → (name, t-power, dt, ring vector)."""
    factors = [f.strip() for f in lhs.split("*")]
    name = factors[0]
    if name not in ambient.space:
        raise ParseError(f"unknown basis element {name!r} of {ambient.name}", ln.no, ln.col)
    tpow, dt, mono = 0, 0, []
    for f in factors[1:]:
        base, _, exp = f.partition("^")
        if var is not None and base == var:
            tpow += int(exp) if exp else 1
        elif var is not None and f == "d" + var:
            dt += 1
        else:
            mono.append(f)
    if dt > 1:
        raise ParseError(f"d{var} appears twice", ln.no, ln.col)
    mono_text = "*".join(mono) if mono else UNIT
    try:
        if mono_text == UNIT:
            ringvec = {UNIT: Fraction(1)}
        else:
            ringvec = ring.parse_element(mono_text)
    except ValueError as exc:
        raise ParseError(f"cannot read ring monomial {mono_text!r}: {exc}", ln.no, ln.col)
    return name, tpow, dt, ringvec


def _element(lines: List[_Line], key: str, ambient: DglaPresentation, ring: ArtinAlgebra, degree: int,
             var: Optional[str] = None) -> Element:
    terms: Dict[Tuple[str, int, int, str], Fraction] = {}
    for ln in lines:
        if ln.key != key:
            continue
        lhs, rhs = _arrow(ln)
        c = _rational(rhs, ln.no, ln.col + ln.value.index("->") + 3)
        name, tpow, dt, ringvec = _term_key(lhs, ln, ambient, ring, var)
        if ambient.space.degree(name) + dt != degree:
            raise ParseError(f"{key}: {lhs} has degree {ambient.space.degree(name) + dt}, expected {degree}",
                             ln.no, ln.col)
        for lab, x in ringvec.items():
            k = (name, tpow, dt, lab)
            terms[k] = terms.get(k, 0) + c * x
    return Element(ambient, ring, terms)


def _parse_witness(s: _Section, doc: DiagramDocument) -> PairMCWitness:
    P, A = doc.diagram, doc.algebra
    return PairMCWitness(_element(s.lines, "x", P.L, A, 1), _element(s.lines, "y", P.N, A, 1),
                         _element(s.lines, "p", P.M, A, 0))


def _parse_equiv(s: _Section, doc: DiagramDocument) -> EquivWitness:
    P, A = doc.diagram, doc.algebra
    return EquivWitness(_element(s.lines, "a", P.L, A, 0), _element(s.lines, "b", P.N, A, 0),
                        _element(s.lines, "c", P.M, A, -1))


def _parse_path(s: _Section, doc: DiagramDocument, var: str) -> HomotopyPath:
    P, A = doc.diagram, doc.algebra
    return HomotopyPath(_element(s.lines, "l", P.L, A, 1, var), _element(s.lines, "n", P.N, A, 1, var),
                        _element(s.lines, "m", P.M, A, 0, var))


# -- serialization ------------------------------------------------------------------------------

def _fmt_vector(v: Dict[str, Fraction], space: GradedSpace) -> str:
    items = sorted(((k, c) for k, c in v.items() if c), key=lambda kv: space.index(kv[0]))
    if not items:
        return "0"
    return " + ".join(f"{c} {k}" for k, c in items)


def _check_name(n: str):
    if not _NAME_RE.match(n):
        raise ValueError(f"name {n!r} cannot be written in the text format")


def serialize_dgla(L: DglaPresentation) -> List[str]:
    V = L.space
    for n in V.names:
        _check_name(n)
    out = [f"dgla {L.name}", "basis: " + ", ".join(f"{n}:{d}" for n, d in V.basis)]
    for n in V.names:
        col = L.differential.column(n)
        if col:
            out.append(f"d: {n} -> {_fmt_vector(col, V)}")
    for (a, b) in sorted(L.structure, key=lambda ab: (V.index(ab[0]), V.index(ab[1]))):
        out.append(f"bracket: [{a},{b}] -> {_fmt_vector(L.structure[(a, b)], V)}")
    return out


def serialize_morphism(f: DglaMorphism) -> List[str]:
    out = [f"morphism {f.name}: {f.source.name} -> {f.target.name}"]
    for n in f.source.names:
        col = f.map.column(n)
        if col:
            out.append(f"map: {n} -> {_fmt_vector(col, f.target.space)}")
    return out


def _label_order(ring: ArtinAlgebra, lab: str) -> int:
    return -1 if lab == UNIT else ring.index(lab)


def _fmt_terms(key: str, el: Element, var: Optional[str] = None) -> List[str]:
    sp = el.ambient.space
    out = []
    for (n, i, e, lab), c in sorted(el.terms.items(),
                                    key=lambda kv: (sp.index(kv[0][0]), _label_order(el.ring, kv[0][3]),
                                                    kv[0][1], kv[0][2])):
        parts = [n]
        if lab != UNIT:
            parts.append(lab)
        if i:
            parts.append(var if i == 1 else f"{var}^{i}")
        if e:
            parts.append(f"d{var}")
        out.append(f"{key}: {'*'.join(parts)} -> {c}")
    return out


def serialize(doc: DiagramDocument) -> str:
    lines: List[str] = []
    if doc.ring:
        r = doc.ring
        parts = [f"vars={', '.join(r.vars)}", f"order={r.order}"]
        if r.relations:
            parts.append(f"relations={', '.join(r.relations)}")
        if r.extension:
            parts.append(f"extension={', '.join(r.extension)}")
        lines += [f"ring: {'; '.join(parts)}", ""]
    for L in doc.dglas.values():
        lines += serialize_dgla(L) + [""]
    for f in doc.morphisms.values():
        lines += serialize_morphism(f) + [""]
    if doc.pair:
        name, h, g = doc.pair
        lines += [f"pair {name}: {h}, {g}", ""]
    if doc.expect:
        lines += ["expect: " + "; ".join(f"{k}={doc.expect[k]}" for k in EXPECT_KEYS if k in doc.expect), ""]
    for name, w in doc.witnesses.items():
        lines += [f"witness {name}"] + _fmt_terms("x", w.x) + _fmt_terms("y", w.y) + _fmt_terms("p", w.p) + [""]
    for name, (a, b, ew) in doc.equivs.items():
        lines += ([f"equiv {name}: {a} -> {b}"] + _fmt_terms("a", ew.a) + _fmt_terms("b", ew.b)
                  + _fmt_terms("c", ew.c) + [""])
    for name, (var, path) in doc.paths.items():
        head = f"path {name}" if var == "s" else f"path {name}: var={var}"
        lines += ([head] + _fmt_terms("l", path.l, var) + _fmt_terms("n", path.n, var)
                  + _fmt_terms("m", path.m, var) + [""])
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"


def document_for(P: PairDiagram, ring: Optional[RingSpec] = None) -> DiagramDocument:
    """A document holding just the diagram (witnesses can be added afterwards)."""
    doc = DiagramDocument()
    for L in (P.L, P.M, P.N):
        if L.name in doc.dglas and doc.dglas[L.name] != L:
            raise ValueError(f"two different DGLAs are both named {L.name!r}")
        doc.dglas[L.name] = L
    for f in (P.h, P.g):
        if f.name in doc.morphisms and doc.morphisms[f.name] != f:
            raise ValueError(f"two different morphisms are both named {f.name!r}")
        doc.morphisms[f.name] = f
    doc.pair = (P.name, P.h.name, P.g.name)
    doc.ring = ring
    return doc
