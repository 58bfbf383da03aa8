"""Graded vector spaces with named bases, graded linear maps and Koszul signs.

Scalars are `fractions.Fraction` throughout; vectors are sparse dicts mapping
basis names to nonzero Fractions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .linalg import Matrix

Vector = Dict[str, Fraction]


def scalar(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` literal as an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point scalars are not accepted")
    return Fraction(x)


def parity_sign(k: int) -> int:
    """(−1)^k as an int, for any integer k."""
    return -1 if k % 2 else 1


def vec_add(*vs: Mapping[str, Fraction], coeffs: Sequence | None = None) -> Vector:
    out: Vector = {}
    coeffs = coeffs or [1] * len(vs)
    for c, v in zip(coeffs, vs):
        for k, x in v.items():
            y = out.get(k, 0) + c * x
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out


def vec_scale(v: Mapping[str, Fraction], c) -> Vector:
    if c == 0:
        return {}
    return {k: c * x for k, x in v.items()}


@dataclass(frozen=True)
class GradedSpace:
    basis: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple((str(n), int(d)) for n, d in self.basis))
        names = [n for n, _ in self.basis]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate basis names: {dup}")

    @cached_property
    def names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.basis)

    @cached_property
    def _deg(self) -> Dict[str, int]:
        return dict(self.basis)

    @cached_property
    def _idx(self) -> Dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    def degree(self, name: str) -> int:
        return self._deg[name]

    def index(self, name: str) -> int:
        return self._idx[name]

    def __contains__(self, name) -> bool:
        return name in self._deg

    def __len__(self) -> int:
        return len(self.basis)

    def piece(self, i: int) -> List[str]:
        return [n for n, d in self.basis if d == i]

    def degrees(self) -> List[int]:
        return sorted({d for _, d in self.basis})

    def dim(self, i: int) -> int:
        return len(self.piece(i))


def shift(V: GradedSpace, k: int) -> GradedSpace:
    """V[k]: same names, every degree lowered by k."""
    return GradedSpace(tuple((n, d - k) for n, d in V.basis))


@dataclass(frozen=True)
class GradedMap:
    source: GradedSpace
    target: GradedSpace
    degree: int
    entries: Mapping[Tuple[str, str], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (t, s), c in dict(self.entries).items():
            c = scalar(c)
            if c == 0:
                continue
            if s not in self.source or t not in self.target:
                raise ValueError(f"map entry ({t}, {s}) refers to unknown basis element")
            if self.target.degree(t) - self.source.degree(s) != self.degree:
                raise ValueError(
                    f"map entry {s} -> {t} has degree "
                    f"{self.target.degree(t) - self.source.degree(s)}, expected {self.degree}")
            clean[(t, s)] = c
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_columns(cls, source, target, degree, columns: Mapping[str, Mapping[str, Fraction]]):
        return cls(source, target, degree,
                   {(t, s): c for s, col in columns.items() for t, c in col.items()})

    @classmethod
    def identity(cls, V: GradedSpace) -> "GradedMap":
        return cls(V, V, 0, {(n, n): Fraction(1) for n in V.names})

    @classmethod
    def zero(cls, source, target, degree=0) -> "GradedMap":
        return cls(source, target, degree, {})

    @cached_property
    def columns(self) -> Dict[str, Vector]:
        cols: Dict[str, Vector] = {}
        for (t, s), c in self.entries.items():
            cols.setdefault(s, {})[t] = c
        return cols

    def column(self, s: str) -> Vector:
        return self.columns.get(s, {})

    def apply(self, v: Mapping[str, Fraction]) -> Vector:
        out: Vector = {}
        for s, x in v.items():
            for t, c in self.column(s).items():
                y = out.get(t, 0) + c * x
                if y:
                    out[t] = y
                else:
                    out.pop(t, None)
        return out

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self ∘ other."""
        if other.target != self.source:
            raise ValueError("incompatible composition")
        cols = {s: self.apply(other.column(s)) for s in other.source.names}
        return GradedMap.from_columns(other.source, self.target, self.degree + other.degree, cols)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ValueError("incompatible sum")
        e = dict(self.entries)
        for k, c in other.entries.items():
            e[k] = e.get(k, 0) + c
        return GradedMap(self.source, self.target, self.degree, e)

    def scaled(self, c) -> "GradedMap":
        c = scalar(c)
        return GradedMap(self.source, self.target, self.degree,
                         {k: c * x for k, x in self.entries.items()})

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def matrix(self, i: int) -> Matrix:
        """Dense block from the degree-i source piece to the degree-(i+deg) target piece."""
        rows = self.target.piece(i + self.degree)
        cols = self.source.piece(i)
        return [[self.entries.get((t, s), Fraction(0)) for s in cols] for t in rows]

    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} stored by its images; ``images[k-1] = σ(k)``."""

    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """(σ τ)(k) = σ(τ(k))."""
        return Permutation(tuple(self(other(k)) for k in range(1, len(other) + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def apply(self, items: Sequence) -> list:
        """Reorder so position k holds items[σ(k)]."""
        return [items[i - 1] for i in self.images]


def koszul_sign_0(order: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign for placing ``degrees[order[0]], degrees[order[1]], ...`` (0-based)."""
    odd = [degrees[i] % 2 for i in order]
    sign = 1
    n = len(order)
    for a in range(n):
        if not odd[a]:
            continue
        oa = order[a]
        for b in range(a + 1, n):
            if odd[b] and order[b] < oa:
                sign = -sign
    return sign


def koszul_sign(sigma: Permutation, degrees: Sequence[int]) -> Fraction:
    """Koszul sign of v_1⊗…⊗v_n ↦ v_σ(1)⊗…⊗v_σ(n) for the given degrees."""
    if len(degrees) != len(sigma):
        raise ValueError(f"{len(degrees)} degrees for a permutation of size {len(sigma)}")
    return Fraction(koszul_sign_0([i - 1 for i in sigma.images], degrees))


def unshuffles(p: int, q: int) -> List[Permutation]:
    """S(p,q): permutations increasing on positions 1..p and p+1..p+q, lexicographic."""
    if p < 0 or q < 0:
        raise ValueError("unshuffle sizes must be nonnegative")
    n = p + q
    out = []
    for first in itertools.combinations(range(1, n + 1), p):
        rest = [k for k in range(1, n + 1) if k not in first]
        out.append(Permutation(tuple(first) + tuple(rest)))
    return out


def unshuffle_indices(p: int, q: int) -> Iterable[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """0-based (first block, second block) pairs in the same order as `unshuffles`."""
    n = p + q
    for first in itertools.combinations(range(n), p):
        fs = set(first)
        yield first, tuple(k for k in range(n) if k not in fs)
