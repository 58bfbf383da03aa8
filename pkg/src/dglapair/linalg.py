"""Exact linear algebra over Q on dense lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]


def as_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    out = [[Fraction(x) for x in row] for row in rows]
    if ncols is not None:
        for row in out:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
    return out


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = as_matrix(rows)
    if not A:
        return [], []
    n = len(A[0]) if ncols is None else ncols
    pivots: List[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column, in column order."""
    R, piv = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def transpose(A: Sequence[Sequence], nrows: int | None = None) -> Matrix:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def solve(A: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> Optional[List[Fraction]]:
    """One solution of A x = b, or None when inconsistent."""
    m = len(b)
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if m == 0:
        return [Fraction(0)] * ncols
    aug = [list(A[i]) + [b[i]] for i in range(m)] if ncols else [[b[i]] for i in range(m)]
    R, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, piv):
        x[p] = row[ncols]
    return x


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if not A or not B:
        return [[Fraction(0)] * (len(B[0]) if B else 0) for _ in A]
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> List[Fraction]:
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A]


class EchelonBasis:
    """Incrementally grown span, kept as reduced pivot rows.

    Vectors are added in order; `add` reports whether the vector enlarged the
    span, which makes greedy complement selection deterministic.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: List[Tuple[int, List[Fraction]]] = []

    def reduce(self, v: Sequence) -> List[Fraction]:
        w = [Fraction(x) for x in v]
        for p, row in self.rows:
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def add(self, v: Sequence) -> bool:
        w = self.reduce(v)
        p = next((i for i, x in enumerate(w) if x != 0), None)
        if p is None:
            return False
        inv = 1 / w[p]
        w = [x * inv for x in w]
        new_rows = []
        for q, row in self.rows:
            if row[p] != 0:
                f = row[p]
                row = [a - f * b for a, b in zip(row, w)]
            new_rows.append((q, row))
        new_rows.append((p, w))
        self.rows = new_rows
        return True

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __len__(self) -> int:
        return len(self.rows)
