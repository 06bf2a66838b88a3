"""Exact sparse linear algebra over the coefficient fields.

Rows are dicts ``{column: payload}``; zero entries are never stored.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .coefficients import Field


class RowEchelon:
    """Incrementally maintained reduced row echelon form.

    Every pivot row has a 1 in its pivot column and zeros in every other
    pivot column, so a new row is reduced in a single pass.
    """

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        field = self.field
        mul, sub, is_zero = field.mul, field.sub, field.is_zero
        row = dict(row)
        for col in [c for c in row if c in self.pivots]:
            c = row.get(col)
            if c is None:
                continue
            for k, v in self.pivots[col].items():
                old = row.get(k)
                nv = field.neg(mul(c, v)) if old is None else sub(old, mul(c, v))
                if is_zero(nv):
                    row.pop(k, None)
                else:
                    row[k] = nv
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        field = self.field
        col = min(row)
        inv = field.inv(row[col])
        row = {k: field.mul(v, inv) for k, v in row.items()}
        mul, sub, is_zero = field.mul, field.sub, field.is_zero
        for prow in self.pivots.values():
            c = prow.get(col)
            if c is None:
                continue
            for k, v in row.items():
                old = prow.get(k)
                nv = field.neg(mul(c, v)) if old is None else sub(old, mul(c, v))
                if is_zero(nv):
                    prow.pop(k, None)
                else:
                    prow[k] = nv
        self.pivots[col] = row
        return True

    def extend(self, rows: Iterable[dict]) -> "RowEchelon":
        for r in rows:
            self.add(r)
        return self

    def nullspace(self, ncols: int) -> list[dict]:
        """Basis of {v : row . v = 0 for every inserted row}, one vector per free column."""
        field = self.field
        basis = []
        for free in range(ncols):
            if free in self.pivots:
                continue
            v = {free: field.one}
            for p, prow in self.pivots.items():
                c = prow.get(free)
                if c is not None:
                    v[p] = field.neg(c)
            basis.append(v)
        return basis

    def basis(self) -> list[dict]:
        return [self.pivots[c] for c in sorted(self.pivots)]


def rank(rows: Iterable[dict], field: Field) -> int:
    return RowEchelon(field).extend(rows).rank


def nullspace(rows: Iterable[dict], ncols: int, field: Field) -> list[dict]:
    return RowEchelon(field).extend(rows).nullspace(ncols)


def dense_to_rows(matrix: Sequence[Sequence], field: Field) -> list[dict]:
    return [{j: v for j, v in enumerate(row) if not field.is_zero(v)} for row in matrix]


def determinant(matrix: Sequence[Sequence], field: Field):
    """Determinant of a square matrix of payloads by Gaussian elimination."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    det = field.one
    for col in range(n):
        piv = next((r for r in range(col, n) if not field.is_zero(a[r][col])), None)
        if piv is None:
            return field.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = field.neg(det)
        p = a[col][col]
        det = field.mul(det, p)
        inv = field.inv(p)
        for r in range(col + 1, n):
            f = a[r][col]
            if field.is_zero(f):
                continue
            f = field.mul(f, inv)
            for k in range(col, n):
                a[r][k] = field.sub(a[r][k], field.mul(f, a[col][k]))
    return det


def kernel_vector(matrix: Sequence[Sequence], field: Field) -> list:
    """Generator of the kernel of an n x (n+1) matrix of full rank, by signed maximal minors."""
    n = len(matrix)
    out = []
    for j in range(n + 1):
        minor = [row[:j] + row[j + 1 :] for row in matrix]
        d = determinant(minor, field) if n else field.one
        out.append(d if j % 2 == 0 else field.neg(d))
    return out
