"""Graded pieces of fat-point symbolic powers by exact linear algebra.

Nothing here touches a Groebner basis: (I^(m))_d is computed as the
intersection, inside the space of degree-d forms, of the spans of
(I(P)^(m*m_P))_d.  The oracle only knows symbolic powers; membership in an
ordinary power I^r is a question for the Groebner pipeline.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .coefficients import FieldElement
from .ideals import normalize_point
from .linalg import RowEchelon
from .polynomials import Polynomial, PolynomialRing


@dataclass(frozen=True)
class GradedPieceBasis:
    """A basis of a subspace of R_d, as coefficient vectors over ``monomials``."""

    ring: PolynomialRing
    degree: int
    monomials: tuple[tuple[int, ...], ...]
    vectors: tuple[dict, ...]

    @property
    def ambient_dimension(self) -> int:
        return len(self.monomials)

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def polynomials(self) -> list[Polynomial]:
        return [Polynomial(self.ring, {self.monomials[j]: c for j, c in v.items()}) for v in self.vectors]

    def is_independent(self) -> bool:
        return RowEchelon(self.ring.field).extend(self.vectors).rank == len(self.vectors)


def _monomial_index(ring: PolynomialRing, d: int):
    mons = tuple(ring.monomials_of_degree(d))
    return mons, {e: i for i, e in enumerate(mons)}


def _shifted_basis(ring: PolynomialRing, point, m: int, d: int, index: dict) -> list[tuple[int, dict]]:
    """(pivot column, row) for each x_i^(d-|a|) * prod_j (x_j - P_j x_i)^(a_j) with |a| >= m.

    i is the first nonzero coordinate of the point.  Row a has a 1 in the
    column of x_i^(d-|a|) x^a and otherwise only columns x_i^(d-|b|) x^b with
    b < a componentwise, so the rows are triangular.
    """
    n = ring.nvars
    pt = normalize_point([ring.field(c) if not isinstance(c, FieldElement) else c for c in point])
    piv = next(i for i, c in enumerate(pt) if not c.is_zero())
    others = [j for j in range(n) if j != piv]
    forms = {}
    for j in others:
        coeffs = [0] * n
        coeffs[j] = 1
        coeffs[piv] = -pt[j]
        forms[j] = ring.linear_form(coeffs)
    powers = {j: [ring.one()] for j in others}
    rows = []
    for k in range(m, d + 1):
        for combo in combinations_with_replacement(others, k):
            a = {j: combo.count(j) for j in others}
            f = ring.one()
            for j in others:
                pw = powers[j]
                while len(pw) <= a[j]:
                    pw.append(pw[-1] * forms[j])
                f = f * pw[a[j]]
            e = [0] * n
            e[piv] = d - k
            f = f.mul_monomial(e)
            lead = [0] * n
            lead[piv] = d - k
            for j in others:
                lead[j] = a[j]
            row = {index[mono]: c for mono, c in f.term_dict.items()}
            rows.append((index[tuple(lead)], row))
    # generated with |a| ascending, so each row only refers to pivots of earlier rows
    return rows


def power_piece(ring: PolynomialRing, point: Sequence, m: int, d: int) -> GradedPieceBasis:
    """(I(P)^m)_d, spanned by products of m point-ideal generators with forms of degree d - m."""
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    mons, index = _monomial_index(ring, d)
    if d < m:
        return GradedPieceBasis(ring, d, mons, ())
    rows = _shifted_basis(ring, point, m, d, index)
    return GradedPieceBasis(ring, d, mons, tuple(r for _, r in rows))


def _annihilator(ring: PolynomialRing, point, m: int, d: int, mons, index) -> list[dict]:
    """Kernel of the power-piece basis matrix, by triangular back-substitution.

    One kernel vector per free column (a monomial that is not the pivot of a
    basis row); pivot entries are solved in order of increasing pivot
    degree, which only needs entries already fixed.
    """
    field = ring.field
    mul, add, neg, is_zero = field.mul, field.add, field.neg, field.is_zero
    rows = _shifted_basis(ring, point, m, d, index) if d >= m else []
    pivot_cols = {p for p, _ in rows}
    free = [c for c in range(len(mons)) if c not in pivot_cols]
    # within one value of |a| no row refers to another row's pivot
    out = []
    for f in free:
        v = {f: field.one}
        for p, row in rows:
            acc = field.zero
            for col, c in row.items():
                if col == p:
                    continue
                x = v.get(col)
                if x is not None:
                    acc = add(acc, mul(c, x))
            if not is_zero(acc):
                v[p] = neg(acc)
        out.append(v)
    return out


def symbolic_piece(Z, m: int, d: int) -> GradedPieceBasis:
    """(I(Z)^(m))_d: the common kernel of every point's annihilator."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    ring = Z.ring
    mons, index = _monomial_index(ring, d)
    if any(d < m * k for k in Z.multiplicities):
        return GradedPieceBasis(ring, d, mons, ())
    ech = RowEchelon(ring.field)
    for pt, k in zip(Z.points, Z.multiplicities):
        ech.extend(_annihilator(ring, pt, m * k, d, mons, index))
        if ech.rank == len(mons):
            return GradedPieceBasis(ring, d, mons, ())
    return GradedPieceBasis(ring, d, mons, tuple(ech.nullspace(len(mons))))


def symbolic_dimension(Z, m: int, d: int) -> int:
    return symbolic_piece(Z, m, d).dimension


def alpha_oracle(Z, m: int) -> int:
    """Least degree with a nonzero form vanishing to order m * m_i at every point."""
    if m < 1:
        raise ValueError("symbolic power exponent must be at least 1")
    d = m * min(Z.multiplicities)
    while symbolic_dimension(Z, m, d) == 0:
        d += 1
    return d


def single_point_dimension(N: int, m: int, d: int) -> int:
    """Closed form dim (I(P)^m)_d = C(N+d, N) - sum_{j<m} C(N-1+j, N-1), floored at 0."""
    if d < m:
        return 0
    return comb(N + d, N) - sum(comb(N - 1 + j, N - 1) for j in range(m))
