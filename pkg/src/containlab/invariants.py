"""Numerical invariants: initial degree, Hilbert function, scheme degree, regularity."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .groebner import Budget, GroebnerBasis
from .ideals import Ideal, ideal_power, symbolic_power


@dataclass
class InvariantReport:
    """Invariants of one ideal, with a note on where each number came from."""

    name: str
    alpha: int | None = None
    hilbert: dict[int, int] = field(default_factory=dict)
    scheme_degree: int | None = None
    regularity: int | None = None
    waldschmidt: Fraction | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {"name": self.name}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.hilbert:
            out["hilbert"] = {str(d): v for d, v in sorted(self.hilbert.items())}
        if self.scheme_degree is not None:
            out["scheme_degree"] = self.scheme_degree
        if self.regularity is not None:
            out["regularity"] = self.regularity
        if self.waldschmidt is not None:
            out["waldschmidt"] = str(self.waldschmidt)
        out["notes"] = list(self.notes)
        return out


def alpha(I: Ideal, budget: Budget | None = None) -> int:
    """Least degree of a nonzero form in I, read off the reduced grevlex basis."""
    if I.is_zero():
        raise ValueError("the zero ideal has no initial degree")
    if not I.ring.order.degree_compatible:
        raise ValueError("alpha needs a degree-compatible term order")
    return I.gb(budget=budget).min_degree()


def _standard_count(basis: GroebnerBasis, ring, d: int) -> int:
    leads = [e for e in basis.leading_exponents() if sum(e) <= d]
    count = 0
    for mono in ring.monomials_of_degree(d):
        if not any(all(a <= b for a, b in zip(lead, mono)) for lead in leads):
            count += 1
    return count


def hilbert_function(I: Ideal, d: int, budget: Budget | None = None) -> int:
    """dim_k (R/I)_d, counted as standard monomials of degree d."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    if I.is_zero():
        return comb(I.ring.N + d, I.ring.N)
    return _standard_count(I.gb(budget=budget, degree_bound=d), I.ring, d)


def ideal_dimension(I: Ideal, d: int, budget: Budget | None = None) -> int:
    """dim_k I_d."""
    return comb(I.ring.N + d, I.ring.N) - hilbert_function(I, d, budget)


def scheme_degree(Z) -> int:
    """Length of the fat-point scheme: sum of C(N - 1 + m_i, N)."""
    N = Z.N
    return sum(comb(N - 1 + m, N) for m in Z.multiplicities)


def regularity_0dim(I: Ideal, Z, budget: Budget | None = None) -> int:
    """reg(I) for the saturated ideal of the 0-dimensional scheme Z.

    This is the least d >= 1 with HF(R/I, d - 1) equal to the degree of Z.
    Only ideals built as saturated fat-point ideals are accepted, since the
    Hilbert-function shortcut is wrong for anything else.
    """
    if I.scheme is None or not I.scheme.same_scheme(Z):
        raise ValueError("regularity_0dim needs the saturated ideal of the given fat-point scheme")
    target = scheme_degree(Z)
    for d in range(1, target + 2):
        if hilbert_function(I, d - 1, budget) == target:
            return d
    raise ArithmeticError("Hilbert function did not reach the scheme degree")


def regularity_of_power(Z, r: int, budget: Budget | None = None) -> int:
    """reg(I^r) for the ordinary power of I = I(Z); experimental.

    I^r saturates to I^(r) for fat points, and reg(J) = max(reg(J^sat),
    1 + last degree where J and J^sat differ) for a one-dimensional quotient.
    Once d >= reg(I^(r)) the symbolic power is generated below d, so the
    first such d with equal graded pieces is the answer.
    """
    if r < 1:
        raise ValueError("power must be at least 1")
    S = symbolic_power(Z, r, budget)
    start = regularity_0dim(S, Z.scaled(r), budget)
    if r == 1:
        return start
    P = ideal_power(symbolic_power(Z, 1, budget), r)
    d = start
    while hilbert_function(P, d, budget) != hilbert_function(S, d, budget):
        d += 1
    return d


def waldschmidt_estimate(Z, m_max: int, budget: Budget | None = None) -> Fraction:
    """min over m <= m_max of alpha(I^(m)) / m; by subadditivity an upper estimate of the limit."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    best = None
    for m in range(1, m_max + 1):
        q = Fraction(alpha(symbolic_power(Z, m, budget), budget), m)
        best = q if best is None or q < best else best
    return best


def symassreg_estimate(Z, m_max: int, budget: Budget | None = None) -> list[Fraction]:
    """reg(I^(m)) / m for m = 1 .. m_max; no limit is claimed."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    return [
        Fraction(regularity_0dim(symbolic_power(Z, m, budget), Z.scaled(m), budget), m)
        for m in range(1, m_max + 1)
    ]


def invariant_report(Z, m: int = 1, power: int | None = None, what=("alpha",),
                     hf_degrees=None, m_max: int = 3, budget: Budget | None = None) -> InvariantReport:
    """Compute the requested invariants of I(Z)^(m), or of I(Z)^power when ``power`` is given."""
    if power is not None:
        I = ideal_power(symbolic_power(Z, 1, budget), power)
        name = f"{Z.name}: I^{power}"
        scheme = None
    else:
        I = symbolic_power(Z, m, budget)
        name = f"{Z.name}: I^({m})" if m > 1 else f"{Z.name}: I"
        scheme = Z.scaled(m)
    rep = InvariantReport(name)
    wanted = set(what)
    if "alpha" in wanted:
        rep.alpha = alpha(I, budget)
        rep.notes.append("alpha: least degree in the reduced grevlex basis")
    if "reg" in wanted or "hf" in wanted or "degree" in wanted:
        if scheme is not None:
            rep.scheme_degree = scheme_degree(scheme)
    if "reg" in wanted:
        if scheme is not None:
            rep.regularity = regularity_0dim(I, scheme, budget)
            rep.notes.append("reg: Hilbert function stabilization of the saturated ideal")
        else:
            rep.regularity = regularity_of_power(Z, power, budget)
            rep.notes.append("reg: experimental, compared against the saturation I^(r)")
    if "hf" in wanted:
        if hf_degrees is None:
            top = rep.regularity if rep.regularity is not None else alpha(I, budget) + 2
            hf_degrees = range(0, top + 1)
        rep.hilbert = {d: hilbert_function(I, d, budget) for d in hf_degrees}
        rep.notes.append("hf: standard monomials of R/I")
    if "waldschmidt" in wanted:
        rep.waldschmidt = waldschmidt_estimate(Z, m_max, budget)
        rep.notes.append(f"waldschmidt: running min of alpha(I^(m))/m for m <= {m_max}")
    return rep
