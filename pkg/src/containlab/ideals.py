"""Homogeneous ideals: powers, products, intersections and fat-point symbolic powers."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .coefficients import FieldElement
from .groebner import Budget, GroebnerBasis, buchberger
from .polynomials import GREVLEX, MonomialOrder, Polynomial, PolynomialRing, product


class Ideal:
    """An ideal of a polynomial ring, given by homogeneous generators.

    Groebner bases are computed lazily, once per (order, degree bound), and
    cached behind a lock so concurrent queries share the work.  ``scheme``
    records the fat-point scheme this ideal is the saturated ideal of, when
    it was built that way.
    """

    def __init__(self, ring: PolynomialRing, generators: Iterable[Polynomial], scheme=None):
        gens = []
        seen = set()
        for g in generators:
            if g.ring != ring:
                raise ValueError(f"generator {g} is not in {ring}")
            if g.is_zero() or g in seen:
                continue
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            seen.add(g)
            gens.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.scheme = scheme
        self._gb: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({len(self.generators)} generators in {self.ring.descriptor()})"

    def is_zero(self) -> bool:
        return not self.generators

    def max_generator_degree(self) -> int:
        return max((g.total_degree() for g in self.generators), default=0)

    def gb(self, order: MonomialOrder | None = None, budget: Budget | None = None,
           degree_bound: int | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        with self._lock:
            full = self._gb.get((order, None))
            if full is not None:
                return full
            if degree_bound is not None:
                for (o, bound), basis in self._gb.items():
                    if o == order and bound is not None and bound >= degree_bound:
                        return basis
            basis = buchberger(self.generators, order, budget, degree_bound)
            self._gb[(order, degree_bound)] = basis
            return basis

    def _seed_gb(self, basis: GroebnerBasis):
        with self._lock:
            self._gb[(basis.order, basis.degree_bound)] = basis

    def contains(self, f: Polynomial, budget: Budget | None = None) -> bool:
        if f.is_zero():
            return True
        if self.is_zero():
            return False
        d = f.total_degree()
        return self.gb(budget=budget, degree_bound=d).is_member(f)

    def to_text(self) -> str:
        lines = [self.ring.descriptor()]
        lines.extend(str(g) for g in self.generators)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Ideal":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        ring = PolynomialRing.from_descriptor(lines[0])
        return cls(ring, [ring.parse(ln) for ln in lines[1:]])


def unit_ideal(ring: PolynomialRing) -> Ideal:
    return Ideal(ring, [ring.one()])


def ideal_power(I: Ideal, r: int) -> Ideal:
    """Generated by all r-fold products of generators of I; I^0 is the unit ideal."""
    if r < 0:
        raise ValueError("ideal power must be non-negative")
    if r == 0:
        return unit_ideal(I.ring)
    gens = [product(c) for c in combinations_with_replacement(I.generators, r)]
    return Ideal(I.ring, gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise ValueError(f"ring mismatch: {I.ring} vs {J.ring}")
    return Ideal(I.ring, [f * g for f in I.generators for g in J.generators])


def irrelevant_power(ring: PolynomialRing, j: int) -> Ideal:
    """M^j, generated by every monomial of degree j."""
    if j < 0:
        raise ValueError("irrelevant power must be non-negative")
    return Ideal(ring, [ring.monomial(e) for e in ring.monomials_of_degree(j)])


def ideal_intersect(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    """I cap J, by eliminating t from t*I + (1-t)*J.

    The result's generators are its reduced grevlex basis, which is also
    seeded into the result's basis cache.
    """
    ring = I.ring
    if J.ring != ring:
        raise ValueError(f"ring mismatch: {I.ring} vs {J.ring}")
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    ext = ring.with_elimination_variable()
    t = ext.gens()[0]
    gens = [t * _embed(ext, f) for f in I.generators]
    gens += [(1 - t) * _embed(ext, g) for g in J.generators]
    # t carries weight 0 so every input is homogeneous for the selection degree
    weights = (0,) + (1,) * ring.nvars
    basis = buchberger(gens, ext.order, budget, weights=weights)
    kept = [_restrict(ring, g) for g in basis.elements if all(e[0] == 0 for e in g.term_dict)]
    result = Ideal(ring, kept)
    if ring.order == GREVLEX:
        result._seed_gb(GroebnerBasis(ring, GREVLEX, list(result.generators)))
    return result


def _embed(ext: PolynomialRing, f: Polynomial) -> Polynomial:
    return Polynomial(ext, {(0,) + e: c for e, c in f.term_dict.items()})


def _restrict(ring: PolynomialRing, f: Polynomial) -> Polynomial:
    return Polynomial(ring, {e[1:]: c for e, c in f.term_dict.items()})


def normalize_point(point: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    """Scale so the first nonzero coordinate is 1."""
    for c in point:
        if not c.is_zero():
            inv = c.inverse()
            return tuple(x * inv for x in point)
    raise ValueError("the zero vector is not a projective point")


def point_ideal(ring: PolynomialRing, point: Sequence) -> Ideal:
    """Ideal of a projective point: x_j - P_j * x_i for j != i, i the first nonzero coordinate."""
    if len(point) != ring.nvars:
        raise ValueError(f"point has {len(point)} coordinates, ring has {ring.nvars} variables")
    pt = normalize_point([ring.field(c) if not isinstance(c, FieldElement) else c for c in point])
    pivot = next(i for i, c in enumerate(pt) if not c.is_zero())
    gens = []
    for j in range(ring.nvars):
        if j == pivot:
            continue
        coeffs = [0] * ring.nvars
        coeffs[j] = 1
        coeffs[pivot] = -pt[j]
        gens.append(ring.linear_form(coeffs))
    return Ideal(ring, gens)


def symbolic_power(Z, m: int, budget: Budget | None = None) -> Ideal:
    """I(Z)^(m) = intersection of I(P_i)^(m * m_i), folded left over the points.

    ``Z`` is a fat-point configuration (anything with ``ring``, ``points``,
    ``multiplicities`` and ``scaled``).  Results are cached on ``Z``.
    """
    if m < 1:
        raise ValueError("symbolic power exponent must be at least 1")
    if not Z.points:
        raise ValueError("empty point configuration")
    cache = Z.cache
    key = ("symbolic", m)
    with Z.lock:
        hit = cache.get(key)
    if hit is not None:
        return hit
    ring = Z.ring
    acc = None
    for pt, mult in zip(Z.points, Z.multiplicities):
        piece = ideal_power(point_ideal(ring, pt), m * mult)
        acc = piece if acc is None else ideal_intersect(acc, piece, budget)
    if len(Z.points) == 1:
        acc = Ideal(ring, acc.gb(budget=budget).elements)
    result = Ideal(ring, acc.generators, scheme=Z.scaled(m))
    result._seed_gb(acc.gb(budget=budget))
    with Z.lock:
        cache.setdefault(key, result)
        return cache[key]


@dataclass
class Containment:
    """Outcome of a containment test J <= I; ``witness`` is the first generator of J outside I."""

    holds: bool
    witness: Polynomial | None = None

    def __bool__(self):
        return self.holds


def ideal_contains(I: Ideal, J: Ideal, budget: Budget | None = None) -> Containment:
    """Whether I contains J, by reducing J's generators against a basis of I."""
    if I.ring != J.ring:
        raise ValueError(f"ring mismatch: {I.ring} vs {J.ring}")
    if not J.generators:
        return Containment(True)
    if I.is_zero():
        return Containment(False, J.generators[0])
    basis = I.gb(budget=budget, degree_bound=J.max_generator_degree())
    for g in J.generators:
        if not basis.is_member(g):
            return Containment(False, g)
    return Containment(True)


def ideals_equal(I: Ideal, J: Ideal, budget: Budget | None = None) -> bool:
    return bool(ideal_contains(I, J, budget)) and bool(ideal_contains(J, I, budget))


def ordinary_in_symbolic(Z, r: int, m: int, budget: Budget | None = None) -> Containment:
    """Reverse containment I^r <= I^(m)."""
    I = symbolic_power(Z, 1, budget)
    return ideal_contains(symbolic_power(Z, m, budget), ideal_power(I, r), budget)
