"""Buchberger's algorithm, normal forms and ideal membership.

Internally a polynomial is a dict from an integer *order code* to a field
payload.  The code of a monomial is linear in its exponents and compares
like the monomial order, so ``max(poly)`` is the leading monomial and
multiplying by a monomial is integer addition.  Divisibility uses a second
packing with one guard bit per exponent field.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Sequence

from .coefficients import Field, PrimeField, Rationals
from .polynomials import MAX_DEGREE, ExponentOverflow, MonomialOrder, Polynomial, PolynomialRing

_DIV_BITS = 17


class BudgetExceeded(RuntimeError):
    """A resource limit was hit; the computation has no answer, not a wrong one."""


@dataclass(frozen=True)
class Budget:
    timeout_secs: float | None = 600.0
    max_pairs: int | None = 200_000

    @classmethod
    def from_env(cls) -> "Budget":
        timeout = os.environ.get("CONTAINLAB_TIMEOUT_SECS")
        pairs = os.environ.get("CONTAINLAB_MAX_PAIRS")
        return cls(
            timeout_secs=float(timeout) if timeout else 600.0,
            max_pairs=int(pairs) if pairs else 200_000,
        )

    def clock(self) -> "_Clock":
        return _Clock(self)


UNLIMITED = Budget(None, None)


class _Clock:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.start = time.monotonic()
        self.pairs = 0

    def tick(self):
        self.pairs += 1
        b = self.budget
        if b.max_pairs is not None and self.pairs > b.max_pairs:
            raise BudgetExceeded(f"S-pair cap of {b.max_pairs} exceeded")
        if b.timeout_secs is not None and time.monotonic() - self.start > b.timeout_secs:
            raise BudgetExceeded(f"timeout of {b.timeout_secs}s exceeded after {self.pairs} S-pairs")


class _Codec:
    """Translates between exponent tuples, order codes and divisibility packs."""

    def __init__(self, order: MonomialOrder, nvars: int):
        self.order = order
        self.nvars = nvars
        self._exps: dict[int, tuple] = {}
        self._div: dict[int, int] = {}
        self.guard = sum(1 << (_DIV_BITS * i + _DIV_BITS - 1) for i in range(nvars))

    def encode(self, exps) -> int:
        code = self.order.key(exps)
        self._exps.setdefault(code, tuple(exps))
        return code

    def exps(self, code: int) -> tuple:
        e = self._exps.get(code)
        if e is None:
            e = self.order.decode(code, self.nvars)
            self._exps[code] = e
        return e

    def divpack(self, code: int) -> int:
        d = self._div.get(code)
        if d is None:
            d = 0
            for i, a in enumerate(self.exps(code)):
                d |= a << (_DIV_BITS * i)
            self._div[code] = d
        return d

    def divides(self, da: int, db: int) -> bool:
        g = self.guard
        return ((db | g) - da) & g == g


def _axpy_factory(field: Field):
    """Return ``sub(p, c, tail, shift)``: p -= c * x^shift * tail, in place."""
    if isinstance(field, PrimeField):
        P = field.p

        def sub(p, c, tail, shift):
            get = p.get
            for k, v in tail:
                nk = k + shift
                old = get(nk)
                if old is None:
                    p[nk] = -c * v % P
                else:
                    nv = (old - c * v) % P
                    if nv:
                        p[nk] = nv
                    else:
                        del p[nk]

        return sub
    if isinstance(field, Rationals):

        def sub(p, c, tail, shift):
            get = p.get
            for k, v in tail:
                nk = k + shift
                old = get(nk)
                if old is None:
                    p[nk] = -c * v
                else:
                    nv = old - c * v
                    if nv:
                        p[nk] = nv
                    else:
                        del p[nk]

        return sub
    fmul, fsub, fneg, fzero = field.mul, field.sub, field.neg, field.is_zero

    def sub(p, c, tail, shift):
        get = p.get
        for k, v in tail:
            nk = k + shift
            old = get(nk)
            t = fmul(c, v)
            if old is None:
                p[nk] = fneg(t)
            else:
                nv = fsub(old, t)
                if fzero(nv):
                    del p[nk]
                else:
                    p[nk] = nv

    return sub


class _Element:
    __slots__ = ("lm", "div", "tail", "terms", "degree")

    def __init__(self, terms: dict, codec: _Codec):
        self.terms = terms
        self.lm = max(terms)
        self.div = codec.divpack(self.lm)
        self.tail = [(k, v) for k, v in terms.items() if k != self.lm]
        self.degree = sum(codec.exps(self.lm))


class _Reducer:
    def __init__(self, field: Field, codec: _Codec):
        self.field = field
        self.codec = codec
        self.axpy = _axpy_factory(field)

    def reduce(self, p: dict, basis: Sequence[_Element]) -> dict:
        """Full normal form of ``p`` (consumed) against monic ``basis``."""
        codec = self.codec
        g = codec.guard
        divpack = codec.divpack
        axpy = self.axpy
        rem = {}
        while p:
            m = max(p)
            c = p.pop(m)
            dm = divpack(m) | g
            for el in basis:
                if (dm - el.div) & g == g:
                    axpy(p, c, el.tail, m - el.lm)
                    break
            else:
                rem[m] = c
        return rem

    def monic(self, p: dict) -> dict:
        field = self.field
        lc = p[max(p)]
        if lc == field.one:
            return p
        inv = field.inv(lc)
        mul = field.mul
        return {k: mul(v, inv) for k, v in p.items()}


@dataclass
class _Pair:
    i: int
    j: int
    lcm: int
    sugar: int


class GroebnerBasis:
    """Reduced Groebner basis of a polynomial ideal for one monomial order.

    When ``degree_bound`` is set the basis is truncated: it decides membership
    only for homogeneous polynomials of degree at most the bound.
    """

    def __init__(self, ring: PolynomialRing, order: MonomialOrder, elements: list[Polynomial],
                 degree_bound: int | None = None, stats: dict | None = None):
        self.ring = ring
        self.order = order
        self.elements = elements
        self.degree_bound = degree_bound
        self.stats = stats or {}
        self._codec = _Codec(order, ring.nvars)
        self._reducer = _Reducer(ring.field, self._codec)
        self._basis = [_Element(self._to_codes(f), self._codec) for f in elements]

    def _to_codes(self, f: Polynomial) -> dict:
        enc = self._codec.encode
        return {enc(e): c for e, c in f.term_dict.items()}

    def _from_codes(self, p: dict) -> Polynomial:
        exps = self._codec.exps
        return Polynomial(self.ring, {exps(k): v for k, v in p.items()})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_exponents(self) -> list[tuple[int, ...]]:
        return [self._codec.exps(el.lm) for el in self._basis]

    def is_unit(self) -> bool:
        return any(el.degree == 0 for el in self._basis)

    def min_degree(self) -> int | None:
        return min((el.degree for el in self._basis), default=None)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring.field != self.ring.field or f.ring.nvars != self.ring.nvars:
            raise ValueError("polynomial and basis live in different rings")
        self._check_bound(f)
        return self._from_codes(self._reducer.reduce(self._to_codes(f), self._basis))

    def is_member(self, f: Polynomial) -> bool:
        self._check_bound(f)
        return not self._reducer.reduce(self._to_codes(f), self._basis)

    def _check_bound(self, f: Polynomial):
        if self.degree_bound is None or f.is_zero():
            return
        if not f.is_homogeneous() or f.total_degree() > self.degree_bound:
            raise ValueError(
                f"basis truncated at degree {self.degree_bound} cannot decide a "
                f"{'non-homogeneous' if not f.is_homogeneous() else f'degree {f.total_degree()}'} polynomial"
            )

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.order == other.order
            and self.degree_bound == other.degree_bound
            and self.elements == other.elements
        )

    def __repr__(self):
        return f"GroebnerBasis({len(self.elements)} elements, {self.order})"


def buchberger(
    generators: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    budget: Budget | None = None,
    degree_bound: int | None = None,
    weights: Sequence[int] | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    Pairs are selected by the normal strategy (smallest weighted lcm degree,
    then smallest lcm) with the product and chain criteria in Gebauer-Moeller
    form.  ``weights`` only steer pair selection.  ``degree_bound`` requires
    homogeneous generators and truncates the computation at that degree.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    order = order or ring.order
    clock = (budget or Budget.from_env()).clock()
    if degree_bound is not None:
        if not all(g.is_homogeneous() for g in gens):
            raise ValueError("degree-truncated Buchberger needs homogeneous generators")
        gens = [g for g in gens if g.total_degree() <= degree_bound]
        if not gens:
            return GroebnerBasis(ring, order, [], degree_bound, {"pairs": 0})
    w = tuple(weights) if weights is not None else (1,) * ring.nvars

    codec = _Codec(order, ring.nvars)
    red = _Reducer(ring.field, codec)
    exps = codec.exps

    polys: list[_Element] = []
    G: list[int] = []
    B: list[_Pair] = []

    def lcm_code(a: int, b: int) -> int:
        return codec.encode(tuple(max(x, y) for x, y in zip(exps(a), exps(b))))

    def coprime(a: int, b: int) -> bool:
        return all(not (x and y) for x, y in zip(exps(a), exps(b)))

    def divides(a: int, b: int) -> bool:
        return codec.divides(codec.divpack(a), codec.divpack(b))

    def weighted(code: int) -> int:
        return sum(a * b for a, b in zip(exps(code), w))

    def update(h: int):
        nonlocal G, B
        hl = polys[h].lm
        C = list(G)
        D: list[int] = []
        while C:
            g1 = C.pop(0)
            g1l = polys[g1].lm
            l1 = lcm_code(hl, g1l)
            if coprime(hl, g1l) or not any(
                divides(lcm_code(hl, polys[g2].lm), l1) for g2 in C + D
            ):
                D.append(g1)
        E = [g for g in D if not coprime(hl, polys[g].lm)]
        kept = []
        for p in B:
            if divides(hl, p.lcm):
                li = lcm_code(polys[p.i].lm, hl)
                lj = lcm_code(polys[p.j].lm, hl)
                if li != p.lcm and lj != p.lcm:
                    continue
            kept.append(p)
        for g in E:
            l = lcm_code(polys[g].lm, hl)
            deg = sum(exps(l))
            if degree_bound is not None and deg > degree_bound:
                continue
            kept.append(_Pair(g, h, l, weighted(l)))
        B = kept
        G = [g for g in G if not divides(hl, polys[g].lm)] + [h]

    def add(terms: dict):
        if max(sum(exps(k)) for k in terms) > MAX_DEGREE:
            raise ExponentOverflow("Groebner element exceeds the 16-bit exponent bound")
        polys.append(_Element(red.monic(terms), codec))
        update(len(polys) - 1)

    def basis_now():
        return [polys[g] for g in G]

    for g in sorted(gens, key=lambda f: (f.total_degree(), len(f))):
        p = red.reduce({codec.encode(e): c for e, c in g.term_dict.items()}, basis_now())
        if p:
            add(p)

    while B:
        clock.tick()
        best = min(range(len(B)), key=lambda k: (B[k].sugar, B[k].lcm))
        pair = B.pop(best)
        fi, fj = polys[pair.i], polys[pair.j]
        # S-polynomial of monic fi, fj: x^(l-lm_i) * tail_i - x^(l-lm_j) * tail_j
        s = {}
        si, sj = pair.lcm - fi.lm, pair.lcm - fj.lm
        for k, v in fi.tail:
            s[k + si] = v
        red.axpy(s, ring.field.one, fj.tail, sj)
        if not s:
            continue
        s = red.reduce(s, basis_now())
        if s:
            add(s)

    # G is minimal; inter-reduce tails to get the reduced basis
    final = basis_now()
    reduced = []
    for el in final:
        others = [o for o in final if o is not el]
        tail = red.reduce(dict(el.tail), others)
        tail[el.lm] = ring.field.one
        reduced.append(tail)
    reduced.sort(key=max)
    elements = [Polynomial(ring, {exps(k): v for k, v in p.items()}) for p in reduced]
    stats = {"pairs": clock.pairs, "seconds": time.monotonic() - clock.start}
    return GroebnerBasis(ring, order, elements, degree_bound, stats)


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    return basis.normal_form(f)


def is_member(f: Polynomial, basis: GroebnerBasis) -> bool:
    return basis.is_member(f)
