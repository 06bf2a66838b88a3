"""Sparse multivariate polynomials over the exact fields of :mod:`coefficients`."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .coefficients import (
    Cyclotomic,
    ExpressionParser,
    Field,
    FieldElement,
    FieldError,
    PrimeField,
    parse_field,
    tokenize,
)

#: bits per packed order field; exponents and degrees must stay below 2**SHIFT
SHIFT = 16
MAX_DEGREE = (1 << SHIFT) - 1


class ExponentOverflow(OverflowError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order, realized as an integer key that is linear in the exponents.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``; a block order compares
    the first ``block`` variables by grevlex, breaking ties by grevlex on the
    rest, so it eliminates the leading block.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise ValueError("block elimination order needs a block of at least one variable")

    @property
    def degree_compatible(self) -> bool:
        return self.kind == "grevlex"

    def fields(self, exps: Sequence[int]) -> list[int]:
        if self.kind == "lex":
            return list(exps)
        if self.kind == "grevlex":
            return _grevlex_fields(exps)
        return _grevlex_fields(exps[: self.block]) + _grevlex_fields(exps[self.block :])

    def key(self, exps: Sequence[int]) -> int:
        code = 0
        for f in self.fields(exps):
            code = (code << SHIFT) | f
        return code

    def decode(self, code: int, nvars: int) -> tuple[int, ...]:
        mask = (1 << SHIFT) - 1
        fields = []
        for _ in range(nvars):
            fields.append(code & mask)
            code >>= SHIFT
        fields.reverse()
        if self.kind == "lex":
            return tuple(fields)
        if self.kind == "grevlex":
            return _grevlex_unfields(fields)
        b = self.block
        return _grevlex_unfields(fields[:b]) + _grevlex_unfields(fields[b:])

    def __str__(self):
        return f"block({self.block})" if self.kind == "block" else self.kind


def _grevlex_fields(exps):
    # [S_{n-1}, ..., S_0] with S_k = e_0 + ... + e_k; S_{n-1} is the degree
    out = []
    s = 0
    for e in exps:
        s += e
        out.append(s)
    out.reverse()
    return out


def _grevlex_unfields(fields):
    sums = list(reversed(fields))
    prev = 0
    exps = []
    for s in sums:
        exps.append(s - prev)
        prev = s
    return tuple(exps)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def BlockElimination(block: int) -> MonomialOrder:
    return MonomialOrder("block", block)


@dataclass(frozen=True, order=False)
class Monomial:
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))


def compare_monomials(a: Monomial | tuple, b: Monomial | tuple, order: MonomialOrder = GREVLEX) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to or larger than ``b``."""
    ea = a.exponents if isinstance(a, Monomial) else tuple(a)
    eb = b.exponents if isinstance(b, Monomial) else tuple(b)
    if len(ea) != len(eb):
        raise ValueError("monomials from rings of different arity")
    ka, kb = order.key(ea), order.key(eb)
    return (ka > kb) - (ka < kb)


class PolynomialRing:
    """K[x0, ..., xN] with an ambient monomial order (grevlex by default)."""

    def __init__(self, field: Field, nvars: int | Sequence[str] = 3, order: MonomialOrder = GREVLEX):
        if isinstance(nvars, int):
            names = tuple(f"x{i}" for i in range(nvars))
        else:
            names = tuple(nvars)
        if len(names) < 2:
            raise ValueError("a projective ring needs at least two variables (N >= 1)")
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        if isinstance(field, Cyclotomic) and "z" in names:
            raise ValueError("'z' is reserved for the cyclotomic generator")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.order = order

    @property
    def N(self) -> int:
        """Projective dimension."""
        return self.nvars - 1

    def _key(self):
        return (self.field, self.names, self.order)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PolynomialRing({self.field}, {','.join(self.names)}, {self.order})"

    def descriptor(self) -> str:
        return f"{self.field}[{','.join(self.names)}]"

    @classmethod
    def from_descriptor(cls, text: str) -> "PolynomialRing":
        text = text.strip()
        if not text.endswith("]") or "[" not in text:
            raise SyntaxError(f"bad ring descriptor {text!r}")
        fpart, vpart = text[:-1].split("[", 1)
        return cls(parse_field(fpart), [v.strip() for v in vpart.split(",")])

    # -- constructors -----------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.coerce(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def gens(self) -> tuple["Polynomial", ...]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(Polynomial(self, {tuple(e): self.field.one}))
        return tuple(out)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self.coerce(coeff)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {tuple(exps): c})

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        """All exponent vectors of total degree d, sorted descending in the ambient order."""
        return sorted(_exponents_of_degree(self.nvars, d), key=self.order.key, reverse=True)

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.coerce(c)
            if not self.field.is_zero(c):
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self, terms)

    def coerce(self, c):
        """Payload for an int, Fraction or FieldElement of this ring's field."""
        if isinstance(c, FieldElement):
            if c.field != self.field:
                raise FieldError(f"field mismatch: {c.field} vs {self.field}")
            return c.payload
        if isinstance(c, int):
            return self.field.from_int(c)
        if isinstance(c, Fraction):
            return self.field.from_fraction(c)
        raise TypeError(f"cannot coerce {c!r} into {self.field}")

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    # -- elimination ------------------------------------------------------
    def with_elimination_variable(self, name: str = "t") -> "PolynomialRing":
        """This ring with one extra leading variable, under a block elimination order."""
        while name in self.names:
            name += "_"
        return PolynomialRing(self.field, (name,) + self.names, BlockElimination(1))

    def change_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.field, self.names, order)


def _exponents_of_degree(n: int, d: int):
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to field payloads."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # -- inspection -------------------------------------------------------
    @property
    def term_dict(self) -> dict:
        return self._terms

    def terms(self) -> list[tuple[Monomial, FieldElement]]:
        """Terms sorted strictly descending in the ring's order."""
        field = self.ring.field
        keyf = self.ring.order.key
        return [
            (Monomial(e), FieldElement(field, self._terms[e]))
            for e in sorted(self._terms, key=keyf, reverse=True)
        ]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def total_degree(self) -> int | None:
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading_exponent(self, order: MonomialOrder | None = None) -> tuple[int, ...]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=(order or self.ring.order).key)

    def leading_coefficient(self, order: MonomialOrder | None = None) -> FieldElement:
        return FieldElement(self.ring.field, self._terms[self.leading_exponent(order)])

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._terms:
            return self
        field = self.ring.field
        inv = field.inv(self._terms[self.leading_exponent(order)])
        return Polynomial(self.ring, {e: field.mul(c, inv) for e, c in self._terms.items()})

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, a in enumerate(e) if a}

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add_terms(self.ring.field, self._terms, other._terms, False))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add_terms(self.ring.field, self._terms, other._terms, True))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        field = self.ring.field
        return Polynomial(self.ring, {e: field.neg(c) for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return self.ring.zero()
        if self.total_degree() + other.total_degree() > MAX_DEGREE:
            raise ExponentOverflow("product degree exceeds the 16-bit exponent bound")
        field = self.ring.field
        add, mul, is_zero = field.add, field.mul, field.is_zero
        out: dict = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = mul(ca, cb)
                prev = out.get(e)
                out[e] = c if prev is None else add(prev, c)
        return Polynomial(self.ring, {e: c for e, c in out.items() if not is_zero(c)})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = self.ring.coerce(c)
        if field.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {e: field.mul(v, c) for e, v in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            field = self.ring.field
            return self.scale(FieldElement(field, field.inv(self.ring.coerce(other))))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps: Sequence[int]) -> "Polynomial":
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()})

    # -- evaluation -------------------------------------------------------
    def evaluate(self, point: Sequence) -> FieldElement:
        ring = self.ring
        field = ring.field
        if len(point) != ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {ring.nvars} variables")
        vals = [ring.coerce(p) for p in point]
        powers: list[dict[int, object]] = [{0: field.one, 1: v} for v in vals]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = field.pow(vals[i], k)
            return cache[k]

        acc = field.zero
        for e, c in self._terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = field.mul(t, pw(i, k))
            acc = field.add(acc, t)
        return FieldElement(field, acc)

    # -- comparison and text ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _add_terms(field, a: dict, b: dict, subtract: bool) -> dict:
    out = dict(a)
    add, sub, is_zero = field.add, field.sub, field.is_zero
    for e, c in b.items():
        prev = out.get(e)
        if prev is None:
            out[e] = field.neg(c) if subtract else c
        else:
            v = sub(prev, c) if subtract else add(prev, c)
            if is_zero(v):
                del out[e]
            else:
                out[e] = v
    return out


def poly_arithmetic(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if f.ring != g.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {g.ring}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def total_degree(f: Polynomial) -> int | None:
    return f.total_degree()


def is_homogeneous(f: Polynomial) -> bool:
    return f.is_homogeneous()


def evaluate(f: Polynomial, point: Sequence) -> FieldElement:
    return f.evaluate(point)


def product(factors: Iterable[Polynomial], ring: PolynomialRing | None = None) -> Polynomial:
    factors = list(factors)
    if not factors:
        if ring is None:
            raise ValueError("empty product needs a ring")
        return ring.one()
    acc = factors[0]
    for f in factors[1:]:
        acc = acc * f
    return acc


# --- text format -----------------------------------------------------------

def _format_monomial(names, exps) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _format_coefficient(field: Field, c) -> tuple[bool, str, bool]:
    """(negative?, text, is_one) for a coefficient payload."""
    if isinstance(field, Cyclotomic):
        nonzero = [(k, v) for k, v in enumerate(c) if v]
        if len(nonzero) == 1:
            k, v = nonzero[0]
            neg = v < 0
            text = field.format(tuple(-x for x in c) if neg else c)
            return neg, text, text == "1"
        return False, f"({field.format(c)})", False
    if isinstance(field, PrimeField):
        return False, str(c), c == 1
    neg = c < 0
    text = str(-c if neg else c)
    return neg, text, text == "1"


def format_polynomial(f: Polynomial) -> str:
    ring = f.ring
    if not f._terms:
        return "0"
    out = []
    for i, e in enumerate(sorted(f._terms, key=ring.order.key, reverse=True)):
        neg, ctext, is_one = _format_coefficient(ring.field, f._terms[e])
        mono = _format_monomial(ring.names, e)
        if not mono:
            body = ctext
        elif is_one:
            body = mono
        else:
            body = f"{ctext}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def parse_polynomial(ring: PolynomialRing, text: str) -> Polynomial:
    gens = dict(zip(ring.names, ring.gens()))
    field = ring.field

    def atom(name):
        if name in gens:
            return gens[name]
        if name == "z" and isinstance(field, Cyclotomic):
            return ring.constant(field.gen)
        raise SyntaxError(f"unknown symbol {name!r} in ring {ring.descriptor()}")

    def divide(a, b):
        if not isinstance(b, Polynomial) or b.total_degree() not in (0, None):
            raise SyntaxError("division only by nonzero constants")
        if b.is_zero():
            raise ZeroDivisionError("division by zero constant")
        (c,) = b._terms.values()
        return a.scale(FieldElement(field, field.inv(c)))

    return ExpressionParser(tokenize(text), atom, lambda n: ring.constant(n), divide).parse()
