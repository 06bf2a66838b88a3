"""Exact coefficient fields: the rationals, prime fields and cyclotomic fields.

Every field object works on bare *payloads* (``mpq`` for QQ, ``int`` for
Fp, tuples of ``mpq`` for QQ(zeta_n)) so the polynomial and linear algebra
kernels can run without wrapper allocation.  :class:`FieldElement` wraps a
payload for the public API.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from gmpy2 import is_prime, mpq


class FieldError(ValueError):
    pass


class Field:
    """Base class for the three field families (also the field descriptor)."""

    characteristic: int

    # -- payload arithmetic, overridden per family ------------------------
    zero = None
    one = None

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def normalize(self, a):
        """Canonical form of a payload; idempotent."""
        return a

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        return parse_element(self, text).payload

    # -- element construction ---------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"cannot coerce {value.field} element into {self}")
            return value
        if isinstance(value, str):
            return parse_element(self, value)
        if isinstance(value, Fraction):
            return FieldElement(self, self.from_fraction(value))
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        raise TypeError(f"cannot build a {self} element from {value!r}")

    def element(self, payload) -> "FieldElement":
        return FieldElement(self, self.normalize(payload))

    @property
    def gen(self) -> "FieldElement":
        raise FieldError(f"{self} has no distinguished generator")

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return str(self)


class Rationals(Field):
    characteristic = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in QQ")
        return a / b

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return mpq(n)

    def from_fraction(self, q):
        return mpq(q.numerator, q.denominator)

    def normalize(self, a):
        return mpq(a)

    def format(self, a):
        return str(a)

    def _key(self):
        return ("QQ",)

    def __str__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not is_prime(p):
            raise FieldError(f"Fp modulus must be prime, got {p}")
        if p >= 2**31:
            raise FieldError(f"Fp modulus must be below 2^31, got {p}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    @property
    def is_char2(self) -> bool:
        # characteristic 2 is allowed, but every BHH containment is known to hold there
        return self.p == 2

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def normalize(self, a):
        return int(a) % self.p

    def format(self, a):
        return str(a)

    def _key(self):
        return ("Fp", self.p)

    def __str__(self):
        return f"Fp({self.p})"


# --- univariate helpers over QQ, dense coefficient lists low -> high ------

def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def _poly_divmod(a, b):
    a = [mpq(x) for x in a]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
    return _trim(q), _trim(a)


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([mpq(x) - y for x, y in zip(a, b)])


@lru_cache(maxsize=None)
def cyclotomic_modulus(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Computed by dividing t^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise FieldError(f"cyclotomic index must be positive, got {n}")
    num = [mpq(-1)] + [mpq(0)] * (n - 1) + [mpq(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_modulus(d))
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_modulus(n)) - 1


class Cyclotomic(Field):
    """QQ(zeta_n) = QQ[z]/Phi_n(z), payloads are dense tuples of length phi(n)."""

    characteristic = 0

    def __init__(self, n: int):
        n = int(n)
        if n < 2:
            raise FieldError(f"cyclotomic index must be >= 2, got {n}")
        self.n = n
        self.modulus = cyclotomic_modulus(n)
        self.degree = len(self.modulus) - 1
        self.zero = (mpq(0),) * self.degree
        self.one = (mpq(1),) + (mpq(0),) * (self.degree - 1)
        # z^k for degree <= k < 2*degree - 1, expressed in the power basis
        self._fold = self._fold_table()

    def _fold_table(self):
        d = self.degree
        table = []
        # z^d = -(Phi_n - z^d)
        cur = [mpq(-c) for c in self.modulus[:d]]
        for _ in range(d - 1):
            table.append(tuple(cur))
            nxt = [mpq(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(d):
                    nxt[i] -= top * self.modulus[i]
            cur = nxt
        table.append(tuple(cur))
        return table

    def _reduce(self, coeffs):
        d = self.degree
        out = list(coeffs[:d]) + [mpq(0)] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = self._fold[k - d]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.degree
        if d == 2:
            # fast path for n in {3, 4, 6}: z^2 = f0 + f1*z
            a0, a1 = a
            b0, b1 = b
            f0, f1 = self._fold[0]
            hi = a1 * b1
            return (a0 * b0 + hi * f0, a0 * b1 + a1 * b0 + hi * f1)
        prod = [mpq(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._reduce(prod)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError(f"division by zero in {self}")
        # extended Euclid: find s with s*a == 1 mod Phi_n
        r0, r1 = [mpq(c) for c in self.modulus], _trim(a)
        s0, s1 = [], [mpq(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        s = [x / c for x in s1]
        return self.normalize(s)

    def is_zero(self, a):
        return not any(a)

    def from_int(self, n):
        return (mpq(n),) + (mpq(0),) * (self.degree - 1)

    def from_fraction(self, q):
        return (mpq(q.numerator, q.denominator),) + (mpq(0),) * (self.degree - 1)

    def normalize(self, a):
        a = [mpq(x) for x in a]
        if len(a) > self.degree:
            return self._reduce(a)
        return tuple(a + [mpq(0)] * (self.degree - len(a)))

    @property
    def gen(self):
        return FieldElement(self, self.normalize([0, 1]))

    def format(self, a):
        parts = []
        for k, c in enumerate(a):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            parts.append(_signed_term(c, mono))
        return _join_terms(parts)

    def _key(self):
        return ("QQ(zeta)", self.n)

    def __str__(self):
        return f"QQ(zeta{self.n})"


def _signed_term(c, mono: str) -> tuple[bool, str]:
    """Split ``c*mono`` into (negative?, body) for printing."""
    neg = c < 0
    c = -c if neg else c
    if not mono:
        return neg, str(c)
    if c == 1:
        return neg, mono
    return neg, f"{c}*{mono}"


def _join_terms(parts) -> str:
    if not parts:
        return "0"
    out = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


QQ = Rationals()


def parse_field(text: str) -> Field:
    """Parse ``QQ``, ``Fp(7)``, ``QQ(zeta3)``."""
    s = text.strip()
    if s == "QQ":
        return QQ
    m = re.fullmatch(r"Fp\((\d+)\)", s) or re.fullmatch(r"F(\d+)", s)
    if m:
        return PrimeField(int(m.group(1)))
    m = re.fullmatch(r"QQ\(zeta(\d+)\)", s)
    if m:
        return Cyclotomic(int(m.group(1)))
    raise FieldError(f"unknown field descriptor {text!r}")


class FieldElement:
    """Immutable exact scalar tied to its field."""

    __slots__ = ("field", "payload")

    def __init__(self, field: Field, payload):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field} vs {other.field}")
            return other.payload
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.payload, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.payload, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.payload))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.payload, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.payload, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.payload))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.payload))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.payload, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.payload))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.payload)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.payload == other.payload
        if isinstance(other, (int, Fraction)):
            return self.payload == self._other(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.payload))

    def __str__(self):
        return self.field.format(self.payload)

    def __repr__(self):
        return f"{self.field}({self.field.format(self.payload)!r})"


def field_arithmetic(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldError(f"field mismatch: {a.field} vs {b.field}")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    try:
        return ops[op](b)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


def multiplicative_order(x: FieldElement, bound: int) -> int | None:
    """Order of ``x`` if it is at most ``bound``, else None."""
    if x.is_zero():
        return None
    one = x.field.one
    acc = x.payload
    for k in range(1, bound + 1):
        if acc == one:
            return k
        acc = x.field.mul(acc, x.payload)
    return None


def primitive_root_of_unity(field: Field, n: int) -> FieldElement:
    """Deterministic primitive n-th root of unity in ``field``.

    Fp: smallest residue of order n.  QQ(zeta_k): the power of +-zeta_k of
    order n with the lowest-degree payload (ties: smallest exponent).
    """
    if n < 1:
        raise FieldError(f"root order must be positive, got {n}")
    if isinstance(field, PrimeField):
        if (field.p - 1) % n:
            raise FieldError(f"Fp({field.p}) has no primitive {n}-th root of unity: {n} does not divide p-1 = {field.p - 1}")
        for g in range(1, field.p):
            if multiplicative_order(field(g), n) == n:
                return field(g)
        raise AssertionError("unreachable: cyclic group has an element of every order dividing p-1")
    if isinstance(field, Rationals):
        if n == 1:
            return field(1)
        if n == 2:
            return field(-1)
        raise FieldError(f"QQ contains only +-1 as roots of unity; no primitive {n}-th root")
    if isinstance(field, Cyclotomic):
        k = field.n
        group = 2 * k if k % 2 else k
        if group % n:
            raise FieldError(f"{field} has no primitive {n}-th root of unity: {n} does not divide {group}")
        z = field.gen
        best = None
        for j in range(k):
            for sign in ((1,) if k % 2 == 0 else (1, -1)):
                cand = z**j if sign == 1 else -(z**j)
                if multiplicative_order(cand, n) != n:
                    continue
                deg = max((i for i, c in enumerate(cand.payload) if c), default=0)
                rank = (deg, j, -sign)
                if best is None or rank < best[0]:
                    best = (rank, cand)
        assert best is not None
        return best[1]
    raise FieldError(f"unsupported field {field}")


# --- element text syntax ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SyntaxError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class ExpressionParser:
    """Recursive-descent parser for +, -, *, /, ^ and parentheses.

    ``atom`` maps names to values; values must support the arithmetic
    operators and ``__pow__`` with an int.  Division is only allowed by
    scalars, which the caller enforces through ``divide``.
    """

    def __init__(self, tokens, atom, number, divide):
        self.tokens = tokens
        self.i = 0
        self.atom = atom
        self.number = number
        self.divide = divide

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.i != len(self.tokens):
            raise SyntaxError(f"trailing input at token {self.tokens[self.i]!r}")
        return value

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.factor()
            value = value * rhs if op == "*" else self.divide(value, rhs)
        return value

    def factor(self):
        base = self.primary()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise SyntaxError("exponent must be a non-negative integer literal")
            return base**val
        return base

    def primary(self):
        kind, val = self.take()
        if kind == "num":
            return self.number(val)
        if kind == "name":
            return self.atom(val)
        if (kind, val) == ("op", "("):
            value = self.expr()
            if self.take() != ("op", ")"):
                raise SyntaxError("missing closing parenthesis")
            return value
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise SyntaxError(f"unexpected token {val!r}")


def parse_element(field: Field, text: str) -> FieldElement:
    """Parse ``3/4``, ``5`` or (cyclotomic) ``1 + 2*z - z^2``."""

    def atom(name):
        if name == "z" and isinstance(field, Cyclotomic):
            return field.gen
        raise SyntaxError(f"unknown symbol {name!r} for {field}")

    parser = ExpressionParser(tokenize(text), atom, lambda n: field(n), lambda a, b: a / b)
    return parser.parse()
