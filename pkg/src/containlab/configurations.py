"""Point configurations: fat points, line arrangements and the named registry."""
from __future__ import annotations

import random
import re
import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .coefficients import (
    QQ,
    Cyclotomic,
    Field,
    FieldElement,
    PrimeField,
    parse_field,
    primitive_root_of_unity,
)
from .ideals import normalize_point
from .linalg import dense_to_rows, kernel_vector, rank
from .polynomials import Polynomial, PolynomialRing, product


class ConfigurationError(ValueError):
    pass


Point = tuple[FieldElement, ...]


def _point_key(pt: Point) -> tuple:
    return tuple(c.payload for c in pt)


@dataclass(frozen=True, eq=False)
class LineArrangement:
    """Lines in P^2 with the exact incidence of their pairwise intersection points."""

    ring: PolynomialRing
    lines: tuple[Polynomial, ...]
    points: tuple[Point, ...] = ()
    incidence: tuple[frozenset, ...] = ()

    @classmethod
    def from_lines(cls, ring: PolynomialRing, lines: Sequence[Polynomial]) -> "LineArrangement":
        if ring.nvars != 3:
            raise ConfigurationError("line arrangements live in P^2")
        vecs = [_line_vector(ring, l) for l in lines]
        keys = {_point_key(normalize_point(v)) for v in vecs}
        if len(keys) != len(vecs):
            raise ConfigurationError("lines are not pairwise distinct")
        found: dict[tuple, Point] = {}
        for a, b in combinations(vecs, 2):
            p = normalize_point(cross(a, b))
            found.setdefault(_point_key(p), p)
        pts = sorted(found.values(), key=_sort_key)
        incidence = tuple(
            frozenset(i for i, l in enumerate(lines) if l.evaluate(p).is_zero()) for p in pts
        )
        return cls(ring, tuple(lines), tuple(pts), incidence)

    def multiplicity_counts(self) -> dict[int, int]:
        """Number of intersection points through exactly k lines, keyed by k."""
        return dict(sorted(Counter(len(s) for s in self.incidence).items()))

    def points_of_multiplicity(self, k: int) -> list[Point]:
        return [p for p, s in zip(self.points, self.incidence) if len(s) == k]

    def lines_through(self, point: Sequence) -> list[int]:
        pt = tuple(self.ring.field(c) if not isinstance(c, FieldElement) else c for c in point)
        return [i for i, l in enumerate(self.lines) if l.evaluate(pt).is_zero()]

    def product(self) -> Polynomial:
        return product(self.lines, self.ring)


def _sort_key(pt: Point):
    return tuple(str(c) for c in pt)


def _line_vector(ring: PolynomialRing, l: Polynomial) -> Point:
    if l.total_degree() != 1 or not l.is_homogeneous():
        raise ConfigurationError(f"{l} is not a linear form")
    field_ = ring.field
    out = []
    for i in range(ring.nvars):
        e = tuple(1 if j == i else 0 for j in range(ring.nvars))
        out.append(FieldElement(field_, l.term_dict.get(e, field_.zero)))
    return tuple(out)


def cross(a: Sequence[FieldElement], b: Sequence[FieldElement]) -> Point:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


@dataclass(frozen=True, eq=False)
class FatPointConfiguration:
    """Projective points with multiplicities: the fat-point scheme Z."""

    ring: PolynomialRing
    points: tuple[Point, ...]
    multiplicities: tuple[int, ...]
    name: str
    arrangement: LineArrangement | None = None
    cache: dict = field(default_factory=dict, repr=False)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if len(self.points) != len(self.multiplicities):
            raise ConfigurationError("one multiplicity per point")
        if any(m < 1 for m in self.multiplicities):
            raise ConfigurationError("multiplicities must be positive")
        norm = []
        for p in self.points:
            if len(p) != self.ring.nvars:
                raise ConfigurationError(f"point {p} has the wrong number of coordinates")
            norm.append(normalize_point([self.ring.field(c) if not isinstance(c, FieldElement) else c for c in p]))
        if len({_point_key(p) for p in norm}) != len(norm):
            raise ConfigurationError("points are not pairwise distinct")
        object.__setattr__(self, "points", tuple(norm))
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def N(self) -> int:
        return self.ring.N

    def __len__(self):
        return len(self.points)

    def scaled(self, m: int) -> "FatPointConfiguration":
        """The scheme whose ideal is the m-th symbolic power of this one."""
        if m == 1:
            return self
        return FatPointConfiguration(
            self.ring, self.points, tuple(m * k for k in self.multiplicities), f"{self.name}^({m})"
        )

    def same_scheme(self, other: "FatPointConfiguration") -> bool:
        return self.ring == other.ring and self.support() == other.support()

    def support(self) -> dict:
        return {_point_key(p): k for p, k in zip(self.points, self.multiplicities)}

    def to_text(self) -> str:
        return "".join(
            f"({' : '.join(str(c) for c in p)}) ^ {k}\n" for p, k in zip(self.points, self.multiplicities)
        )

    @classmethod
    def from_text(cls, ring: PolynomialRing, text: str, name: str = "custom") -> "FatPointConfiguration":
        pts, mults = [], []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            m = re.fullmatch(r"\((.*)\)\s*\^\s*(\d+)", line)
            if not m:
                raise SyntaxError(f"bad point line {line!r}")
            pts.append(tuple(ring.field(c.strip()) for c in m.group(1).split(":")))
            mults.append(int(m.group(2)))
        return cls(ring, tuple(pts), tuple(mults), name)


def from_points(ring: PolynomialRing, points: Sequence[Sequence], name: str,
                multiplicities: Sequence[int] | None = None,
                arrangement: LineArrangement | None = None) -> FatPointConfiguration:
    pts = tuple(tuple(ring.field(c) if not isinstance(c, FieldElement) else c for c in p) for p in points)
    mults = tuple(multiplicities) if multiplicities is not None else (1,) * len(pts)
    return FatPointConfiguration(ring, pts, mults, name, arrangement)


def _plane(field_: Field) -> PolynomialRing:
    return PolynomialRing(field_, 3)


# --- named configurations ----------------------------------------------------

def dual_hesse() -> tuple[FatPointConfiguration, LineArrangement]:
    """The 12 triple points of the 9 lines x - e^k y, y - e^k z, z - e^k x over QQ(zeta3)."""
    F = Cyclotomic(3)
    ring = _plane(F)
    e = F.gen
    one, zero = F(1), F(0)
    pts = [
        (one, zero, zero), (zero, one, zero), (zero, zero, one),
        (one, one, one), (one, e, e**2), (one, e**2, e),
        (e, one, one), (one, e, one), (one, one, e),
        (e**2, one, one), (one, e**2, one), (one, one, e**2),
    ]
    x, y, z = ring.gens()
    lines = [a - e**k * b for k in range(3) for a, b in ((x, y), (y, z), (z, x))]
    arr = LineArrangement.from_lines(ring, lines)
    Z = from_points(ring, pts, "dual-hesse", arrangement=arr)
    _check(arr.multiplicity_counts().get(3) == 12, "dual Hesse should have 12 triple points")
    _check({_point_key(p) for p in arr.points_of_multiplicity(3)} == set(Z.support()),
           "dual Hesse points should be exactly the triple points")
    return Z, arr


def fermat_lines(ring: PolynomialRing, n: int) -> list[Polynomial]:
    eta = primitive_root_of_unity(ring.field, n)
    x, y, z = ring.gens()
    return [a - eta**k * b for k in range(n) for a, b in ((x, y), (y, z), (z, x))]


def fermat(n: int, field_: Field | None = None) -> tuple[FatPointConfiguration, LineArrangement]:
    """n^2 triple points (1 : eta^a : eta^b) plus the three coordinate points."""
    if n < 3:
        raise ConfigurationError("Fermat configurations need n >= 3")
    F = field_ if field_ is not None else Cyclotomic(n)
    if F.characteristic == 2:
        raise ConfigurationError("Fermat configurations need characteristic different from 2")
    ring = _plane(F)
    eta = primitive_root_of_unity(F, n)
    one, zero = F(1), F(0)
    pts = [(one, eta**a, eta**b) for a in range(1, n + 1) for b in range(1, n + 1)]
    pts += [(one, zero, zero), (zero, one, zero), (zero, zero, one)]
    arr = LineArrangement.from_lines(ring, fermat_lines(ring, n))
    name = f"fermat:{n}" if field_ is None else f"fermat:{n}:{F}"
    Z = from_points(ring, pts, name, arrangement=arr)
    counts = arr.multiplicity_counts()
    if n == 3:
        _check(counts == {3: 12}, f"Fermat n=3 incidence {counts}")
    else:
        _check(counts == {3: n * n, n: 3}, f"Fermat n={n} incidence {counts}")
    _check(set(Z.support()) == {_point_key(p) for p in arr.points}, "Fermat points should be all intersection points")
    return Z, arr


def fermat_polynomial(ring: PolynomialRing, n: int) -> Polynomial:
    x, y, z = ring.gens()
    return (x**n - y**n) * (y**n - z**n) * (z**n - x**n)


def star(d: int, N: int = 2, parameters: Sequence | None = None,
         field_: Field = QQ) -> FatPointConfiguration:
    """All C(d, N) points where exactly N of the hyperplanes sum_j t_i^j x_j = 0 meet."""
    if not d >= N >= 2:
        raise ConfigurationError(f"star configuration needs d >= N >= 2, got d={d}, N={N}")
    ts = list(parameters) if parameters is not None else list(range(1, d + 1))
    if len(ts) != d:
        raise ConfigurationError(f"need {d} parameters, got {len(ts)}")
    ts = [field_(t) if not isinstance(t, FieldElement) else t for t in ts]
    if len({t.payload for t in ts}) != d:
        raise ConfigurationError("star parameters must be distinct")
    ring = PolynomialRing(field_, N + 1)
    planes = [[(t**j).payload for j in range(N + 1)] for t in ts]
    pts = []
    for subset in combinations(range(d), N):
        vec = kernel_vector([planes[i] for i in subset], field_)
        pt = tuple(FieldElement(field_, c) for c in vec)
        on = [i for i in range(d) if field_.is_zero(_dot(field_, planes[i], vec))]
        if len(on) != N:
            raise ConfigurationError(f"degenerate parameters: a point lies on hyperplanes {on}")
        pts.append(pt)
    default = parameters is None
    tag = "" if default else ":" + ",".join(str(t) for t in ts)
    return from_points(ring, pts, f"star:{d}:{N}{tag}")


def _dot(field_, a, b):
    acc = field_.zero
    for x, y in zip(a, b):
        acc = field_.add(acc, field_.mul(x, y))
    return acc


def boroczky12() -> tuple[FatPointConfiguration, LineArrangement]:
    """The 19 triple points of the Boroczky arrangement of 12 lines, exactly over QQ(zeta12).

    Vertex P_k of the regular 12-gon is (cos, sin, 1) with cos = (xi^k + xi^-k)/2
    and sin = (xi^k - xi^-k)/(2 xi^3), xi = zeta12.  The lines are
    L_{i, 6 - 2i mod 12}: secants through two vertices, tangents when the
    indices agree.
    """
    n = 12
    F = Cyclotomic(n)
    ring = _plane(F)
    xi = F.gen
    i_unit = xi**3

    def vertex(k):
        c = (xi**k + xi ** (-k)) / 2
        s = (xi**k - xi ** (-k)) / (2 * i_unit)
        return (c, s, F(1))

    lines = []
    for i in range(n):
        m, k = i % n, (n // 2 - 2 * i) % n
        if m != k:
            vec = cross(vertex(m), vertex(k))
        else:
            c, s, _ = vertex(m)
            vec = (c, s, F(-1))
        lines.append(ring.linear_form(vec))
    arr = LineArrangement.from_lines(ring, lines)
    triple = arr.points_of_multiplicity(3)
    _check(len(triple) == 19, f"Boroczky-12 should have 19 triple points, found {len(triple)}")
    return from_points(ring, triple, "boroczky12", arrangement=arr), arr


def projective_plane_points(p: int) -> list[Point]:
    """All p^2 + p + 1 points of P^2(F_p), normalized, in a fixed order."""
    F = PrimeField(p)
    pts = []
    for a in range(p):
        for b in range(p):
            pts.append((F(1), F(a), F(b)))
    for b in range(p):
        pts.append((F(0), F(1), F(b)))
    pts.append((F(0), F(0), F(1)))
    return pts


def projective_plane_lines(ring: PolynomialRing) -> list[Polynomial]:
    """All lines of P^2(F_p), as normalized linear forms."""
    p = ring.field.p
    return [ring.linear_form(v) for v in projective_plane_points(p)]


def punctured_plane(p: int) -> FatPointConfiguration:
    """All points of P^2(F_p) except (0:0:1)."""
    if p % 2 == 0:
        raise ConfigurationError("punctured plane needs an odd prime")
    F = PrimeField(p)
    ring = _plane(F)
    pts = [pt for pt in projective_plane_points(p) if _point_key(pt) != (0, 0, 1)]
    return from_points(ring, pts, f"punctured:{p}")


def klein_quartic_mod7(ring: PolynomialRing) -> Polynomial:
    """Reduction of x^4 + y^4 + z^4 + 3a(x^2y^2 + y^2z^2 + z^2x^2), a = (-1 + sqrt(-7))/2, at sqrt(-7) = 0.

    This model of the Klein quartic is the one whose reduction mod 7 is a
    double conic; the model xy^3 + yz^3 + zx^3 reduces to a quartic that is
    not a square over F_7.
    """
    F = ring.field
    if not isinstance(F, PrimeField) or F.p != 7:
        raise ConfigurationError("the Klein reduction lives over F_7")
    a = F(-1) / F(2)
    x, y, z = ring.gens()
    return x**4 + y**4 + z**4 + (3 * a) * (x**2 * y**2 + y**2 * z**2 + z**2 * x**2)


def polynomial_sqrt(f: Polynomial) -> Polynomial:
    """Square root of a perfect square over a field of odd characteristic."""
    ring = f.ring
    F = ring.field
    if f.is_zero():
        return f
    order = ring.order
    lead_e = f.leading_exponent()
    if any(k % 2 for k in lead_e):
        raise ValueError("not a perfect square")
    lead_c = f.leading_coefficient()
    root_c = _field_sqrt(lead_c)
    r = ring.monomial(tuple(k // 2 for k in lead_e), root_c)
    two_lt = r.scale(2)
    for _ in range(len(f.term_dict) + 1):
        rest = f - r * r
        if rest.is_zero():
            return r
        e = rest.leading_exponent()
        le = two_lt.leading_exponent()
        q = tuple(a - b for a, b in zip(e, le))
        if any(k < 0 for k in q) or order.key(q) >= order.key(le):
            raise ValueError("not a perfect square")
        r = r + ring.monomial(q, rest.leading_coefficient() / two_lt.leading_coefficient())
    raise ValueError("not a perfect square")


def _field_sqrt(c: FieldElement) -> FieldElement:
    F = c.field
    if isinstance(F, PrimeField):
        for a in range(F.p):
            if F(a) * F(a) == c:
                return F(a)
        raise ValueError(f"{c} is not a square in {F}")
    if c == F(1):
        return F(1)
    raise ValueError("square roots only implemented over prime fields")


def klein_f7() -> tuple[FatPointConfiguration, LineArrangement]:
    """The 21 lines of P^2(F_7) missing the reduced Klein conic and their 49 intersection points."""
    F = PrimeField(7)
    ring = _plane(F)
    conic = polynomial_sqrt(klein_quartic_mod7(ring))
    _check(conic.total_degree() == 2, "extracted conic has the wrong degree")
    conic_pts = [p for p in projective_plane_points(7) if conic.evaluate(p).is_zero()]
    _check(len(conic_pts) == 8, f"a smooth conic over F_7 has 8 points, found {len(conic_pts)}")
    kinds = {0: [], 1: [], 2: []}
    for line in projective_plane_lines(ring):
        meet = sum(1 for p in conic_pts if line.evaluate(p).is_zero())
        kinds[meet].append(line)
    _check((len(kinds[0]), len(kinds[1]), len(kinds[2])) == (21, 8, 28),
           f"line classes {len(kinds[0])}/{len(kinds[1])}/{len(kinds[2])}")
    arr = LineArrangement.from_lines(ring, kinds[0])
    counts = arr.multiplicity_counts()
    _check(counts == {3: 28, 4: 21}, f"Klein F_7 incidence {counts}")
    Z = from_points(ring, arr.points, "klein-f7", arrangement=arr)
    Z.cache["klein"] = {"conic": conic, "tangent": kinds[1], "secant": kinds[2]}
    return Z, arr


def general_points(s: int, N: int = 2, seed: int = 0, max_draws: int = 10_000) -> FatPointConfiguration:
    """s seeded pseudo-random rational points, any N+1 of them spanning P^N."""
    if s < 1:
        raise ConfigurationError("need at least one point")
    rng = random.Random(seed)
    ring = PolynomialRing(QQ, N + 1)
    pts: list[list] = []
    draws = 0
    while len(pts) < s:
        draws += 1
        if draws > max_draws:
            raise ConfigurationError(f"could not draw {s} general points in P^{N} from seed {seed}")
        cand = [QQ.from_int(rng.randint(-9, 9)) for _ in range(N + 1)]
        if not any(cand):
            continue
        if _in_general_position(pts + [cand], N, new=len(pts)):
            pts.append(cand)
    return from_points(ring, [[FieldElement(QQ, c) for c in p] for p in pts], f"general:{s}:{N}:{seed}")


def _in_general_position(pts, N, new=None) -> bool:
    """No k <= N+1 of the points are linearly dependent (only subsets containing ``new`` are checked)."""
    idx = range(len(pts))
    for k in range(1, min(N + 1, len(pts)) + 1):
        for subset in combinations(idx, k):
            if new is not None and new not in subset:
                continue
            rows = [pts[i] for i in subset]
            if _rank_dense(rows) < k:
                return False
    return True


def _rank_dense(rows) -> int:
    return rank(dense_to_rows(rows, QQ), QQ)


def general_position_ok(Z: FatPointConfiguration) -> bool:
    return _in_general_position([[c.payload for c in p] for p in Z.points], Z.N)


def coordinate_points(N: int, subset: Sequence[int] | None = None, field_: Field = QQ) -> FatPointConfiguration:
    idx = sorted(set(range(N + 1) if subset is None else subset))
    if not idx:
        raise ConfigurationError("empty subset of coordinate points")
    if idx[0] < 0 or idx[-1] > N:
        raise ConfigurationError(f"coordinate indices must lie in 0..{N}")
    ring = PolynomialRing(field_, N + 1)
    pts = [tuple(field_(1 if j == i else 0) for j in range(N + 1)) for i in idx]
    tag = "" if subset is None else ":" + ",".join(map(str, idx))
    return from_points(ring, pts, f"coordpts:{N}{tag}")


def plane_subset(p: int, indices: Sequence[int]) -> FatPointConfiguration:
    """Points of P^2(F_p) picked by index into :func:`projective_plane_points`."""
    F = PrimeField(p)
    allp = projective_plane_points(p)
    pts = [allp[i] for i in sorted(set(indices))]
    return from_points(_plane(F), pts, f"plane:{p}:{','.join(map(str, sorted(set(indices))))}")


def _check(cond: bool, msg: str):
    if not cond:
        raise ConfigurationError(f"construction self-check failed: {msg}")


# --- registry ------------------------------------------------------------------

REGISTRY_EXAMPLES = (
    "dual-hesse",
    "fermat:<n>[:<field>]",
    "star:<d>:<N>[:t1,...]",
    "boroczky12",
    "punctured:<p>",
    "klein-f7",
    "general:<s>:<N>:<seed>",
    "coordpts:<N>[:i,j,...]",
    "plane:<p>:i,j,...",
)

#: concrete registry entries used by the acceptance suite and `config list`
STANDARD_CONFIGS = (
    "dual-hesse",
    "fermat:3",
    "fermat:4",
    "fermat:3:Fp(7)",
    "star:3:2",
    "star:4:2",
    "star:5:2",
    "star:4:3",
    "boroczky12",
    "punctured:3",
    "klein-f7",
    "general:1:2:1",
    "general:6:2:1",
    "coordpts:2",
)


def parse_config(spec: str) -> FatPointConfiguration:
    """Build a configuration from its registry name."""
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    try:
        if head == "dual-hesse" and not args:
            return dual_hesse()[0]
        if head == "fermat" and 1 <= len(args) <= 2:
            f = parse_field(args[1]) if len(args) == 2 else None
            return fermat(int(args[0]), f)[0]
        if head == "star" and 2 <= len(args) <= 3:
            params = None
            if len(args) == 3:
                params = [QQ(Fraction(t)) for t in args[2].split(",")]
            return star(int(args[0]), int(args[1]), params)
        if head == "boroczky12" and not args:
            return boroczky12()[0]
        if head == "punctured" and len(args) == 1:
            return punctured_plane(int(args[0]))
        if head == "klein-f7" and not args:
            return klein_f7()[0]
        if head == "general" and len(args) == 3:
            return general_points(int(args[0]), int(args[1]), int(args[2]))
        if head == "coordpts" and 1 <= len(args) <= 2:
            subset = [int(i) for i in args[1].split(",")] if len(args) == 2 else None
            return coordinate_points(int(args[0]), subset)
        if head == "plane" and len(args) == 2:
            return plane_subset(int(args[0]), [int(i) for i in args[1].split(",")])
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"bad configuration spec {spec!r}: {exc}") from exc
    raise ConfigurationError(f"unknown configuration {spec!r}; expected one of {', '.join(REGISTRY_EXAMPLES)}")

