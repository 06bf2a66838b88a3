"""Containment verdicts I^(m) <= M^j I^r, with theorem tags, searches and conjecture checks.

Every verdict comes from reducing generators against a Groebner basis.  The
theorems (ELS, the postulation criterion) only contribute advisory tags; the
point of the lab is to check them, not to trust them.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .groebner import Budget, BudgetExceeded, buchberger
from .ideals import Ideal, ideal_contains, ideal_power, ideal_product, irrelevant_power, symbolic_power
from .invariants import alpha, regularity_0dim, regularity_of_power, symassreg_estimate
from .polynomials import Polynomial

VERDICT_FIELDS = (
    "config", "field", "N", "m", "r", "j", "holds", "witness_degree", "witness",
    "guarantees", "elapsed_ms", "status",
)

HOLDS, FAILS, BUDGET = "holds", "fails", "budget-exceeded"


@dataclass
class ContainmentVerdict:
    """Outcome of one check of I^(m) <= M^j I^r.

    ``holds`` is None when the budget ran out; no verdict is guessed.
    """

    config: str
    field: str
    N: int
    m: int
    r: int
    j: int
    holds: bool | None
    witness_degree: int | None = None
    witness: str | None = None
    guarantees: list[str] = field(default_factory=list)
    elapsed_ms: int = 0
    status: str = HOLDS
    witness_polynomial: Polynomial | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in VERDICT_FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict) -> "ContainmentVerdict":
        if set(data) != set(VERDICT_FIELDS):
            raise ValueError(f"verdict record needs exactly the fields {VERDICT_FIELDS}")
        return cls(**{k: data[k] for k in VERDICT_FIELDS})

    @classmethod
    def from_json(cls, line: str) -> "ContainmentVerdict":
        return cls.from_dict(json.loads(line))

    def same_outcome(self, other: "ContainmentVerdict") -> bool:
        """Equal up to timing."""
        a, b = self.to_dict(), other.to_dict()
        a.pop("elapsed_ms")
        b.pop("elapsed_ms")
        return a == b


def write_verdicts(verdicts: Iterable[ContainmentVerdict], path) -> None:
    with open(path, "w") as fh:
        for v in verdicts:
            fh.write(v.to_json() + "\n")


def read_verdicts(path) -> list[ContainmentVerdict]:
    with open(path) as fh:
        return [ContainmentVerdict.from_json(ln) for ln in fh if ln.strip()]


# --- theorems as predicates --------------------------------------------------

def els_guarantee(N: int, m: int, r: int) -> bool:
    """Ein-Lazarsfeld-Smith / Hochster-Huneke: I^(m) <= I^r once m >= N r."""
    return m >= N * r


def bhh_bound(N: int, r: int) -> int:
    """The conjectural threshold N r - (N - 1); never used to skip work."""
    if N < 1 or r < 1:
        raise ValueError("N and r must be positive")
    return N * r - (N - 1)


def higher_dimension_bound(N: int, r: int) -> int:
    """N r - 1: the weaker threshold asked about for points in P^N with N >= 3."""
    if N < 1 or r < 1:
        raise ValueError("N and r must be positive")
    return N * r - 1


GUARANTEED, INCONCLUSIVE = "guaranteed", "inconclusive"


def postulation_criterion(Z, m: int, r: int, budget: Budget | None = None) -> str:
    """``guaranteed`` iff r * reg(I) <= alpha(I^(m)), which forces I^(m) <= I^r."""
    I = symbolic_power(Z, 1, budget)
    reg = regularity_0dim(I, Z, budget)
    a = alpha(symbolic_power(Z, m, budget), budget)
    return GUARANTEED if r * reg <= a else INCONCLUSIVE


@dataclass
class PostulationVariants:
    """The proven criterion next to the two unproven variants asked about in the literature.

    ``power_variant``: reg(I^r) <= alpha(I^(m)).  ``symassreg_variant``:
    r * s <= alpha(I^(m)) with s the last estimate reg(I^(k))/k, k <= m_max.
    """

    proven: str
    power_variant: bool
    symassreg_variant: bool
    symassreg_used: Fraction

    @property
    def agree(self) -> bool:
        fired = self.proven == GUARANTEED
        return fired == self.power_variant == self.symassreg_variant


def postulation_variants(Z, m: int, r: int, m_max: int = 3,
                         budget: Budget | None = None) -> PostulationVariants:
    a = alpha(symbolic_power(Z, m, budget), budget)
    s = symassreg_estimate(Z, m_max, budget)[-1]
    return PostulationVariants(
        proven=postulation_criterion(Z, m, r, budget),
        power_variant=regularity_of_power(Z, r, budget) <= a,
        symassreg_variant=r * s <= a,
        symassreg_used=s,
    )


# --- the check ---------------------------------------------------------------

def target_ideal(Z, r: int, j: int = 0, budget: Budget | None = None) -> Ideal:
    """M^j I^r, cached on Z so repeated checks share its Groebner basis."""
    key = ("target", r, j)
    with Z.lock:
        hit = Z.cache.get(key)
    if hit is not None:
        return hit
    T = ideal_power(symbolic_power(Z, 1, budget), r)
    if j > 0:
        T = ideal_product(irrelevant_power(Z.ring, j), T)
    with Z.lock:
        Z.cache.setdefault(key, T)
        return Z.cache[key]


def reverify_witness(Z, r: int, j: int, witness: Polynomial, seed: int = 0,
                     budget: Budget | None = None) -> bool:
    """True iff ``witness`` is outside M^j I^r, by a basis built afresh from shuffled generators."""
    gens = list(target_ideal(Z, r, j, budget).generators)
    random.Random(seed).shuffle(gens)
    basis = buchberger(gens, Z.ring.order, budget, degree_bound=witness.total_degree())
    return not basis.is_member(witness)


def check_containment(Z, m: int, r: int, j: int = 0, budget: Budget | None = None,
                      tags: bool = True, variants: bool = False) -> ContainmentVerdict:
    """Decide I(Z)^(m) <= M^j I(Z)^r by generator reduction."""
    if m < 1 or r < 1 or j < 0:
        raise ValueError("need m, r >= 1 and j >= 0")
    start = time.perf_counter()
    verdict = ContainmentVerdict(Z.name, str(Z.field), Z.N, m, r, j, None)
    try:
        S = symbolic_power(Z, m, budget)
        res = ideal_contains(target_ideal(Z, r, j, budget), S, budget)
        if res.holds:
            verdict.holds, verdict.status = True, HOLDS
        else:
            w = res.witness
            if not reverify_witness(Z, r, j, w, seed=m * 1000 + r, budget=budget):
                raise AssertionError(f"witness for {Z.name} (m={m}, r={r}, j={j}) failed re-verification")
            verdict.holds, verdict.status = False, FAILS
            verdict.witness_polynomial = w
            verdict.witness = str(w)
            verdict.witness_degree = w.total_degree()
        if tags and j == 0:
            if els_guarantee(Z.N, m, r):
                verdict.guarantees.append("ELS")
            if postulation_criterion(Z, m, r, budget) == GUARANTEED:
                verdict.guarantees.append("postulation")
            if variants:
                pv = postulation_variants(Z, m, r, budget=budget)
                verdict.guarantees.append(f"variant-reg-power:{'fires' if pv.power_variant else 'silent'}")
                verdict.guarantees.append(f"variant-symassreg:{'fires' if pv.symassreg_variant else 'silent'}")
    except BudgetExceeded:
        verdict.holds, verdict.status = None, BUDGET
        verdict.witness = verdict.witness_degree = verdict.witness_polynomial = None
    verdict.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return verdict


# --- resurgence search -------------------------------------------------------

@dataclass
class ResurgenceEstimate:
    """Violations I^(m) not in I^r found in a window, and the lower bound they give for rho."""

    config: str
    m_max: int
    r_max: int
    violations: list[tuple[int, int]] = field(default_factory=list)
    lower_bound: Fraction | None = None
    upper_note: str = ""
    partial: bool = False
    checked: list[tuple[int, int, str]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "config": self.config,
            "window": [self.m_max, self.r_max],
            "violations": [list(v) for v in self.violations],
            "lower_bound": None if self.lower_bound is None else str(self.lower_bound),
            "upper_note": self.upper_note,
            "partial": self.partial,
            "checked": [list(c) for c in self.checked],
        }


def resurgence_search(Z, m_max: int, r_max: int, budget: Budget | None = None) -> ResurgenceEstimate:
    """Scan 1 <= r <= r_max, r < m <= m_max, skipping cells the ELS bound settles.

    Cells with m <= r are skipped since I^(m) contains I^r there; the scan
    never uses conjectural bounds to prune.
    """
    if m_max < 1 or r_max < 1:
        raise ValueError("window bounds must be at least 1")
    N = Z.N
    est = ResurgenceEstimate(
        Z.name, m_max, r_max,
        upper_note=f"rho <= {N}: I^(m) <= I^r whenever m >= {N} r",
    )
    for r in range(1, r_max + 1):
        for m in range(r + 1, m_max + 1):
            if els_guarantee(N, m, r):
                continue
            v = check_containment(Z, m, r, budget=budget, tags=False)
            est.checked.append((m, r, v.status))
            if v.status == BUDGET:
                est.partial = True
            elif not v.holds:
                est.violations.append((m, r))
    if est.violations:
        est.lower_bound = max(Fraction(m, r) for m, r in est.violations)
    return est


# --- conjectures -------------------------------------------------------------

PASS, FAIL = "pass", "fail"


@dataclass
class ConjectureItem:
    name: str
    statement: str
    status: str
    witness_degree: int | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _contains_status(fn) -> tuple[str, int | None]:
    try:
        res = fn()
    except BudgetExceeded:
        return BUDGET, None
    if res.holds:
        return PASS, None
    return FAIL, res.witness.total_degree()


def conjecture_checks(Z, r_values: Iterable[int] = (2,), j_values: Iterable[int] = (1,),
                      budget: Budget | None = None) -> list[ConjectureItem]:
    """Harbourne-Huneke, the Eisenbud-Mazur analogue and the nested I^(j+1) <= M I^(j) checks.

    A Harbourne-Huneke failure would be news, so it is re-verified from two
    independently shuffled generator orders before it is reported.
    """
    N = Z.N
    items = []
    for r in r_values:
        m, j = r * N, r * (N - 1)
        v = check_containment(Z, m, r, j, budget, tags=False)
        item = ConjectureItem("harbourne-huneke", f"I^({m}) <= M^{j} I^{r}", v.status, v.witness_degree)
        if v.status == FAILS:
            item.status = FAIL
            confirmed = all(
                reverify_witness(Z, r, j, v.witness_polynomial, seed=s, budget=budget) for s in (1, 2)
            )
            item.note = ("potential research finding: triple-verified" if confirmed
                         else "witness did not survive re-verification")
        elif v.status == HOLDS:
            item.status = PASS
        items.append(item)
    M = irrelevant_power(Z.ring, 1)
    status, deg = _contains_status(
        lambda: ideal_contains(ideal_product(M, symbolic_power(Z, 1, budget)), symbolic_power(Z, 2, budget), budget)
    )
    items.append(ConjectureItem("eisenbud-mazur", "I^(2) <= M I", status, deg))
    for j in j_values:
        status, deg = _contains_status(
            lambda: ideal_contains(
                ideal_product(M, symbolic_power(Z, j, budget)), symbolic_power(Z, j + 1, budget), budget
            )
        )
        items.append(ConjectureItem("nested", f"I^({j + 1}) <= M I^({j})", status, deg))
    return items
