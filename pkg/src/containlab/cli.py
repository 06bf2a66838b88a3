"""Command-line front end: registry browser, checks, invariants, searches and the golden catalog."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from . import __version__
from .configurations import (
    STANDARD_CONFIGS,
    ConfigurationError,
    boroczky12,
    dual_hesse,
    fermat,
    fermat_polynomial,
    klein_f7,
    parse_config,
    punctured_plane,
    star,
)
from .coefficients import PrimeField
from .containment import (
    BUDGET,
    FAILS,
    GUARANTEED,
    check_containment,
    conjecture_checks,
    postulation_criterion,
    resurgence_search,
    target_ideal,
)
from .groebner import Budget, BudgetExceeded
from .ideals import symbolic_power
from .invariants import alpha, invariant_report
from .oracle import symbolic_dimension

EXIT_HOLDS, EXIT_USAGE, EXIT_FAILS, EXIT_BUDGET = 0, 2, 10, 20

_MULT_NAMES = {2: "double", 3: "triple", 4: "quadruple", 5: "quintuple"}


@dataclass
class RunManifest:
    """What was run, under which budgets, and what came out."""

    command: list[str]
    timeout_secs: float | None
    max_pairs: int | None
    seed: int
    version: str = __version__
    results: list[dict] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")

    @classmethod
    def load(cls, path) -> "RunManifest":
        with open(path) as fh:
            data = json.load(fh)
        if "version" not in data:
            raise ValueError(f"{path} is not a run manifest")
        return cls(**data)

    @property
    def budget(self) -> Budget:
        return Budget(self.timeout_secs, self.max_pairs)


# --- golden catalog ----------------------------------------------------------

@dataclass
class Expectation:
    label: str
    expected: object
    observed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


def _verdict_expectations(Z, m, r, expected_holds, budget, witness_degree=None):
    v = check_containment(Z, m, r, budget=budget)
    out = [Expectation(f"I^({m}) <= I^{r}", expected_holds, v.holds)]
    if witness_degree is not None:
        out.append(Expectation("witness degree", witness_degree, v.witness_degree))
    return out


def _membership(Z, f, budget):
    """(f in I^(3), f in I^2)."""
    return symbolic_power(Z, 3, budget).contains(f, budget), target_ideal(Z, 2, 0, budget).contains(f, budget)


def case_dual_hesse(budget):
    Z, arr = dual_hesse()
    f = arr.product()
    in3, in2 = _membership(Z, f, budget)
    return _verdict_expectations(Z, 3, 2, False, budget, 9) + [
        Expectation("9-line product in I^(3)", True, in3),
        Expectation("9-line product in I^2", False, in2),
    ] + _verdict_expectations(Z, 4, 2, True, budget)


def _fermat_case(n, field_, budget):
    Z, _ = fermat(n, field_)
    F = fermat_polynomial(Z.ring, n)
    in3, in2 = _membership(Z, F, budget)
    return [
        Expectation(f"F_{n} in I^(3)", True, in3),
        Expectation(f"F_{n} in I^2", False, in2),
    ] + _verdict_expectations(Z, 3, 2, False, budget)


def case_fermat_4(budget):
    return _fermat_case(4, None, budget)


def case_fermat_3_f7(budget):
    return _fermat_case(3, PrimeField(7), budget)


def case_punctured_3(budget):
    Z = punctured_plane(3)
    return _verdict_expectations(Z, 3, 2, False, budget) + [
        Expectation("alpha(I^2) = p^2 + 1", 10, alpha(target_ideal(Z, 2, 0, budget), budget)),
        Expectation("oracle: I^(3) has a form of degree p^2", True, symbolic_dimension(Z, 3, 9) > 0),
    ]


def case_klein_f7(budget):
    Z, arr = klein_f7()
    klein = Z.cache["klein"]
    counts = arr.multiplicity_counts()
    return [
        Expectation("lines missing the conic", 21, len(arr.lines)),
        Expectation("tangent lines", 8, len(klein["tangent"])),
        Expectation("quadruple points", 21, counts.get(4, 0)),
        Expectation("triple points", 28, counts.get(3, 0)),
    ] + _verdict_expectations(Z, 3, 2, False, budget)


def case_boroczky_12(budget):
    Z, arr = boroczky12()
    in3 = symbolic_power(Z, 3, budget).contains(arr.product(), budget)
    return [
        Expectation("lines", 12, len(arr.lines)),
        Expectation("triple points", 19, len(Z.points)),
        Expectation("12-line product in I^(3)", True, in3),
    ] + _verdict_expectations(Z, 3, 2, False, budget)


def _star_case(d, budget):
    Z = star(d, 2)
    v = check_containment(Z, 3, 2, budget=budget)
    crit = postulation_criterion(Z, 3, 2, budget)
    return [
        Expectation("I^(3) <= I^2", True, v.holds),
        Expectation("postulation guaranteed implies containment", True, crit != GUARANTEED or v.holds is True),
    ]


def case_star_4(budget):
    return _star_case(4, budget)


def case_star_5(budget):
    return _star_case(5, budget)


CASES: dict[str, Callable] = {
    "boroczky-12": case_boroczky_12,
    "dual-hesse": case_dual_hesse,
    "fermat-3-f7": case_fermat_3_f7,
    "fermat-4": case_fermat_4,
    "klein-f7": case_klein_f7,
    "punctured-3": case_punctured_3,
    "star-4": case_star_4,
    "star-5": case_star_5,
}


def run_case(name: str, budget: Budget) -> dict:
    start = time.perf_counter()
    try:
        exps = CASES[name](budget)
        status = "PASS" if all(e.ok for e in exps) else "FAIL"
    except BudgetExceeded as exc:
        exps, status = [Expectation(str(exc), "within budget", "budget exceeded")], "BUDGET"
    return {
        "case": name,
        "status": status,
        "seconds": round(time.perf_counter() - start, 2),
        "expectations": [
            {"label": e.label, "expected": e.expected, "observed": e.observed, "ok": e.ok} for e in exps
        ],
    }


def _call(job):
    fn, args = job
    return fn(*args)


def run_pool(fn, arg_tuples: Sequence[tuple], threads: int) -> list:
    """Run independent jobs; results come back in submission order whatever the completion order."""
    jobs = [(fn, a) for a in arg_tuples]
    if threads <= 1 or len(jobs) <= 1:
        return [_call(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
        return list(pool.map(_call, jobs))


# --- commands ----------------------------------------------------------------

def _budget(args) -> Budget:
    env = Budget.from_env()
    return Budget(
        args.timeout if args.timeout is not None else env.timeout_secs,
        args.max_pairs if args.max_pairs is not None else env.max_pairs,
    )


def _manifest(args, results) -> RunManifest:
    b = _budget(args)
    return RunManifest(list(args.argv), b.timeout_secs, b.max_pairs, args.seed, results=results)


def cmd_config(args) -> int:
    if args.action == "list":
        for name in STANDARD_CONFIGS:
            print(name)
        return 0
    if not args.name:
        print("config show needs a configuration name", file=sys.stderr)
        return EXIT_USAGE
    Z = parse_config(args.name)
    arr = Z.arrangement
    summary = f"{len(Z.points)} points"
    if arr is not None:
        counts = arr.multiplicity_counts()
        kinds = ", ".join(f"{counts[k]} {_MULT_NAMES.get(k, f'{k}-fold')}" for k in sorted(counts, reverse=True))
        summary += f" ({kinds}), {len(arr.lines)} lines"
    if args.json:
        data = {
            "name": Z.name, "field": str(Z.field), "N": Z.N,
            "points": [[str(c) for c in p] for p in Z.points],
            "multiplicities": list(Z.multiplicities),
        }
        if arr is not None:
            data["lines"] = [str(l) for l in arr.lines]
            data["incidence"] = [arr.lines_through(p) for p in Z.points]
        print(json.dumps(data, indent=2))
        return 0
    print(f"{Z.name} over {Z.field} in P^{Z.N}: {summary}")
    print(Z.to_text(), end="")
    if arr is not None:
        for i, l in enumerate(arr.lines):
            print(f"L{i}: {l}")
    return 0


def cmd_check(args) -> int:
    Z = parse_config(args.config)
    v = check_containment(Z, args.m, args.r, args.j, _budget(args), variants=args.variants)
    if args.json:
        print(v.to_json())
    else:
        if v.status == BUDGET:
            print(f"{Z.name}: budget exceeded, no verdict for m={v.m}, r={v.r}, j={v.j}")
        else:
            rel = "is contained in" if v.holds else "is not contained in"
            target = f"M^{v.j} I^{v.r}" if v.j else f"I^{v.r}"
            print(f"{Z.name}: I^({v.m}) {rel} {target}  [{v.elapsed_ms} ms]")
            if v.guarantees:
                print("guarantees: " + ", ".join(v.guarantees))
            if not v.holds:
                print(f"witness (degree {v.witness_degree}): {v.witness}")
    if args.out:
        _manifest(args, [v.to_dict()]).save(args.out)
    return {BUDGET: EXIT_BUDGET, FAILS: EXIT_FAILS}.get(v.status, EXIT_HOLDS)


def cmd_invariants(args) -> int:
    Z = parse_config(args.config)
    what = [w.strip() for w in args.what.split(",") if w.strip()]
    unknown = set(what) - {"alpha", "hf", "reg", "waldschmidt"}
    if unknown:
        print(f"unknown invariant(s): {', '.join(sorted(unknown))}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rep = invariant_report(Z, m=args.symbolic, power=args.power, what=what, m_max=args.m_max,
                               budget=_budget(args))
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.json:
        print(json.dumps(rep.as_dict(), indent=2))
        return 0
    print(rep.name)
    if rep.alpha is not None:
        print(f"alpha = {rep.alpha}")
    if rep.scheme_degree is not None:
        print(f"scheme degree = {rep.scheme_degree}")
    if rep.regularity is not None:
        print(f"reg = {rep.regularity}")
    if rep.hilbert:
        print("HF(R/I): " + ", ".join(f"{d}:{v}" for d, v in sorted(rep.hilbert.items())))
    if rep.waldschmidt is not None:
        print(f"waldschmidt estimate = {rep.waldschmidt}")
    return 0


def cmd_reproduce(args) -> int:
    if args.all:
        names = sorted(CASES)
    else:
        unknown = [c for c in args.case if c not in CASES]
        if unknown:
            print(f"unknown case(s) {', '.join(unknown)}; known: {', '.join(sorted(CASES))}", file=sys.stderr)
            return EXIT_USAGE
        names = sorted(set(args.case))
    budget = _budget(args)
    results = run_pool(run_case, [(n, budget) for n in names], args.threads)
    width = max(len(n) for n in names)
    for res in results:
        print(f"{res['case']:<{width}}  {res['status']:<6} {res['seconds']:>8.2f}s")
        for e in res["expectations"]:
            if not e["ok"]:
                print(f"    {e['label']}: expected {e['expected']!r}, observed {e['observed']!r}")
    if args.out:
        _manifest(args, results).save(args.out)
    return 0 if all(r["status"] == "PASS" for r in results) else 1


def _search_job(spec, m_max, r_max, hahu, budget):
    Z = parse_config(spec)
    out = {"resurgence": resurgence_search(Z, m_max, r_max, budget).as_dict()}
    if hahu:
        out["conjectures"] = [it.as_dict() for it in conjecture_checks(Z, range(1, r_max + 1), budget=budget)]
    return out


def cmd_search(args) -> int:
    if args.m_max < 1 or args.r_max < 1:
        print("window bounds must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    parse_config(args.config)
    res = _search_job(args.config, args.m_max, args.r_max, args.hahu, _budget(args))
    est = res["resurgence"]
    print(f"{est['config']}: window m <= {args.m_max}, r <= {args.r_max}")
    for m, r, status in est["checked"]:
        print(f"  I^({m}) <= I^{r}: {status}")
    if est["violations"]:
        print(f"violations: {', '.join(f'({m},{r})' for m, r in est['violations'])}")
        print(f"resurgence lower bound: {est['lower_bound']}")
    else:
        print("no violations in the window")
    print(est["upper_note"])
    if est["partial"]:
        print("partial: some cells exceeded the budget")
    for item in res.get("conjectures", []):
        print(f"  {item['name']}: {item['statement']} -> {item['status']} {item['note']}".rstrip())
    if args.out:
        _manifest(args, [res]).save(args.out)
    return EXIT_BUDGET if est["partial"] else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--timeout", type=float, default=None,
                        help="seconds per Groebner basis computation (env CONTAINLAB_TIMEOUT_SECS, default 600)")
    common.add_argument("--max-pairs", type=int, default=None,
                        help="S-pair cap per computation (env CONTAINLAB_MAX_PAIRS, default 200000)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true")
    common.add_argument("--out", default=None, help="write a run manifest here")

    p = argparse.ArgumentParser(prog="containlab", description="Containment lab for symbolic and ordinary powers.")
    p.add_argument("--version", action="version", version=f"containlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("config", parents=[common], help="browse the configuration registry")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("name", nargs="?")
    c.set_defaults(func=cmd_config)

    c = sub.add_parser("check", parents=[common], help="decide I^(m) <= M^j I^r")
    c.add_argument("--config", required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--j", type=int, default=0)
    c.add_argument("--variants", action="store_true",
                   help="also evaluate the unproven reg(I^r) and symassreg criterion variants")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("invariants", parents=[common], help="alpha, Hilbert function, regularity")
    c.add_argument("--config", required=True)
    c.add_argument("--symbolic", type=int, default=1)
    c.add_argument("--power", type=int, default=None)
    c.add_argument("--what", default="alpha")
    c.add_argument("--m-max", type=int, default=3)
    c.set_defaults(func=cmd_invariants)

    c = sub.add_parser("reproduce", parents=[common], help="run the golden catalog")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--case", action="append")
    c.set_defaults(func=cmd_reproduce)

    c = sub.add_parser("search", parents=[common], help="resurgence window scan and conjecture checks")
    c.add_argument("--config", required=True)
    c.add_argument("--m-max", type=int, required=True)
    c.add_argument("--r-max", type=int, required=True)
    c.add_argument("--hahu", action="store_true")
    c.set_defaults(func=cmd_search)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    for name in ("m", "r"):
        if getattr(args, name, 1) < 1:
            parser.error(f"--{name} must be at least 1")
    if getattr(args, "j", 0) < 0:
        parser.error("--j must be non-negative")
    try:
        return args.func(args)
    except (ConfigurationError, SyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
