"""Command-line front end: parsing, JSON I/O, result caching, self tests.

Exit codes: 0 all checks passed, 1 a verification failed (JSON report still
written to stdout), 2 malformed input (diagnostic names the offending
token).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .asymptotic import GradedFamily, default_schedule, tau_asym_direct, tau_asym_limit
from .monomials import MonomialIdeal
from .testideal import StabilizationError, tau_frobenius, tau_howald
from .theorems import (
    izumi_brute_check,
    izumi_constants,
    minimize_e,
    theorem_a_e,
    verify_theorem_a,
    verify_theorem_b,
)
from .valuation import MonomialValuation
from .values import FieldSpec, Value
from . import selftest as selftest_mod

SCHEMA = 1
CACHE_ENV = "ABHLAB_CACHE"


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace


class JsonCache:
    """Single-file JSON cache keyed by canonical argument strings.

    Entries carry the tool version tag; entries written by other versions
    are ignored.  Reads are shared, the single write happens at save time.
    """

    def __init__(self, path: str | None):
        self.path = path
        self.data: dict = {}
        self.dirty = False
        if path and os.path.exists(path):
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    self.data = json.load(fh)
            except (OSError, json.JSONDecodeError):
                self.data = {}

    def get_or(self, key: str, compute):
        if self.path is None:
            return compute()
        entry = self.data.get(key)
        if entry is not None and entry.get("version") == __version__:
            return entry["value"]
        value = compute()
        self.data[key] = {"version": __version__, "value": value}
        self.dirty = True
        return value

    def save(self) -> None:
        if self.path and self.dirty:
            with open(self.path, "w", encoding="utf-8") as fh:
                json.dump(self.data, fh, sort_keys=True)


def _dump(obj: dict, fmt: str, text_renderer=None) -> str:
    if fmt == "json":
        obj = {"schema": SCHEMA, **obj}
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))
    if text_renderer is not None:
        return text_renderer(obj)
    return json.dumps(obj, sort_keys=True, indent=2)


def _parse_weights(text: str, d_radicand: int) -> MonomialValuation:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError(f"empty weight list {text!r}")
    return MonomialValuation.from_strings(parts, d_radicand)


def _parse_grid(text: str, spec: FieldSpec) -> list:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError(f"empty grid {text!r}")
    return [Value.parse(p, spec) for p in parts]


def _load_ideal(path: str) -> MonomialIdeal:
    with open(path, "r", encoding="utf-8") as fh:
        return MonomialIdeal.from_json(json.load(fh))


def _cache_path(args) -> str | None:
    if getattr(args, "cache", None):
        return args.cache
    return os.environ.get(CACHE_ENV) or None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="abhlab",
        description="exact valuation ideals, test ideals and theorem checks "
        "for monomial valuations",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, weights=True):
        p.add_argument("--D", type=int, default=1, help="field radicand (1 = rationals)")
        if weights:
            p.add_argument("--weights", required=True, help="comma-separated weight literals")
        p.add_argument("--format", choices=("text", "json"), default="json")
        p.add_argument("--cache", default=None, help="JSON cache file path")

    p = sub.add_parser("valideal", help="valuation ideal at a level")
    common(p)
    p.add_argument("--m", required=True, help="level (value literal)")

    p = sub.add_parser("tau", help="test ideal of a monomial ideal")
    p.add_argument("--ideal", required=True, help="ideal JSON file")
    p.add_argument("--t", required=True, help="exponent (positive rational)")
    p.add_argument("--method", choices=("howald", "frobenius"), default="howald")
    p.add_argument("--p", type=int, default=2, help="characteristic for frobenius")
    p.add_argument("--e-max", type=int, default=20)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("--cache", default=None)

    p = sub.add_parser("tau-asym", help="asymptotic test ideal of the valuation family")
    common(p)
    p.add_argument("--m", required=True)
    p.add_argument("--method", choices=("direct", "limit"), default="direct")
    p.add_argument("--k-max", type=int, default=8)

    p = sub.add_parser("verify-a", help="uniform approximation containments on a grid")
    common(p)
    p.add_argument("--m-grid", required=True, help="comma-separated levels")
    p.add_argument("--l-max", type=int, default=4)
    p.add_argument("--e", default="auto", help="auto | minimize | value literal")

    p = sub.add_parser("verify-b", help="witness containment for asymptotic test ideals")
    common(p)
    p.add_argument("--m-grid", required=True)
    p.add_argument("--k-max", type=int, default=6)

    p = sub.add_parser("izumi", help="comparison constants for two valuations")
    p.add_argument("--D", type=int, default=1)
    p.add_argument("--v-weights", required=True)
    p.add_argument("--w-weights", required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("text", "json"), default="json")

    p = sub.add_parser("monomialize", help="chart moves to a free weight basis")
    common(p)
    p.add_argument("--max-steps", type=int, default=10000)

    p = sub.add_parser("selftest", help="run the randomized invariant suites")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--cases", type=int, default=25)

    return ap


def run(config: RunConfig, out=sys.stdout) -> int:
    args = config.args
    handler = _HANDLERS[config.command]
    return handler(args, out)


def _cmd_valideal(args, out) -> int:
    v = _parse_weights(args.weights, args.D)
    m = Value.parse(args.m, v.spec)
    cache = JsonCache(_cache_path(args))
    key = f"valideal|D={args.D}|w={','.join(x.render() for x in v.weights)}|m={m.render()}"
    ideal_json = cache.get_or(key, lambda: v.valuation_ideal(m).to_json())
    cache.save()
    ideal = MonomialIdeal.from_json(ideal_json)
    print(
        _dump(ideal.to_json(), args.format, lambda _: ideal.render()),
        file=out,
    )
    return 0


def _cmd_tau(args, out) -> int:
    ideal = _load_ideal(args.ideal)
    t = Fraction(args.t)
    cache = JsonCache(_cache_path(args))
    key = f"tau|{json.dumps(ideal.to_json(), sort_keys=True)}|t={t}|{args.method}|p={args.p}"
    if args.method == "howald":
        result = cache.get_or(
            key, lambda: {"ideal": tau_howald(ideal, t).to_json(), "provenance": {"method": "howald"}}
        )
    else:
        def compute():
            tau, trace = tau_frobenius(ideal, t, args.p, args.e_max)
            return {
                "ideal": tau.to_json(),
                "provenance": {
                    "method": "frobenius",
                    "stabilized_at_e": trace.stabilized_at_e,
                },
            }

        result = cache.get_or(key, compute)
    cache.save()
    tau = MonomialIdeal.from_json(result["ideal"])

    def text(_):
        return f"{tau.render()}  [{json.dumps(result['provenance'], sort_keys=True)}]"

    print(_dump(result, args.format, text), file=out)
    return 0


def _cmd_tau_asym(args, out) -> int:
    v = _parse_weights(args.weights, args.D)
    fam = GradedFamily(v)
    m = Value.parse(args.m, v.spec)
    cache = JsonCache(_cache_path(args))
    key = (
        f"tau-asym|D={args.D}|w={','.join(x.render() for x in v.weights)}"
        f"|m={m.render()}|{args.method}|k={args.k_max}"
    )

    def compute():
        if args.method == "direct":
            tau = tau_asym_direct(fam, m)
            return {"ideal": tau.to_json(), "provenance": {"method": "direct"}}
        tau, trace = tau_asym_limit(fam, m, default_schedule(args.k_max))
        return {
            "ideal": tau.to_json(),
            "provenance": {"method": "limit"},
            "trace": trace.to_json(),
        }

    result = cache.get_or(key, compute)
    cache.save()
    tau = MonomialIdeal.from_json(result["ideal"])
    print(_dump(result, args.format, lambda _: tau.render()), file=out)
    return 0


def _cmd_verify_a(args, out) -> int:
    v = _parse_weights(args.weights, args.D)
    fam = GradedFamily(v)
    grid = _parse_grid(args.m_grid, v.spec)
    if args.e == "auto":
        e = theorem_a_e(fam)
    elif args.e == "minimize":
        e = minimize_e(fam, grid, args.l_max)
    else:
        e = Value.parse(args.e, v.spec)
    report = verify_theorem_a(fam, grid, args.l_max, e)

    def text(obj):
        status = "PASS" if report.passed else "FAIL"
        return f"theorem-a {status}  e={report.e_used.render()}  grid={len(report.grid)} pairs"

    print(_dump(report.to_json(), args.format, text), file=out)
    return 0 if report.passed else 1


def _cmd_verify_b(args, out) -> int:
    v = _parse_weights(args.weights, args.D)
    fam = GradedFamily(v)
    grid = _parse_grid(args.m_grid, v.spec)
    report = verify_theorem_b(fam, grid, default_schedule(args.k_max))

    def text(obj):
        status = "PASS" if report.passed else "FAIL"
        return f"theorem-b {status}  grid={len(report.grid)} levels"

    print(_dump(report.to_json(), args.format, text), file=out)
    return 0 if report.passed else 1


def _cmd_izumi(args, out) -> int:
    v = _parse_weights(args.v_weights, args.D)
    w = _parse_weights(args.w_weights, args.D)
    report = izumi_constants(v, w, trials=args.trials, seed=args.seed)
    brute = izumi_brute_check(v, w, report.C_paper, trials=args.trials, seed=args.seed)
    payload = {**report.to_json(), "brute_check": brute.to_json()}

    def text(obj):
        status = "PASS" if brute.passed else "FAIL"
        return (
            f"izumi {status}  C_paper={report.C_paper.render()}  "
            f"C_optimal={report.C_optimal.render()}"
        )

    print(_dump(payload, args.format, text), file=out)
    return 0 if brute.passed else 1


def _cmd_monomialize(args, out) -> int:
    v = _parse_weights(args.weights, args.D)
    res = v.monomialize(args.max_steps)

    def text(obj):
        status = "ok" if res.succeeded else "budget-exhausted"
        moves = " ".join(f"({m.i},{m.j})" for m in res.moves) or "(none)"
        final = ", ".join(w.render() for w in res.valuation.weights)
        return f"monomialize {status}  moves: {moves}  final: {final}"

    print(_dump(res.to_json(), args.format, text), file=out)
    return 0 if res.succeeded else 1


def _cmd_selftest(args, out) -> int:
    if args.cases < 1:
        raise ValueError(f"cases must be >= 1, got {args.cases}")
    results = selftest_mod.run_all(args.seed, args.cases)
    failed = False
    for r in results:
        line = f"{r.name}: pass={r.cases - r.failures} fail={r.failures}"
        print(line, file=out)
        if not r.passed:
            failed = True
            print(
                "  reproducer: " + json.dumps(r.reproducer, sort_keys=True),
                file=out,
            )
    print(f"suites={len(results)} seed={args.seed} cases={args.cases}", file=out)
    return 1 if failed else 0


_HANDLERS = {
    "valideal": _cmd_valideal,
    "tau": _cmd_tau,
    "tau-asym": _cmd_tau_asym,
    "verify-a": _cmd_verify_a,
    "verify-b": _cmd_verify_b,
    "izumi": _cmd_izumi,
    "monomialize": _cmd_monomialize,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return run(RunConfig(args.command, args))
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
