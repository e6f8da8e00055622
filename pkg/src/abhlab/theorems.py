"""Mechanical verification of the uniform approximation statement, its
witness, and the comparison-constant bound, over explicit parameter grids.

Failures are first-class report data carrying a violating monomial, never
exceptions: the tooling must distinguish "statement falsified on input"
from "program error".
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .asymptotic import GradedFamily, default_schedule, tau_asym_direct, tau_asym_limit
from .monomials import MonomialIdeal
from .valuation import MonomialValuation
from .values import Value, ceil_ratio


@dataclass(frozen=True)
class TheoremAReport:
    valuation: MonomialValuation
    e_used: Value
    grid: tuple  # of (m, l) pairs
    failures: tuple  # of (m, l, which, witness exponent)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "weights": [w.render() for w in self.valuation.weights],
            "e": self.e_used.render(),
            "grid": [[m.render(), l] for m, l in self.grid],
            "failures": [
                {"m": m.render(), "l": l, "which": which, "witness": list(w)}
                for m, l, which, w in self.failures
            ],
            "passed": self.passed,
        }


@dataclass(frozen=True)
class TheoremBReport:
    valuation: MonomialValuation
    grid: tuple  # of m values
    failures: tuple  # of (m, which, witness exponent or None)
    common_witness_ok: bool  # x_1...x_d lies in every colon (a_m : tau_m)

    @property
    def passed(self) -> bool:
        return not self.failures and self.common_witness_ok

    def to_json(self) -> dict:
        return {
            "weights": [w.render() for w in self.valuation.weights],
            "grid": [m.render() for m in self.grid],
            "failures": [
                {
                    "m": m.render(),
                    "which": which,
                    "witness": list(w) if w is not None else None,
                }
                for m, which, w in self.failures
            ],
            "common_witness_ok": self.common_witness_ok,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class IzumiReport:
    v: MonomialValuation
    w: MonomialValuation
    delta: Value
    p_threshold: Value
    C_paper: Value
    C_optimal: Value
    brute_force_max_ratio: Value

    def to_json(self) -> dict:
        return {
            "v_weights": [x.render() for x in self.v.weights],
            "w_weights": [x.render() for x in self.w.weights],
            "delta": self.delta.render(),
            "p_threshold": self.p_threshold.render(),
            "C_paper": self.C_paper.render(),
            "C_optimal": self.C_optimal.render(),
            "brute_force_max_ratio": self.brute_force_max_ratio.render(),
        }


@dataclass(frozen=True)
class IzumiBruteReport:
    C: Value
    trials: int
    violations: tuple  # of supports (tuples of exponent tuples)
    max_ratio: Value  # max v(S)/w(S) over sampled supports with w(S) > 0
    claim_ok: bool  # containment a_{l p} in b_{l delta} for l = 1..5

    @property
    def passed(self) -> bool:
        return not self.violations and self.claim_ok

    def to_json(self) -> dict:
        return {
            "C": self.C.render(),
            "trials": self.trials,
            "violations": [[list(a) for a in s] for s in self.violations],
            "max_ratio": self.max_ratio.render(),
            "claim_ok": self.claim_ok,
            "passed": self.passed,
        }


def theorem_a_e(family: GradedFamily) -> Value:
    """The canonical approximation constant: the value of x_1...x_d under
    the valuation, i.e. the sum of the weights."""
    return family.valuation.total_weight()


def verify_theorem_a(
    family: GradedFamily, m_grid, l_max: int, e: Value
) -> TheoremAReport:
    """Check a_m^l <= a_{l m} <= a_{m-e}^l exactly on the grid."""
    if l_max < 1:
        raise ValueError(f"l_max must be >= 1, got {l_max}")
    if e.sign() < 0:
        raise ValueError(f"e must be non-negative, got {e}")
    v = family.valuation
    grid = []
    failures = []
    for m in m_grid:
        a_m = family.ideal(m)
        a_me = family.ideal(m - e)
        pow_m = a_m
        pow_me = a_me
        for l in range(1, l_max + 1):
            if l > 1:
                pow_m = pow_m.product(a_m)
                pow_me = pow_me.product(a_me)
            a_lm = family.ideal(m.scale(l))
            grid.append((m, l))
            bad = _containment_witness(a_lm, pow_m)
            if bad is not None:
                failures.append((m, l, "power-in-level", bad))
            bad = _containment_witness(pow_me, a_lm)
            if bad is not None:
                failures.append((m, l, "level-in-shifted-power", bad))
    return TheoremAReport(v, e, tuple(grid), tuple(failures))


def minimize_e(family: GradedFamily, m_grid, l_max: int) -> Value:
    """Smallest e on the value-group grid below the canonical constant for
    which the grid verification passes.  Diagnostic, not a theorem."""
    e_top = theorem_a_e(family)
    candidates = _value_grid_up_to(family.valuation, e_top)
    for e in candidates:
        if verify_theorem_a(family, m_grid, l_max, e).passed:
            return e
    return e_top


def verify_theorem_b(
    family: GradedFamily, m_grid, schedule=None
) -> TheoremBReport:
    """Check that x_1...x_d multiplies every asymptotic test ideal into the
    valuation ideal at the same level, with the two tau routes agreeing."""
    if schedule is None:
        schedule = default_schedule(6)
    v = family.valuation
    one = (1,) * v.dim
    principal = MonomialIdeal(v.dim, (one,))
    failures = []
    common = None
    for m in m_grid:
        tau_m = tau_asym_direct(family, m)
        _, trace = tau_asym_limit(family, m, schedule)
        if not trace.agreed_with_direct:
            failures.append((m, "tau-route-disagreement", None))
            continue
        a_m = family.ideal(m)
        shifted = principal.product(tau_m)
        bad = _containment_witness(a_m, shifted)
        if bad is not None:
            failures.append((m, "witness-containment", bad))
        q = a_m.colon(tau_m)
        common = q if common is None else common.intersect(q)
    common_ok = common is not None and common.member(one)
    return TheoremBReport(v, tuple(m_grid), tuple(failures), common_ok)


def izumi_constants(
    v: MonomialValuation, w: MonomialValuation, trials: int = 256, seed: int = 0
) -> IzumiReport:
    """Comparison constants for two valuations on the same coordinates.

    delta is the minimal weight of the bounding valuation w (so that the
    w-ideal at level delta is the maximal ideal), the threshold p is the
    least level at which the asymptotic test ideal of the v-family falls
    into the maximal ideal (the sum of the v-weights, by the halfspace
    formula), and C_paper = 2 p / delta.  C_optimal = max_i v_i / w_i is
    the exact best constant on monomials, reported alongside.
    """
    _check_pair(v, w)
    delta = w.weights[0]
    for x in w.weights[1:]:
        if x < delta:
            delta = x
    p_threshold = v.total_weight()
    two = Value.of(2, v.spec)
    c_paper = two * p_threshold / delta
    c_optimal = v.weights[0] / w.weights[0]
    for i in range(1, v.dim):
        r = v.weights[i] / w.weights[i]
        if r > c_optimal:
            c_optimal = r
    brute = izumi_brute_check(v, w, c_optimal, trials, seed)
    return IzumiReport(
        v, w, delta, p_threshold, c_paper, c_optimal, brute.max_ratio
    )


def izumi_brute_check(
    v: MonomialValuation,
    w: MonomialValuation,
    C: Value,
    trials: int = 1000,
    seed: int = 0,
) -> IzumiBruteReport:
    """Sample random polynomial supports and check v(f) <= C * w(f) exactly.

    The d coordinate monomials are always included among the samples (one
    of them witnesses tightness of the optimal constant), then ``trials``
    random supports of size at most 4 with exponents at most 8.  The
    containment a_{l p} <= b_{l delta} is also verified for l = 1..5.
    """
    _check_pair(v, w)
    if C.sign() <= 0:
        raise ValueError(f"C must be positive, got {C}")
    rng = random.Random(seed)
    d = v.dim
    supports = [[tuple(1 if k == i else 0 for k in range(d))] for i in range(d)]
    for _ in range(trials):
        size = rng.randint(1, 4)
        supp = {
            tuple(rng.randint(0, 8) for _ in range(d)) for _ in range(size)
        }
        supp.discard((0,) * d)
        if supp:
            supports.append(sorted(supp))
    violations = []
    max_ratio = None
    for supp in supports:
        vs = v.value_of_support(supp)
        ws = w.value_of_support(supp)
        if vs > C * ws:
            violations.append(tuple(supp))
        if ws.sign() > 0:
            ratio = vs / ws
            if max_ratio is None or ratio > max_ratio:
                max_ratio = ratio
    delta = w.weights[0]
    for x in w.weights[1:]:
        if x < delta:
            delta = x
    p = v.total_weight()
    claim_ok = True
    for l in range(1, 6):
        a_lp = GradedFamily(v).ideal(p.scale(l))
        b_ld = GradedFamily(w).ideal(delta.scale(l))
        if not b_ld.contains(a_lp):
            claim_ok = False
            break
    if max_ratio is None:
        max_ratio = Value.zero(v.spec)
    return IzumiBruteReport(C, len(supports), tuple(violations), max_ratio, claim_ok)


def _check_pair(v: MonomialValuation, w: MonomialValuation) -> None:
    if v.dim != w.dim:
        raise ValueError(f"dimension mismatch: {v.dim} vs {w.dim}")
    if v.spec != w.spec:
        raise ValueError("the two valuations live in different fields")


def _containment_witness(big: MonomialIdeal, small: MonomialIdeal):
    """None if small is contained in big, else a generator outside big."""
    for g in small.gens:
        if not big.member(g):
            return g
    return None


def _value_grid_up_to(v: MonomialValuation, top: Value) -> list:
    """All values sum(n_i w_i) <= top with n in N^d, sorted ascending."""
    box = tuple(ceil_ratio(top, w) for w in v.weights)
    out = set()

    def rec(i, acc):
        if acc > top:
            return
        if i == v.dim:
            out.add(acc)
            return
        cur = acc
        for _ in range(box[i] + 1):
            rec(i + 1, cur)
            cur = cur + v.weights[i]
            if cur > top:
                break

    rec(0, Value.zero(v.spec))
    return sorted(out)
