"""Asymptotic test ideals of the graded family of valuation ideals.

Two routes are provided.  The stabilization route evaluates
tau(a_{l*m}^{1/l}) along a divisibility schedule of l values (so the trace
is weakly increasing) and reports the stable member.  The direct route
evaluates the closed-form candidate read off the limiting halfspace:
generators are the b with sum((b_i + 1) w_i) strictly greater than m.
The direct formula is treated as a conjecture-with-oracle and is always
cross-checked against the stabilization route before being trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .monomials import MonomialIdeal, minimal_elements
from .testideal import tau_howald
from .valuation import MonomialValuation, scaled_pair_tables
from .values import Value, ceil_ratio, int_pair_sign


@dataclass(frozen=True)
class GradedFamily:
    """The family m -> valuation_ideal(v, m) of a monomial valuation."""

    valuation: MonomialValuation

    @property
    def spec(self):
        return self.valuation.spec

    @property
    def dim(self) -> int:
        return self.valuation.dim

    def ideal(self, m: Value) -> MonomialIdeal:
        return self.valuation.valuation_ideal(m)

    def check_family_law(self, pairs) -> bool:
        """Spot-check a_s * a_t contained in a_{s+t} for the given (s, t)."""
        for s, t in pairs:
            prod = self.ideal(s).product(self.ideal(t))
            if not self.ideal(s + t).contains(prod):
                return False
        return True


@dataclass(frozen=True)
class StabilizationTrace:
    schedule: tuple
    ideals: tuple
    stabilized: bool
    agreed_with_direct: bool

    def to_json(self) -> dict:
        return {
            "schedule": list(self.schedule),
            "ideals": [i.to_json() for i in self.ideals],
            "stabilized": self.stabilized,
            "agreed_with_direct": self.agreed_with_direct,
        }


def default_schedule(k_max: int = 8) -> tuple:
    """Divisibility chain lcm(1..k) for k = 1..k_max, duplicates removed."""
    out = []
    for k in range(1, k_max + 1):
        v = lcm(*range(1, k + 1))
        if not out or out[-1] != v:
            out.append(v)
    return tuple(out)


def tau_asym_direct(family: GradedFamily, m: Value) -> MonomialIdeal:
    """Halfspace candidate: generators b with sum((b_i+1) w_i) > m.

    Validate against tau_asym_limit before trusting the result.
    """
    if m.sign() <= 0:
        raise ValueError(f"level m must be positive, got {m}")
    v = family.valuation
    box = tuple(ceil_ratio(m, w) for w in v.weights)
    tables, steps, (ma, mb) = scaled_pair_tables(v, m, box)
    base_a = sum(s[0] for s in steps)  # the +1 shift contributes every weight
    base_b = sum(s[1] for s in steps)
    d_rad = v.spec.D

    def pred(b):
        acc_a = base_a - ma
        acc_b = base_b - mb
        for i, bi in enumerate(b):
            ta, tb = tables[i][bi]
            acc_a += ta
            acc_b += tb
        return int_pair_sign(acc_a, acc_b, d_rad) > 0

    pts = minimal_elements(box, pred)
    return MonomialIdeal(v.dim, tuple(pts))


def tau_asym_limit(
    family: GradedFamily,
    m: Value,
    schedule,
    stop_early: bool = True,
) -> tuple[MonomialIdeal, StabilizationTrace]:
    """Stable member of tau(a_{l*m}^{1/l}) along the schedule.

    The schedule must be a divisibility chain (each term divides the next),
    which makes the trace weakly increasing.  With stop_early the walk ends
    at the first pair of equal consecutive ideals; the direct-formula
    agreement flag compensates for stopping before the schedule's end.
    """
    if m.sign() <= 0:
        raise ValueError(f"level m must be positive, got {m}")
    schedule = [int(l) for l in schedule]
    if not schedule or any(l < 1 for l in schedule):
        raise ValueError("schedule must be a non-empty list of positive integers")
    for a, b in zip(schedule, schedule[1:]):
        if b % a != 0:
            raise ValueError(f"schedule is not a divisibility chain: {a} then {b}")
    used = []
    ideals = []
    for l in schedule:
        ideal_l = family.ideal(m.scale(l))
        tau_l = tau_howald(ideal_l, Fraction(1, l))
        used.append(l)
        ideals.append(tau_l)
        if stop_early and len(ideals) >= 2 and ideals[-1] == ideals[-2]:
            break
    stabilized = len(ideals) >= 2 and ideals[-1] == ideals[-2]
    final = ideals[-1]
    agreed = final == tau_asym_direct(family, m)
    trace = StabilizationTrace(tuple(used), tuple(ideals), stabilized, agreed)
    return final, trace
