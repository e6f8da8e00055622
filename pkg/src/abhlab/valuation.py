"""Monomial valuations: evaluation, valuation ideals, rank invariants and
toric chart moves.

A monomial valuation is a positive weight vector w in Q(sqrt(D))^d; a
monomial x^a gets value sum(a_i w_i) and a polynomial the minimum over its
support.  The valuation ideal at level m is the monomial ideal of all
exponents with value at least m; its minimal generators are found with the
shared monotone minimal-element search, box-bounded by ceil_ratio.

A chart move (i, j) records the substitution x_i <- x_i * x_j, i.e. the
passage to a blow-up chart; the i-th weight drops to w_i - w_j and a weight
hitting zero removes its variable (a unit at the new center).  Repeating
such moves until the weights are a free basis of the value group is the
monomialization loop; on rational weights it is the subtractive Euclidean
algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .monomials import MonomialIdeal, minimal_elements
from .values import FieldSpec, Value, ceil_ratio, int_pair_sign


@dataclass(frozen=True)
class ChartMove:
    """Substitution x_i <- x_i * x_j (0-based indices, i != j)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("chart move needs two distinct variables")

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j}


@dataclass(frozen=True)
class MonomializationResult:
    moves: tuple
    valuation: "MonomialValuation"
    succeeded: bool

    def to_json(self) -> dict:
        return {
            "moves": [m.to_json() for m in self.moves],
            "weights": [w.render() for w in self.valuation.weights],
            "succeeded": self.succeeded,
        }


@dataclass(frozen=True)
class MonomialValuation:
    """Positive weights on d coordinates, defining v(x^a) = sum a_i w_i."""

    dim: int
    weights: tuple
    spec: FieldSpec

    def __post_init__(self):
        ws = tuple(self.weights)
        if len(ws) != self.dim or self.dim < 1:
            raise ValueError(f"need dim={self.dim} weights, got {len(ws)}")
        for w in ws:
            if not isinstance(w, Value):
                raise TypeError(f"weights must be Values, got {type(w).__name__}")
            if w.spec != self.spec:
                raise ValueError("weight field does not match valuation field")
            if w.sign() <= 0:
                raise ValueError(f"weights must be strictly positive, got {w}")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def from_strings(cls, weights, d_radicand: int) -> "MonomialValuation":
        spec = FieldSpec(d_radicand)
        ws = tuple(Value.parse(w, spec) for w in weights)
        return cls(len(ws), ws, spec)

    # -- evaluation -------------------------------------------------------

    def value_of_monomial(self, a) -> Value:
        a = tuple(a)
        if len(a) != self.dim:
            raise ValueError(f"exponent {a} has wrong length (dim={self.dim})")
        out = Value.zero(self.spec)
        for e, w in zip(a, self.weights):
            if e:
                out = out + w.scale(e)
        return out

    def value_of_support(self, support) -> Value:
        """Value of a polynomial with the given monomial support (the min)."""
        support = [tuple(a) for a in support]
        if not support:
            raise ValueError("the zero polynomial has no value")
        best = self.value_of_monomial(support[0])
        for a in support[1:]:
            v = self.value_of_monomial(a)
            if v < best:
                best = v
        return best

    def total_weight(self) -> Value:
        out = self.weights[0]
        for w in self.weights[1:]:
            out = out + w
        return out

    # -- valuation ideals ---------------------------------------------------

    def valuation_ideal(self, m: Value) -> MonomialIdeal:
        """Minimal monomial generators of {a : sum a_i w_i >= m}."""
        if not isinstance(m, Value):
            raise TypeError("level m must be a Value")
        m._check(self.weights[0])
        return _valuation_ideal(self, m)

    def is_primary_check(self, m: Value) -> bool:
        """Does every variable occur to a pure power among the generators?

        This is the monomial criterion for being primary to the maximal
        ideal; it holds for every m > 0.
        """
        if m.sign() <= 0:
            raise ValueError(f"primary check wants m > 0, got {m}")
        ideal = self.valuation_ideal(m)
        for i in range(self.dim):
            if not any(
                g[i] > 0 and all(g[k] == 0 for k in range(self.dim) if k != i)
                for g in ideal.gens
            ):
                return False
        return True

    # -- rank invariants ------------------------------------------------

    def rational_rank(self) -> int:
        """Rank over Q of the span of the weights inside Q(sqrt(D))."""
        rows = [[w.q0, w.q1] for w in self.weights]
        return _fraction_rank(rows)

    def is_free_basis(self) -> bool:
        """Do the weights freely generate the value group?

        Inside the reals, Z-linear independence coincides with Q-linear
        independence, so this is exactly rational rank equal to dim.
        """
        return self.rational_rank() == self.dim

    def weight_lattice(self) -> tuple:
        """Canonical basis of the subgroup of Q(sqrt(D)) generated by the
        weights, for exact before/after comparisons under chart moves."""
        denom = 1
        for w in self.weights:
            denom = denom * w.q0.denominator // gcd(denom, w.q0.denominator)
            denom = denom * w.q1.denominator // gcd(denom, w.q1.denominator)
        rows = [
            (int(w.q0 * denom), int(w.q1 * denom)) for w in self.weights
        ]
        basis = _hnf_two_cols(rows)
        return tuple(
            (Fraction(a, denom), Fraction(b, denom)) for a, b in basis
        )

    # -- chart moves ---------------------------------------------------------

    def chart_move(self, move: ChartMove) -> "MonomialValuation":
        i, j = move.i, move.j
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise ValueError(f"chart move {move} out of range for dim {self.dim}")
        wi, wj = self.weights[i], self.weights[j]
        if wi < wj:
            raise ValueError(
                f"chart move needs w[{i}] >= w[{j}], got {wi} < {wj}"
            )
        new = wi - wj
        ws = list(self.weights)
        if new.is_zero():
            del ws[i]  # the variable became a unit at the new center
            if not ws:
                raise ValueError("chart move would remove the last variable")
        else:
            ws[i] = new
        return MonomialValuation(len(ws), tuple(ws), self.spec)

    def monomialize(self, max_steps: int = 10000) -> MonomializationResult:
        """Apply chart moves until the weights freely generate the value
        group, taking the lexicographically smallest applicable (i, j).

        Terminates on rational weights (Euclidean descent); for irrational
        non-free inputs the step budget may be exhausted, which is reported
        rather than raised.
        """
        if max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {max_steps}")
        cur = self
        moves = []
        for _ in range(max_steps):
            if cur.is_free_basis():
                return MonomializationResult(tuple(moves), cur, True)
            move = cur._first_applicable_move()
            moves.append(move)
            cur = cur.chart_move(move)
        if cur.is_free_basis():
            return MonomializationResult(tuple(moves), cur, True)
        return MonomializationResult(tuple(moves), cur, False)

    def _first_applicable_move(self) -> ChartMove:
        for i in range(self.dim):
            for j in range(self.dim):
                if i != j and self.weights[i] >= self.weights[j]:
                    return ChartMove(i, j)
        raise AssertionError("no applicable chart move on a nonempty weight set")


def scaled_pair_tables(v: MonomialValuation, m: Value, box):
    """Integer tables for the hot enumeration predicates.

    Clears denominators across the weights and m by a common factor, then
    tabulates k * w_i as integer pairs (a, b) denoting a + b*sqrt(D), so a
    weighted sum compares against m in a handful of integer operations.
    """
    denom = m.q0.denominator * m.q1.denominator // gcd(
        m.q0.denominator, m.q1.denominator
    )
    for w in v.weights:
        for f in (w.q0, w.q1):
            denom = denom * f.denominator // gcd(denom, f.denominator)
    tables = []
    steps = []
    for w, bound in zip(v.weights, box):
        step_a = int(w.q0 * denom)
        step_b = int(w.q1 * denom)
        steps.append((step_a, step_b))
        tables.append(
            [(k * step_a, k * step_b) for k in range(bound + 1)]
        )
    return tables, steps, (int(m.q0 * denom), int(m.q1 * denom))


@lru_cache(maxsize=None)
def _valuation_ideal(v: MonomialValuation, m: Value) -> MonomialIdeal:
    if m.sign() <= 0:
        return MonomialIdeal.unit(v.dim)
    box = tuple(ceil_ratio(m, w) for w in v.weights)
    tables, _, (ma, mb) = scaled_pair_tables(v, m, box)
    d_rad = v.spec.D

    def pred(a):
        acc_a = -ma
        acc_b = -mb
        for i, ai in enumerate(a):
            ta, tb = tables[i][ai]
            acc_a += ta
            acc_b += tb
        return int_pair_sign(acc_a, acc_b, d_rad) >= 0

    pts = minimal_elements(box, pred)
    return MonomialIdeal(v.dim, tuple(pts))


def _fraction_rank(rows) -> int:
    rows = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        rows[rank] = [x * inv for x in prow]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        rank += 1
    return rank


def _hnf_two_cols(rows) -> tuple:
    """Canonical Hermite form of the row lattice of an n x 2 integer matrix."""
    rows = [list(r) for r in rows if r[0] or r[1]]
    if not rows:
        return ()
    head = None
    tail = []
    for r in rows:
        if r[0] == 0:
            tail.append(r)
        elif head is None:
            head = r
        else:
            head, rem = _row_gcd(head, r)
            tail.append(rem)
    g2 = 0
    for r in tail:
        g2 = gcd(g2, r[1])
    if head is None:
        return ((0, g2),) if g2 else ()
    if head[0] < 0:
        head = [-head[0], -head[1]]
    if g2:
        head[1] %= g2
        return (tuple(head), (0, g2))
    return (tuple(head),)


def _row_gcd(r, s):
    """Unimodular combination: returns (g_row, zero_row) with the same span,
    where g_row[0] = gcd(r[0], s[0]) and zero_row[0] = 0."""
    a, b = r[0], s[0]
    g, u, v = _xgcd(a, b)
    new_r = [u * r[0] + v * s[0], u * r[1] + v * s[1]]
    new_s = [
        (-b // g) * r[0] + (a // g) * s[0],
        (-b // g) * r[1] + (a // g) * s[1],
    ]
    return new_r, new_s


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
