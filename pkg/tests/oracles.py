"""Independent oracles used to pin expected values in the test suite.

Nothing here shares code with the package's decision paths: polyhedron
membership is re-decided by Fourier-Motzkin elimination, signs of
quadratic irrationals by mpmath interval arithmetic, and minimal-element
searches by exhaustive box scans.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

import mpmath


# -- interval-arithmetic sign oracle ----------------------------------------


def iv_sign(q0: Fraction, q1: Fraction, d: int, dps: int = 50) -> int:
    """Sign of q0 + q1*sqrt(d) via mpmath interval arithmetic."""
    if q1 == 0:
        return (q0 > 0) - (q0 < 0)
    with mpmath.workdps(dps):
        iv = mpmath.iv
        iv.dps = dps
        val = _iv_frac(q0) + _iv_frac(q1) * iv.sqrt(d)
        if val > 0:
            return 1
        if val < 0:
            return -1
    # ambiguous enclosure: exactly zero forces q0 = q1 = 0 for square-free
    # d > 1; otherwise retry with more digits
    if d > 1 and (q0 != 0 or q1 != 0):
        return iv_sign(q0, q1, d, dps * 2)
    return 0


def _iv_frac(q: Fraction):
    return mpmath.iv.mpf(q.numerator) / mpmath.iv.mpf(q.denominator)


# -- Fourier-Motzkin membership oracle ----------------------------------------


def fm_margin(gens, y):
    """max{eps : y - eps*1 in conv(gens) + orthant} by Fourier-Motzkin.

    Returns None when even the closure is infeasible.  The system has
    variables lambda_1..lambda_g, eps; all constraints are encoded as
    coeff.x <= const and lambda variables are eliminated one at a time.
    """
    gens = [tuple(g) for g in gens]
    g = len(gens)
    d = len(gens[0])
    y = [Fraction(v) for v in y]
    # variables: 0..g-1 lambdas, g is eps
    ineqs = []

    def row(coeffs, const):
        ineqs.append((tuple(coeffs), Fraction(const)))

    for j in range(g):
        c = [Fraction(0)] * (g + 1)
        c[j] = Fraction(-1)
        row(c, 0)  # -lambda_j <= 0
    c = [Fraction(1)] * g + [Fraction(0)]
    row(c, 1)  # sum lambda <= 1
    row([-x for x in c[:-1]] + [Fraction(0)], -1)  # -sum lambda <= -1
    for i in range(d):
        c = [Fraction(gens[j][i]) for j in range(g)] + [Fraction(1)]
        row(c, y[i])  # sum lambda_j a_i + eps <= y_i
    c = [Fraction(0)] * g + [Fraction(-1)]
    row(c, 0)  # -eps <= 0

    for var in range(g):
        pos, neg, zero = [], [], []
        for coeffs, const in ineqs:
            cv = coeffs[var]
            if cv > 0:
                pos.append((coeffs, const))
            elif cv < 0:
                neg.append((coeffs, const))
            else:
                zero.append((coeffs, const))
        new = list(zero)
        for cp, kp in pos:
            for cn, kn in neg:
                f = cp[var] / -cn[var]
                coeffs = tuple(a + f * b for a, b in zip(cp, cn))
                new.append((coeffs, kp + f * kn))
        # drop trivial rows, detect inconsistency
        ineqs = []
        for coeffs, const in new:
            if all(c == 0 for c in coeffs[:-1]) and coeffs[-1] == 0:
                if const < 0:
                    return None
                continue
            ineqs.append((coeffs, const))

    # remaining constraints bound eps alone
    upper = None
    for coeffs, const in ineqs:
        ce = coeffs[-1]
        if ce > 0:
            bound = const / ce
            if upper is None or bound < upper:
                upper = bound
        elif ce < 0:
            if const / ce > 0:  # eps >= positive const impossible? keep sane
                pass
            if -const / -ce > 0 and const < 0:
                return None  # eps >= c > 0 combined with eps >= 0 is fine
        else:
            if const < 0:
                return None
    return upper


def fm_member(gens, y, mode: str) -> bool:
    margin = fm_margin(gens, y)
    if margin is None:
        return False
    if mode == "closure":
        return margin >= 0
    return margin > 0


# -- exhaustive helpers --------------------------------------------------------


def brute_minimal_elements(box, pred):
    """All minimal points of a monotone predicate by full box scan."""
    hits = [p for p in iproduct(*(range(b + 1) for b in box)) if pred(p)]
    out = []
    for p in sorted(hits, key=sum):
        if not any(all(x <= yv for x, yv in zip(q, p)) for q in out):
            out.append(p)
    return sorted(out)


def matrix_rank(rows) -> int:
    import sympy

    return sympy.Matrix([[sympy.Rational(x) for x in r] for r in rows]).rank()


def lattice_equal(rows_a, rows_b) -> bool:
    """Do two sets of rational 2-vectors span the same Z-lattice (sympy HNF)?"""
    import sympy
    from sympy.matrices.normalforms import hermite_normal_form

    def hnf_of(rows):
        denom = 1
        for r in rows:
            for x in r:
                denom = sympy.ilcm(denom, sympy.Rational(x).q)
        m = sympy.Matrix([[int(sympy.Rational(x) * denom) for x in r] for r in rows])
        m = m.T  # sympy HNF works on columns of the transpose layout below
        h = hermite_normal_form(m)
        return h, denom

    ha, da = hnf_of(rows_a)
    hb, db = hnf_of(rows_b)
    # rescale to a common denominator before comparing
    scale = sympy.ilcm(da, db)
    return ha * (scale // da) == hb * (scale // db)
