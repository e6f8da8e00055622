"""Two-phase simplex over exact rationals with Bland's rule.

Solves   max c.x   subject to   A_ub x <= b_ub,   A_eq x = b_eq,   x >= 0.

Every tableau entry is a Fraction, so there are no tolerances anywhere,
and Bland's pivoting rule excludes cycling.  Intended for the small, dense
feasibility and threshold problems that arise from Newton polyhedra: a
handful of rows, up to a few thousand columns.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(tab, basis, row, col):
    piv = tab[row][col]
    inv = _ONE / piv
    prow = [v * inv for v in tab[row]]
    tab[row] = prow
    for i, r in enumerate(tab):
        if i == row:
            continue
        f = r[col]
        if f:
            tab[i] = [a - f * b for a, b in zip(r, prow)]
    basis[row] = col


def _bland(tab, basis, ncols):
    """Run Bland-rule pivots on a tableau whose last row is reduced costs.

    The objective row holds cbar_j in columns and -(objective value) in the
    rhs slot.  Returns OPTIMAL or UNBOUNDED.
    """
    m = len(tab) - 1
    z = tab[-1]
    while True:
        col = next((j for j in range(ncols) if z[j] > 0), None)
        if col is None:
            return OPTIMAL
        best = None
        best_row = None
        for i in range(m):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[best_row])
                ):
                    best = ratio
                    best_row = i
        if best_row is None:
            return UNBOUNDED
        _pivot(tab, basis, best_row, col)
        z = tab[-1]


def maximize(c, a_ub=(), b_ub=(), a_eq=(), b_eq=(), want_duals=False):
    """Maximize c.x over A_ub x <= b_ub, A_eq x = b_eq, x >= 0.

    Returns (status, value, x) where status is one of OPTIMAL, INFEASIBLE
    or UNBOUNDED; value and x are None unless status is OPTIMAL.

    With want_duals the return gains a fourth entry: the row multipliers
    pi (ub rows first, then eq rows) satisfying pi.A_j >= c_j on every
    column at OPTIMAL (so pi certifies the objective bound), or, at
    INFEASIBLE, a Farkas vector with pi >= 0 on ub rows, pi.A_j >= 0 for
    every column and pi.rhs < 0.  Requires all right-hand sides to be
    non-negative (the only regime the callers use).
    """
    n = len(c)
    rows = []
    for coeffs, rhs in zip(a_ub, b_ub):
        rows.append((list(coeffs), Fraction(rhs), True))
    for coeffs, rhs in zip(a_eq, b_eq):
        rows.append((list(coeffs), Fraction(rhs), False))
    m = len(rows)
    if want_duals and any(rhs < 0 for _, rhs, _ in rows):
        raise ValueError("dual extraction assumes non-negative right-hand sides")

    nslack = sum(1 for r in rows if r[2])
    ncols = n + nslack
    tab = []
    basis = [-1] * m
    art_cols = []
    si = 0
    for i, (coeffs, rhs, is_ub) in enumerate(rows):
        row = [Fraction(v) for v in coeffs] + [_ZERO] * nslack
        if is_ub:
            row[n + si] = _ONE
            slack_col = n + si
            si += 1
        else:
            slack_col = None
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            slack_col = None  # slack coefficient is now -1, unusable as basis
        row.append(rhs)
        tab.append(row)
        if slack_col is not None:
            basis[i] = slack_col

    # original tableau columns, kept for dual recovery from the basis
    def orig_column(j):
        if j < n:
            return [Fraction(rows[i][0][j]) for i in range(m)]
        col = [_ZERO] * m
        k = n
        for i in range(m):
            if rows[i][2]:
                if k == j:
                    col[i] = _ONE
                    break
                k += 1
        return col

    # artificial columns for rows without a basic slack
    for i in range(m):
        if basis[i] == -1:
            art_cols.append(ncols)
            for j, row in enumerate(tab):
                row.insert(-1, _ONE if j == i else _ZERO)
            basis[i] = ncols
            ncols += 1

    row_index = list(range(m))  # surviving original row of each tableau row

    def duals_from_basis(obj):
        # solve pi.A_B = obj_B on the surviving rows
        mm = len(basis)
        cols = []
        rhs = []
        for i, b in enumerate(basis):
            if b < n + nslack:
                cols.append(orig_column(b))
                rhs.append(obj[b])
            else:  # artificial: unit column on its own row
                col = [_ZERO] * m
                col[row_index[i]] = _ONE
                cols.append(col)
                rhs.append(obj[b])
        full = [[cols[j][row_index[i]] for j in range(mm)] for i in range(mm)]
        pi_small = _solve_square(full, rhs)
        pi = [_ZERO] * m
        for i in range(mm):
            pi[row_index[i]] = pi_small[i]
        return pi

    if art_cols:
        # phase 1: maximize -(sum of artificials)
        obj = [_ZERO] * ncols
        for j in art_cols:
            obj[j] = Fraction(-1)
        _append_cost_row(tab, basis, obj, ncols)
        _bland(tab, basis, ncols)
        if tab[-1][-1] != 0:  # -(phase-1 optimum) != 0 means infeasible
            if want_duals:
                tab.pop()
                return INFEASIBLE, None, None, duals_from_basis(obj)
            return INFEASIBLE, None, None
        tab.pop()
        # drive remaining artificials out of the basis
        drop = []
        for i in range(len(basis)):
            if basis[i] in art_cols:
                col = next(
                    (
                        j
                        for j in range(ncols)
                        if j not in art_cols and tab[i][j] != 0
                    ),
                    None,
                )
                if col is None:
                    drop.append(i)  # redundant row
                else:
                    _pivot(tab, basis, i, col)
        for i in reversed(drop):
            del tab[i]
            del basis[i]
            del row_index[i]
        # delete artificial columns
        keep = [j for j in range(ncols) if j not in art_cols]
        remap = {j: k for k, j in enumerate(keep)}
        tab = [[row[j] for j in keep] + [row[-1]] for row in tab]
        basis = [remap[b] for b in basis]
        ncols = len(keep)

    obj = [Fraction(v) for v in c] + [_ZERO] * (ncols - n)
    _append_cost_row(tab, basis, obj, ncols)
    status = _bland(tab, basis, ncols)
    if status == UNBOUNDED:
        if want_duals:
            return UNBOUNDED, None, None, None
        return UNBOUNDED, None, None
    x = [_ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tab[i][-1]
    value = -tab[-1][-1]
    if want_duals:
        tab.pop()
        return OPTIMAL, value, x, duals_from_basis(obj)
    return OPTIMAL, value, x


def _append_cost_row(tab, basis, obj, ncols):
    z = list(obj) + [_ZERO]
    for i, b in enumerate(basis):
        coef = z[b]
        if coef:
            row = tab[i]
            z = [a - coef * v for a, v in zip(z, row)]
    tab.append(z)


def _solve_square(a, b):
    """Solve the square system x.A = b exactly (x and b are row vectors)."""
    m = len(a)
    # transpose to ordinary A^T x^T = b^T and eliminate
    mat = [[a[i][j] for i in range(m)] + [b[j]] for j in range(m)]
    for col in range(m):
        piv = next(i for i in range(col, m) if mat[i][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = _ONE / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        for i in range(m):
            if i != col and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[col])]
    return [mat[i][-1] for i in range(m)]
