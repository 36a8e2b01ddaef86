"""A small exact-rational simplex solver.

Solves  maximize c.x  subject to  A x <= b  with *free* variables, entirely in
Fraction arithmetic.  Bland's rule keeps it cycle-free.  Problem sizes in this
package are tiny (tens of rows), so a dense two-phase tableau is plenty.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _pivot(T, basis, row, col):
    pv = T[row][col]
    T[row] = [a / pv for a in T[row]]
    for r in range(len(T)):
        if r != row and T[r][col] != 0:
            f = T[r][col]
            T[r] = [a - f * b for a, b in zip(T[r], T[row])]
    basis[row] = col


def _simplex(T, basis, ncols):
    """Maximize with objective in last row of T; Bland's rule; returns status."""
    while True:
        obj = T[-1]
        col = next((j for j in range(ncols) if obj[j] > 0), None)
        if col is None:
            return OPTIMAL
        best_row, best_ratio = None, None
        for r in range(len(T) - 1):
            if T[r][col] > 0:
                ratio = T[r][-1] / T[r][col]
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[r] < basis[best_row]
                ):
                    best_row, best_ratio = r, ratio
        if best_row is None:
            return UNBOUNDED
        _pivot(T, basis, best_row, col)


def lp_maximize(c, A_ub, b_ub):
    """Maximize c.x over {x free : A_ub x <= b_ub}.

    Returns (status, x, value); x and value are None unless status is
    "optimal".
    """
    n = len(c)
    m = len(A_ub)
    c = [Fraction(a) for a in c]
    A = [[Fraction(a) for a in row] for row in A_ub]
    b = [Fraction(a) for a in b_ub]
    # free x -> x = xp - xm with xp, xm >= 0
    nv = 2 * n

    def split(row):
        return [row[j] for j in range(n)] + [-row[j] for j in range(n)]

    rows = []
    art_cols = []
    ncols = nv + m  # slacks
    for i in range(m):
        r = split(A[i]) + [Fraction(0)] * m + [b[i]]
        r[nv + i] = Fraction(1)
        if b[i] < 0:
            r = [-a for a in r]
        rows.append(r)
    # artificials for rows whose slack ended up with coefficient -1
    for i in range(m):
        if rows[i][nv + i] == -1:
            art_cols.append(i)
    total = ncols + len(art_cols)
    T = []
    basis = []
    art_index = {}
    for k, i in enumerate(art_cols):
        art_index[i] = ncols + k
    for i in range(m):
        r = rows[i][:-1] + [Fraction(0)] * len(art_cols) + [rows[i][-1]]
        if i in art_index:
            r[art_index[i]] = Fraction(1)
            basis.append(art_index[i])
        else:
            basis.append(nv + i)
        T.append(r)
    # phase I: maximize -(sum of artificials); tableau invariant is
    # last row = reduced costs, last cell = -(objective value)
    obj = [Fraction(0)] * (total + 1)
    for i in art_index:
        obj = [o + a for o, a in zip(obj, T[i])]
    for i in art_index:
        obj[art_index[i]] = Fraction(0)
    T.append(obj)
    if art_index:
        _simplex(T, basis, total)
        if T[-1][-1] != 0:
            return INFEASIBLE, None, None
        # drive leftover artificials out of the basis if possible
        for r in range(m):
            if basis[r] >= ncols:
                col = next((j for j in range(ncols) if T[r][j] != 0), None)
                if col is not None:
                    _pivot(T, basis, r, col)
    # phase II objective
    T[-1] = [Fraction(0)] * (total + 1)
    cc = split(c)
    for j in range(nv):
        T[-1][j] = cc[j]
    for r in range(m):
        j = basis[r]
        if j < nv and T[-1][j] != 0:
            f = T[-1][j]
            T[-1] = [a - f * b_ for a, b_ in zip(T[-1], T[r])]
    status = _simplex(T, basis, ncols)  # artificials never re-enter
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    xs = [Fraction(0)] * nv
    for r in range(m):
        if basis[r] < nv:
            xs[basis[r]] = T[r][-1]
    x = tuple(xs[j] - xs[n + j] for j in range(n))
    value = sum(ci * xi for ci, xi in zip(c, x))
    return OPTIMAL, x, value


def lp_feasible_strict(A_ub, b_ub, strict_rows, cap=Fraction(1)):
    """Is there x with A x <= b, strictly on the given rows?

    Maximizes a margin t added to every strict row (capped to stay bounded)
    and reports (feasible, witness).
    """
    n = len(A_ub[0]) if A_ub else 0
    A = [list(map(Fraction, row)) + [Fraction(1) if i in strict_rows else Fraction(0)]
         for i, row in enumerate(A_ub)]
    A.append([Fraction(0)] * n + [Fraction(1)])
    b = list(b_ub) + [cap]
    c = [Fraction(0)] * n + [Fraction(1)]
    status, x, value = lp_maximize(c, A, b)
    if status != OPTIMAL:
        return False, None
    if value > 0:
        return True, x[:-1]
    return False, None
