"""Exact linear algebra over Z and Q.

Everything in this module works on immutable nested tuples and never touches
floating point.  Matrices are tuples of row tuples; "columns" of a matrix M
are M's column vectors.  All normal forms are canonical so that equal lattices
get structurally equal representations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Vec = tuple
Mat = tuple


def xgcd(a: int, b: int):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g = x*a + y*b."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def vec_gcd(v) -> int:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def primitive(v):
    """Scale an integer vector by 1/gcd so its entries are coprime."""
    g = vec_gcd(v)
    if g in (0, 1):
        return tuple(v)
    return tuple(a // g for a in v)


def clear_denominators(v):
    """Smallest positive multiple of a rational vector that is integral."""
    lcm = 1
    fracs = [Fraction(a) for a in v]
    for a in fracs:
        d = a.denominator
        lcm = lcm * d // gcd(lcm, d)
    return tuple(int(a * lcm) for a in fracs)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v, strict=True))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vscale(c, v):
    return tuple(c * a for a in v)


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular matrix with exact integer entries, stored row-major."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def from_columns(cls, columns, rows: int | None = None):
        columns = [tuple(c) for c in columns]
        if not columns:
            if rows is None:
                raise ValueError("empty matrix needs explicit row count")
            return cls(tuple(() for _ in range(rows)))
        return cls(tuple(zip(*columns)))

    @classmethod
    def identity(cls, n: int):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def column(self, j: int):
        return tuple(row[j] for row in self.entries)

    def columns_list(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else IntMatrix(())

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().entries
        return IntMatrix(
            tuple(tuple(dot(row, col) for col in ot) for row in self.entries)
        )

    def mul_vec(self, v):
        return tuple(dot(row, v) for row in self.entries)


def _colop_sub(cols, j, src, q):
    cols[j] = tuple(a - q * b for a, b in zip(cols[j], cols[src]))


def column_hnf(M: IntMatrix):
    """Canonical column Hermite normal form.

    Returns (H, U) with H = M*U, U unimodular.  Convention: pivots are
    positive, each pivot is the first nonzero entry of its column (pivot rows
    strictly increasing left to right), entries to the left of a pivot in its
    row lie in [0, pivot), and zero columns are shifted to the right.
    """
    m, n = M.rows, M.cols
    cols = M.columns_list()
    ucols = IntMatrix.identity(n).columns_list()
    piv = 0
    for row in range(m):
        # sweep the row with extended-gcd column ops until one pivot survives
        j = piv
        while True:
            nz = [l for l in range(piv, n) if cols[l][row] != 0]
            if not nz:
                break
            j = nz[0]
            if len(nz) == 1:
                break
            l = nz[1]
            a, b = cols[j][row], cols[l][row]
            if a % b == 0:
                q = a // b
                _colop_sub(cols, j, l, q)
                _colop_sub(ucols, j, l, q)
            elif b % a == 0:
                q = b // a
                _colop_sub(cols, l, j, q)
                _colop_sub(ucols, l, j, q)
            else:
                g, x, y = xgcd(a, b)
                cj, cl = cols[j], cols[l]
                uj, ul = ucols[j], ucols[l]
                cols[j] = tuple(x * p + y * q_ for p, q_ in zip(cj, cl))
                ucols[j] = tuple(x * p + y * q_ for p, q_ in zip(uj, ul))
                cols[l] = tuple((-b // g) * p + (a // g) * q_ for p, q_ in zip(cj, cl))
                ucols[l] = tuple((-b // g) * p + (a // g) * q_ for p, q_ in zip(uj, ul))
        if not any(cols[l][row] != 0 for l in range(piv, n)):
            continue
        if j != piv:
            cols[j], cols[piv] = cols[piv], cols[j]
            ucols[j], ucols[piv] = ucols[piv], ucols[j]
        if cols[piv][row] < 0:
            cols[piv] = tuple(-a for a in cols[piv])
            ucols[piv] = tuple(-a for a in ucols[piv])
        p = cols[piv][row]
        for l in range(piv):
            q = cols[l][row] // p  # floor division puts remainder in [0, p)
            if q:
                _colop_sub(cols, l, piv, q)
                _colop_sub(ucols, l, piv, q)
        piv += 1
    H = IntMatrix.from_columns(cols, rows=m)
    U = IntMatrix.from_columns(ucols, rows=n)
    return H, U


def hermite_normal_form(M: IntMatrix):
    """Alias for :func:`column_hnf`."""
    return column_hnf(M)


def smith_normal_form_transforms(M: IntMatrix):
    """Return (U, D, V) with D = U*M*V diagonal, d_1 | d_2 | ..., U, V unimodular."""
    m, n = M.rows, M.cols
    a = [list(row) for row in M.entries]
    U = [list(row) for row in IntMatrix.identity(m).entries]
    V = [list(row) for row in IntMatrix.identity(n).entries]

    def row_sub(i, src, q):
        a[i] = [p - q * r for p, r in zip(a[i], a[src])]
        U[i] = [p - q * r for p, r in zip(U[i], U[src])]

    def col_sub(j, src, q):
        for r in range(m):
            a[r][j] -= q * a[r][src]
        for r in range(n):
            V[r][j] -= q * V[r][src]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    s = 0
    while True:
        pos = None
        best = None
        for i in range(s, m):
            for j in range(s, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pos = (i, j)
        if pos is None:
            break
        row_swap(s, pos[0])
        col_swap(s, pos[1])
        while True:
            dirty = False
            for i in range(s + 1, m):
                if a[i][s]:
                    q = a[i][s] // a[s][s]
                    row_sub(i, s, q)
                    if a[i][s]:  # remainder became the smaller pivot candidate
                        row_swap(s, i)
                        dirty = True
            for j in range(s + 1, n):
                if a[s][j]:
                    q = a[s][j] // a[s][s]
                    col_sub(j, s, q)
                    if a[s][j]:
                        col_swap(s, j)
                        dirty = True
            if not dirty and all(a[i][s] == 0 for i in range(s + 1, m)) and all(
                a[s][j] == 0 for j in range(s + 1, n)
            ):
                break
        if a[s][s] < 0:
            a[s] = [-x for x in a[s]]
            U[s] = [-x for x in U[s]]
        # enforce divisibility d_s | a[i][j]
        fixed = False
        for i in range(s + 1, m):
            for j in range(s + 1, n):
                if a[i][j] % a[s][s] != 0:
                    row_sub(s, i, -1)  # add row i into the pivot row
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        s += 1
    return IntMatrix(tuple(map(tuple, U))), IntMatrix(tuple(map(tuple, a))), IntMatrix(
        tuple(map(tuple, V))
    )


def smith_normal_form(M: IntMatrix):
    """Nonzero invariant factors (d_1 | d_2 | ...) of an integer matrix."""
    _, D, _ = smith_normal_form_transforms(M)
    out = []
    for i in range(min(D.rows, D.cols)):
        if D.entries[i][i] != 0:
            out.append(D.entries[i][i])
    return tuple(out)


def integer_kernel_basis(M: IntMatrix):
    """Basis of {u in Z^cols : M*u = 0}, as a tuple of integer vectors."""
    H, U = column_hnf(M)
    out = []
    for j in range(M.cols):
        if all(H.entries[i][j] == 0 for i in range(M.rows)):
            out.append(U.column(j))
    return tuple(out)


def rational_rank(rows) -> int:
    """Rank over Q of a list of vectors."""
    work = [[Fraction(a) for a in row] for row in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = work[rank][col]
        work[rank] = [a / pv for a in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
        rank += 1
    return rank


def solve_rational(A_rows, b):
    """One rational solution x of A x = b, or None if inconsistent.

    A_rows is a sequence of matrix rows; free variables are set to zero.
    """
    m = len(A_rows)
    n = len(A_rows[0]) if m else 0
    aug = [[Fraction(a) for a in row] + [Fraction(b[i])] for i, row in enumerate(A_rows)]
    pivots = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        pv = aug[rank][col]
        aug[rank] = [a / pv for a in aug[rank]]
        for r in range(m):
            if r != rank and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b_ for a, b_ in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, m):
        if aug[r][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = aug[r][n]
    return tuple(x)


def rational_nullspace(A_rows):
    """Basis of the rational right nullspace of the row list A_rows."""
    m = len(A_rows)
    n = len(A_rows[0]) if m else 0
    work = [[Fraction(a) for a in row] for row in A_rows]
    pivots = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = work[rank][col]
        work[rank] = [a / pv for a in work[rank]]
        for r in range(m):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][fc]
        basis.append(tuple(v))
    return basis


def integer_orthogonal_complement(vectors, dim: int):
    """Integer vectors c with c . v = 0 for every given v.

    The returned rows span the rational orthogonal complement of ``vectors``,
    so {x : c . x = 0 for all returned c} is exactly the rational span.
    """
    if not vectors:
        return tuple(IntMatrix.identity(dim).entries)
    null = rational_nullspace([tuple(v) for v in vectors])
    return tuple(clear_denominators(v) for v in null)


def det_fraction(rows) -> Fraction:
    """Determinant of a square rational matrix, by fraction-free-ish elimination."""
    n = len(rows)
    work = [[Fraction(a) for a in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        pv = work[col][col]
        det *= pv
        work[col] = [a / pv for a in work[col]]
        for r in range(col + 1, n):
            if work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return det


def enumerate_box(lo, hi):
    """Iterate integer points of the box prod [lo_i, hi_i]."""
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return itertools.product(*ranges)
