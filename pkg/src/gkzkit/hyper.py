"""Truncated series solutions of toric hypergeometric systems.

A TruncatedSeries is a finite sum of terms c_u * y^(v+u) with exact rational
coefficients, the offsets u running over points of the integer kernel of the
configuration matrix.  Coefficients follow the classical gamma-ratio closed
form, so every contiguity relation imposed by the box operators
del^{u+} - del^{u-} holds identically on stored terms.

Truncation honesty: each series carries the set of kernel offsets whose true
coefficient is known ("region").  An operator image coefficient is asserted
only when every preimage offset lies in the region.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, gcd

from .configuration import PointConfiguration
from .intlinalg import (
    IntMatrix,
    integer_kernel_basis,
    integer_orthogonal_complement,
    solve_rational,
)
from .lattice import Lattice
from .lp import OPTIMAL, lp_maximize
from .secondary import config_volume


class ResonantParameterError(ValueError):
    """A coefficient recurrence met a vanishing exponent product."""


@dataclass(frozen=True)
class KernelBasis:
    vectors: tuple

    @property
    def rank(self) -> int:
        return len(self.vectors)


def toric_kernel_basis(A: PointConfiguration) -> KernelBasis:
    """Basis of {u in Z^k : A u = 0}, the exponents of the toric relations."""
    return KernelBasis(integer_kernel_basis(A.matrix))


def rank_volume(A: PointConfiguration) -> int:
    """Normalized volume of the Newton polytope: the generic holonomic rank."""
    return config_volume(A)


# -- nonresonance ---------------------------------------------------------------


@dataclass(frozen=True)
class ResonanceReport:
    nonresonant: bool
    witness_face: tuple | None  # indices of an offending codimension-one face

    def __bool__(self):
        return self.nonresonant


def is_nonresonant(A: PointConfiguration, beta) -> ResonanceReport:
    """Is no integer translate of beta in the span of a codimension-one face?

    For each such face take integer constraint rows C cutting out its span;
    beta - gamma lies in the span for an integer gamma iff C beta lies in the
    lattice generated by the columns of C.  (For a full-dimensional Newton
    polytope C is one primitive row h, the lattice h(Z^(1+n)) is all of Z, and
    the test degenerates to h(beta) being an integer.)
    """
    beta = tuple(Fraction(b) for b in beta)
    if len(beta) != A.ambient_dim:
        raise ValueError("parameter length must match the ambient dimension")
    d = A.newton.dim
    for face in A.poset.of_dim(d - 1):
        rows = integer_orthogonal_complement(A.face_points(face), A.ambient_dim)
        M = IntMatrix(rows)
        image = Lattice.from_generators(
            [M.column(j) for j in range(M.cols)], M.rows
        )
        target = M.mul_vec(beta)
        coords = solve_rational(image.basis.entries, target)
        if coords is not None and all(c.denominator == 1 for c in coords):
            if image.basis.mul_vec(coords) == target:
                return ResonanceReport(False, face.indices)
    return ResonanceReport(True, None)


def resonance_box_oracle(A: PointConfiguration, betas, radius: int = 5):
    """Brute-force resonance verdicts: search gamma over a box, exactly.

    Returns one boolean (nonresonant?) per beta.  The per-face images C gamma
    are enumerated once and the betas tested by set membership, which is the
    same existential search with the loop order swapped.
    """
    from .intlinalg import enumerate_box

    d = A.newton.dim
    n = A.ambient_dim
    face_data = []
    for face in A.poset.of_dim(d - 1):
        rows = integer_orthogonal_complement(A.face_points(face), n)
        M = IntMatrix(rows)
        hits = {M.mul_vec(g) for g in enumerate_box((-radius,) * n, (radius,) * n)}
        face_data.append((M, hits))
    out = []
    for beta in betas:
        beta = tuple(Fraction(b) for b in beta)
        resonant = any(M.mul_vec(beta) in hits for M, hits in face_data)
        out.append(not resonant)
    return out


# -- series ----------------------------------------------------------------------


def _l1(u) -> int:
    return sum(abs(a) for a in u)


def kernel_ball(basis: KernelBasis, order: int):
    """All kernel lattice points with L1 norm at most order."""
    r = basis.rank
    if r == 0:
        raise ValueError("kernel ball needs a nonempty basis")
    k = len(basis.vectors[0])
    if r == 1:
        w = basis.vectors[0]
        step = _l1(w)
        m = order // step
        pts = [tuple(t * a for a in w) for t in range(-m, m + 1)]
        return tuple(p for p in pts if _l1(p) <= order)
    # bounding box for the coefficients via exact LP on |B m|_1 <= order
    lo, hi = [], []
    for i in range(r):
        bounds = []
        for sign in (1, -1):
            c = [0] * r + [0] * k
            c[i] = sign
            A_ub = []
            b_ub = []
            for j in range(k):
                row = [basis.vectors[l][j] for l in range(r)]
                A_ub.append(row + [-1 if t == j else 0 for t in range(k)])
                b_ub.append(0)
                A_ub.append([-a for a in row] + [-1 if t == j else 0 for t in range(k)])
                b_ub.append(0)
            A_ub.append([0] * r + [1] * k)
            b_ub.append(order)
            status, x, value = lp_maximize(c, A_ub, b_ub)
            if status != OPTIMAL:
                raise AssertionError("kernel ball must be bounded")
            bounds.append(value if sign == 1 else -value)
        hi.append(int(Fraction(bounds[0]).__floor__()))
        lo.append(int(Fraction(bounds[1]).__ceil__()))
    out = []
    from .intlinalg import enumerate_box

    for m in enumerate_box(lo, hi):
        u = tuple(
            sum(m[l] * basis.vectors[l][j] for l in range(r))
            for j in range(len(basis.vectors[0]))
        )
        if _l1(u) <= order:
            out.append(u)
    return tuple(sorted(set(out)))


def gamma_coefficient(v, u):
    """Gamma-ratio coefficient of y^(v+u) relative to c_0 = 1.

    c_u multiplies (v_j - s) over s = 0..-u_j-1 where u_j < 0 and divides by
    (v_j + t) over t = 1..u_j where u_j > 0; a vanishing divisor names a
    resonant integer translate.
    """
    c = Fraction(1)
    for j, uj in enumerate(u):
        vj = Fraction(v[j])
        if uj > 0:
            for t in range(1, uj + 1):
                if vj + t == 0:
                    raise ResonantParameterError(
                        f"exponent {vj} at coordinate {j} meets the integer translate {-t}"
                    )
                c /= vj + t
        elif uj < 0:
            for s in range(-uj):
                c *= vj - s
    return c


@dataclass(frozen=True)
class TruncatedSeries:
    config: PointConfiguration
    beta: tuple
    base_exponent: tuple
    term_items: tuple  # sorted ((u, coeff), ...), zero coefficients dropped
    region: frozenset  # kernel offsets whose true coefficient is known
    truncation_order: int

    @cached_property
    def terms(self):
        return dict(self.term_items)

    @classmethod
    def make(cls, config, beta, base, terms, region, order):
        beta = tuple(Fraction(b) for b in beta)
        base = tuple(Fraction(b) for b in base)
        items = tuple(sorted((u, c) for u, c in terms.items() if c != 0))
        if config.matrix.mul_vec(base) != beta:
            raise ValueError("base exponent must solve A v = beta")
        return cls(config, beta, base, items, frozenset(region), order)

    def coefficient(self, u):
        return self.terms.get(tuple(u), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.term_items

    def scaled(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries.make(
            self.config, self.beta, self.base_exponent,
            {u: c * w for u, w in self.term_items}, self.region, self.truncation_order,
        )

    def plus(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if other.base_exponent != self.base_exponent or other.config != self.config:
            raise ValueError("series must share configuration and base exponent")
        out = dict(self.term_items)
        for u, c in other.term_items:
            out[u] = out.get(u, Fraction(0)) + c
        return TruncatedSeries.make(
            self.config, self.beta, self.base_exponent, out,
            self.region & other.region, min(self.truncation_order, other.truncation_order),
        )


def gamma_series(A: PointConfiguration, beta, cell, order: int, base_exponent=None) -> TruncatedSeries:
    """The canonical series attached to a maximal simplex: exponents v + u over
    the kernel ball, coefficients by gamma ratios, c_0 = 1.

    With base_exponent the caller may pick any other v with A v = beta (for
    example a kernel-rational translate selecting a different local solution).
    """
    res = is_nonresonant(A, beta)
    if not res:
        raise ResonantParameterError(
            f"parameter is resonant at the face {res.witness_face}"
        )
    beta = tuple(Fraction(b) for b in beta)
    cell = tuple(sorted(cell))
    if base_exponent is None:
        cols = [A.matrix.column(j) for j in cell]
        rows = [[Fraction(cols[j][i]) for j in range(len(cell))] for i in range(A.ambient_dim)]
        sol = solve_rational(rows, beta)
        if sol is None:
            raise ValueError("cell does not span the parameter")
        v = [Fraction(0)] * A.size
        for val, j in zip(sol, cell):
            v[j] = val
    else:
        v = [Fraction(b) for b in base_exponent]
    basis = toric_kernel_basis(A)
    if basis.rank == 0:
        ball = [(0,) * A.size]
    else:
        ball = kernel_ball(basis, order)
    terms = {}
    for u in ball:
        c = gamma_coefficient(v, u)
        if c != 0:
            terms[u] = c
    return TruncatedSeries.make(A, beta, v, terms, set(ball), order)


# -- operators --------------------------------------------------------------------


@dataclass(frozen=True)
class OperatorSpec:
    kind: str  # "euler" | "box"
    index: int | None = None
    vector: tuple | None = None

    @classmethod
    def euler(cls, i: int) -> "OperatorSpec":
        return cls("euler", index=i)

    @classmethod
    def box(cls, u) -> "OperatorSpec":
        return cls("box", vector=tuple(u))


def _falling(x, n: int) -> Fraction:
    out = Fraction(1)
    for t in range(n):
        out *= x - t
    return out


def apply_operator(series: TruncatedSeries, op: OperatorSpec) -> TruncatedSeries:
    """Exact term-wise action of an Euler or box operator."""
    if op.kind == "euler":
        i = op.index
        beta_i = series.beta[i]
        row = series.config.matrix.entries[i]
        out = {}
        for u, c in series.term_items:
            mult = sum(r * (v + uu) for r, v, uu in zip(row, series.base_exponent, u)) - beta_i
            if mult != 0:
                out[u] = c * mult
        return TruncatedSeries.make(
            series.config, series.beta, series.base_exponent, out,
            series.region, series.truncation_order,
        )
    if op.kind == "box":
        w = op.vector
        if series.config.matrix.mul_vec(w) != (0,) * series.config.ambient_dim:
            raise ValueError("box exponent must lie in the kernel")
        wplus = tuple(max(a, 0) for a in w)
        base = tuple(v - p for v, p in zip(series.base_exponent, wplus))
        # the image is homogeneous for the shifted parameter beta - A w_+
        beta = tuple(
            b - s for b, s in zip(series.beta, series.config.matrix.mul_vec(wplus))
        )
        out = {}
        for u, c in series.term_items:
            ff_plus = Fraction(1)
            ff_minus = Fraction(1)
            for j, wj in enumerate(w):
                x = series.base_exponent[j] + u[j]
                if wj > 0:
                    ff_plus *= _falling(x, wj)
                elif wj < 0:
                    ff_minus *= _falling(x, -wj)
            if ff_plus != 0:
                out[u] = out.get(u, Fraction(0)) + c * ff_plus
            shifted = tuple(a + b for a, b in zip(u, w))
            if ff_minus != 0:
                out[shifted] = out.get(shifted, Fraction(0)) - c * ff_minus
        region = frozenset(
            m for m in series.region
            if tuple(a - b for a, b in zip(m, w)) in series.region
        )
        out = {u: c for u, c in out.items() if u in region}
        return TruncatedSeries.make(
            series.config, beta, base, out, region, series.truncation_order,
        )
    raise ValueError(f"unknown operator kind {op.kind!r}")


def differentiate(series: TruncatedSeries, gamma) -> TruncatedSeries:
    """Apply del^gamma for gamma in N^k, term by term."""
    gamma = tuple(int(g) for g in gamma)
    if any(g < 0 for g in gamma):
        raise ValueError("gamma must be nonnegative")
    base = tuple(v - g for v, g in zip(series.base_exponent, gamma))
    beta = tuple(
        b - s
        for b, s in zip(series.beta, series.config.matrix.mul_vec(gamma))
    )
    out = {}
    for u, c in series.term_items:
        f = Fraction(1)
        for j, g in enumerate(gamma):
            f *= _falling(series.base_exponent[j] + u[j], g)
        if f != 0:
            out[u] = c * f
    return TruncatedSeries(
        series.config, beta, base,
        tuple(sorted(out.items())), series.region, series.truncation_order,
    )


def _contiguity_products(base, u, w):
    """(P+, P-) with c_{u+w} P+ = c_u P- for any solution series with the
    given base exponent; the identity is the box operator del^{w+} - del^{w-}
    acting on exponents base + offset."""
    pp = Fraction(1)
    pm = Fraction(1)
    for j, wj in enumerate(w):
        x = Fraction(base[j]) + u[j]
        if wj > 0:
            for t in range(1, wj + 1):
                pp *= x + t
        elif wj < 0:
            for s in range(-wj):
                pm *= x - s
    return pp, pm


def antiderivative(series: TruncatedSeries, gamma) -> TruncatedSeries:
    """Inverse of del^gamma on truncated solutions.

    Division determines each coefficient except at exponents annihilated by
    the forward derivative (vanishing divisor product).  Those are pinned by
    the contiguity relations of the target series and recovered by
    propagation from determined neighbours; anything still undetermined is
    dropped from the region rather than guessed.
    """
    gamma = tuple(int(g) for g in gamma)
    if any(g < 0 for g in gamma):
        raise ValueError("gamma must be nonnegative")
    base = tuple(v + g for v, g in zip(series.base_exponent, gamma))
    beta = tuple(
        b + s
        for b, s in zip(series.beta, series.config.matrix.mul_vec(gamma))
    )
    out = {}
    undetermined = set()
    for u in series.region:
        div = Fraction(1)
        for j, g in enumerate(gamma):
            for t in range(1, g + 1):
                div *= series.base_exponent[j] + u[j] + t
        if div == 0:
            undetermined.add(u)
            continue
        c = series.coefficient(u)
        if c:
            out[u] = c / div
    basis = toric_kernel_basis(series.config).vectors
    moves = [w for w in basis] + [tuple(-a for a in w) for w in basis]
    progress = True
    while progress and undetermined:
        progress = False
        for m in sorted(undetermined):
            for w in moves:
                u = tuple(a - b for a, b in zip(m, w))
                if u in undetermined or u not in series.region:
                    continue
                pp, pm = _contiguity_products(base, u, w)
                if pp == 0:
                    continue
                # c_m * pp = c_u * pm with c_u already determined
                val = out.get(u, Fraction(0)) * pm / pp
                if val:
                    out[m] = val
                undetermined.discard(m)
                progress = True
                break
    region = frozenset(series.region - undetermined)
    out = {u: c for u, c in out.items() if u in region}
    return TruncatedSeries(
        series.config, beta, base,
        tuple(sorted(out.items())), region, series.truncation_order,
    )


def shift_inverse(series: TruncatedSeries, u) -> TruncatedSeries:
    """del^{-u} for a mixed-sign integer vector u: differentiate by the
    negative part first (killing factors act before any division), then
    antidifferentiate by the positive part."""
    u = tuple(int(a) for a in u)
    uplus = tuple(max(a, 0) for a in u)
    uminus = tuple(max(-a, 0) for a in u)
    return antiderivative(differentiate(series, uminus), uplus)


# -- annihilation -------------------------------------------------------------------


@dataclass(frozen=True)
class AnnihilationReport:
    passed: bool
    determined_zero: int
    determined_nonzero: tuple  # offending (operator, offset, value) triples
    boundary_indeterminate: int

    def __bool__(self):
        return self.passed


def annihilation_check(series: TruncatedSeries) -> AnnihilationReport:
    """Apply every Euler operator and every kernel-basis box operator and
    assert vanishing of all fully determined image coefficients."""
    zero = 0
    bad = []
    boundary = 0
    for i in range(series.config.ambient_dim):
        img = apply_operator(series, OperatorSpec.euler(i))
        for u, c in img.term_items:
            bad.append((f"euler_{i}", u, c))
        zero += len(img.region) - len(img.term_items)
    for w in toric_kernel_basis(series.config).vectors:
        img = apply_operator(series, OperatorSpec.box(w))
        for u, c in img.term_items:
            if u in img.region:
                bad.append((f"box_{w}", u, c))
        zero += len(img.region) - sum(1 for u, _ in img.term_items if u in img.region)
        boundary += len(series.region) - len(img.region)
    return AnnihilationReport(not bad, zero, tuple(bad), boundary)


# -- the extension construction ------------------------------------------------------


def _insert(vec, k, value):
    return tuple(vec[:k]) + (value,) + tuple(vec[k:])


def _drop(vec, k):
    return tuple(vec[:k]) + tuple(vec[k + 1:])


def kernel_slice_representative(A: PointConfiguration, k: int, ell: int):
    """Some u with A u = 0 and u_k = ell, of small L1 norm, or None.

    The representative is reduced against the sublattice of kernel vectors
    vanishing at k; the construction downstream is representative-independent.
    """
    basis = toric_kernel_basis(A).vectors
    if not basis:
        return None if ell else (0,) * A.size
    kcoords = [w[k] for w in basis]
    g = 0
    for a in kcoords:
        g = gcd(g, a)
    if g == 0:
        return None if ell else (0,) * A.size
    if ell % g != 0:
        return None
    # combine basis vectors to reach k-coordinate g, then scale
    coeffs = _bezout_combination(kcoords, g)
    u = tuple(
        (ell // g) * sum(c * w[j] for c, w in zip(coeffs, basis))
        for j in range(A.size)
    )
    # reduce against the full sublattice of kernel vectors vanishing at k
    rel = integer_kernel_basis(IntMatrix((tuple(kcoords),)))
    fixed = [
        tuple(sum(r[l] * basis[l][j] for l in range(len(basis))) for j in range(A.size))
        for r in rel
    ]
    for z in fixed:
        better = True
        while better:
            better = False
            for t in (1, -1):
                cand = tuple(a + t * b for a, b in zip(u, z))
                if _l1(cand) < _l1(u):
                    u = cand
                    better = True
    return u


def _bezout_combination(values, g):
    """Integer coefficients c with sum c_i values_i = g = gcd(values)."""
    coeffs = [0] * len(values)
    cur_g = 0
    cur = [0] * len(values)
    for i, a in enumerate(values):
        if a == 0:
            continue
        if cur_g == 0:
            cur_g = abs(a)
            cur = [0] * len(values)
            cur[i] = 1 if a > 0 else -1
            continue
        from .intlinalg import xgcd

        new_g, x, y = xgcd(cur_g, a)
        cur = [x * c for c in cur]
        cur[i] += y
        cur_g = new_g
    if cur_g != g:
        raise AssertionError("gcd combination failed")
    return cur


def extend_solution(
    psi: TruncatedSeries, A: PointConfiguration, k: int, beta, order_in_yk: int
) -> TruncatedSeries:
    """Assemble the series sum_l y_k^l / l! psi_l over the deleted coordinate.

    psi is a truncated solution for the deletion A_k; psi_l is the inverse
    shift of psi along any kernel vector with k-coordinate l (zero when no
    such vector exists).  The result restricts to psi at y_k = 0.
    """
    beta = tuple(Fraction(b) for b in beta)
    A_k = A.delete(k)
    if psi.config.matrix != A_k.matrix:
        raise ValueError("input series must live on the configuration minus column k")
    if k in A.newton.vertex_indices:
        raise ValueError("the added column must not be a vertex")
    if A.group_lattice != A_k.group_lattice:
        raise ValueError("the added column must not change the group lattice")
    res = is_nonresonant(A, beta)
    if not res:
        raise ResonantParameterError(f"resonant at face {res.witness_face}")
    if tuple(psi.beta) != beta:
        raise ValueError("parameter mismatch")
    base = _insert(psi.base_exponent, k, Fraction(0))
    terms = {}
    region = set()
    for ell in range(order_in_yk + 1):
        u = kernel_slice_representative(A, k, ell)
        if u is None:
            continue
        ubar = _drop(u, k)
        psi_ell = shift_inverse(psi, ubar)
        fact = Fraction(1, factorial(ell))
        for mbar in psi_ell.region:
            offset = tuple(a + b for a, b in zip(u, _insert(mbar, k, 0)))
            region.add(offset)
            c = psi_ell.coefficient(mbar)
            if c:
                terms[offset] = terms.get(offset, Fraction(0)) + fact * c
    return TruncatedSeries.make(A, beta, base, terms, region, psi.truncation_order)


def restrict_to_zero(series: TruncatedSeries, k: int) -> TruncatedSeries:
    """Evaluate y_k -> 0: keep the terms with k-offset zero, drop the coordinate."""
    if series.base_exponent[k] != 0:
        raise ValueError("restriction needs base exponent zero at the coordinate")
    small = series.config.delete(k)
    terms = {}
    region = set()
    for u in series.region:
        if u[k] == 0:
            region.add(_drop(u, k))
    for u, c in series.term_items:
        if u[k] == 0:
            terms[_drop(u, k)] = c
    return TruncatedSeries.make(
        small, series.beta, _drop(series.base_exponent, k), terms, region,
        series.truncation_order,
    )
