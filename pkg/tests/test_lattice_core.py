"""Normal forms, spans, indices, quotients, simplex volumes."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkzkit.intlinalg import (
    IntMatrix,
    column_hnf,
    det_fraction,
    integer_kernel_basis,
    smith_normal_form,
    smith_normal_form_transforms,
)
from gkzkit.lattice import (
    INFINITE,
    ContainmentError,
    Lattice,
    lattice_index,
    lattice_span,
    quotient,
    simplex_volume,
)

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
)


def test_hnf_identity():
    I3 = IntMatrix.identity(3)
    H, U = column_hnf(I3)
    assert H == I3 and U == I3


def test_hnf_small_diagonal_case():
    M = IntMatrix(((2, 4), (0, 6)))
    H, U = column_hnf(M)
    assert M.mul(U) == H
    assert abs(det_fraction(U.entries)) == 1
    assert H.entries[0][0] == 2 and H.entries[1][1] == 6
    assert 0 <= H.entries[1][0] < 6


def test_hnf_random_replay():
    rng = random.Random(7)
    M = IntMatrix(tuple(tuple(rng.randint(-9, 9) for _ in range(6)) for _ in range(4)))
    H, U = column_hnf(M)
    assert M.mul(U) == H
    assert abs(det_fraction(U.entries)) == 1


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_hnf_is_canonical_and_idempotent(rows):
    M = IntMatrix(tuple(map(tuple, rows)))
    H, U = column_hnf(M)
    assert M.mul(U) == H
    assert abs(det_fraction(U.entries)) == 1
    H2, _ = column_hnf(H)
    assert H2 == H
    # shuffling generators of the same column span must not change the HNF
    cols = M.columns_list()
    random.Random(0).shuffle(cols)
    cols.append(tuple(a + b for a, b in zip(cols[0], cols[-1])))
    H3, _ = column_hnf(IntMatrix.from_columns(cols, rows=M.rows))
    nz = lambda mat: [mat.column(j) for j in range(mat.cols) if any(mat.column(j))]
    assert nz(H3) == nz(H)


def test_snf_diag_example():
    assert smith_normal_form(IntMatrix(((6, 0), (0, 4)))) == (2, 12)


def test_snf_zero_matrix():
    assert smith_normal_form(IntMatrix(((0, 0), (0, 0)))) == ()


def test_snf_minors_gcd_oracle():
    # invariant factor products equal gcds of k x k minors
    M = IntMatrix(((1, 3), (1, 0)))
    assert smith_normal_form(M) == (1, 3)


@given(matrices)
@settings(max_examples=40, deadline=None)
def test_snf_transforms_and_divisibility(rows):
    from math import gcd
    from itertools import combinations

    M = IntMatrix(tuple(map(tuple, rows)))
    U, D, V = smith_normal_form_transforms(M)
    assert U.mul(M).mul(V) == D
    assert abs(det_fraction(U.entries)) == 1
    assert abs(det_fraction(V.entries)) == 1
    facs = smith_normal_form(M)
    for a, b in zip(facs, facs[1:]):
        assert b % a == 0
    # oracle: product of first k invariant factors = gcd of k x k minors
    for k in range(1, len(facs) + 1):
        g = 0
        for rset in combinations(range(M.rows), k):
            for cset in combinations(range(M.cols), k):
                minor = det_fraction([[M.entries[i][j] for j in cset] for i in rset])
                g = gcd(g, int(minor))
        prod = 1
        for f in facs[:k]:
            prod *= f
        assert g == prod


def test_kernel_basis():
    A = IntMatrix(((1, 1, 1), (0, 1, 3)))
    ker = integer_kernel_basis(A)
    assert len(ker) == 1
    u = ker[0]
    assert A.mul_vec(u) == (0, 0)
    assert sorted(map(abs, u)) == [1, 2, 3]


def test_affine_span_collinear_points():
    L = lattice_span([(1, 0, 0), (1, 3, 0), (1, 1, 0)], "affine")
    assert L.rank == 1
    assert L.delta.generators() == ((0, 1, 0),)


def test_affine_span_single_point():
    L = lattice_span([(2, 5)], "affine")
    assert L.rank == 0
    assert (2, 5) in L
    assert (2, 6) not in L


def test_linear_span_single_vector():
    L = lattice_span([(1, 3)], "linear")
    assert L.generators() == ((1, 3),)
    assert (2, 6) in L and (1, 2) not in L


def test_lattice_index_diagonal():
    sup = Lattice.standard(2)
    sub = Lattice.from_generators([(2, 0), (0, 3)])
    assert lattice_index(sup, sub) == 6


def test_lattice_index_step3_edge():
    # Z^3 cut to the span of (1,3,0),(1,0,3) versus the group they generate
    sup = Lattice.standard(3).intersect_subspace([(1, 3, 0), (1, 0, 3)])
    sub = Lattice.from_generators([(1, 3, 0), (1, 0, 3)])
    assert lattice_index(sup, sub) == 3


def test_lattice_index_equal_and_errors():
    L = Lattice.from_generators([(1, 1), (0, 5)])
    assert lattice_index(L, L) == 1
    assert lattice_index(Lattice.standard(2), Lattice.from_generators([(1, 0)])) == INFINITE
    with pytest.raises(ContainmentError):
        lattice_index(Lattice.from_generators([(2, 0), (0, 2)]), Lattice.standard(2))


def test_index_multiplicativity():
    L = Lattice.standard(2)
    M = Lattice.from_generators([(1, 1), (0, 2)])
    K = Lattice.from_generators([(2, 2), (0, 6)])
    assert lattice_index(L, M) * lattice_index(M, K) == lattice_index(L, K)


def test_quotient_axis():
    q = quotient(Lattice.standard(2), Lattice.from_generators([(1, 0)]))
    assert q.quotient_rank == 1
    assert q.project((5, 7)) in ((7,), (-7,))


def test_quotient_skew_line():
    q = quotient(Lattice.standard(2), Lattice.from_generators([(1, 3)]))
    assert q.quotient_rank == 1
    assert q.project((1, 3)) == (0,)
    # projection surjects: 1 is hit
    assert abs(q.project((1, 0))[0]) in (1, 3) or abs(q.project((0, 1))[0]) in (1, 3)
    vals = {abs(q.project(v)[0]) for v in [(1, 0), (0, 1)]}
    assert 1 in {v % 3 for v in vals} or 1 in vals


def test_quotient_full_is_rank_zero():
    q = quotient(Lattice.standard(3), Lattice.standard(3))
    assert q.quotient_rank == 0


def test_quotient_lift_roundtrip():
    q = quotient(Lattice.standard(3), Lattice.from_generators([(1, 2, 3)]))
    for v in [(1, 0, 0), (4, -2, 5)]:
        w = q.lift(q.project(v))
        assert q.project(w) == q.project(v)
        # difference lies in the kernel
        diff = tuple(a - b for a, b in zip(v, w))
        assert diff in q.kernel


def test_quotient_torsion_detected():
    from gkzkit.lattice import TorsionError

    with pytest.raises(TorsionError):
        quotient(Lattice.standard(2), Lattice.from_generators([(2, 0)]))
    q = quotient(
        Lattice.standard(2), Lattice.from_generators([(2, 0)]), require_torsion_free=False
    )
    assert q.torsion == (2,)


def test_simplex_volume_basics():
    Z2 = Lattice.standard(2)
    assert simplex_volume(Z2, [(0, 0), (1, 0), (0, 1)]) == 1
    seg = Lattice.from_generators([(0, 1)])
    assert simplex_volume(seg, [(1, 0), (1, 3)]) == 3
    assert simplex_volume(seg, [(1, 2), (1, 2)]) == 0


def test_simplex_volume_translation_and_permutation_invariance():
    Z2 = Lattice.standard(2)
    verts = [(0, 0), (3, 1), (1, 2)]
    v0 = simplex_volume(Z2, verts)
    assert v0 == simplex_volume(Z2, [verts[2], verts[0], verts[1]])
    shifted = [(a + 4, b - 7) for a, b in verts]
    assert v0 == simplex_volume(Z2, shifted)


def test_affine_lattice_equality_and_hash():
    a = lattice_span([(1, 0), (1, 2)], "affine")
    b = lattice_span([(1, 4), (1, 2)], "affine")
    assert a == b
    assert hash(a) == hash(b)
    c = lattice_span([(0, 1), (0, 3)], "affine")
    assert a != c
