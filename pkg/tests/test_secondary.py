"""Regular triangulations, GKZ vectors, secondary polytopes, facet restriction."""

from fractions import Fraction

import pytest

from gkzkit.configuration import PointConfiguration, saturate
from gkzkit.secondary import (
    DegenerateHeightsError,
    check_facet_restriction,
    config_volume,
    enumerate_regular_triangulations,
    gkz_vector,
    is_regular,
    regular_triangulation,
    secondary_polytope,
)


def curve(support):
    return PointConfiguration.from_columns([(1, a) for a in support])


C013 = curve([0, 1, 3])
C012 = curve([0, 1, 2])


def test_lower_hull_point_above():
    T = regular_triangulation(C013, [0, 1, 0])
    assert T.cells == ((0, 2),)
    assert T.volumes == (3,)


def test_lower_hull_point_below():
    T = regular_triangulation(C013, [0, -1, 0])
    assert T.cells == ((0, 1), (1, 2))
    assert T.volumes == (1, 2)


def test_simplex_any_heights():
    simplex = PointConfiguration.from_columns([(1, 0, 0), (1, 1, 0), (1, 0, 1)])
    T = regular_triangulation(simplex, [0, 0, 0])
    assert T.cells == ((0, 1, 2),)


def test_degenerate_heights_error():
    square = PointConfiguration.from_columns(
        [(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)]
    )
    with pytest.raises(DegenerateHeightsError):
        regular_triangulation(square, [0, 0, 0, 0])


def test_heights_invariant_under_affine_shift():
    # adding an affine function of the points to the heights keeps the output
    A = curve([0, 1, 2, 3])
    base = [Fraction(1, 3), 0, Fraction(5, 7), 1]
    T1 = regular_triangulation(A, base)
    shifted = [h + 2 * a + 5 for h, (_, a) in zip(base, A.points)]
    T2 = regular_triangulation(A, shifted)
    assert T1 == T2


def test_gkz_vectors_curve():
    assert gkz_vector(C013, regular_triangulation(C013, [0, 1, 0])) == (3, 0, 3)
    assert gkz_vector(C013, regular_triangulation(C013, [0, -1, 0])) == (1, 3, 2)


def test_gkz_sum_rule():
    for A in (C013, C012, curve([0, 1, 2, 3])):
        d = A.newton.dim
        vol = config_volume(A)
        for T in enumerate_regular_triangulations(A):
            assert sum(gkz_vector(A, T)) == (d + 1) * vol


def test_enumeration_counts():
    assert len(enumerate_regular_triangulations(C013)) == 2
    assert len(enumerate_regular_triangulations(C012)) == 2
    simplex = PointConfiguration.from_columns([(1, 0, 0), (1, 1, 0), (1, 0, 1)])
    assert len(enumerate_regular_triangulations(simplex)) == 1


def test_enumeration_counts_power_rule():
    # one-dimensional configurations: 2^(number of interior points)
    for support in ([0, 2, 3], [0, 1, 2, 3], [0, 1, 2, 3, 4]):
        A = curve(support)
        expect = 2 ** (len(support) - 2)
        assert len(enumerate_regular_triangulations(A)) == expect


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_regular_triangulations(curve(list(range(14))), cap=12)


def test_regularity_certificate_roundtrip():
    A = curve([0, 1, 2, 3])
    for T in enumerate_regular_triangulations(A):
        ok, heights = is_regular(A, T)
        assert ok
        assert regular_triangulation(A, heights) == T


def test_secondary_polytope_curves():
    S = secondary_polytope(C013)
    assert sorted(S.vertices) == [(1, 3, 2), (3, 0, 3)]
    S2 = secondary_polytope(C012)
    assert sorted(S2.vertices) == [(1, 2, 1), (2, 0, 2)]
    simplex = PointConfiguration.from_columns([(1, 0, 0), (1, 1, 0), (1, 0, 1)])
    assert secondary_polytope(simplex).dim == 0


def test_gkz_vectors_are_secondary_vertices():
    for A in (C013, curve([0, 1, 2, 3])):
        S = secondary_polytope(A)
        verts = set(S.vertices)
        seen = set()
        for T in enumerate_regular_triangulations(A):
            v = gkz_vector(A, T)
            assert v in verts
            assert v not in seen  # distinct triangulations, distinct vectors
            seen.add(v)


def test_facet_restriction_dense_line():
    A = curve([0, 1, 2, 3])
    assert check_facet_restriction(A, 2)
    assert check_facet_restriction(A, 1)


def test_facet_restriction_rejects_lattice_drop():
    A = curve([0, 1, 2])
    with pytest.raises(ValueError):
        check_facet_restriction(A, 1)  # deleting 1 leaves {0,2}: index-2 sublattice
    with pytest.raises(ValueError):
        check_facet_restriction(A, 0)  # vertex


def test_facet_restriction_rejects_planar_lattice_drop():
    tri = PointConfiguration.from_columns(
        [(1, 0, 0), (1, 3, 0), (1, 0, 3), (1, 1, 0), (1, 0, 2)]
    )
    with pytest.raises(ValueError):
        check_facet_restriction(tri, tri.index_of((1, 1, 0)))


def test_rank_volume_triangle():
    tri = PointConfiguration.from_columns(
        [(1, 0, 0), (1, 3, 0), (1, 0, 3), (1, 1, 0), (1, 0, 2)]
    )
    assert config_volume(tri) == 9
    # volume is invariant under saturation
    assert config_volume(saturate(tri, "s").result) == 9
    assert config_volume(saturate(tri, "full").result) == 9
