"""Saturations, redundancy, indices, subdiagram volumes, multiplicities,
auxiliary-point certificates and reduction chains."""

import pytest

from gkzkit.configuration import (
    InhomogeneousError,
    PointConfiguration,
    check_aux_point,
    check_homogeneous,
    dim2_interior_witness,
    face_lattice,
    index_i,
    is_lattice_redundant,
    multiplicity,
    multiplicity_table,
    reduction_chain,
    replay_chain,
    saturate,
    subdiagram_volume,
    subdiagram_volume_oracle,
)

# two-dimensional configuration: triangle of side 3 with one marked point on
# each of two edges
TRI = PointConfiguration.from_columns(
    [(1, 0, 0), (1, 3, 0), (1, 0, 3), (1, 1, 0), (1, 0, 2)]
)

# three-dimensional configuration whose single saturation point admits no
# auxiliary point (columns of a 4 x 7 matrix)
OBSTRUCTED = PointConfiguration.from_columns(
    [
        (1, 0, 1, 0),
        (1, 1, 2, 0),
        (1, 2, 0, 0),
        (1, 1, 1, 0),
        (1, 2, 0, 2),
        (1, 1, 0, 3),
        (1, 0, 0, 4),
    ]
)

# monomial curve of toric degree 3 with sparse support {0, 1, 3}
CURVE013 = PointConfiguration.from_columns([(1, 0), (1, 1), (1, 3)])


def face_by_points(A, pts):
    return A.poset.face_with_indices(tuple(A.index_of(p) for p in pts))


def test_homogeneity():
    assert check_homogeneous([(1, 5), (1, 7)]) == (1, 0)
    h = check_homogeneous([(2, 0), (0, 2)])
    assert all(sum(hi * ci for hi, ci in zip(h, c)) == 1 for c in [(2, 0), (0, 2)])
    with pytest.raises(InhomogeneousError):
        check_homogeneous([(1, 0), (2, 0)])
    with pytest.raises(InhomogeneousError):
        PointConfiguration.from_columns([(1, 0), (2, 0)])


def test_face_lattices_of_triangle():
    bottom = face_by_points(TRI, [(1, 0, 0), (1, 3, 0), (1, 1, 0)])
    L = face_lattice(TRI, bottom)
    assert L.delta.generators() == ((0, 1, 0),)
    diag = face_by_points(TRI, [(1, 3, 0), (1, 0, 3)])
    L3 = face_lattice(TRI, diag)
    assert L3.delta.generators() in (((0, -3, 3),), ((0, 3, -3),))
    top = TRI.poset.top
    Lt = face_lattice(TRI, top)
    assert Lt.rank == 2
    assert (1, 1, 1) in Lt
    assert TRI.group_lattice.rank == 3  # Z_A = Z^3


def test_index_examples():
    assert index_i(TRI, TRI.poset.top) == 1
    diag = face_by_points(TRI, [(1, 3, 0), (1, 0, 3)])
    assert index_i(TRI, diag) == 3
    for v in [(1, 0), (1, 3)]:
        assert index_i(CURVE013, face_by_points(CURVE013, [v])) == 1


def test_subdiagram_volume_curve():
    top = CURVE013.poset.top
    assert subdiagram_volume(CURVE013, top) == 1
    v0 = face_by_points(CURVE013, [(1, 0)])
    v3 = face_by_points(CURVE013, [(1, 3)])
    # the quotient semigroups are <1,3> at the 0-vertex and <2,3> at the other
    assert subdiagram_volume(CURVE013, v0) == 1
    assert subdiagram_volume(CURVE013, v3) == 2
    assert subdiagram_volume_oracle(CURVE013, v0) == 1
    assert subdiagram_volume_oracle(CURVE013, v3) == 2


def test_multiplicity_curve():
    v3 = face_by_points(CURVE013, [(1, 3)])
    rec = multiplicity(CURVE013, v3)
    assert (rec.index_i, rec.subvol_v, rec.mult_m) == (1, 2, 2)
    top_rec = multiplicity(CURVE013, CURVE013.poset.top)
    assert (top_rec.index_i, top_rec.subvol_v, top_rec.mult_m) == (1, 1, 1)
    assert all(r.mult_m >= 1 for r in multiplicity_table(CURVE013))


def test_saturate_modes_triangle():
    p = saturate(TRI, "p")
    assert p.added_points == ((1, 0, 1), (1, 2, 0))
    s = saturate(TRI, "s")
    assert s.added_points == ((1, 0, 1), (1, 1, 1), (1, 2, 0))
    full = saturate(TRI, "full")
    assert full.result.size == 10
    # containment chain A <= A^p <= A^s <= N cap Z_A
    assert set(TRI.points) <= set(p.result.points) <= set(s.result.points)
    assert set(s.result.points) <= set(full.result.points)


def test_saturate_idempotent():
    for mode in ("p", "s", "full"):
        once = saturate(TRI, mode).result
        again = saturate(once, mode)
        assert again.added_points == ()


def test_face_int_semiideal_triangle():
    fint = TRI.face_int_semiideal()
    dims = sorted(f.dim for f in fint)
    # two marked edges and their three vertices; no diagonal edge, no top face
    assert dims == [0, 0, 0, 1, 1]
    for f in fint:
        for g in TRI.poset.subfaces(f):
            assert g in fint


def test_face_int_vertex_only_and_full_cases():
    simplex = PointConfiguration.from_columns([(1, 0, 0), (1, 1, 0), (1, 0, 1)])
    fint = simplex.face_int_semiideal()
    assert sorted(f.dim for f in fint) == [0, 0, 0]  # every vertex is its own interior
    with_interior = saturate(TRI, "s").result
    assert with_interior.face_int_semiideal() == frozenset(with_interior.poset.faces)


def test_labels_stable_under_insertion_and_deletion():
    assert TRI.labels == ("a1", "a2", "a3", "a4", "a5")
    bigger = TRI.with_point((1, 2, 0))
    assert bigger.labels[:5] == TRI.labels and len(bigger.labels) == 6
    smaller = bigger.delete(1)
    assert smaller.labels == ("a1", "a3", "a4", "a5", bigger.labels[5])
    assert smaller.label_of((1, 1, 0)) == "a4"


def test_newton_unchanged_by_saturation():
    s = saturate(TRI, "s").result
    assert set(s.newton.vertices) == set(TRI.newton.vertices)


def test_redundancy_triangle():
    # the marked edge point is not redundant: its edge lattice would coarsen
    i = TRI.index_of((1, 1, 0))
    rep = is_lattice_redundant(TRI, i)
    assert not rep
    # vertices are never redundant
    assert not is_lattice_redundant(TRI, TRI.index_of((1, 0, 0)))
    # the interior point of the saturated triangle is redundant
    s = saturate(TRI, "s").result
    assert is_lattice_redundant(s, s.index_of((1, 1, 1)))


def test_redundant_point_preserves_group_and_hull():
    s = saturate(TRI, "s").result
    i = s.index_of((1, 1, 1))
    assert is_lattice_redundant(s, i)
    deleted = s.delete(i)
    assert deleted.group_lattice == s.group_lattice
    assert set(deleted.newton.vertices) == set(s.newton.vertices)


def test_obstructed_config_geometry():
    assert OBSTRUCTED.group_lattice.rank == 4  # Z_A = Z^4
    assert OBSTRUCTED.newton.dim == 3
    euler = sum(
        (-1) ** f.dim for f in OBSTRUCTED.poset.faces if f.supporting is not None
    )
    assert euler == 1 - (-1) ** 3
    s = saturate(OBSTRUCTED, "s")
    assert s.added_points == ((1, 1, 1, 1),)
    # both distinguished faces: the triangle x4 = 0 and the edge x3 = 0 slice
    tri = face_by_points(OBSTRUCTED, [(1, 0, 1, 0), (1, 1, 2, 0), (1, 2, 0, 0), (1, 1, 1, 0)])
    assert tri.dim == 2
    edge = face_by_points(OBSTRUCTED, [(1, 2, 0, 2), (1, 1, 0, 3), (1, 0, 0, 4)])
    assert edge.dim == 1


def test_obstructed_added_point_is_redundant_but_rejected():
    s = saturate(OBSTRUCTED, "s").result
    k = s.index_of((1, 1, 1, 1))
    assert is_lattice_redundant(s, k)
    for a in range(s.size):
        if a == k:
            continue
        assert not check_aux_point(s, k, a)


def test_obstructed_subdiagram_volumes_drop_strictly():
    s = saturate(OBSTRUCTED, "s").result
    for pts in (
        [(1, 0, 1, 0), (1, 1, 2, 0), (1, 2, 0, 0), (1, 1, 1, 0)],
        [(1, 2, 0, 2), (1, 1, 0, 3), (1, 0, 0, 4)],
    ):
        before = subdiagram_volume(OBSTRUCTED, face_by_points(OBSTRUCTED, pts))
        after = subdiagram_volume(s, face_by_points(s, pts))
        assert before > after


def test_obstructed_projected_point_is_hull_vertex():
    from gkzkit.configuration import _face_quotient_images
    from gkzkit.polytope import convex_hull

    s = saturate(OBSTRUCTED, "s").result
    new = (1, 1, 1, 1)
    for pts in (
        [(1, 0, 1, 0), (1, 1, 2, 0), (1, 2, 0, 0), (1, 1, 1, 0)],
        [(1, 2, 0, 2), (1, 1, 0, 3), (1, 0, 0, 4)],
    ):
        face = face_by_points(s, pts)
        q, _ = _face_quotient_images(s, face)
        off = [p for p in s.points if p not in set(s.face_points(face))]
        images = [q.project(p) for p in off]
        hull = convex_hull(images)
        assert q.project(new) in hull.vertices


def test_aux_point_certificate_on_edge_extension():
    enlarged = TRI.with_point((1, 0, 1))
    k = enlarged.index_of((1, 0, 1))
    a = enlarged.index_of((1, 0, 2))
    cert = check_aux_point(enlarged, k, a)
    assert cert
    routes = {c.route for c in cert.reasons}
    assert "lattice-membership" in routes
    # a vertex can never be the deleted point
    vert_cert = check_aux_point(enlarged, enlarged.index_of((1, 0, 0)), a)
    assert not vert_cert


def test_reduction_chain_triangle_partial():
    chain = reduction_chain(TRI, "p")
    assert chain.complete
    assert sorted(s.added_point for s in chain.steps) == [(1, 0, 1), (1, 2, 0)]
    assert replay_chain(chain)


def test_reduction_chain_idempotent_on_saturated():
    s = saturate(TRI, "s").result
    chain = reduction_chain(s, "s")
    assert chain.complete and chain.steps == ()


def test_reduction_chain_obstructed():
    chain = reduction_chain(OBSTRUCTED, "s")
    assert not chain.complete
    assert chain.obstruction == ((1, 1, 1, 1),)


def test_dim2_witness_triangle():
    # the construction assumes the input is already partially saturated
    trip = saturate(TRI, "p").result
    w = dim2_interior_witness(trip)
    assert w is not None
    assert trip.newton.contains_strict(w.point)
    assert w.point == (1, 1, 1)
    with pytest.raises(ValueError):
        dim2_interior_witness(TRI)


def test_dim2_witness_none_for_unimodular():
    A = PointConfiguration.from_columns([(1, 0, 0), (1, 1, 0), (1, 0, 1)])
    assert dim2_interior_witness(A) is None
    with pytest.raises(ValueError):
        dim2_interior_witness(CURVE013)


def test_diagonal_edge_multiplicity_by_hand():
    # the coarse edge: index 3 (group of the two endpoints inside the cut
    # lattice), quotient semigroup <1,2,3> so volume 1, multiplicity 3
    diag = face_by_points(TRI, [(1, 3, 0), (1, 0, 3)])
    rec = multiplicity(TRI, diag)
    assert (rec.index_i, rec.subvol_v, rec.mult_m) == (3, 1, 3)


def test_subdiagram_volume_rank3_by_hand():
    # vertex quotient with images (2,0,0), (3,0,0), (0,1,0), (0,0,1): the gap
    # region is the simplex under x/2 + y + z = 1, of normalized volume 2
    A = PointConfiguration.from_columns(
        [(1, 0, 0, 0), (1, 2, 0, 0), (1, 3, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)]
    )
    vertex = A.poset.face_with_indices((0,))
    assert index_i(A, vertex) == 1
    assert subdiagram_volume(A, vertex) == 2
    assert multiplicity(A, vertex).mult_m == 2


def test_oracle_matches_main_on_obstructed_faces():
    s = saturate(OBSTRUCTED, "s").result
    edge = face_by_points(s, [(1, 2, 0, 2), (1, 1, 0, 3), (1, 0, 0, 4)])
    assert subdiagram_volume(s, edge) == subdiagram_volume_oracle(s, edge)
    tri = face_by_points(s, [(1, 0, 1, 0), (1, 1, 2, 0), (1, 2, 0, 0), (1, 1, 1, 0)])
    assert subdiagram_volume(s, tri) == subdiagram_volume_oracle(s, tri)
