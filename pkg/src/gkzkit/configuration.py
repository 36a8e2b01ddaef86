"""Point configurations and their combinatorial invariants.

The objects here are quasi-homogeneous integer point configurations A (columns
of an integer matrix, all evaluating to 1 under some rational functional).
The module computes, exactly:

* face lattices (affine spans of the points on each face of the hull),
* the index of the group generated by the points on a face inside the
  ambient group cut to the face span,
* subdiagram volumes of the quotient semigroups, by two independent routes,
* multiplicities m = index * subdiagram volume,
* face saturations and partial face saturations,
* lattice redundancy of single points,
* auxiliary-point certificates and greedy reduction chains, and
* the planar interior-point construction for two-dimensional configurations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .intlinalg import (
    IntMatrix,
    clear_denominators,
    rational_rank,
    solve_rational,
    vsub,
)
from .lattice import AffineLattice, Lattice, lattice_index, lattice_span, quotient
from .lp import OPTIMAL, lp_maximize
from .polytope import (
    Face,
    FacePoset,
    convex_hull,
    face_poset,
    lattice_points_in,
    minimal_face_containing,
    normalized_volume,
    relative_interior_lattice_points,
)


class InhomogeneousError(ValueError):
    """The columns admit no functional evaluating to 1 on every column."""


def check_homogeneous(columns):
    """Rational functional h with h . alpha = 1 for every column, or raise."""
    cols = [tuple(col) for col in columns]
    rows = cols  # the linear system is alpha_i . h = 1
    h = solve_rational(rows, [1] * len(cols))
    if h is None:
        raise InhomogeneousError("no functional takes the value 1 on every column")
    return h


@dataclass(frozen=True)
class PointConfiguration:
    matrix: IntMatrix  # (1+n) x k, columns are the characters
    homogeneity: tuple
    labels: tuple

    @classmethod
    def from_columns(cls, columns, labels=None) -> "PointConfiguration":
        cols = [tuple(int(a) for a in c) for c in columns]
        if len(set(cols)) != len(cols):
            raise ValueError("columns must be distinct")
        h = check_homogeneous(cols)
        if labels is None:
            labels = tuple(f"a{i + 1}" for i in range(len(cols)))
        else:
            labels = tuple(labels)
            if len(labels) != len(cols) or len(set(labels)) != len(labels):
                raise ValueError("labels must be distinct and match the column count")
        return cls(IntMatrix.from_columns(cols), h, labels)

    # -- basic views ---------------------------------------------------------

    @property
    def points(self):
        return tuple(self.matrix.column(j) for j in range(self.matrix.cols))

    @property
    def size(self) -> int:
        return self.matrix.cols

    @property
    def ambient_dim(self) -> int:
        return self.matrix.rows

    def index_of(self, point) -> int:
        return self.points.index(tuple(point))

    def label_of(self, point) -> str:
        return self.labels[self.index_of(point)]

    @cached_property
    def newton(self):
        return convex_hull(self.points)

    @cached_property
    def poset(self) -> FacePoset:
        return face_poset(self.newton)

    @cached_property
    def group_lattice(self) -> Lattice:
        """Z_A: the group generated by the columns."""
        return Lattice.from_generators(self.points)

    @cached_property
    def affine_lattice(self) -> AffineLattice:
        """The affine lattice spanned by all columns."""
        return lattice_span(self.points, "affine")

    @cached_property
    def volume_chart(self):
        """Basis of Z_A cut to the direction space of N; points in these coords."""
        span = [vsub(p, self.points[0]) for p in self.points[1:]]
        direction_lattice = self.group_lattice.intersect_subspace(span)
        coords = []
        for p in self.points:
            x = direction_lattice.coordinates(vsub(p, self.points[0]))
            if x is None:
                raise AssertionError("config differences must lie in the direction lattice")
            coords.append(x)
        return direction_lattice, tuple(coords)

    def delete(self, i: int) -> "PointConfiguration":
        cols = [c for j, c in enumerate(self.points) if j != i]
        labels = tuple(l for j, l in enumerate(self.labels) if j != i)
        return PointConfiguration.from_columns(cols, labels)

    def with_point(self, point, label=None) -> "PointConfiguration":
        point = tuple(int(a) for a in point)
        if label is None:
            base = len(self.points) + 1
            existing = set(self.labels)
            while f"a{base}" in existing:
                base += 1
            label = f"a{base}"
        return PointConfiguration.from_columns(
            [*self.points, point], [*self.labels, label]
        )

    # -- faces ---------------------------------------------------------------

    def face_points(self, face: Face):
        return tuple(self.points[i] for i in face.indices)

    def minimal_face(self, i: int) -> Face:
        return minimal_face_containing(self.poset, self.points[i])

    @cached_property
    def interior_point_indices(self):
        return tuple(
            i for i in range(self.size) if self.minimal_face(i).supporting is None
        )

    def face_int_semiideal(self):
        """Downward closure of the faces carrying a relative interior point of A."""
        generators = {self.minimal_face(i) for i in range(self.size)}
        out = set()
        for g in generators:
            out.update(self.poset.subfaces(g))
        return frozenset(out)


# -- face lattices, indices, volumes ------------------------------------------


def face_lattice(A: PointConfiguration, face: Face) -> AffineLattice:
    """Affine lattice spanned by the configuration points on the face."""
    return lattice_span(A.face_points(face), "affine")


def face_group(A: PointConfiguration, face: Face) -> Lattice:
    """Group generated by the configuration points on the face."""
    return lattice_span(A.face_points(face), "linear")


@lru_cache(maxsize=None)
def index_i(A: PointConfiguration, face: Face) -> int:
    """[Z_A cut to the face span : group generated by the face points]."""
    if face.supporting is None:
        return 1
    sup = A.group_lattice.intersect_subspace(A.face_points(face))
    return lattice_index(sup, face_group(A, face))


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _extreme_rays(G):
    """Primitive direction representatives of the extreme rays of cone(G)."""
    from .intlinalg import primitive

    dirs = sorted({primitive(g) for g in G})
    r = len(dirs[0])
    if r == 1 or len(dirs) == 1:
        return dirs[:1] if len(dirs) == 1 else sorted({(d[0] // abs(d[0]),) for d in dirs})
    if r == 2:
        out = []
        for g in dirs:
            if all(_cross(g, h) >= 0 for h in dirs):
                out.append(g)
                break
        for g in dirs:
            if all(_cross(g, h) <= 0 for h in dirs):
                out.append(g)
                break
        return sorted(set(out))
    out = []
    for i, g in enumerate(dirs):
        others = [h for j, h in enumerate(dirs) if j != i]
        # g extreme iff g is NOT a nonnegative combination of the others
        if not _in_cone(g, others):
            out.append(g)
    return out


def _in_cone(x, gens) -> bool:
    """Exact test x in cone(gens) via LP feasibility."""
    if not gens:
        return not any(x)
    n = len(gens)
    d = len(x)
    A_ub = []
    b_ub = []
    for i in range(d):  # sum lam_j g_j = x, split into <= pairs
        row = [gens[j][i] for j in range(n)]
        A_ub.append(row)
        b_ub.append(x[i])
        A_ub.append([-a for a in row])
        b_ub.append(-x[i])
    for j in range(n):
        A_ub.append([-1 if l == j else 0 for l in range(n)])
        b_ub.append(0)
    status, _, _ = lp_maximize([0] * n, A_ub, b_ub)
    return status == OPTIMAL


def _minkowski_hull_generators(G):
    """Generators that are vertices of conv(G) + cone(G).

    g is redundant iff g = sum mu_j h_j + c with the mu convex over G \\ {g}
    and c in cone(G) (the recession cone keeps all directions).
    """
    out = []
    for i, g in enumerate(G):
        others = [h for j, h in enumerate(G) if j != i]
        if not others:
            out.append(g)
            continue
        n = len(others)
        m = len(G)
        d = len(g)
        A_ub = []
        b_ub = []
        for idx in range(d):
            row = [others[j][idx] for j in range(n)] + [G[j][idx] for j in range(m)]
            A_ub.append(row)
            b_ub.append(g[idx])
            A_ub.append([-a for a in row])
            b_ub.append(-g[idx])
        A_ub.append([1] * n + [0] * m)
        b_ub.append(1)
        A_ub.append([-1] * n + [0] * m)
        b_ub.append(-1)
        for j in range(n + m):
            A_ub.append([-1 if l == j else 0 for l in range(n + m)])
            b_ub.append(0)
        status, _, _ = lp_maximize([0] * (n + m), A_ub, b_ub)
        if status != OPTIMAL:
            out.append(g)
    return out


def _cone_facet_inner_normals(G):
    """Primitive inner normals of the facets of the full-dimensional cone(G)."""
    r = len(G[0])
    if r == 1:
        s = 1 if G[0][0] > 0 else -1
        return [(s,)]
    hull = convex_hull([(0,) * r] + [tuple(g) for g in G])
    zero_coords = hull.chart_coords((0,) * r)
    normals = []
    for h, c in hull.facets:
        if sum(a * b for a, b in zip(h, zero_coords)) == c:
            # translate the chart functional to ambient coordinates: the chart
            # anchor is a hull point and the basis is integral, so h acts on
            # chart coords; rebuild the ambient functional by solving
            amb = _chart_functional_to_ambient(hull, h)
            normals.append(tuple(-a for a in amb))
    return normals


def _chart_functional_to_ambient(P, h):
    """An ambient linear functional restricting to h on P's chart (origin at anchor)."""
    basis = P.chart_basis
    d = len(basis)
    amb = len(basis[0])
    rows = [[Fraction(basis[j][i]) for j in range(d)] for i in range(amb)]
    # want f with f . b_j = h_j; solve f as row vector: B^T f = h
    bt = [[rows[i][j] for i in range(amb)] for j in range(d)]
    f = solve_rational(bt, list(h))
    if f is None:
        raise AssertionError("chart basis must admit a dual functional")
    return clear_denominators(f)


def _face_quotient_images(A: PointConfiguration, face: Face):
    kernel = A.group_lattice.intersect_subspace(A.face_points(face))
    q = quotient(A.group_lattice, kernel)
    images = {q.project(p) for p in A.points}
    images.discard((0,) * q.quotient_rank)
    return q, sorted(images)


@lru_cache(maxsize=None)
def subdiagram_volume(A: PointConfiguration, face: Face) -> int:
    """Lattice volume between the hulls of the quotient semigroup and its
    nonzero part, computed polyhedrally.

    Writing S for the semigroup generated by the images G of the off-face
    points (in the quotient of the ambient group by the saturated span of the
    face), one has conv(S \\ 0) = conv(G) + cone(G): every nonempty sum g_1 +
    ... + g_m lies in g_1 + cone(G), and conversely any g + sum lambda_j g_j
    with real lambda_j >= 0 is a convex combination of the semigroup points
    g + sum (integer roundings of lambda_j) g_j.  Both hulls agree beyond any
    truncation h <= c with h positive on the cone and c past every vertex of
    conv(G) + cone(G) (those vertices are among G), so the volume of the set
    difference is the difference of the truncated volumes.
    """
    if face.supporting is None:
        return 1  # the trivial quotient semigroup by convention
    q, G = _face_quotient_images(A, face)
    if not G:
        raise AssertionError("a proper face must leave nonzero images")
    normals = _cone_facet_inner_normals(G)
    hfun = tuple(sum(n[i] for n in normals) for i in range(q.quotient_rank))
    hvals = [sum(a * b for a, b in zip(hfun, g)) for g in G]
    if any(v <= 0 for v in hvals):
        raise AssertionError("truncating functional must be positive on the cone")
    c = 1 + max(hvals)
    extremes = _extreme_rays(G)
    cone_trunc = [(0,) * q.quotient_rank] + [
        tuple(Fraction(c, sum(a * b for a, b in zip(hfun, e))) * x for x in e)
        for e in extremes
    ]
    mink_gens = _minkowski_hull_generators(G)
    shifted = list(mink_gens)
    for g in mink_gens:
        hg = sum(a * b for a, b in zip(hfun, g))
        for e in extremes:
            he = sum(a * b for a, b in zip(hfun, e))
            shifted.append(tuple(x + Fraction(c - hg, he) * y for x, y in zip(g, e)))
    vol = normalized_volume(cone_trunc) - normalized_volume(sorted(set(shifted)))
    if vol < 0 or vol.denominator != 1:
        raise AssertionError(f"subdiagram volume must be a nonnegative integer, got {vol}")
    return int(vol)


def _hull2d(points):
    """Monotone-chain hull of exact 2-d points; vertices in ccw order."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 2 else pts[:1]


def _shoelace2(hull):
    """Twice the Euclidean area (= lattice-normalized area) of a ccw polygon."""
    s = 0
    for i in range(len(hull)):
        s += _cross(hull[i], hull[(i + 1) % len(hull)])
    return abs(s)


def _clip_halfplane(poly, hfun, c):
    """Clip a ccw polygon to {x : hfun.x <= c} (Sutherland-Hodgman, exact)."""
    if not poly:
        return []
    out = []
    n = len(poly)
    for i in range(n):
        p, q_ = poly[i], poly[(i + 1) % n]
        vp = sum(a * b for a, b in zip(hfun, p)) - c
        vq = sum(a * b for a, b in zip(hfun, q_)) - c
        if vp <= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            t = Fraction(vp, vp - vq)
            out.append(tuple(Fraction(a) + t * (Fraction(b) - Fraction(a)) for a, b in zip(p, q_)))
    dedup = []
    for p in out:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def subdiagram_volume_oracle(A: PointConfiguration, face: Face) -> int:
    """Independent sweep-based check of :func:`subdiagram_volume`.

    Rank 1: smallest nonzero element of the numerical semigroup of projected
    points, found by bounded enumeration.  Rank 2: enumerate semigroup points
    to twice the window depth, hull them with a monotone chain, clip at the
    window and compare swept areas.  Larger ranks are unsupported.
    """
    if face.supporting is None:
        return 1
    q, G = _face_quotient_images(A, face)
    if q.quotient_rank == 1:
        gens = sorted({abs(g[0]) for g in G})
        signs = {1 if g[0] > 0 else -1 for g in G}
        if len(signs) != 1:
            raise AssertionError("face images must lie on one side")
        bound = max(gens)
        elements = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = x + g
                if y <= bound and y not in elements:
                    elements.add(y)
                    frontier.append(y)
        nonzero = sorted(e for e in elements if e)
        return min(nonzero) if nonzero else bound
    if q.quotient_rank != 2:
        raise ValueError("oracle supports quotient rank 1 and 2 only")
    # strictly positive integer functional on the cone, via LP
    n = len(G)
    A_ub = [[-g[0], -g[1]] for g in G]
    b_ub = [-1] * n
    A_ub += [[1, 0], [-1, 0], [0, 1], [0, -1]]
    bound_box = 10 * max(max(abs(g[0]), abs(g[1])) for g in G) + 10
    b_ub += [bound_box] * 4
    status, phi, _ = lp_maximize(
        [-sum(g[0] for g in G), -sum(g[1] for g in G)], A_ub, b_ub
    )
    if status != OPTIMAL:
        raise AssertionError("no positive functional: cone is not pointed")
    phi = clear_denominators(phi)
    phivals = [phi[0] * g[0] + phi[1] * g[1] for g in G]
    # the gap region lies under phi <= max phi(g); enumerate deep enough that
    # every point of conv(S \ 0) within the window is a convex combination of
    # enumerated semigroup points: a window point g + r needs ceiling bumps of
    # at most one extreme step per ray on top of phi(g) + phi(r)
    window = max(phivals) + 1
    depth = window + 3 * max(phivals)
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        x = frontier.pop()
        for g in G:
            y = (x[0] + g[0], x[1] + g[1])
            if phi[0] * y[0] + phi[1] * y[1] <= depth and y not in seen:
                seen.add(y)
                frontier.append(y)
    seen.discard((0, 0))
    hull = _hull2d(sorted(seen))
    clipped = _clip_halfplane([tuple(map(Fraction, p)) for p in hull], phi, window)
    area_semigroup = _shoelace2(clipped)
    extremes = _extreme_rays(G)
    corners = [
        tuple(Fraction(window, phi[0] * e[0] + phi[1] * e[1]) * x for x in e)
        for e in extremes
    ]
    area_cone = _shoelace2([(Fraction(0), Fraction(0))] + corners)
    v = area_cone - area_semigroup
    if v < 0 or (isinstance(v, Fraction) and v.denominator != 1):
        raise AssertionError(f"oracle area difference must be a nonnegative integer, got {v}")
    return int(v)


@dataclass(frozen=True)
class MultiplicityRecord:
    face: Face
    index_i: int
    subvol_v: int
    mult_m: int


def multiplicity(A: PointConfiguration, face: Face) -> MultiplicityRecord:
    i = index_i(A, face)
    v = subdiagram_volume(A, face)
    return MultiplicityRecord(face, i, v, i * v)


def multiplicity_table(A: PointConfiguration):
    return tuple(multiplicity(A, f) for f in A.poset.faces)


# -- redundancy ----------------------------------------------------------------


@dataclass(frozen=True)
class RedundancyReport:
    redundant: bool
    reason: str
    per_face: tuple  # (face indices, lattices equal?) for faces through the point

    def __bool__(self):
        return self.redundant


def is_lattice_redundant(A: PointConfiguration, i: int) -> RedundancyReport:
    """Does removing column i keep every face lattice of the configuration?"""
    if not 0 <= i < A.size:
        raise IndexError(f"column {i} out of range")
    if i in A.newton.vertex_indices:
        return RedundancyReport(False, "point is a vertex of the Newton polytope", ())
    per_face = []
    ok = True
    for face in A.poset.faces:
        if i not in face.indices:
            continue
        with_pt = lattice_span([A.points[j] for j in face.indices], "affine")
        without = lattice_span([A.points[j] for j in face.indices if j != i], "affine")
        same = with_pt == without
        per_face.append((face.indices, same))
        ok = ok and same
    reason = "all face lattices agree" if ok else "some face lattice drops"
    return RedundancyReport(ok, reason, tuple(per_face))


def _is_pyramid(points) -> bool:
    """A configuration is a pyramid if deleting some point drops its affine dimension."""
    pts = [tuple(p) for p in points]
    if len(pts) < 2:
        return False
    full = rational_rank([vsub(p, pts[0]) for p in pts[1:]])
    for skip in range(len(pts)):
        rest = [p for j, p in enumerate(pts) if j != skip]
        r = rational_rank([vsub(p, rest[0]) for p in rest[1:]]) if len(rest) > 1 else 0
        if r < full:
            return True
    return False


# -- saturation ----------------------------------------------------------------


@dataclass(frozen=True)
class SaturationResult:
    mode: str
    added_points: tuple
    result: PointConfiguration


def saturate(A: PointConfiguration, mode: str) -> SaturationResult:
    """Face saturation (mode "s"), partial face saturation (mode "p"), or the
    full lattice-point saturation of the Newton polytope (mode "full")."""
    if mode == "full":
        pts = set(lattice_points_in(A.newton, A.affine_lattice))
    elif mode in ("s", "p"):
        faces = A.poset.faces if mode == "s" else A.face_int_semiideal()
        pts = set()
        for face in faces:
            L = face_lattice(A, face)
            pts.update(relative_interior_lattice_points(A.newton, face, L))
    else:
        raise ValueError(f"unknown saturation mode {mode!r}")
    added = tuple(sorted(pts - set(A.points)))
    result = A
    for p in added:
        result = result.with_point(p)
    return SaturationResult(mode, added, result)


# -- auxiliary-point certificates ----------------------------------------------


@dataclass(frozen=True)
class FaceCheck:
    face_indices: tuple
    route: str  # "top" | "lattice-membership" | "multiplicity" | "pyramid" | "failed"
    detail: str


@dataclass(frozen=True)
class AuxCertificate:
    ok: bool
    k: int
    a: int
    reasons: tuple  # FaceCheck per face through the auxiliary point, or rejection text

    def __bool__(self):
        return self.ok


def check_aux_point(A: PointConfiguration, k: int, a: int) -> AuxCertificate:
    """Certify that column a can serve as the auxiliary point for deleting
    column k: k is lattice redundant, every face through k contains a, and for
    each face through a the multiplicity is unchanged by the deletion (shown
    by group membership of the deleted point, by exact multiplicity
    comparison, or by the pyramid sufficient condition for defectiveness).
    """
    if k == a or not (0 <= k < A.size and 0 <= a < A.size):
        raise IndexError("need two distinct valid column indices")
    red = is_lattice_redundant(A, k)
    if not red:
        return AuxCertificate(False, k, a, (f"column {k} is not lattice redundant: {red.reason}",))
    # the deletion argument needs every discriminant factor involving the
    # deleted coordinate to involve the auxiliary one: every face through k
    # must contain a (equivalently a lies on the minimal face of k)
    for face in A.poset.faces:
        if k in face.indices and a not in face.indices:
            return AuxCertificate(
                False, k, a,
                (f"face {face.indices} contains the deleted point but not the auxiliary",),
            )
    A_k = A.delete(k)
    checks = []
    # high-dimensional faces have low quotient rank and are cheap to settle;
    # evaluate those first and stop at the first failure
    faces = sorted(
        (f for f in A.poset.faces if a in f.indices), key=lambda f: (-f.dim, f.indices)
    )
    for pos, face in enumerate(faces):
        if face.supporting is None:
            checks.append(FaceCheck(face.indices, "top", "m(A, N) = 1 always"))
            continue
        group_without = face_group(A_k, _matching_face(A_k, A, face))
        if A.points[k] in group_without:
            checks.append(
                FaceCheck(face.indices, "lattice-membership",
                          "deleted point lies in the group of the remaining face points")
            )
            continue
        m_with = multiplicity(A, face).mult_m
        m_without = multiplicity(A_k, _matching_face(A_k, A, face)).mult_m
        if m_with == m_without:
            checks.append(
                FaceCheck(face.indices, "multiplicity", f"m = {m_with} on both sides")
            )
            continue
        if _is_pyramid(A.face_points(face)):
            checks.append(
                FaceCheck(face.indices, "pyramid", "face configuration is a pyramid, hence defective")
            )
            continue
        checks.append(
            FaceCheck(face.indices, "failed",
                      f"m changes {m_with} -> {m_without} and no defectiveness certificate")
        )
        checks.extend(
            FaceCheck(f.indices, "skipped", "not evaluated after first failure")
            for f in faces[pos + 1:]
        )
        return AuxCertificate(False, k, a, tuple(checks))
    return AuxCertificate(True, k, a, tuple(checks))


def _matching_face(B: PointConfiguration, A: PointConfiguration, face: Face) -> Face:
    """The face of B's poset carrying the same geometric face of A (B's points
    must be a subset of A's with the same Newton polytope)."""
    pts = set(B.points) & set(A.face_points(face))
    idx = tuple(sorted(B.index_of(p) for p in pts))
    return B.poset.face_with_indices(idx)


# -- reduction chains ------------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    added_point: tuple
    face_indices: tuple  # certifying face, as indices in the *enlarged* config
    witness: tuple  # the distinct relative interior point


@dataclass(frozen=True)
class ReductionChain:
    start: PointConfiguration
    end: PointConfiguration
    steps: tuple
    obstruction: tuple  # points that could not be certified; empty on success

    @property
    def complete(self) -> bool:
        return not self.obstruction


def _certify_step(enlarged: PointConfiguration, new_index: int):
    """Find a face containing the new point with a distinct relative interior
    point of the enlarged configuration; None when no such face exists."""
    alpha = enlarged.points[new_index]
    for face in enlarged.poset.faces_containing(enlarged.minimal_face(new_index)):
        for j in range(enlarged.size):
            if j == new_index:
                continue
            if enlarged.minimal_face(j) == face:
                return face, enlarged.points[j]
    return None


def reduction_chain(A: PointConfiguration, mode: str) -> ReductionChain:
    """Greedily add saturation points one at a time, certifying each addition
    by lattice redundancy plus a face witness; reports the stuck points if the
    target cannot be reached."""
    if mode not in ("s", "p"):
        raise ValueError("reduction chains target mode 's' or 'p'")
    target = set(saturate(A, mode).result.points)
    current = A
    steps = []
    while True:
        remaining = sorted(target - set(current.points))
        if not remaining:
            break
        progress = False
        for alpha in remaining:
            enlarged = current.with_point(alpha)
            ni = enlarged.index_of(alpha)
            if not is_lattice_redundant(enlarged, ni):
                continue
            cert = _certify_step(enlarged, ni)
            if cert is None:
                continue
            face, witness = cert
            steps.append(ChainStep(alpha, face.indices, witness))
            current = enlarged
            progress = True
            break
        if not progress:
            return ReductionChain(A, current, tuple(steps), tuple(remaining))
    return ReductionChain(A, current, tuple(steps), ())


def replay_chain(chain: ReductionChain) -> bool:
    """Re-verify every chain step certificate from scratch."""
    current = chain.start
    for step in chain.steps:
        enlarged = current.with_point(step.added_point)
        ni = enlarged.index_of(step.added_point)
        if not is_lattice_redundant(enlarged, ni):
            return False
        face = enlarged.poset.face_with_indices(step.face_indices)
        if ni not in face.indices:
            return False
        wi = enlarged.index_of(step.witness)
        if step.witness == step.added_point or enlarged.minimal_face(wi) != face:
            return False
        current = enlarged
    return set(current.points) == set(chain.end.points)


# -- the planar interior-point construction --------------------------------------


@dataclass(frozen=True)
class PlanarWitness:
    vertex: tuple
    edges: tuple  # the two incident edges, as index tuples
    lengths: tuple  # lattice lengths of the edges
    point: tuple  # the constructed interior point


def dim2_interior_witness(A: PointConfiguration):
    """For a two-dimensional, partially face-saturated configuration, search
    the vertices of N for one whose two incident edge steps land inside N;
    returns None exactly when Z_A has no interior points at all (verified by
    enumeration)."""
    if A.newton.dim != 2:
        raise ValueError("construction requires a two-dimensional Newton polytope")
    if saturate(A, "p").added_points:
        raise ValueError("construction assumes a partially face-saturated configuration")
    interior = lattice_points_in(A.newton, A.affine_lattice, strict=True)
    for vi in A.newton.vertex_indices:
        v = A.points[vi]
        edges = [e for e in A.poset.of_dim(1) if vi in e.indices]
        if len(edges) != 2:
            continue
        steps = []
        lengths = []
        for e in edges:
            L = face_lattice(A, e)
            # the far vertex along the edge
            far = next(
                A.points[j]
                for j in e.indices
                if j != vi and j in A.newton.vertex_indices
            )
            diff = vsub(far, v)
            gen = L.delta.generators()[0]
            ell = next(abs(d // g) for d, g in zip(diff, gen) if g != 0)
            lengths.append(ell)
            steps.append(tuple(d // ell for d in diff))
        candidate = tuple(v[i] + steps[0][i] + steps[1][i] for i in range(len(v)))
        if A.newton.contains_strict(candidate):
            witness = PlanarWitness(
                v, (edges[0].indices, edges[1].indices), tuple(lengths), candidate
            )
            enlarged = A if candidate in A.points else A.with_point(candidate)
            cert = check_aux_point(
                enlarged, enlarged.index_of(candidate), enlarged.index_of(v)
            )
            if cert:
                return witness
    if interior:
        raise AssertionError("interior lattice points exist but no vertex works")
    return None
