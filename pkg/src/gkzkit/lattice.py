"""Integer lattices: spans, indices, quotients and lattice-normalized volumes.

A :class:`Lattice` is a subgroup of Z^ambient stored through a canonical
column-HNF basis, so equality of lattices is structural equality.  Affine
lattices are (anchor, difference lattice) pairs; the two notions are kept
separate on purpose because face lattices of a point configuration are affine
objects while index and quotient computations happen on genuine subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import (
    IntMatrix,
    column_hnf,
    det_fraction,
    integer_kernel_basis,
    integer_orthogonal_complement,
    smith_normal_form_transforms,
    solve_rational,
    vsub,
)

INFINITE = float("inf")


class ContainmentError(ValueError):
    """A claimed sublattice is not contained in the ambient one."""


class TorsionError(ValueError):
    """A quotient that was required to be torsion-free has torsion."""


@dataclass(frozen=True)
class Lattice:
    ambient_dim: int
    basis: IntMatrix  # ambient_dim x rank, canonical column HNF, full column rank

    @classmethod
    def from_generators(cls, generators, ambient_dim: int | None = None) -> "Lattice":
        generators = [tuple(int(a) for a in g) for g in generators]
        if ambient_dim is None:
            if not generators:
                raise ValueError("empty generator list needs explicit ambient_dim")
            ambient_dim = len(generators[0])
        H, _ = column_hnf(IntMatrix.from_columns(generators, rows=ambient_dim))
        cols = [H.column(j) for j in range(H.cols) if any(H.column(j))]
        return cls(ambient_dim, IntMatrix.from_columns(cols, rows=ambient_dim))

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def generators(self):
        return tuple(self.basis.column(j) for j in range(self.basis.cols))

    def coordinates(self, v):
        """Integer coordinates of v in this basis, or None if v is not a member."""
        x = solve_rational(self.basis.entries, tuple(v))
        if x is None or any(a.denominator != 1 for a in x):
            return None
        coords = tuple(int(a) for a in x)
        if self.basis.mul_vec(coords) != tuple(v):
            return None
        return coords

    def rational_coordinates(self, v):
        """Rational coordinates of v in the basis, or None if outside the span."""
        x = solve_rational(self.basis.entries, tuple(v))
        if x is None:
            return None
        if self.basis.mul_vec(x) != tuple(Fraction(a) for a in v):
            return None
        return x

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def intersect_subspace(self, spanning_vectors) -> "Lattice":
        """The saturated sublattice of self lying in the rational span of the vectors."""
        constraints = integer_orthogonal_complement(spanning_vectors, self.ambient_dim)
        rows = tuple(
            tuple(sum(c[i] * g[i] for i in range(self.ambient_dim)) for g in self.generators())
            for c in constraints
        )
        if not rows:
            return self
        kernel = integer_kernel_basis(IntMatrix(rows))
        gens = [self.basis.mul_vec(k) for k in kernel]
        return Lattice.from_generators(gens, self.ambient_dim)

    def saturation(self) -> "Lattice":
        """Smallest saturated lattice (in Z^ambient) containing self."""
        return Lattice.standard(self.ambient_dim).intersect_subspace(self.generators())


@dataclass(frozen=True)
class AffineLattice:
    """anchor + difference lattice; the model of a face lattice Z_{A∩Γ}."""

    anchor: tuple
    delta: Lattice

    def __contains__(self, point) -> bool:
        return vsub(point, self.anchor) in self.delta

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineLattice):
            return NotImplemented
        return self.delta == other.delta and vsub(other.anchor, self.anchor) in self.delta

    def canonical_anchor(self):
        """The unique anchor representative with pivot-row entries in [0, pivot).

        The HNF basis of ``delta`` is triangular on its pivot rows, so greedy
        reduction is canonical: equal affine lattices get equal anchors.
        """
        basis = self.delta.basis
        rep = list(self.anchor)
        for j in range(basis.cols):
            col = basis.column(j)
            p = next(i for i, a in enumerate(col) if a)
            q = rep[p] // col[p]
            if q:
                for i in range(len(rep)):
                    rep[i] -= q * col[i]
        return tuple(rep)

    def __hash__(self):
        return hash((self.canonical_anchor(), self.delta.basis.entries))

    @property
    def rank(self) -> int:
        return self.delta.rank

    def spanned_group(self) -> Lattice:
        """The group generated by the points of the affine lattice (anchor adjoined)."""
        return Lattice.from_generators(
            [self.anchor, *self.delta.generators()], self.delta.ambient_dim
        )


@dataclass(frozen=True)
class QuotientLattice:
    source: Lattice
    kernel: Lattice
    projection: IntMatrix  # maps source *coordinates* onto Z^quotient_rank
    quotient_rank: int
    torsion: tuple  # nontrivial invariant factors of the torsion part

    def project(self, v):
        """Image in Z^quotient_rank of an ambient vector v in the source lattice."""
        coords = self.source.coordinates(v)
        if coords is None:
            raise ContainmentError(f"{v} is not in the source lattice")
        return self.projection.mul_vec(coords)

    def lift(self, q):
        """Some ambient source-lattice vector projecting to q.

        The projection surjects onto Z^rank, so its column HNF is the identity
        padded with zero columns and an integral preimage always exists.
        """
        H, U = column_hnf(self.projection)
        q = tuple(q)
        for i in range(self.quotient_rank):
            if H.entries[i][i] != 1:
                raise ValueError("projection is not surjective")
        y = q + (0,) * (self.projection.cols - self.quotient_rank)
        coords = U.mul_vec(y)
        return self.source.basis.mul_vec(coords)


def lattice_span(points, mode: str):
    """Affine or linear integer span of a point list.

    mode "affine": lattice of pairwise differences, anchored at the first
    point.  mode "linear": group generated by the points themselves.
    """
    points = [tuple(int(a) for a in p) for p in points]
    if not points:
        raise ValueError("lattice_span needs at least one point")
    dim = len(points[0])
    if mode == "linear":
        return Lattice.from_generators(points, dim)
    if mode == "affine":
        anchor = points[0]
        diffs = [vsub(p, anchor) for p in points[1:]]
        return AffineLattice(anchor, Lattice.from_generators(diffs, dim))
    raise ValueError(f"unknown span mode {mode!r}")


def lattice_index(sup: Lattice, sub: Lattice):
    """[sup : sub], or INFINITE when the ranks differ.

    Raises ContainmentError when sub is not contained in sup.
    """
    coords = []
    for g in sub.generators():
        c = sup.coordinates(g)
        if c is None:
            raise ContainmentError("sub lattice not contained in sup lattice")
        coords.append(c)
    if sub.rank < sup.rank:
        return INFINITE
    d = det_fraction(coords)
    return abs(int(d))


def quotient(source: Lattice, kernel: Lattice, require_torsion_free: bool = True) -> QuotientLattice:
    """Quotient of source by a sublattice, with an explicit projection matrix."""
    coords = []
    for g in kernel.generators():
        c = source.coordinates(g)
        if c is None:
            raise ContainmentError("kernel not contained in source")
        coords.append(c)
    r = source.rank
    K = IntMatrix.from_columns(coords, rows=r) if coords else IntMatrix.from_columns([], rows=r)
    U, D, _ = smith_normal_form_transforms(K)
    k = kernel.rank
    torsion = tuple(D.entries[i][i] for i in range(k) if abs(D.entries[i][i]) != 1)
    if torsion and require_torsion_free:
        raise TorsionError(f"quotient has torsion {torsion}")
    # rows k..r-1 of U kill the kernel and surject onto Z^(r-k)
    proj = IntMatrix(tuple(U.entries[i] for i in range(k, r)))
    return QuotientLattice(source, kernel, proj, r - k, torsion)


def simplex_volume(L: Lattice, vertices):
    """Lattice-normalized volume of a simplex with d+1 vertices, d = rank L.

    Vertices may be rational points of the affine span of L (translated to the
    first vertex); the volume is |det| of the edge vectors in L's basis.
    """
    vertices = [tuple(v) for v in vertices]
    if len(vertices) != L.rank + 1:
        raise ValueError("need rank+1 vertices")
    edges = []
    for v in vertices[1:]:
        diff = tuple(Fraction(a) - Fraction(b) for a, b in zip(v, vertices[0]))
        x = L.rational_coordinates(diff)
        if x is None:
            raise ValueError(f"edge {diff} is outside the rational span of the lattice")
        edges.append(x)
    if not edges:
        return 1  # 0-dimensional simplex
    vol = abs(det_fraction(edges))
    return int(vol) if vol.denominator == 1 else vol
