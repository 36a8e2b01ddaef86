#!/usr/bin/env python3
"""Walk the two guiding configurations end to end.

First a planar triangle of side 3 with one marked point on each of two
edges: partial and full face saturation, the greedy certified reduction
chain, and the planar interior-point construction.  Then the 3-dimensional
configuration whose unique saturation point cannot be certified: lattice
redundancy holds, every auxiliary candidate is rejected, and the subdiagram
volumes drop strictly.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gkzkit.configuration import (
    PointConfiguration,
    check_aux_point,
    dim2_interior_witness,
    is_lattice_redundant,
    multiplicity,
    reduction_chain,
    saturate,
    subdiagram_volume,
)

TRIANGLE = PointConfiguration.from_columns(
    [(1, 0, 0), (1, 3, 0), (1, 0, 3), (1, 1, 0), (1, 0, 2)]
)
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


def banner(text):
    print(f"\n=== {text} ===")


def main():
    banner("planar configuration")
    for mode in ("p", "s", "full"):
        res = saturate(TRIANGLE, mode)
        print(f"saturate mode={mode}: adds {list(res.added_points)} -> {res.result.size} points")
    chain = reduction_chain(TRIANGLE, "p")
    print("reduction chain (partial):")
    for step in chain.steps:
        print(f"  add {step.added_point}, face {step.face_indices}, witness {step.witness}")
    trip = saturate(TRIANGLE, "p").result
    witness = dim2_interior_witness(trip)
    print(f"planar interior construction: vertex {witness.vertex} -> point {witness.point}")

    banner("obstructed configuration")
    s = saturate(OBSTRUCTED, "s")
    print(f"face saturation adds {list(s.added_points)}")
    big = s.result
    k = big.index_of((1, 1, 1, 1))
    print(f"added point lattice redundant: {bool(is_lattice_redundant(big, k))}")
    rejected = [a for a in range(big.size) if a != k and not check_aux_point(big, k, a)]
    print(f"auxiliary candidates rejected: {len(rejected)} of {big.size - 1}")
    for pts in (
        [(1, 0, 1, 0), (1, 1, 2, 0), (1, 2, 0, 0), (1, 1, 1, 0)],
        [(1, 2, 0, 2), (1, 1, 0, 3), (1, 0, 0, 4)],
    ):
        before = OBSTRUCTED.poset.face_with_indices(
            tuple(OBSTRUCTED.index_of(p) for p in pts)
        )
        after = big.poset.face_with_indices(tuple(big.index_of(p) for p in pts))
        v0 = subdiagram_volume(OBSTRUCTED, before)
        v1 = subdiagram_volume(big, after)
        m = multiplicity(OBSTRUCTED, before)
        print(
            f"face dim {before.dim}: v drops {v0} -> {v1} strictly; "
            f"(i, v, m) before = ({m.index_i}, {m.subvol_v}, {m.mult_m})"
        )
    chain = reduction_chain(OBSTRUCTED, "s")
    print(f"reduction chain (full): complete={chain.complete}, stuck at {list(chain.obstruction)}")


if __name__ == "__main__":
    main()
