#!/usr/bin/env python3
"""Invariant tables for small monomial curves.

For each support: the principal determinant, its coordinate exponents versus
the index * subdiagram-volume multiplicities, the discriminant, and the
secondary polytope versus the Newton polytope of the principal determinant.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gkzkit.curves import (
    MonomialCurveConfig,
    discriminant_curve,
    principal_determinant_curve,
    verify_factorization,
)
from gkzkit.secondary import enumerate_regular_triangulations, secondary_polytope

SUPPORTS = [(0, 1), (0, 1, 2), (0, 1, 3), (0, 2, 3), (0, 1, 2, 3), (0, 1, 2, 3, 4)]


def fmt_poly(p):
    def term(e, c):
        mono = "".join(f"y{i}^{x}" if x > 1 else f"y{i}" for i, x in enumerate(e) if x)
        return f"{c}{'*' + mono if mono else ''}"

    return " + ".join(term(e, c) for e, c in sorted(p.items()))


def main():
    for support in SUPPORTS:
        cfg = MonomialCurveConfig(support)
        A = cfg.point_configuration()
        E = principal_determinant_curve(cfg)
        D = discriminant_curve(cfg)
        rep = verify_factorization(cfg)
        tris = enumerate_regular_triangulations(A)
        sec = secondary_polytope(A)
        print(f"\nsupport {support} (toric degree {cfg.delta})")
        print(f"  E = {fmt_poly(E)}")
        print(f"  D = {fmt_poly(D)}")
        print(f"  vertex multiplicities (i*v): {rep.vertex_multiplicities}")
        print(f"  coordinate exponents of E:   {rep.coordinate_exponents}")
        print(f"  regular triangulations: {len(tris)}")
        print(f"  secondary polytope vertices: {sorted(sec.vertices)}")
        print(f"  Newton(E) = secondary polytope: {rep.newton_matches_secondary}")
        print(f"  factorization consistent: {bool(rep)}")


if __name__ == "__main__":
    main()
