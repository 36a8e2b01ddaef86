"""Batch CLI: parse a configuration, run one computation, emit a JSON report.

Input is JSON with a column-major integer matrix (a list of character
columns), optional labels, and an optional parameter vector of "p/q" strings:

    {"matrix": [[1,0,0],[1,3,0],[1,0,3],[1,1,0],[1,0,2]], "beta": ["0","1/2"]}

All exact values are serialized as integers or "p/q" strings; only the
monodromy command emits floating complex numbers, with its tolerance stated.
Reports echo the input and the tool version, and key order is canonical, so
identical invocations are byte-identical.

Exit codes: 0 success, 1 obstruction or rejection reported, 2 input error,
3 symbolic budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .configuration import (
    PointConfiguration,
    check_aux_point,
    face_lattice,
    index_i,
    is_lattice_redundant,
    multiplicity,
    reduction_chain,
    saturate,
    subdiagram_volume,
)
from .continuation import numeric_monodromy
from .curves import (
    BudgetExceededError,
    MonomialCurveConfig,
    discriminant_curve,
    principal_determinant_curve,
    verify_factorization,
)
from .hyper import (
    ResonantParameterError,
    annihilation_check,
    extend_solution,
    gamma_series,
    is_nonresonant,
    restrict_to_zero,
)
from .secondary import (
    DegenerateHeightsError,
    EnumerationCapError,
    enumerate_regular_triangulations,
    gkz_vector,
    regular_triangulation,
    secondary_polytope,
)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

MONODROMY_TOLERANCE = 1e-9


class InputError(ValueError):
    pass


def frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_frac(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}") from exc


def _load_payload(path: str | None):
    try:
        if path and path != "-":
            with open(path, "r", encoding="utf-8") as fh:
                raw = fh.read()
        else:
            raw = sys.stdin.read()
        if not raw.strip():
            return {}
        data = json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    return data


def _config_from(data) -> PointConfiguration:
    cols = data.get("matrix")
    if not isinstance(cols, list) or not cols:
        raise InputError("input needs a nonempty column-major 'matrix'")
    try:
        cols = [[int(a) for a in col] for col in cols]
    except (TypeError, ValueError) as exc:
        raise InputError("matrix entries must be integers") from exc
    labels = data.get("labels")
    try:
        return PointConfiguration.from_columns(cols, labels)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _beta_from(data, args, config=None):
    raw = getattr(args, "beta", None) or data.get("beta")
    if raw is None:
        raise InputError("a parameter vector 'beta' is required")
    if isinstance(raw, str):
        raw = raw.split(",")
    return tuple(parse_frac(b) for b in raw)


def _curve_from(data) -> MonomialCurveConfig:
    cols = data.get("matrix")
    if not isinstance(cols, list) or not cols:
        raise InputError("curve commands need a 2-row column-major 'matrix'")
    exps = []
    for col in cols:
        if len(col) != 2 or int(col[0]) != 1:
            raise InputError("curve columns must look like (1, exponent)")
        exps.append(int(col[1]))
    try:
        return MonomialCurveConfig(tuple(exps))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _point(p):
    return [int(a) for a in p]


def _poly_json(p):
    return [[list(e), c] for e, c in sorted(p.items())]


def _series_json(s):
    return {
        "base_exponent": [frac_str(v) for v in s.base_exponent],
        "terms": [[list(u), frac_str(c)] for u, c in s.term_items],
        "truncation_order": s.truncation_order,
    }


def _run_faces(data, args):
    A = _config_from(data)
    faces = []
    for f in A.poset.faces:
        L = face_lattice(A, f)
        faces.append(
            {
                "dim": f.dim,
                "points": [_point(A.points[i]) for i in f.indices],
                "labels": [A.labels[i] for i in f.indices],
                "lattice_rank": L.rank,
            }
        )
    return {"faces": faces, "newton_dim": A.newton.dim}, EXIT_OK


def _run_saturate(data, args):
    A = _config_from(data)
    res = saturate(A, args.mode)
    return {
        "mode": res.mode,
        "added_points": [_point(p) for p in res.added_points],
        "result_points": [_point(p) for p in res.result.points],
        "result_size": res.result.size,
    }, EXIT_OK


def _run_redundant(data, args):
    A = _config_from(data)
    rep = is_lattice_redundant(A, args.col)
    return {
        "column": args.col,
        "redundant": bool(rep),
        "reason": rep.reason,
        "faces_checked": len(rep.per_face),
    }, EXIT_OK


def _run_mults(data, args):
    A = _config_from(data)
    rows = []
    for f in A.poset.faces:
        rec = multiplicity(A, f)
        rows.append(
            {
                "face_labels": [A.labels[i] for i in f.indices],
                "dim": f.dim,
                "index": rec.index_i,
                "subdiagram_volume": rec.subvol_v,
                "multiplicity": rec.mult_m,
            }
        )
    return {"table": rows}, EXIT_OK


def _run_aux_check(data, args):
    A = _config_from(data)
    cert = check_aux_point(A, args.k, args.a)
    payload = {
        "deleted": args.k,
        "auxiliary": args.a,
        "accepted": bool(cert),
        "reasons": [
            r if isinstance(r, str) else
            {"face": list(r.face_indices), "route": r.route, "detail": r.detail}
            for r in cert.reasons
        ],
    }
    return payload, EXIT_OK if cert else EXIT_REJECTED


def _run_reduce(data, args):
    A = _config_from(data)
    chain = reduction_chain(A, args.mode)
    payload = {
        "mode": args.mode,
        "complete": chain.complete,
        "steps": [
            {
                "added": _point(s.added_point),
                "face": list(s.face_indices),
                "witness": _point(s.witness),
            }
            for s in chain.steps
        ],
        "obstruction": [_point(p) for p in chain.obstruction],
    }
    return payload, EXIT_OK if chain.complete else EXIT_REJECTED


def _run_secondary(data, args):
    A = _config_from(data)
    S = secondary_polytope(A)
    payload = {"vertices": [_point(v) for v in sorted(S.vertices)], "dim": S.dim}
    if args.enumerate:
        tris = enumerate_regular_triangulations(A)
        payload["triangulations"] = [
            {
                "cells": [list(c) for c in T.cells],
                "volumes": list(T.volumes),
                "gkz_vector": list(gkz_vector(A, T)),
            }
            for T in tris
        ]
    return payload, EXIT_OK


def _run_nonresonant(data, args):
    A = _config_from(data)
    beta = _beta_from(data, args)
    rep = is_nonresonant(A, beta)
    return {
        "beta": [frac_str(b) for b in beta],
        "nonresonant": bool(rep),
        "witness_face": list(rep.witness_face) if rep.witness_face else None,
    }, EXIT_OK


def _run_series(data, args):
    A = _config_from(data)
    beta = _beta_from(data, args)
    if not args.extend:
        raise InputError("series currently supports the --extend pipeline")
    k = args.col
    if not 0 <= k < A.size:
        raise InputError(f"column {k} out of range")
    A_k = A.delete(k)
    psi_order = args.psi_order or 2 * args.order + 2
    T = None
    for attempt in range(6):  # deterministic height perturbations
        heights = [
            Fraction(i * i + 1, 7) + Fraction(attempt * (i**3 + i), 113)
            for i in range(A_k.size)
        ]
        try:
            T = regular_triangulation(A_k, heights)
            break
        except DegenerateHeightsError:
            continue
    if T is None:
        raise InputError("no generic lifting heights found for the deletion")
    cell = T.cells[0]
    psi = gamma_series(A_k, beta, cell, psi_order)
    F = extend_solution(psi, A, k, beta, args.order)
    back = restrict_to_zero(F, k)
    report = annihilation_check(F)
    payload = {
        "input_series": _series_json(psi),
        "extended_series": _series_json(F),
        "cell": list(cell),
        "annihilation": {
            "passed": bool(report),
            "determined_zero": report.determined_zero,
            "violations": len(report.determined_nonzero),
            "boundary_indeterminate": report.boundary_indeterminate,
        },
        "restriction_matches_input": back.terms == psi.terms,
    }
    ok = bool(report) and payload["restriction_matches_input"]
    return payload, EXIT_OK if ok else EXIT_REJECTED


def _run_curve(data, args):
    if args.action in ("edet", "disc", "verify"):
        cfg = _curve_from(data)
        if args.action == "edet":
            return {"principal_determinant": _poly_json(principal_determinant_curve(cfg))}, EXIT_OK
        if args.action == "disc":
            return {"discriminant": _poly_json(discriminant_curve(cfg))}, EXIT_OK
        rep = verify_factorization(cfg)
        payload = {
            "ok": bool(rep),
            "vertex_multiplicities": list(rep.vertex_multiplicities),
            "coordinate_exponents": list(rep.coordinate_exponents),
            "discriminant_power": rep.discriminant_power,
            "newton_matches_secondary": rep.newton_matches_secondary,
        }
        return payload, EXIT_OK if rep else EXIT_REJECTED
    if args.action == "monodromy":
        if args.delta is None:
            raise InputError("monodromy needs --delta")
        beta = _beta_from(data, args)
        res = numeric_monodromy(args.delta, beta)
        def cplx(z):
            return [z.real, z.imag]
        payload = {
            "delta": args.delta,
            "beta": [frac_str(b) for b in beta],
            "tolerance": MONODROMY_TOLERANCE,
            "trivial_loop_error": res.trivial_loop_error,
            "generators": [
                [[cplx(x) for x in row] for row in M] for M in res.generators
            ],
            "invariants": {
                k: ([cplx(x) for x in v] if isinstance(v, tuple) else cplx(v))
                for k, v in sorted(res.invariants.items())
            },
        }
        return payload, EXIT_OK
    raise InputError(f"unknown curve action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gkzkit", description=__doc__)
    ap.add_argument("--input", "-i", default="-", help="JSON input path, '-' for stdin")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("faces")
    p = sub.add_parser("saturate")
    p.add_argument("--mode", choices=["s", "p", "full"], required=True)
    p = sub.add_parser("redundant")
    p.add_argument("--col", type=int, required=True)
    sub.add_parser("mults")
    p = sub.add_parser("aux-check")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p = sub.add_parser("reduce")
    p.add_argument("--mode", choices=["s", "p"], required=True)
    p = sub.add_parser("secondary")
    p.add_argument("--enumerate", action="store_true")
    p = sub.add_parser("nonresonant")
    p.add_argument("--beta")
    p = sub.add_parser("series")
    p.add_argument("--extend", action="store_true")
    p.add_argument("--col", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--psi-order", type=int, default=None)
    p.add_argument("--beta")
    p = sub.add_parser("curve")
    p.add_argument("action", choices=["edet", "disc", "verify", "monodromy"])
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--beta")
    return ap


HANDLERS = {
    "faces": _run_faces,
    "saturate": _run_saturate,
    "redundant": _run_redundant,
    "mults": _run_mults,
    "aux-check": _run_aux_check,
    "reduce": _run_reduce,
    "secondary": _run_secondary,
    "nonresonant": _run_nonresonant,
    "series": _run_series,
    "curve": _run_curve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data = _load_payload(args.input)
        payload, code = HANDLERS[args.command](data, args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IndexError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceededError, EnumerationCapError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ResonantParameterError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except ValueError as exc:
        # hypothesis violations from the library (vertex deletions, lattice
        # drops, unsupported degrees) are rejections, not crashes
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    report = {
        "command": args.command,
        "input": data,
        "version": __version__,
        "result": payload,
    }
    print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    return code


if __name__ == "__main__":
    sys.exit(main())
