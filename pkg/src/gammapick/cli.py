"""Command-line front end.

Problem instances are JSON files with complex numbers encoded as
``[re, im]`` pairs.  Reports go to standard output as JSON (or ``--text``
for a line-oriented rendering) and embed the options that produced them,
so identical inputs and seeds give byte-identical output.

Exit codes: 0 for a successful/affirmative computation, 2 for a
well-formed problem with a negative answer (unsolvable Pick data,
membership failure, a verification residual above tolerance), 1 for
malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .domains import BlockStructure, GammaPoint, mu, tetrablock_member
from .fractional import SingularFractionError, se_values
from .hardy import RationalFunction
from .kernels import SampleGrid, combine_k, kernel_rank, membership, tensor_grid, upper_e
from .linalg import IndefiniteMatrixError
from .lurking import (
    GramInconsistencyError,
    RankError,
    right_s,
    torus_fit,
    uw_construct,
    verify_uw,
)
from .nevanlinna import (
    DEFAULT_Z_GRID,
    UnsolvablePickError,
    build_slice_schur,
    certify_gamma5_interpolation,
    certify_gamma7_interpolation,
    np_solve,
    pick_matrix,
    reduce_gamma5,
    reduce_gamma7,
    sample_curve,
)
from .realization import RealizedSchurFunction, random_schur
from .serialize import (
    cmatrix_from_json,
    complex_from_json,
    complex_to_json,
    curve_from_json,
    gamma_nodes_from_json,
    pick_data_from_json,
    pick_data_to_json,
)

__all__ = ["run", "main"]


class InputError(Exception):
    """Malformed instance file or command line."""


def _fail(message: str) -> InputError:
    return InputError(message)


def _load_payload(args) -> dict:
    if not getattr(args, "infile", None):
        raise _fail("this subcommand needs --in FILE")
    try:
        with open(args.infile, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise _fail(f"cannot read {args.infile}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _fail(f"malformed JSON in {args.infile}: {exc}") from exc
    if not isinstance(payload, dict):
        raise _fail("instance file must hold a JSON object")
    return payload


def _parse_z_grid(text: str | None):
    if text is None:
        return tuple(DEFAULT_Z_GRID)
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(complex(token))
        except ValueError as exc:
            raise _fail(f"cannot parse {token!r} as a complex number") from exc
    if not out:
        raise _fail("--z2-grid is empty")
    return tuple(out)


def _require(payload: dict, key: str):
    if key not in payload:
        raise _fail(f"instance file is missing the {key!r} field")
    return payload[key]


def _function_from(payload: dict) -> RealizedSchurFunction:
    data = _require(payload, "function")
    try:
        return RealizedSchurFunction.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail(f"bad realization data: {exc}") from exc


def _matrix_and_structure(payload: dict) -> tuple[np.ndarray, BlockStructure]:
    try:
        matrix = cmatrix_from_json(_require(payload, "matrix"))
        structure = BlockStructure.parse(payload.get("structure", "E(3;3;1,1,1)"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise _fail(f"bad matrix instance: {exc}") from exc
    if matrix.shape != (structure.n, structure.n):
        raise _fail(
            f"matrix shape {matrix.shape} does not fit structure {structure.label()}"
        )
    return matrix, structure


def _grid_from(payload: dict, args) -> tuple[SampleGrid, dict]:
    """Grid plus the echoed grid options; --seed/--grid override the file."""
    spec = payload.get("grid", {})
    if not isinstance(spec, dict):
        raise _fail("grid field must be a JSON object")
    if "points" in spec:
        points = tuple(
            tuple(complex_from_json(v) for v in pt) for pt in spec["points"]
        )
        grid = SampleGrid(points, diagonal=bool(spec.get("diagonal", False)))
        return grid, {"points": len(points), "diagonal": grid.diagonal}
    n_lambda = int(spec.get("n_lambda", 4))
    n_z = int(spec.get("n_z", 4))
    if args.grid is not None:
        n_z = max(1, int(args.grid) // max(1, n_lambda))
    radius = float(spec.get("radius", 0.9))
    seed = int(spec.get("seed", 0)) if args.seed is None else int(args.seed)
    diagonal = bool(spec.get("diagonal", False))
    grid = tensor_grid(n_lambda, n_z, radius=radius, seed=seed, diagonal=diagonal)
    return grid, {
        "n_lambda": n_lambda,
        "n_z": n_z,
        "radius": radius,
        "seed": seed,
        "diagonal": diagonal,
    }


def _row_json(row) -> dict:
    return {
        "z": complex_to_json(row.z),
        "split": row.split,
        "solvable": bool(row.solvable),
        "min_eig": None if row.min_eig != row.min_eig else float(row.min_eig),
        "target_residual": None if row.target_residual is None else float(row.target_residual),
        "note": row.note,
    }


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (exit_code, report)


def _cmd_mu(args):
    payload = _load_payload(args)
    matrix, structure = _matrix_and_structure(payload)
    phase_grid = int(args.grid) if args.grid is not None else 720
    value = mu(matrix, structure, phase_grid=phase_grid)
    report = {
        "mu": float(value),
        "structure": structure.label(),
        "options": {"phase_grid": phase_grid},
    }
    return 0, report


def _cmd_gamma_check(args):
    payload = _load_payload(args)
    tol = float(args.tol) if args.tol is not None else 1e-9
    if "point" in payload:
        point = GammaPoint(
            payload.get("variant", "gamma3"),
            tuple(complex_from_json(v) for v in payload["point"]),
        )
        if point.variant != "gamma3":
            raise _fail("point membership checks support the gamma3 variant only")
        member = tetrablock_member(point.entries, tol=tol)
        report = {
            "member": bool(member),
            "variant": "gamma3",
            "options": {"tol": tol},
        }
        return (0 if member else 2), report
    matrix, structure = _matrix_and_structure(payload)
    phase_grid = int(args.grid) if args.grid is not None else 720
    value = mu(matrix, structure, phase_grid=phase_grid)
    member = value <= 1.0 + tol
    report = {
        "member": bool(member),
        "mu": float(value),
        "structure": structure.label(),
        "options": {"tol": tol, "phase_grid": phase_grid},
    }
    return (0 if member else 2), report


def _cmd_se(args):
    payload = _load_payload(args)
    f = _function_from(payload)
    pts = _require(payload, "points")
    try:
        lam = np.array([complex_from_json(p[0]) for p in pts])
        z1 = np.array([complex_from_json(p[1]) for p in pts])
        z2 = np.array([complex_from_json(p[2]) for p in pts])
    except (IndexError, TypeError, ValueError) as exc:
        raise _fail(f"points must be [lam, z1, z2] triples: {exc}") from exc
    try:
        g = se_values(f, lam, z1, z2)[0]
    except SingularFractionError as exc:
        return 2, {"error": str(exc), "options": {}}
    values = -g
    report = {
        "values": [complex_to_json(v) for v in values],
        "sup_modulus": float(np.abs(values).max()) if values.size else 0.0,
        "options": {"points": len(pts)},
    }
    return 0, report


def _kernel_summary(triple, tol):
    k = combine_k(triple)
    outer = np.outer(triple.g_values, np.conj(triple.g_values))
    k_residual = float(np.abs(k.gram - outer).max())

    def safe_rank(kernel):
        try:
            return kernel_rank(kernel, tol)
        except IndefiniteMatrixError:
            return None

    which = "S1" if triple.grid.diagonal else "R1"
    summary = {
        "psd": {
            "n1": bool(triple.n1.is_psd(tol)),
            "n2": bool(triple.n2.is_psd(tol)),
            "n3": bool(triple.n3.is_psd(tol)),
            "k": bool(k.is_psd(tol)),
        },
        "ranks": {
            "n1": safe_rank(triple.n1),
            "n2": safe_rank(triple.n2),
            "n3": safe_rank(triple.n3),
            "k": safe_rank(k),
        },
        "k_outer_residual": k_residual,
        "membership_class": which,
        "member": bool(membership(triple, which, tol)),
    }
    return summary


def _cmd_upper_e(args):
    payload = _load_payload(args)
    f = _function_from(payload)
    grid, grid_opts = _grid_from(payload, args)
    tol = float(args.tol) if args.tol is not None else 1e-9
    triple = upper_e(f, grid)
    summary = _kernel_summary(triple, tol)
    summary["options"] = {"tol": tol, "grid": grid_opts}
    return (0 if summary["member"] else 2), summary


def _cmd_uw(args):
    payload = _load_payload(args)
    f = _function_from(payload)
    grid, grid_opts = _grid_from(payload, args)
    tol = float(args.tol) if args.tol is not None else 1e-8
    triple = upper_e(f, grid)
    try:
        result = uw_construct(triple, tol=tol)
    except (RankError, GramInconsistencyError, ArithmeticError) as exc:
        return 2, {"error": str(exc), "options": {"tol": tol, "grid": grid_opts}}
    ver = verify_uw(result, tol=tol)
    back = upper_e(result.xi, grid)
    gram_match = max(
        float(np.abs(back.n1.gram - triple.n1.gram).max()),
        float(np.abs(back.n2.gram - triple.n2.gram).max()),
        float(np.abs(back.n3.gram - triple.n3.gram).max()),
    )
    fit = torus_fit(f, result.xi, grid.lam)
    passed = ver.passed and gram_match <= tol
    report = {
        "state_dim": int(result.state_dim),
        "verify_residual": float(ver.max_residual),
        "gram_match": gram_match,
        "torus_fit_residual": float(fit.max_residual),
        "torus_phases": [complex_to_json(v) for v in fit.eta],
        "passed": bool(passed),
        "options": {"tol": tol, "grid": grid_opts},
    }
    return (0 if passed else 2), report


def _cmd_right_s(args):
    payload = _load_payload(args)
    f = _function_from(payload)
    grid, grid_opts = _grid_from(payload, args)
    tol = float(args.tol) if args.tol is not None else 1e-9
    triple = upper_e(f, grid)
    try:
        factor = right_s(triple, tol=tol)
    except (RankError, ValueError, IndefiniteMatrixError) as exc:
        return 2, {"error": str(exc), "options": {"tol": tol, "grid": grid_opts}}
    g = triple.g_values
    modulus_err = float(np.abs(np.abs(factor.values) - np.abs(g)).max())
    keep = np.abs(g) > 1e-8
    if np.any(keep):
        ratios = factor.values[keep] / g[keep]
        center = ratios.mean()
        phase_err = float(np.abs(ratios - center).max())
    else:
        phase_err = 0.0
    report = {
        "values": [complex_to_json(v) for v in factor.values],
        "max_modulus": float(np.abs(factor.values).max()),
        "modulus_match": modulus_err,
        "phase_constancy": phase_err,
        "options": {"tol": tol, "grid": grid_opts},
    }
    return 0, report


def _cmd_np(args):
    payload = _load_payload(args)
    try:
        data = pick_data_from_json(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail(f"bad Pick data: {exc}") from exc
    tol = float(args.tol) if args.tol is not None else 1e-9
    eigs = np.linalg.eigvalsh(0.5 * (pick_matrix(data) + pick_matrix(data).conj().T))
    min_eig = float(eigs[0])
    try:
        f = np_solve(data, tol=tol)
    except UnsolvablePickError as exc:
        report = {
            "solvable": False,
            "min_eig": float(exc.min_eig),
            "options": {"tol": tol},
        }
        return 2, report
    except (GramInconsistencyError, ArithmeticError) as exc:
        return 2, {"error": str(exc), "options": {"tol": tol}}
    vals = f.evaluate_many(np.asarray(data.nodes))
    resid = max(
        float(np.linalg.norm(vals[j] - data.targets[j], 2))
        for j in range(len(data.nodes))
    )
    report = {
        "solvable": True,
        "min_eig": min_eig,
        "state_dim": int(f.m),
        "target_residual": resid,
        "options": {"tol": tol},
    }
    return 0, report


def _gamma_instance(payload):
    """Gamma node data plus the defining curve when the instance carries one.

    Node-only instances hold explicit points; curve instances hold rational
    coordinate functions that get sampled at the listed nodes.
    """
    if "curve" in payload:
        try:
            curve = curve_from_json(payload["curve"])
            nodes = tuple(complex_from_json(v) for v in _require(payload, "nodes"))
            return sample_curve(curve, nodes), curve
        except (KeyError, TypeError, ValueError) as exc:
            raise _fail(f"bad gamma curve data: {exc}") from exc
    try:
        return gamma_nodes_from_json(payload), None
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail(f"bad gamma node data: {exc}") from exc


def _cmd_reduce(args):
    payload = _load_payload(args)
    data, _ = _gamma_instance(payload)
    z_grid = _parse_z_grid(args.z2_grid)
    split = args.split or "balanced"
    problems = []
    for z in z_grid:
        entry = {"z": complex_to_json(z), "split": split}
        try:
            if data.variant == "gamma7":
                pick = reduce_gamma7(data, z, split_rule=split)
            else:
                pick = reduce_gamma5(
                    data, z, split_rule=split, det_denominator=args.det_denominator
                )
            entry["pick"] = pick_data_to_json(pick)
        except (ZeroDivisionError, ValueError) as exc:
            entry["error"] = str(exc)
        problems.append(entry)
    options = {"split": split, "z2_grid": [complex_to_json(z) for z in z_grid]}
    if data.variant == "gamma5":
        options["det_denominator"] = args.det_denominator
    report = {"variant": data.variant, "problems": problems, "options": options}
    return 0, report


def _slice_checks(curve, z_grid, n_boundary, det_denominator):
    rows = []
    for z in z_grid:
        entry = {"z": complex_to_json(z)}
        try:
            sliced = build_slice_schur(
                curve, z, n_boundary=n_boundary, det_denominator=det_denominator
            )
            entry["ok"] = True
            entry["triangular"] = bool(sliced.triangular)
        except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
            entry["ok"] = False
            entry["error"] = str(exc)
        rows.append(entry)
    return rows


def _cmd_certify(args):
    payload = _load_payload(args)
    data, curve = _gamma_instance(payload)
    z_grid = _parse_z_grid(args.z2_grid)
    splits = (args.split,) if args.split else ("balanced",)
    tol = float(args.tol) if args.tol is not None else 1e-9
    options = {
        "split_rules": list(splits),
        "z2_grid": [complex_to_json(z) for z in z_grid],
        "tol": tol,
        "n_boundary": int(args.n_boundary),
    }
    if data.variant == "gamma7":
        rep = certify_gamma7_interpolation(data, z_grid=z_grid, split_rules=splits, tol=tol)
        report = {
            "variant": "gamma7",
            "certified": bool(rep.certified),
            "solvable_splits": list(rep.solvable_splits()),
            "rows": [_row_json(r) for r in rep.rows],
            "options": options,
        }
        if curve is not None:
            report["slice_checks"] = _slice_checks(
                curve, z_grid, args.n_boundary, "corrected"
            )
        return (0 if rep.certified else 2), report
    # the 5-coordinate slice has two determinant conventions; report both and
    # let the flag pick which one decides the exit code
    options["det_denominator"] = args.det_denominator
    tables = {}
    for name in ("corrected", "printed"):
        rep = certify_gamma5_interpolation(
            data, z_grid=z_grid, split_rules=splits, tol=tol, det_denominator=name
        )
        tables[name] = {
            "certified": bool(rep.certified),
            "solvable_splits": list(rep.solvable_splits()),
            "rows": [_row_json(r) for r in rep.rows],
        }
    chosen = tables[args.det_denominator]
    report = {
        "variant": "gamma5",
        "certified": chosen["certified"],
        "by_denominator": tables,
        "options": options,
    }
    if curve is not None:
        report["slice_checks"] = _slice_checks(
            curve, z_grid, args.n_boundary, args.det_denominator
        )
    return (0 if chosen["certified"] else 2), report


def _cmd_verify_identities(args):
    seed = int(args.seed) if args.seed is not None else 7
    grid_n = int(args.grid) if args.grid is not None else 16
    tol = float(args.tol) if args.tol is not None else 1e-8
    f = random_schur(3, 4, seed=seed)
    grid = tensor_grid(4, max(1, grid_n // 4), radius=0.9, seed=seed)
    triple = upper_e(f, grid)

    k = combine_k(triple)
    outer = np.outer(triple.g_values, np.conj(triple.g_values))
    kernel_identity = float(np.abs(k.gram - outer).max())

    result = uw_construct(triple)
    ver = verify_uw(result)
    back = upper_e(result.xi, grid)
    gram_match = max(
        float(np.abs(back.n1.gram - triple.n1.gram).max()),
        float(np.abs(back.n2.gram - triple.n2.gram).max()),
        float(np.abs(back.n3.gram - triple.n3.gram).max()),
    )
    fit = torus_fit(f, result.xi, grid.lam)

    factor = right_s(triple)
    modulus = float(np.abs(np.abs(factor.values) - np.abs(triple.g_values)).max())
    keep = np.abs(triple.g_values) > 1e-8
    ratios = factor.values[keep] / triple.g_values[keep]
    phase = float(np.abs(ratios - ratios.mean()).max()) if ratios.size else 0.0

    rng = np.random.default_rng(seed)
    n_samples = 4000
    lam, z1, z2 = (
        0.999 * np.sqrt(rng.random(n_samples)) * np.exp(2j * np.pi * rng.random(n_samples))
        for _ in range(3)
    )
    sup = float(np.abs(se_values(f, lam, z1, z2)[0]).max())
    se_excess = max(0.0, sup - 1.0)

    rows = [
        {"check": "kernel_identity", "residual": kernel_identity, "threshold": tol},
        {"check": "uw_verify", "residual": float(ver.max_residual), "threshold": tol},
        {"check": "uw_gram_match", "residual": gram_match, "threshold": tol},
        {"check": "right_s_modulus", "residual": modulus, "threshold": tol},
        {"check": "right_s_phase", "residual": phase, "threshold": tol},
        {"check": "torus_fit", "residual": float(fit.max_residual), "threshold": 1e-7},
        {"check": "se_sup_excess", "residual": se_excess, "threshold": 1e-9},
    ]
    passed = all(r["residual"] <= r["threshold"] for r in rows)
    report = {
        "rows": rows,
        "passed": bool(passed),
        "options": {"seed": seed, "grid": grid_n, "tol": tol, "se_samples": n_samples},
    }
    return (0 if passed else 2), report


_HANDLERS = {
    "mu": _cmd_mu,
    "gamma-check": _cmd_gamma_check,
    "se": _cmd_se,
    "upper-e": _cmd_upper_e,
    "uw": _cmd_uw,
    "right-s": _cmd_right_s,
    "np": _cmd_np,
    "reduce": _cmd_reduce,
    "certify": _cmd_certify,
    "verify-identities": _cmd_verify_identities,
}


def _render_text(value, indent: str = "") -> list[str]:
    lines = []
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)):
                lines.append(f"{indent}{key}:")
                lines.extend(_render_text(item, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {item}")
    elif isinstance(value, list):
        for i, item in enumerate(value):
            if isinstance(item, (dict, list)):
                lines.append(f"{indent}[{i}]")
                lines.extend(_render_text(item, indent + "  "))
            else:
                lines.append(f"{indent}[{i}] {item}")
    else:
        lines.append(f"{indent}{value}")
    return lines


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammapick",
        description="Structured singular values, kernel triples, and Pick reductions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _HANDLERS:
        p = sub.add_parser(name)
        p.add_argument("--in", dest="infile", metavar="FILE", help="JSON instance file")
        p.add_argument("--out", dest="outfile", metavar="FILE", help="also write the report here")
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--grid", type=int, default=None)
        p.add_argument("--z2-grid", dest="z2_grid", default=None, metavar="LIST",
                       help="comma-separated complex slice parameters, e.g. 0,0.3,-0.3j")
        p.add_argument("--split", choices=("balanced", "left-one"), default=None)
        p.add_argument("--n-boundary", dest="n_boundary", type=int, default=2048)
        p.add_argument("--det-denominator", dest="det_denominator",
                       choices=("corrected", "printed"), default="corrected")
        p.add_argument("--text", action="store_true", help="line-oriented output instead of JSON")
    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = _HANDLERS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = {"command": args.command, **report}
    if args.text:
        rendered = "\n".join(_render_text(report)) + "\n"
    else:
        rendered = json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"
    sys.stdout.write(rendered)
    if args.outfile:
        try:
            with open(args.outfile, "w", encoding="utf-8") as fh:
                fh.write(rendered)
        except OSError as exc:
            print(f"error: cannot write {args.outfile}: {exc}", file=sys.stderr)
            return 1
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
