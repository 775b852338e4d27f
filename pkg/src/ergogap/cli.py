"""Command-line interface: ``ergogap {witness,gap,sweep,bounds,validate}``.

Exit codes: 0 entangled / success, 2 inconclusive / validation failure,
1 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bounds import DEFAULT_DECISION_TOL, ENTANGLED, bound_M, m_bound_polynomial, witness
from .errors import ErgogapError
from .ergotropy import ergotropic_gap
from .gallery import FAMILIES, P_FAMILIES, FamilySpec, build
from .ladder import LadderSpec, cumulative_D, decompose_level, slot_table, total_D
from .state import RENORMALIZE_TOL, DensityMatrix, cube_root, validate_matrix

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2
UNIT_COMMENT = "# energies in units of E"
CSV_FIELDS = ("p", "gap", "y_minus_z", "m_d", "min_bound", "verdict", "margin")
TOL_ENV = "ERGOGAP_TOL"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 means "inconclusive" here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# StateFile JSON ------------------------------------------------------------


def _complex_list(rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.shape[-1] != 2:
        raise InputError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _pairs(a: np.ndarray) -> list:
    return np.stack([a.real, a.imag], axis=-1).tolist()


def read_state_file(path: str) -> tuple[int, np.ndarray]:
    """Parse a StateFile into ``(d, density matrix)`` without validating it."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read state file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("state file must hold a JSON object")
    try:
        d = int(doc["d"])
        fmt = doc.get("format", "dense")
        if fmt == "dense":
            mat = _complex_list(doc["matrix"])
            if mat.ndim != 2 or mat.shape != (d**3, d**3):
                raise InputError(f"dense matrix must be {d**3}x{d**3}, got {mat.shape}")
        elif fmt == "pure":
            psi = _complex_list(doc["amplitudes"])
            if psi.ndim != 1 or psi.size != d**3:
                raise InputError(f"pure state needs {d**3} amplitudes, got shape {psi.shape}")
            if cube_root(psi.size) != d:
                raise InputError("amplitude count is not d^3")
            norm = np.linalg.norm(psi)
            if abs(norm - 1.0) <= RENORMALIZE_TOL:
                psi = psi / norm
            mat = np.outer(psi, psi.conj())
        else:
            raise InputError(f"unknown format {fmt!r}; expected 'dense' or 'pure'")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed state file {path}: {exc}") from exc
    return d, mat


def load_state(path: str) -> DensityMatrix:
    d, mat = read_state_file(path)
    return DensityMatrix(d, mat)


def write_state_file(rho: DensityMatrix, path: str) -> None:
    doc = {"d": rho.d, "format": "dense", "matrix": _pairs(np.asarray(rho.mat))}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh)
        fh.write("\n")


# helpers ---------------------------------------------------------------------


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_DECISION_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"{TOL_ENV}={raw!r} is not a number") from None
    if tol < 0:
        raise InputError(f"{TOL_ENV} must be >= 0")
    return tol


def _family_spec(args, p: float | None = None) -> FamilySpec:
    return FamilySpec(
        family=args.family,
        d=args.d,
        p=args.p if p is None else p,
        seed=args.seed,
        rank=args.rank,
        k_components=args.k,
    )


def _state_from_args(args) -> DensityMatrix:
    if args.input:
        return load_state(args.input)
    if not args.family:
        raise InputError("give either --input FILE or --family NAME")
    return build(_family_spec(args))


def _emit(obj: dict) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _fmt(x) -> str:
    return x if isinstance(x, str) else format(float(x), ".12g")


# subcommands -----------------------------------------------------------------


def cmd_witness(args) -> int:
    tol = args.tol if args.tol is not None else _default_tol()
    rho = _state_from_args(args)
    verdict = witness(rho, LadderSpec(rho.d), decision_tol=tol)
    out = {"energy_unit": "E", "d": rho.d, "decision_tol": tol}
    out.update(verdict.as_dict())
    _emit(out)
    return EXIT_OK if verdict.verdict == ENTANGLED else EXIT_NEGATIVE


def cmd_gap(args) -> int:
    rho = _state_from_args(args)
    out = {"energy_unit": "E", "d": rho.d}
    out.update(ergotropic_gap(rho, LadderSpec(rho.d)).as_dict())
    _emit(out)
    return EXIT_OK


def sweep_rows(args, tol: float) -> list[dict]:
    if args.p_steps < 0:
        raise InputError("--p-steps must be >= 0")
    if args.p_steps == 0:
        grid = [args.p_start]
    else:
        step = (args.p_end - args.p_start) / args.p_steps
        grid = [args.p_start + i * step for i in range(args.p_steps)] + [args.p_end]

    def row(p: float) -> dict:
        v = witness(build(_family_spec(args, p)), decision_tol=tol)
        return {
            "p": p, "gap": v.gap, "y_minus_z": v.y_minus_z, "m_d": v.m_d,
            "min_bound": v.min_bound, "verdict": v.verdict, "margin": v.margin,
        }

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            return list(pool.map(row, grid))
    return [row(p) for p in grid]


def cmd_sweep(args) -> int:
    if args.family not in P_FAMILIES:
        raise InputError(f"sweep needs a p-parameterized family: {', '.join(P_FAMILIES)}")
    tol = args.tol if args.tol is not None else _default_tol()
    rows = sweep_rows(args, tol)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(UNIT_COMMENT + "\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_FIELDS)
            for r in rows:
                writer.writerow([_fmt(r[k]) for k in CSV_FIELDS])
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK


def bounds_summary(d: int) -> dict:
    table = slot_table(LadderSpec(d))
    l, m = decompose_level(d - 1)
    m_d = bound_M(d)
    poly = m_bound_polynomial(d)
    out = {
        "d": d,
        "m_d": m_d,
        "l": l,
        "m": m,
        "m_d_closed_form_polynomial": float(poly),
        "D": total_D(d),
        "D_i": [cumulative_D(i) for i in range(2 * d)],
        "degeneracies": [lv.degeneracy for lv in table.levels],
        "level_starts": [lv.start for lv in table.levels],
    }
    if float(poly) != m_d:
        out["note"] = "closed-form polynomial differs from the defining sum; m_d uses the sum"
    return out


def cmd_bounds(args) -> int:
    if args.d < 2:
        raise InputError("--d must be >= 2")
    _emit(bounds_summary(args.d))
    return EXIT_OK


def cmd_validate(args) -> int:
    d, mat = read_state_file(args.input)
    try:
        report, _ = validate_matrix(mat, d)
        out = report.as_dict()
    except ErgogapError as exc:
        out = {"valid": False, "d": d, "problems": [str(exc)]}
    _emit(out)
    return EXIT_OK if out["valid"] else EXIT_NEGATIVE


# parser ----------------------------------------------------------------------


def _add_state_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="StateFile JSON path")
    p.add_argument("--family", choices=FAMILIES)
    _add_family_params(p)


def _add_family_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, default=2, help="local dimension (default 2)")
    p.add_argument("--p", type=float, default=0.0, help="family parameter in [0, 1]")
    p.add_argument("--seed", type=int, default=0, help="seed for random families")
    p.add_argument("--rank", type=int, default=2, help="rank for random-mixed")
    p.add_argument("--k", type=int, default=3, help="components for product-mixture")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ergogap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("witness", help="entanglement verdict from the ergotropic gap")
    _add_state_args(p)
    p.add_argument("--tol", type=float, default=None, help=f"decision tolerance (env {TOL_ENV}, default 1e-9)")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("gap", help="global/local ergotropy and the gap")
    _add_state_args(p)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("sweep", help="CSV of witness results over a p grid")
    p.add_argument("--family", choices=P_FAMILIES, required=True)
    _add_family_params(p)
    p.add_argument("--p-start", type=float, default=0.0)
    p.add_argument("--p-end", type=float, default=1.0)
    p.add_argument("--p-steps", type=int, default=10, help="number of intervals; the grid has p-steps + 1 points")
    p.add_argument("--out", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--jobs", type=int, default=1, help="evaluate grid points in parallel")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="M(d) and the ladder summary")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("validate", help="check a StateFile")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ErgogapError) as exc:
        print(f"ergogap {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
