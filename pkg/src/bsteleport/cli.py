"""Command-line interface.

Subcommands cover the resource coefficients, the outcome distribution,
single-point fidelity, the two grid products (fidelity sweep and
most-likely-phase map) and the self-check against the brute-force
routes.  Exit codes: 0 success, 1 bad invocation or invalid values,
2 self-check failure, 3 output I/O failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .gridio import (
    atomic_write_bytes,
    coeffs_to_csv_bytes,
    distribution_to_csv_bytes,
    grid_to_csv_bytes,
    grid_to_pgm_bytes,
)
from .oracle import verify_resource
from .phase import DEFAULT_PHASE_GRID, phase_argmax_map
from .protocol import (
    average_fidelity,
    classical_baseline,
    fidelity_sweep,
    outcome_distribution,
    split_total,
)
from .states import (
    ResourceParams,
    cat_coeffs,
    coherent_coeffs,
    fock_coeffs,
    resource_coeffs,
    suggest_cutoff,
)

OUT_DIR_ENV = "BSTELEPORT_OUT_DIR"
DEFAULT_ORACLE_BETAS = (0.1, 0.5, math.pi / 2, 2.5, 3.0)

# options that take no value; config entries for these accept true/false
_SWITCH_KEYS = {"verbose"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(x: float) -> str:
    return "%.17g" % x


def _fail(message: str) -> None:
    raise _UsageError(message)


def _add_target_options(sub) -> None:
    sub.add_argument("--target", choices=("cat", "fock", "coherent"), default="cat",
                     help="state to teleport (default cat)")
    sub.add_argument("--alpha", type=float, default=3.0,
                     help="amplitude for cat/coherent targets (default 3.0)")
    sub.add_argument("--k", type=int, default=0,
                     help="photon number for the fock target (default 0)")
    sub.add_argument("--cutoff", type=int, default=None,
                     help="number-basis cutoff (default: chosen from the tail tolerance)")
    sub.add_argument("--tail-tol", type=float, default=1e-12,
                     help="largest truncated tail accepted for the target (default 1e-12)")


def _add_pair_options(sub) -> None:
    sub.add_argument("--n-in", type=int, default=None, help="photons entering the first port")
    sub.add_argument("--m-in", type=int, default=None, help="photons entering the second port")
    sub.add_argument("--total", type=int, default=None,
                     help="total photon number (alternative to --n-in/--m-in, with --m)")
    sub.add_argument("--m", type=float, default=None,
                     help="half the input photon difference (used with --total)")
    sub.add_argument("--beta", type=float, default=math.pi / 2,
                     help="beam-splitter angle in [0, pi] (default pi/2)")


def _add_grid_options(sub) -> None:
    sub.add_argument("--total", type=int, default=None, help="total photon number (required)")
    sub.add_argument("--beta-steps", type=int, default=101,
                     help="number of interior beta samples (default 101)")
    sub.add_argument("--m-range", default=None,
                     help="m axis as lo:hi[:step] (default 0 to total/2, step 1)")
    sub.add_argument("--workers", type=int, default=None,
                     help="process-pool size (default: cpu count)")


def _add_output_options(sub, csv_default=None, pgm_default=None) -> None:
    sub.add_argument("--out-dir", default=None,
                     help=f"output directory (default ${OUT_DIR_ENV} or current directory)")
    sub.add_argument("--csv", default=csv_default,
                     help="CSV output path" + ("" if csv_default is None else f" (default {csv_default})"))
    if pgm_default is not None:
        sub.add_argument("--pgm", default=pgm_default,
                         help=f"PGM image output path (default {pgm_default})")


def _build_parser() -> _Parser:
    parser = _Parser(prog="bsteleport",
                     description="Teleportation statistics for Fock states entangled at a beam splitter")
    subs = parser.add_subparsers(dest="command", metavar="command")

    sub = subs.add_parser("resource", parents=[], help="resource coefficient vector",
                          description="Print or write the resource coefficients as index,real,imag CSV.")
    _add_pair_options(sub)
    _add_output_options(sub)
    sub.set_defaults(func=_cmd_resource)

    sub = subs.add_parser("distribution", help="outcome distribution q,p,f",
                          description="Print or write the measurement-outcome distribution as q,p,f CSV.")
    _add_target_options(sub)
    _add_pair_options(sub)
    _add_output_options(sub)
    sub.set_defaults(func=_cmd_distribution)

    sub = subs.add_parser("fidelity", help="average fidelity at one point",
                          description="Average teleportation fidelity and the no-entanglement baseline.")
    _add_target_options(sub)
    _add_pair_options(sub)
    sub.set_defaults(func=_cmd_fidelity)

    sub = subs.add_parser("sweep", help="average-fidelity grid over (beta, m)",
                          description="Average fidelity on a (beta, m) grid; writes CSV and a PGM rendering.")
    _add_target_options(sub)
    _add_grid_options(sub)
    _add_output_options(sub, csv_default="fidelity_sweep.csv", pgm_default="fidelity_sweep.pgm")
    sub.set_defaults(func=_cmd_sweep)

    sub = subs.add_parser("phase-map", help="most likely phase difference over (beta, m)",
                          description="Grid of the most likely phase-difference reading; CSV plus PGM "
                                      "with white at pi/2.")
    _add_grid_options(sub)
    sub.add_argument("--phi-grid", type=int, default=DEFAULT_PHASE_GRID,
                     help=f"phase grid resolution (default {DEFAULT_PHASE_GRID})")
    _add_output_options(sub, csv_default="phase_map.csv", pgm_default="phase_map.pgm")
    sub.set_defaults(func=_cmd_phase_map)

    sub = subs.add_parser("oracle-check", help="check coefficients against the sector unitary",
                          description="Compare closed-form resource coefficients with the directly "
                                      "exponentiated sector Hamiltonian over a range of inputs.")
    sub.add_argument("--max-total", type=int, default=40,
                     help="largest total photon number checked (default 40)")
    sub.add_argument("--betas", default=None,
                     help="comma-separated beta values (default 0.1,0.5,pi/2,2.5,3.0)")
    sub.add_argument("--tol", type=float, default=1e-10,
                     help="allowed overlap deficit per check (default 1e-10)")
    sub.add_argument("--verbose", action="store_true", help="print one line per failing check")
    sub.set_defaults(func=_cmd_oracle_check)

    for name, sub in subs.choices.items():
        sub.add_argument("--config", default=None,
                         help="key=value file supplying defaults; flags override it")
    return parser


def _config_tokens(path: str) -> list[str]:
    tokens: list[str] = []
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot read config file: {exc}")
    with handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                _fail(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = line.split("=", 1)
            key = key.strip().replace("_", "-")
            value = value.strip()
            if not key:
                _fail(f"{path}:{lineno}: empty key")
            if key in _SWITCH_KEYS:
                if value.lower() not in ("true", "false"):
                    _fail(f"{path}:{lineno}: {key} takes true or false")
                if value.lower() == "true":
                    tokens.append(f"--{key}")
            else:
                tokens.extend([f"--{key}", value])
    return tokens


def _out_path(args, name: str) -> str:
    if os.path.isabs(name):
        return name
    base = args.out_dir or os.environ.get(OUT_DIR_ENV) or "."
    return os.path.join(base, name)


def _emit(args, data: bytes) -> None:
    if args.csv:
        path = _out_path(args, args.csv)
        atomic_write_bytes(path, data)
        print(f"wrote {path}")
    else:
        sys.stdout.write(data.decode("ascii"))


def _build_target(args):
    if args.target == "fock":
        if args.k < 0:
            _fail("--k must be non-negative")
        cutoff = args.k if args.cutoff is None else args.cutoff
        return fock_coeffs(args.k, cutoff)
    if args.alpha < 0:
        _fail("--alpha must be non-negative")
    builder = cat_coeffs if args.target == "cat" else coherent_coeffs
    cutoff = args.cutoff
    if cutoff is None:
        cutoff = suggest_cutoff(args.alpha, kind=args.target, tol=args.tail_tol)
    return builder(args.alpha, cutoff, tail_tol=args.tail_tol)


def _resolve_pair(args) -> tuple[int, int]:
    by_pair = args.n_in is not None or args.m_in is not None
    by_sector = args.total is not None or args.m is not None
    if by_pair and by_sector:
        _fail("give either --n-in/--m-in or --total/--m, not both")
    if by_pair:
        if args.n_in is None or args.m_in is None:
            _fail("--n-in and --m-in must be given together")
        return args.n_in, args.m_in
    if by_sector:
        if args.total is None or args.m is None:
            _fail("--total and --m must be given together")
        split = split_total(args.total, args.m)
        if split is None:
            _fail(f"m={args.m:g} is incompatible with total={args.total}")
        return split
    _fail("resource inputs required: --n-in/--m-in or --total/--m")
    raise AssertionError("unreachable")


def _beta_axis(steps: int) -> np.ndarray:
    if steps < 2:
        _fail("--beta-steps must be at least 2")
    k = np.arange(1, steps + 1, dtype=float)
    return math.pi * k / (steps + 1)


def _m_axis(args) -> np.ndarray:
    if args.m_range is None:
        start = 0.0 if args.total % 2 == 0 else 0.5
        count = args.total // 2 + 1
        return start + np.arange(count, dtype=float)
    parts = args.m_range.split(":")
    if len(parts) not in (2, 3):
        _fail("--m-range must be lo:hi or lo:hi:step")
    try:
        lo = float(parts[0])
        hi = float(parts[1])
        step = float(parts[2]) if len(parts) == 3 else 1.0
    except ValueError:
        _fail(f"--m-range has a non-numeric part: {args.m_range!r}")
    if step <= 0:
        _fail("--m-range step must be positive")
    if hi < lo:
        _fail("--m-range upper bound is below the lower bound")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count, dtype=float)


def _cmd_resource(args) -> int:
    n_in, m_in = _resolve_pair(args)
    params = ResourceParams(n_in, m_in, args.beta)
    data = coeffs_to_csv_bytes(resource_coeffs(params).coeffs)
    _emit(args, data)
    return 0


def _cmd_distribution(args) -> int:
    target = _build_target(args)
    n_in, m_in = _resolve_pair(args)
    resource = resource_coeffs(ResourceParams(n_in, m_in, args.beta))
    data = distribution_to_csv_bytes(outcome_distribution(target, resource))
    _emit(args, data)
    return 0


def _cmd_fidelity(args) -> int:
    target = _build_target(args)
    n_in, m_in = _resolve_pair(args)
    params = ResourceParams(n_in, m_in, args.beta)
    resource = resource_coeffs(params)
    print(f"target={target.label} cutoff={target.cutoff}")
    print(f"n_in={n_in} m_in={m_in} beta={_fmt(args.beta)}")
    print(f"average_fidelity={_fmt(average_fidelity(target, resource))}")
    print(f"classical_baseline={_fmt(classical_baseline(target, params))}")
    return 0


def _require_total(args) -> int:
    if args.total is None:
        _fail("--total is required")
    if args.total < 0:
        _fail("--total must be non-negative")
    return args.total


def _grid_summary(grid) -> str:
    finite = np.isfinite(grid.values)
    if not finite.any():
        return "no valid cells"
    flat = np.where(finite, grid.values, -np.inf)
    i, k = np.unravel_index(int(np.argmax(flat)), flat.shape)
    return (f"max={_fmt(grid.values[i, k])} at beta={_fmt(grid.beta_axis[k])} "
            f"m={grid.m_axis[i]:g}")


def _cmd_sweep(args) -> int:
    target = _build_target(args)
    total = _require_total(args)
    grid = fidelity_sweep(target, total, _beta_axis(args.beta_steps), _m_axis(args),
                          workers=args.workers)
    csv_path = _out_path(args, args.csv)
    pgm_path = _out_path(args, args.pgm)
    atomic_write_bytes(csv_path, grid_to_csv_bytes(grid))
    atomic_write_bytes(pgm_path, grid_to_pgm_bytes(grid, scale=1.0))
    print(f"wrote {csv_path}")
    print(f"wrote {pgm_path}")
    print(_grid_summary(grid))
    return 0


def _cmd_phase_map(args) -> int:
    total = _require_total(args)
    grid = phase_argmax_map(total, _beta_axis(args.beta_steps), _m_axis(args),
                            grid_size=args.phi_grid, workers=args.workers)
    csv_path = _out_path(args, args.csv)
    pgm_path = _out_path(args, args.pgm)
    atomic_write_bytes(csv_path, grid_to_csv_bytes(grid))
    atomic_write_bytes(pgm_path, grid_to_pgm_bytes(grid, scale=math.pi / 2))
    print(f"wrote {csv_path}")
    print(f"wrote {pgm_path}")
    print(_grid_summary(grid))
    return 0


def _cmd_oracle_check(args) -> int:
    if args.max_total < 0:
        _fail("--max-total must be non-negative")
    if args.betas is None:
        betas = list(DEFAULT_ORACLE_BETAS)
    else:
        try:
            betas = [float(part) for part in args.betas.split(",") if part.strip()]
        except ValueError:
            _fail(f"--betas has a non-numeric part: {args.betas!r}")
        if not betas:
            _fail("--betas is empty")

    checks = 0
    failures = 0
    worst_deficit = 0.0
    worst_deviation = 0.0
    for total in range(args.max_total + 1):
        for n_in in range(total + 1):
            for beta in betas:
                report = verify_resource(ResourceParams(n_in, total - n_in, beta),
                                         max_total=args.max_total, tol=args.tol)
                checks += 1
                worst_deficit = max(worst_deficit, 1.0 - report.overlap_modulus)
                worst_deviation = max(worst_deviation, report.max_deviation)
                if not report.passed:
                    failures += 1
                    if args.verbose:
                        print(f"FAIL n_in={n_in} m_in={total - n_in} beta={_fmt(beta)} "
                              f"overlap={_fmt(report.overlap_modulus)}")
    print(f"checks={checks} failures={failures}")
    print(f"worst_overlap_deficit={_fmt(worst_deficit)}")
    print(f"worst_entry_deviation={_fmt(worst_deviation)}")
    if failures:
        print("FAIL")
        return 2
    print("PASS")
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) is None:
            parser.print_usage(sys.stderr)
            return 1
        if getattr(args, "config", None):
            argv = argv[:1] + _config_tokens(args.config) + argv[1:]
            args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
