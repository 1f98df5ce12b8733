"""Batch command-line front door.

Subcommands::

    constant        sharp radial constant at one (d, p, q)
    gaussian-bound  Gaussian lower bound (optimised over sigma, or at --sigma)
    sweep           grid sweep emitting the fixed CSV/JSON schema
    verify          seeded random dominance suite (JSON report)
    gls             transfer weight zeta from a psi CSV, optional profile check
    report          closed-form vs first-principles consistency table

Exit codes: 0 success, 2 domain errors (inadmissible exponents, divergent
integrals, malformed inputs), 3 numerical non-convergence.  All floating
point output is printed with 15 significant digits.  No arithmetic happens
here beyond formatting; every number is produced by a library operation.

A flat ``key=value`` config file can pre-set any long flag (for example
``tol=1e-10`` or ``workers=4``); explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Optional, Sequence

from .errors import ConvergenceError, DomainError
from .gls import PsiWeight, verify_transfer, zeta_from_psi
from .radial_fourier import gaussian_profile
from .restriction import (
    ConsistencyRow,
    RestrictionParams,
    consistency_report,
    gaussian_lower_bound,
    gaussian_lower_bound_optimized,
    radial_convergence_admissible,
    sharp_radial_constant,
    tomas_stein_admissible,
)
from .verify import RandomRadialSpec, run_dominance_suite

SWEEP_COLUMNS = (
    "d", "p", "q", "p_prime", "beta", "integral", "integral_err",
    "k_rad", "k_rad_paper", "gauss_opt", "gauss_paper", "tomas_stein_ok",
)

REPORT_COLUMNS = (
    "d", "p", "q", "k_rad", "k_rad_paper", "k_rad_ratio",
    "gauss_opt", "gauss_paper", "gauss_ratio", "gauss_ratio_predicted",
    "status",
)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".15g")
    return str(value)


def _round_floats(obj):
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return obj
        return float(format(obj, ".15g"))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _parse_range(text: str, integer: bool = False) -> list[float]:
    """Parse a scalar or a min:max:steps range (endpoints included)."""
    parts = str(text).split(":")
    if len(parts) == 1:
        return [int(parts[0])] if integer else [float(parts[0])]
    if len(parts) != 3:
        raise DomainError(
            f"range must be 'min:max:steps', got {text!r}"
        )
    lo, hi = float(parts[0]), float(parts[1])
    steps = int(parts[2])
    if steps < 1:
        raise DomainError(f"range steps must be >= 1, got {steps}")
    if steps == 1:
        values = [lo]
    else:
        if not lo < hi:
            raise DomainError(f"range needs min < max, got {text!r}")
        width = (hi - lo) / (steps - 1)
        values = [lo + i * width for i in range(steps - 1)] + [hi]
    if integer:
        out = []
        for v in values:
            if round(v) != v:
                raise DomainError(f"dimension grid must be integral, got {v!r}")
            out.append(int(v))
        return out
    return values


def _load_config(path: str) -> dict[str, str]:
    config: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}: expected key=value, got {line!r}")
            key, value = line.split("=", 1)
            config[key.strip().replace("-", "_")] = value.strip()
    return config


def _default_workers() -> int:
    env = os.environ.get("SPHRESTRICT_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) if v is not None else "" for v in row])
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(_round_floats(payload), sort_keys=True, indent=2) + "\n"


def _check_admissibility_diagnostics(params: RestrictionParams) -> None:
    if not radial_convergence_admissible(params.d, params.p):
        upper = 2.0 * params.d / (params.d + 1.0)
        raise DomainError(
            f"(d={params.d}, p={_fmt(params.p)}) is outside the kernel "
            f"convergence window 1 < p < 2d/(d+1) = {_fmt(upper)}"
        )


def _cmd_constant(args) -> int:
    params = RestrictionParams(args.d, args.p, args.q)
    _check_admissibility_diagnostics(params)
    result = sharp_radial_constant(params, args.tol)
    payload = {
        "d": params.d,
        "p": params.p,
        "q": params.q,
        "p_prime": params.p_prime,
        "beta": params.beta,
        "k_rad_first_principles": result.k_rad_first_principles,
        "k_rad_paper_closed_form": result.k_rad_paper_closed_form,
        "kernel_integral": {
            "value": result.kernel_integral.value,
            "error_estimate": result.kernel_integral.error_estimate,
            "evaluations": result.kernel_integral.evaluations,
            "converged": result.kernel_integral.converged,
        },
        "tomas_stein_ok": tomas_stein_admissible(params),
    }
    if args.format == "json":
        _emit(_json_text(payload), args.output)
    else:
        columns = (
            "d", "p", "q", "p_prime", "beta", "k_rad", "k_rad_paper",
            "integral", "integral_err", "tomas_stein_ok",
        )
        row = (
            params.d, params.p, params.q, params.p_prime, params.beta,
            result.k_rad_first_principles, result.k_rad_paper_closed_form,
            result.kernel_integral.value, result.kernel_integral.error_estimate,
            tomas_stein_admissible(params),
        )
        _emit(_csv_text(columns, [row]), args.output)
    return 0


def _cmd_gaussian_bound(args) -> int:
    params = RestrictionParams(args.d, args.p, args.q)
    if args.sigma is not None:
        payload = {
            "d": params.d, "p": params.p, "q": params.q,
            "sigma": args.sigma,
            "bound": gaussian_lower_bound(params, args.sigma),
        }
    else:
        opt = gaussian_lower_bound_optimized(params)
        payload = {
            "d": params.d, "p": params.p, "q": params.q,
            "bound": opt.bound,
            "sigma_star": opt.sigma_star,
            "paper_closed_form": opt.paper_closed_form,
        }
    if args.format == "json":
        _emit(_json_text(payload), args.output)
    else:
        columns = tuple(payload.keys())
        _emit(_csv_text(columns, [tuple(payload.values())]), args.output)
    return 0


def _sweep_row(params: RestrictionParams, tol: float):
    ts_ok = tomas_stein_admissible(params)
    if not radial_convergence_admissible(params.d, params.p):
        gauss = gaussian_lower_bound_optimized(params)
        skipped = "skipped"
        return (
            params.d, params.p, params.q, params.p_prime, params.beta,
            skipped, skipped, skipped, skipped,
            gauss.bound, gauss.paper_closed_form, ts_ok,
        )
    sharp = sharp_radial_constant(params, tol)
    gauss = gaussian_lower_bound_optimized(params)
    return (
        params.d, params.p, params.q, params.p_prime, params.beta,
        sharp.kernel_integral.value, sharp.kernel_integral.error_estimate,
        sharp.k_rad_first_principles, sharp.k_rad_paper_closed_form,
        gauss.bound, gauss.paper_closed_form, ts_ok,
    )


def _cmd_sweep(args) -> int:
    grid = [
        RestrictionParams(d, p, q)
        for d in _parse_range(args.d, integer=True)
        for p in _parse_range(args.p)
        for q in _parse_range(args.q)
    ]
    workers = args.workers
    if workers > 1 and len(grid) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda prm: _sweep_row(prm, args.tol), grid))
    else:
        rows = [_sweep_row(params, args.tol) for params in grid]
    if args.format == "csv":
        _emit(_csv_text(SWEEP_COLUMNS, rows), args.output)
    else:
        payload = []
        for row in rows:
            entry = dict(zip(SWEEP_COLUMNS, row))
            entry["skipped"] = row[5] == "skipped"
            if entry["skipped"]:
                for key in ("integral", "integral_err", "k_rad", "k_rad_paper"):
                    entry[key] = None
            payload.append(entry)
        _emit(_json_text(payload), args.output)
    return 0


def _cmd_verify(args) -> int:
    grid = [
        RestrictionParams(d, p, q)
        for d in _parse_range(args.d, integer=True)
        for p in _parse_range(args.p)
        for q in _parse_range(args.q)
    ]
    for params in grid:
        _check_admissibility_diagnostics(params)
    spec = RandomRadialSpec(seed=args.seed, family=args.family, count=args.trials)
    report = run_dominance_suite(
        grid, spec, tol=args.ratio_tol, quad_tol=args.tol, workers=args.workers
    )
    # Dominance violations are report content, not process failures.
    _emit(report.to_json() + "\n", args.output)
    return 0


def _cmd_gls(args) -> int:
    psi = PsiWeight.from_csv(args.psi, a=args.a, b=args.b)
    q_grid = _parse_range(args.q)
    payload: dict = {}
    zeta = zeta_from_psi(psi, q_grid, args.d, args.source, args.tol)
    payload["source"] = zeta.source
    payload["cut_set"] = [p for p, _ in zeta.constant_table]
    payload["zeta"] = [{"q": q, "zeta": z} for q, z in zeta.samples]
    if args.check_profile is not None:
        profile = _parse_profile(args.check_profile, args.d)
        transfer = verify_transfer(psi, profile, args.d, q_grid, args.transfer_tol)
        payload["transfer"] = {
            "profile": transfer.profile_label,
            "left": transfer.left,
            "right": transfer.right,
            "ratio": transfer.ratio,
            "ok": transfer.ok,
        }
    if args.format == "json":
        _emit(_json_text(payload), args.output)
    else:
        rows = [(q, z) for q, z in zeta.samples]
        _emit(_csv_text(("q", "zeta"), rows), args.output)
    return 0


def _parse_profile(text: str, d: int):
    kind, _, param = text.partition(":")
    if kind != "gaussian":
        raise DomainError(
            f"unknown profile {text!r}; expected 'gaussian:SIGMA'"
        )
    sigma = float(param) if param else 1.0
    return gaussian_profile(sigma, d)


def _cmd_report(args) -> int:
    grid = [
        RestrictionParams(d, p, q)
        for d in _parse_range(args.d, integer=True)
        for p in _parse_range(args.p)
        for q in _parse_range(args.q)
    ]
    rows = consistency_report(grid, args.tol, workers=args.workers)
    if args.format == "csv":
        table = [
            (
                row.d, row.p, row.q,
                row.k_rad_first_principles, row.k_rad_paper_closed_form,
                row.k_rad_ratio, row.gauss_numeric_optimum,
                row.gauss_paper_literal, row.gauss_ratio,
                row.predicted_gauss_ratio,
                "failed" if row.failed else "ok",
            )
            for row in rows
        ]
        _emit(_csv_text(REPORT_COLUMNS, table), args.output)
    else:
        payload = [
            {
                "d": row.d, "p": row.p, "q": row.q,
                "k_rad": row.k_rad_first_principles,
                "k_rad_paper": row.k_rad_paper_closed_form,
                "k_rad_ratio": row.k_rad_ratio,
                "gauss_opt": row.gauss_numeric_optimum,
                "gauss_paper": row.gauss_paper_literal,
                "gauss_ratio": row.gauss_ratio,
                "gauss_ratio_predicted": row.predicted_gauss_ratio,
                "status": "failed" if row.failed else "ok",
                "error": row.error,
            }
            for row in rows
        ]
        _emit(_json_text(payload), args.output)
    return 0


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="sphrestrict",
        description="Sharp spherical restriction constants for radial functions.",
    )
    parser.add_argument("--config", help="flat key=value file pre-setting flags")
    sub = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=1e-9,
                       help="quadrature relative tolerance (default 1e-9)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", help="output path (default stdout)")
        p.add_argument("--workers", type=int, default=None,
                       help="worker pool size (default: available parallelism)")

    p_const = sub.add_parser("constant", help="sharp radial constant at one point")
    p_const.add_argument("--d", type=int, required=True)
    p_const.add_argument("--p", type=float, required=True)
    p_const.add_argument("--q", type=float, required=True)
    common(p_const)
    p_const.set_defaults(func=_cmd_constant)

    p_gauss = sub.add_parser("gaussian-bound", help="Gaussian lower bound")
    p_gauss.add_argument("--d", type=int, required=True)
    p_gauss.add_argument("--p", type=float, required=True)
    p_gauss.add_argument("--q", type=float, required=True)
    p_gauss.add_argument("--sigma", type=float, default=None,
                         help="evaluate at this sigma instead of maximising")
    common(p_gauss)
    p_gauss.set_defaults(func=_cmd_gaussian_bound)

    p_sweep = sub.add_parser("sweep", help="grid sweep (CSV schema stable)")
    p_sweep.add_argument("--d", required=True, help="dimension or min:max:steps")
    p_sweep.add_argument("--p", required=True, help="value or min:max:steps")
    p_sweep.add_argument("--q", required=True, help="value or min:max:steps")
    common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep, format="csv")

    p_verify = sub.add_parser("verify", help="seeded dominance suite")
    p_verify.add_argument("--d", default="3")
    p_verify.add_argument("--p", default="1.2")
    p_verify.add_argument("--q", default="2")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--family", default="gaussian_mixture")
    p_verify.add_argument("--ratio-tol", type=float, default=1e-6,
                          help="dominance assertion tolerance")
    common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_gls = sub.add_parser("gls", help="transfer weight from a psi CSV")
    p_gls.add_argument("--psi", required=True, help="CSV with header p,psi")
    p_gls.add_argument("--d", type=int, required=True)
    p_gls.add_argument("--q", required=True, help="value or min:max:steps")
    p_gls.add_argument("--a", type=float, default=None)
    p_gls.add_argument("--b", type=float, default=None)
    p_gls.add_argument("--source", choices=("radial_sharp", "gaussian_lower"),
                       default="radial_sharp")
    p_gls.add_argument("--check-profile", default=None,
                       help="verify the transfer on a profile, e.g. gaussian:1.0")
    p_gls.add_argument("--transfer-tol", type=float, default=1e-8)
    common(p_gls)
    p_gls.set_defaults(func=_cmd_gls)

    p_report = sub.add_parser("report", help="consistency report")
    p_report.add_argument("--d", required=True)
    p_report.add_argument("--p", required=True)
    p_report.add_argument("--q", required=True)
    common(p_report)
    p_report.set_defaults(func=_cmd_report)

    registry.update(
        constant=p_const,
        gaussian_bound=p_gauss,
        sweep=p_sweep,
        verify=p_verify,
        gls=p_gls,
        report=p_report,
    )
    return parser, registry


def _apply_config(
    registry: dict[str, argparse.ArgumentParser], config: dict[str, str]
) -> None:
    # Config entries become subcommand defaults (converted through each
    # option's own type); flags given on the command line still win.
    for sub_parser in registry.values():
        converted = {}
        for action in sub_parser._actions:  # noqa: SLF001 - argparse offers no public view
            if action.dest in config:
                raw = config[action.dest]
                converted[action.dest] = (
                    action.type(raw) if action.type is not None else raw
                )
        if converted:
            sub_parser.set_defaults(**converted)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, registry = build_parser()
    # Config file values become parser defaults; explicit flags still win.
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        try:
            config = _load_config(known.config)
        except (OSError, DomainError) as exc:
            print(f"sphrestrict: {exc}", file=sys.stderr)
            return 2
        _apply_config(registry, config)
    args = parser.parse_args(argv)
    if getattr(args, "workers", None) is None:
        args.workers = _default_workers()
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"sphrestrict: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"sphrestrict: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
