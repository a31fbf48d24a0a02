"""Command-line front end: `l1kernels audit|fit|experiment`.

Exit codes: 0 on success (a FAIL audit verdict is still a successful
audit), 1 on usage errors, 2 on numerical failure (diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import admissibility as adm
from .errors import L1KernelsError
from .gram import build_system
from .kernels import Interval, KernelSpec, Status, kernel_from_json, kernel_to_json
from .solvers import LassoConfig, lasso_gram, ridge_gram
from .experiment import (
    ExperimentConfig,
    NoiseModel,
    csv_rows,
    run_experiment,
    summary_to_json,
    write_csv,
)

_USAGE_EXIT = 1
_NUMERICAL_EXIT = 2

# Fallback audit window for kernels living on the whole real line.
_DEFAULT_WINDOW = (-3.0, 3.0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(_USAGE_EXIT)


class _UsageError(Exception):
    pass


def _parse_kernel(text: str) -> KernelSpec:
    text = text.strip()
    try:
        if text.startswith("{"):
            return kernel_from_json(json.loads(text))
        return kernel_from_json({"family": text, "params": {}})
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise _UsageError(f"bad --kernel value: {exc}")


def _parse_floats(text: str) -> np.ndarray:
    """Comma-separated floats, or a path to a file of floats."""
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read().replace("\n", ",")
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise _UsageError(f"bad numeric list: {exc}")
    if not values:
        raise _UsageError("empty numeric list")
    return np.asarray(values)


def _parse_mu_grid(text: str) -> tuple[float, ...]:
    """Either 'A..B' (decades of 10 from A to B) or a comma-separated list."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        try:
            lo, hi = float(lo_s), float(hi_s)
        except ValueError as exc:
            raise _UsageError(f"bad --mu-grid range: {exc}")
        if not (lo > 0 and hi >= lo):
            raise _UsageError("--mu-grid range needs 0 < A <= B")
        e_lo, e_hi = math.log10(lo), math.log10(hi)
        if abs(e_lo - round(e_lo)) > 1e-9 or abs(e_hi - round(e_hi)) > 1e-9:
            raise _UsageError("--mu-grid range endpoints must be powers of ten, e.g. 1e-7..1e1")
        return tuple(10.0 ** j for j in range(round(e_lo), round(e_hi) + 1))
    try:
        grid = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise _UsageError(f"bad --mu-grid list: {exc}")
    if not grid:
        raise _UsageError("empty --mu-grid")
    return grid


def _audit_window(kernel: KernelSpec, window: str | None) -> Interval:
    if window is not None:
        try:
            lo_s, hi_s = window.split(",")
            return Interval(float(lo_s), float(hi_s), lo_open=False, hi_open=False)
        except ValueError as exc:
            raise _UsageError(f"bad --window, expected 'A,B': {exc}")
    if kernel.domain.bounded:
        return kernel.domain
    return Interval(*_DEFAULT_WINDOW, lo_open=False, hi_open=False)


def _write_json(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_audit(args) -> int:
    kernel = _parse_kernel(args.kernel)
    window = _audit_window(kernel, args.window)
    generator = adm.RandomPointSets(domain=window)
    wanted = ["a1", "a2", "a4"] if args.condition == "all" else [args.condition]
    reports = []

    for cond in wanted:
        if cond == "a1":
            rep = adm.audit_a1(kernel, generator, trials=args.trials, master_seed=args.seed)
        elif cond == "a2":
            side = max(2, int(math.isqrt(max(args.grid, 4))))
            mesh = np.linspace(window.lo, window.hi, side)
            rep = adm.audit_a2(kernel, adm.pair_grid(mesh))
        else:
            rep = adm.audit_a4(
                kernel, generator, grid_size=args.grid, trials=args.trials,
                master_seed=args.seed, domain=window,
            )
        reports.append(rep)
        detail = f"worst {rep.stats.worst_value:.6g}" if rep.stats.worst_value is not None else ""
        extra = f"; {rep.message}" if rep.message else ""
        print(f"{cond}: {rep.verdict.value} ({rep.stats.n_trials} trials, {detail}{extra})")

    if args.condition == "all":
        a3 = kernel.flags.a3
        note = {
            Status.PROVEN: "holds analytically",
            Status.DISPROVEN: "fails analytically",
            Status.UNKNOWN: "status unknown",
        }[a3]
        print(f"a3: {a3.value} ({note}; quantifies over infinite sequences, not numerically testable)")

    payload = {
        "kernel": kernel_to_json(kernel),
        "window": [window.lo, window.hi],
        "seed": args.seed,
        "a3_metadata": kernel.flags.a3.value,
        "reports": [r.to_json() for r in reports],
    }
    if args.out:
        _write_json(payload, args.out)
    return 0


def _cmd_fit(args) -> int:
    kernel = _parse_kernel(args.kernel)
    points = _parse_floats(args.points)
    values = _parse_floats(args.values)
    if points.size != values.size:
        raise _UsageError(f"{points.size} points but {values.size} values")
    system = build_system(kernel, points)
    if args.method == "rkbs":
        result = lasso_gram(system, values, LassoConfig(mu=args.mu))
    else:
        result = ridge_gram(system, values, args.mu)
    payload = result.to_json()
    payload["method"] = args.method
    payload["mu"] = args.mu
    payload["function"] = {
        "kernel": kernel_to_json(kernel),
        "points": points.tolist(),
        "coefficients": result.coefficients.values.tolist(),
        "side": result.coefficients.side.value,
    }
    if args.dump_gram:
        _write_json(system.gram.tolist(), args.dump_gram)
    _write_json(payload, args.out)
    return 0


def _cmd_experiment(args) -> int:
    kinds = {
        "gaussian": NoiseModel.gaussian(),
        "uniform": NoiseModel.uniform(),
        "pepper": NoiseModel.pepper_sauce(corrupt_fraction=args.pepper_fraction),
    }
    labels = list(kinds) if args.noise == "all" else [args.noise]
    mu_grid = _parse_mu_grid(args.mu_grid) if args.mu_grid else ExperimentConfig().mu_grid

    labeled = []
    for label in labels:
        config = ExperimentConfig(
            n_points=args.n,
            noise=kinds[label],
            trials=args.trials,
            mu_grid=mu_grid,
            master_seed=args.seed,
        )
        labeled.append((label, run_experiment(config)))

    for line in csv_rows(labeled):
        print(line)
    if args.out:
        write_csv(labeled, args.out)
    if args.json:
        _write_json([summary_to_json(s) for _, s in labeled], args.json)
    return 0


# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="l1kernels",
        description="Kernel admissibility audits, interpolation, and the sparse regression benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_audit = sub.add_parser("audit", help="numerically audit admissibility conditions")
    p_audit.add_argument("--kernel", required=True, help="family name or JSON spec")
    p_audit.add_argument("--condition", choices=["a1", "a2", "a4", "all"], default="all")
    p_audit.add_argument("--trials", type=int, default=100)
    p_audit.add_argument("--grid", type=int, default=2001, help="Lebesgue grid size")
    p_audit.add_argument("--seed", type=int, default=0)
    p_audit.add_argument(
        "--window", default=None,
        help="audit window for unbounded domains; write --window=-3,3 (the '=' form "
        "keeps a leading minus out of option parsing)",
    )
    p_audit.add_argument("--out", default=None, help="write JSON report here")

    p_fit = sub.add_parser("fit", help="fit scattered data with the l1 or ridge model")
    p_fit.add_argument("--kernel", required=True)
    p_fit.add_argument("--points", required=True, help="comma-separated values or a file")
    p_fit.add_argument("--values", required=True, help="comma-separated values or a file")
    p_fit.add_argument("--mu", type=float, required=True)
    p_fit.add_argument("--method", choices=["rkbs", "rkhs"], required=True)
    p_fit.add_argument("--out", default=None, help="write JSON result here")
    p_fit.add_argument(
        "--dump-gram", default=None,
        help="diagnostic: write the Gram matrix as a JSON array of arrays",
    )

    p_exp = sub.add_parser("experiment", help="run the sparse regression benchmark")
    p_exp.add_argument("--noise", choices=["gaussian", "uniform", "pepper", "all"], default="all")
    p_exp.add_argument("--trials", type=int, default=50)
    p_exp.add_argument("--n", type=int, default=200)
    p_exp.add_argument("--seed", type=int, default=12345)
    p_exp.add_argument("--mu-grid", default=None, help="'1e-7..1e1' (decades) or comma list")
    p_exp.add_argument("--pepper-fraction", type=float, default=1.0)
    p_exp.add_argument("--out", default=None, help="write CSV summary here")
    p_exp.add_argument("--json", default=None, help="write full JSON results here")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"audit": _cmd_audit, "fit": _cmd_fit, "experiment": _cmd_experiment}
    try:
        return handlers[args.command](args)
    except _UsageError as exc:
        print(f"l1kernels {args.command}: error: {exc}", file=sys.stderr)
        return _USAGE_EXIT
    except L1KernelsError as exc:
        print(f"l1kernels {args.command}: numerical failure: {exc}", file=sys.stderr)
        return _NUMERICAL_EXIT


if __name__ == "__main__":
    sys.exit(main())
