"""Command-line front end.

Subcommands run the verification suites and bound scans, emit
figure-reproduction data (with rendered PNGs alongside), and round-trip box
files.  All numeric inputs are explicit flags; a JSON config file can supply
defaults that flags override, and the effective configuration is echoed into
every artifact.  Exit codes: 0 success, 2 usage error, 3 data/validation
error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from ._version import __version__
from .bound import (
    BoundParams,
    diagonal_bound,
    feasible_max_correlator,
    f_value,
    max_bound,
    symmetric_bound,
)
from .boxes import Box, chsh, pr_box
from .errors import NoDataError, SingularEvaluationError, ValidationError, VerificationError
from .figures import emit_figure
from .quantum import spawn_rng
from .reporting import build_meta, validate_box_json, write_artifact
from .sequential import estimate_balance_strength, verify_balance_chain

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_VERIFICATION = 4

ORACLE_SLACK_FACTOR = 10.0


@dataclass
class RunConfig:
    command: str
    alpha: float | None = None
    gamma: float | None = None
    tau: float | None = None
    sign: int | None = None
    dim: int | None = None
    samples: int | None = None
    seed: int = 0
    grid_step: float | None = None
    resolution: float | None = None
    threshold: float | None = None
    which: str | None = None
    diagonal: bool = False
    report_only: bool = False
    input_path: str | None = None
    output_path: str | None = None
    format: str = "csv"

    def echo(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


_GLOBAL_DEFAULTS = {
    "seed": 0,
    "format": "csv",
    "diagonal": False,
    "report_only": False,
}

_COMMAND_DEFAULTS = {
    "verify-qm": {"samples": 1000},
    "estimate-alpha": {"samples": 1000, "threshold": 1e-6},
    "scan-bound": {"grid_step": 0.001},
    "oracle-check": {"samples": 100, "resolution": 0.001},
    "figure": {"grid_step": 0.01},
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ucbalance",
        description="Uncertainty-disturbance balance and CHSH nonlocality bound toolkit.",
    )
    parser.add_argument("--version", action="version", version=f"ucbalance {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, output=True):
        p.add_argument("--config", help="JSON file with flag defaults; flags override")
        if output:
            p.add_argument("-o", "--output", dest="output_path", help="artifact file path")
            p.add_argument("--format", choices=["csv", "json"], help="artifact format (default csv)")

    p = sub.add_parser("verify-qm", help="Monte Carlo check of the quantum balance chain")
    p.add_argument("--dim", type=int, required=True, help="Hilbert space dimension (2-6)")
    p.add_argument("--samples", type=int, help="number of random triples (default 1000)")
    p.add_argument("--seed", type=int, help="RNG seed (default 0)")
    p.add_argument("--report-only", action="store_true", default=None,
                   help="report violations as warnings instead of failing")
    add_common(p)

    p = sub.add_parser("estimate-alpha", help="upper-bound the balance strength by sampling")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, help="number of random triples (default 1000)")
    p.add_argument("--seed", type=int)
    p.add_argument("--threshold", type=float, help="minimum disturbance for a ratio (default 1e-6)")
    add_common(p)

    p = sub.add_parser("scan-bound", help="maximize the nonlocality bound over (gamma, tau)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--grid-step", dest="grid_step", type=float, help="scan step (default 0.001)")
    p.add_argument("--diagonal", action="store_true", default=None,
                   help="scan only the gamma = tau diagonal")
    add_common(p)

    p = sub.add_parser("symmetric-bound", help="the closed-form bound 4/sqrt(alpha^2+1)")
    p.add_argument("--alpha", type=float, required=True)
    add_common(p)

    p = sub.add_parser("pr-box", help="print the PR-box CHSH value; write its box file with -o")
    add_common(p)

    p = sub.add_parser("oracle-check", help="brute-force feasibility check of the closed form")
    p.add_argument("--alpha", type=float, help="explicit parameter point (with --gamma/--tau)")
    p.add_argument("--gamma", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--sign", type=int, choices=[1, -1])
    p.add_argument("--samples", type=int, help="number of random parameter triples instead")
    p.add_argument("--seed", type=int)
    p.add_argument("--resolution", type=float, help="oracle grid resolution (default 0.001)")
    p.add_argument("--report-only", action="store_true", default=None)
    add_common(p)

    p = sub.add_parser("figure", help="emit figure data and a rendered PNG alongside")
    p.add_argument("--which", choices=["fig1", "sm-surfaces"], required=True)
    p.add_argument("--grid-step", dest="grid_step", type=float, help="grid step (default 0.01)")
    p.add_argument("-o", "--output", dest="output_path", required=True)
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--config", help="JSON file with flag defaults; flags override")

    p = sub.add_parser("box-eval", help="CHSH value and no-signaling residuals of a box file")
    p.add_argument("--input", dest="input_path", required=True)
    add_common(p)

    return parser


def merge_config(args: argparse.Namespace) -> RunConfig:
    """Fold an optional JSON config under the explicit flags."""
    file_values = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            file_values = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config file {config_path}: {exc}")
        if not isinstance(file_values, dict):
            raise ValidationError("config file must hold a JSON object")

    cfg = RunConfig(command=args.command)
    command_defaults = _COMMAND_DEFAULTS.get(args.command, {})
    for name in vars(cfg):
        if name == "command":
            continue
        value = getattr(args, name, None)
        if value is None:
            value = file_values.get(name)
        if value is None:
            value = command_defaults.get(name)
        if value is None:
            value = _GLOBAL_DEFAULTS.get(name, getattr(cfg, name))
        setattr(cfg, name, value)
    return cfg


def _summary(line: str) -> None:
    print(line)


def _run_verify_qm(cfg: RunConfig) -> int:
    result = verify_balance_chain(cfg.dim, cfg.samples, cfg.seed)
    meta = build_meta(cfg.command, cfg.seed, cfg.echo())
    links = ("c1_le_c2", "c2_le_c3", "c3_le_c4")
    rows = [(link, slack, result.violations) for link, slack in zip(links, result.min_slacks)]
    data = {
        "dim": result.dim,
        "samples": result.samples,
        "min_slacks": dict(zip(links, result.min_slacks)),
        "min_chain_slack": result.min_slack,
        "violations": result.violations,
    }
    if cfg.output_path:
        write_artifact(cfg.output_path, meta, cfg.format,
                       ["link", "min_slack", "violations"], rows, data)
    _summary(
        f"min chain slack {result.min_slack!r} over {result.samples} samples "
        f"(dim {result.dim}); violations {result.violations}"
    )
    if result.violations > 0:
        if cfg.report_only:
            print("warning: balance chain violations found", file=sys.stderr)
            return EXIT_OK
        return EXIT_VERIFICATION
    return EXIT_OK


def _run_estimate_alpha(cfg: RunConfig) -> int:
    value = estimate_balance_strength(cfg.dim, cfg.samples, cfg.seed, cfg.threshold)
    meta = build_meta(cfg.command, cfg.seed, cfg.echo())
    header = ["dim", "samples", "d_threshold", "alpha_upper_bound"]
    row = (cfg.dim, cfg.samples, cfg.threshold, value)
    data = {"dim": cfg.dim, "samples": cfg.samples, "d_threshold": cfg.threshold,
            "alpha_upper_bound": value}
    if cfg.output_path:
        write_artifact(cfg.output_path, meta, cfg.format, header, [row], data)
    _summary(f"alpha upper bound {value!r}")
    return EXIT_OK


def _run_scan_bound(cfg: RunConfig) -> int:
    scan = diagonal_bound(cfg.alpha, cfg.grid_step) if cfg.diagonal \
        else max_bound(cfg.alpha, cfg.grid_step)
    meta = build_meta(cfg.command, cfg.seed, cfg.echo())
    header = ["alpha", "grid_step", "max_value", "argmax_gamma", "argmax_tau",
              "refined", "diagonal"]
    row = (cfg.alpha, cfg.grid_step, scan.max_value, scan.argmax_gamma,
           scan.argmax_tau, scan.refined, cfg.diagonal)
    data = {"alpha": cfg.alpha, "grid_step": cfg.grid_step,
            "max_value": scan.max_value, "argmax_gamma": scan.argmax_gamma,
            "argmax_tau": scan.argmax_tau, "refined": scan.refined,
            "diagonal": cfg.diagonal}
    if cfg.output_path:
        write_artifact(cfg.output_path, meta, cfg.format, header, [row], data)
    _summary(
        f"max {scan.max_value!r} at gamma={scan.argmax_gamma!r} tau={scan.argmax_tau!r}"
    )
    return EXIT_OK


def _run_symmetric_bound(cfg: RunConfig) -> int:
    value = symmetric_bound(cfg.alpha)
    meta = build_meta(cfg.command, cfg.seed, cfg.echo())
    if cfg.output_path:
        write_artifact(cfg.output_path, meta, cfg.format, ["alpha", "bound"],
                       [(cfg.alpha, value)], {"alpha": cfg.alpha, "bound": value})
    _summary(f"{value!r}")
    return EXIT_OK


def _run_pr_box(cfg: RunConfig) -> int:
    box = pr_box()
    if cfg.output_path:
        box.save(cfg.output_path)
    _summary(f"chsh {chsh(box)!r}")
    return EXIT_OK


def _run_oracle_check(cfg: RunConfig) -> int:
    explicit = cfg.alpha is not None or cfg.gamma is not None or cfg.tau is not None
    checks = []
    if explicit:
        if cfg.alpha is None or cfg.gamma is None or cfg.tau is None:
            raise ValidationError("explicit mode needs --alpha, --gamma, and --tau")
        params = BoundParams(cfg.alpha, cfg.gamma, cfg.tau)
        signs = (cfg.sign,) if cfg.sign in (1, -1) else (1, -1)
        for sign in signs:
            checks.append((params, sign))
    else:
        rng = spawn_rng(cfg.seed)
        for _ in range(cfg.samples):
            params = BoundParams(
                float(rng.uniform(0.0, 1.0)),
                float(rng.uniform(-1.0, 1.0)),
                float(rng.uniform(-1.0, 1.0)),
            )
            checks.append((params, 1 if rng.uniform() < 0.5 else -1))

    tolerance = ORACLE_SLACK_FACTOR * cfg.resolution
    rows = []
    max_excess = -4.0
    for params, sign in checks:
        oracle = feasible_max_correlator(params, sign, cfg.resolution)
        closed = 2.0 * f_value(params, sign) ** 0.5
        excess = oracle - closed
        max_excess = max(max_excess, excess)
        rows.append((params.alpha, params.gamma, params.tau, sign, oracle, closed, excess))
    meta = build_meta(cfg.command, cfg.seed, cfg.echo())
    header = ["alpha", "gamma", "tau", "sign", "oracle", "closed_form", "excess"]
    data = {
        "checks": [dict(zip(header, row)) for row in rows],
        "max_excess": max_excess,
        "tolerance": tolerance,
    }
    if cfg.output_path:
        write_artifact(cfg.output_path, meta, cfg.format, header, rows, data)
    _summary(f"max oracle excess {max_excess!r} over {len(rows)} checks "
             f"(tolerance {tolerance!r})")
    if max_excess > tolerance:
        if cfg.report_only:
            print("warning: oracle exceeded the closed form", file=sys.stderr)
            return EXIT_OK
        return EXIT_VERIFICATION
    return EXIT_OK


def _run_figure(cfg: RunConfig) -> int:
    meta = build_meta(cfg.command, cfg.seed, cfg.echo())
    written = emit_figure(cfg.which, cfg.grid_step, cfg.output_path, cfg.format, meta)
    for path in written:
        _summary(f"wrote {path}")
    return EXIT_OK


def _run_box_eval(cfg: RunConfig) -> int:
    path = Path(cfg.input_path)
    try:
        obj = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read box file {path}: {exc}")
    validate_box_json(obj)
    box = Box.from_json_dict(obj)
    value = chsh(box)
    alice_res, bob_res = box.no_signaling_residuals()
    meta = build_meta(cfg.command, cfg.seed, cfg.echo())
    header = ["chsh", "alice_residual", "bob_residual"]
    row = (value, alice_res, bob_res)
    data = {"chsh": value, "alice_residual": alice_res, "bob_residual": bob_res}
    if cfg.output_path:
        write_artifact(cfg.output_path, meta, cfg.format, header, [row], data)
    _summary(f"chsh {value!r}")
    _summary(f"no-signaling residuals alice={alice_res!r} bob={bob_res!r}")
    return EXIT_OK


_RUNNERS = {
    "verify-qm": _run_verify_qm,
    "estimate-alpha": _run_estimate_alpha,
    "scan-bound": _run_scan_bound,
    "symmetric-bound": _run_symmetric_bound,
    "pr-box": _run_pr_box,
    "oracle-check": _run_oracle_check,
    "figure": _run_figure,
    "box-eval": _run_box_eval,
}


def run(cfg: RunConfig) -> int:
    """Dispatch a merged configuration to its command runner."""
    return _RUNNERS[cfg.command](cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = merge_config(args)
        return run(cfg)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except (ValidationError, NoDataError, SingularEvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
