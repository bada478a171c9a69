"""Command-line front end: JSON config in, CSV/JSON results out.

Subcommands: steady, evolve, floquet, sweep.  Exit codes: 0 success,
2 model unstable, 3 invalid config, 4 numerical failure.  Diagnostics go
to stderr; data only to files or stdout.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, fields

import numpy as np

from .dynamics import (
    _base_step,
    diffusion,
    evolve,
    lyapunov_steady_state,
    thermal_initial_state,
)
from .errors import (
    ConfigError,
    DivergenceError,
    EndpointOptimumError,
    IncommensurateFrequenciesError,
    InstabilityError,
    NonConvergenceError,
    OmsimError,
    SingularSystemError,
    StepSizeError,
)
from .matrices import DriftMode, DriftModel, drift, period
from .measures import (
    bogoliubov_occupations,
    log_negativity,
    reduce_state,
    symplectic_spectrum,
)
from .model import EffectiveCouplings, SystemParams, direct_couplings
from .stability import floquet, floquet_from_propagator, hurwitz_stable, monodromy
from .sweep import (
    SweepAxis,
    SweepSpec,
    default_grid,
    refine_optimum,
    run_sweep,
)

EXIT_OK = 0
EXIT_UNSTABLE = 2
EXIT_CONFIG = 3
EXIT_NUMERICAL = 4


@dataclass
class RunConfig:
    """Validated flat configuration; gamma1 = 1 is implied."""

    g_minus: float
    kappa: float
    gamma2: float
    g_plus: float | None = None
    ratio: float | None = None
    delta: float = 0.0
    omega1: float = 0.0
    omega2: float = 0.0
    nbar_d: float = 0.0
    nbar_1: float = 0.0
    nbar_2: float = 0.0
    mode: str = "rwa"
    t_end: float | None = None
    dt_out: float | None = None
    axis: str | None = None
    grid_start: float | None = None
    grid_stop: float | None = None
    grid_points: int | None = None
    grid_spacing: str = "linear"
    refine: bool = False
    out: str | None = None


_FLOAT_KEYS = {"g_minus", "g_plus", "ratio", "delta", "kappa", "gamma2",
               "omega1", "omega2", "nbar_d", "nbar_1", "nbar_2",
               "t_end", "dt_out", "grid_start", "grid_stop"}
_ALLOWED_KEYS = {f.name for f in fields(RunConfig)}


def decode_config(text: bytes | str) -> dict:
    """JSON-decode a config document, reporting the error position."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config parse error at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    return raw


def parse_config(text: bytes | str) -> RunConfig:
    """Parse and validate a flat JSON config object."""
    return build_config(decode_config(text))


def build_config(raw: dict) -> RunConfig:
    unknown = set(raw) - _ALLOWED_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "g_minus" not in raw:
        raise ConfigError("g_minus is required")
    for key in ("kappa", "gamma2"):
        if key not in raw:
            raise ConfigError(f"{key} is required")
    clean: dict = {}
    for key, value in raw.items():
        if key in _FLOAT_KEYS:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{key} must be a number, got {value!r}")
            clean[key] = float(value)
        elif key == "grid_points":
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"grid_points must be a positive integer")
            clean[key] = value
        elif key == "refine":
            if not isinstance(value, bool):
                raise ConfigError("refine must be a boolean")
            clean[key] = value
        else:
            if not isinstance(value, str):
                raise ConfigError(f"{key} must be a string, got {value!r}")
            clean[key] = value
    cfg = RunConfig(**clean)
    if cfg.mode not in ("rwa", "full"):
        raise ConfigError(f"mode must be 'rwa' or 'full', got {cfg.mode!r}")
    if cfg.grid_spacing not in ("linear", "log"):
        raise ConfigError("grid_spacing must be 'linear' or 'log'")
    if cfg.g_plus is not None and cfg.ratio is not None:
        raise ConfigError("give either g_plus or ratio, not both")
    if cfg.g_plus is not None and not cfg.g_plus < cfg.g_minus:
        raise ConfigError(
            f"stability requires g_plus < g_minus "
            f"({cfg.g_plus} >= {cfg.g_minus})")
    if cfg.ratio is not None and not 0 <= cfg.ratio < 1:
        raise ConfigError(f"ratio must lie in [0, 1), got {cfg.ratio}")
    try:
        _params(cfg)
    except (ValueError, OmsimError) as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def _params(cfg: RunConfig) -> SystemParams:
    return SystemParams(kappa=cfg.kappa, gamma2=cfg.gamma2, delta=cfg.delta,
                        omega1=cfg.omega1, omega2=cfg.omega2,
                        nbar_d=cfg.nbar_d, nbar_1=cfg.nbar_1,
                        nbar_2=cfg.nbar_2)


def _couplings(cfg: RunConfig) -> EffectiveCouplings:
    if cfg.g_plus is not None:
        g_plus = cfg.g_plus
    elif cfg.ratio is not None:
        g_plus = cfg.ratio * cfg.g_minus
    else:
        raise ConfigError("g_plus or ratio is required for this command")
    try:
        return direct_couplings(g_plus, cfg.g_minus)
    except OmsimError as exc:
        raise ConfigError(str(exc)) from exc


def _model(cfg: RunConfig) -> DriftModel:
    mode = DriftMode.FULL if cfg.mode == "full" else DriftMode.RWA
    try:
        return DriftModel(_params(cfg), _couplings(cfg), mode)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _fmt(x: float) -> str:
    return "%.12g" % x


def _jnum(x: float) -> float:
    return float(_fmt(x))


def _emit(out_path: str | None, text: str) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_stable(model: DriftModel) -> None:
    """Raise InstabilityError before any output file is opened."""
    if model.mode is DriftMode.RWA:
        if not hurwitz_stable(model):
            raise InstabilityError("RWA drift is not Hurwitz")
    else:
        T = period(model)
        if T is not None and not floquet(model).stable:
            raise InstabilityError("Floquet multipliers exceed unit modulus")


def cmd_steady(cfg: RunConfig) -> int:
    if cfg.mode != "rwa":
        raise ConfigError("steady requires mode 'rwa'")
    model = _model(cfg)
    _check_stable(model)
    state = lyapunov_steady_state(model, diffusion(model.params))
    rc = reduce_state(state)
    report = log_negativity(rc)
    occ = bogoliubov_occupations(state, model.couplings.r)
    record = {
        "E_N": _jnum(report.E_N),
        "mu": _jnum(report.mu),
        "eta": _jnum(report.eta),
        "sigma": [_jnum(v) for v in state.sigma.flatten()],
        "symplectic_eigenvalues": [_jnum(v) for v in report.nu],
        "bogoliubov_occupations": [_jnum(v) for v in occ],
    }
    _emit(cfg.out, json.dumps(record) + "\n")
    return EXIT_OK


def cmd_evolve(cfg: RunConfig) -> int:
    if cfg.t_end is None or cfg.dt_out is None:
        raise ConfigError("evolve requires t_end and dt_out")
    model = _model(cfg)
    _check_stable(model)
    traj = evolve(model, diffusion(model.params),
                  thermal_initial_state(model.params), cfg.t_end, cfg.dt_out)
    lines = ["t,E_N,mu,nu_min"]
    for state in traj.states():
        report = log_negativity(reduce_state(state))
        nu_min = symplectic_spectrum(state.sigma).min()
        lines.append(",".join(_fmt(v) for v in
                              (state.t, report.E_N, report.mu, nu_min)))
    _emit(cfg.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_floquet(cfg: RunConfig) -> int:
    model = _model(cfg)
    if model.mode is DriftMode.FULL:
        result = floquet(model)
    else:
        # constant-coefficient override: multipliers of exp(M*T) with T = 1
        T = 1.0
        M = drift(model)
        n_steps = int(math.ceil(T / _base_step(model)))
        result = floquet_from_propagator(
            monodromy(lambda t: M, 0.0, T, n_steps), T)
    record = {
        "period": _jnum(result.period),
        "multipliers": [[_jnum(m.real), _jnum(m.imag)]
                        for m in result.multipliers],
        "max_modulus": _jnum(result.max_modulus),
        "stable": result.stable,
    }
    _emit(cfg.out, json.dumps(record) + "\n")
    return EXIT_OK


def _sweep_spec(cfg: RunConfig) -> SweepSpec:
    if cfg.axis is None:
        raise ConfigError("sweep requires axis")
    try:
        axis = SweepAxis(cfg.axis)
    except ValueError:
        raise ConfigError(
            f"axis must be 'coupling_ratio' or 'detuning', got {cfg.axis!r}")
    given = [cfg.grid_start, cfg.grid_stop, cfg.grid_points]
    if all(v is None for v in given):
        grid = default_grid(axis)
    elif any(v is None for v in given):
        raise ConfigError("grid_start, grid_stop and grid_points go together")
    else:
        space = np.geomspace if cfg.grid_spacing == "log" else np.linspace
        grid = space(cfg.grid_start, cfg.grid_stop, cfg.grid_points)
    if axis is SweepAxis.COUPLING_RATIO:
        # G+ is rebuilt per grid point; a tiny placeholder keeps G+ < G-
        couplings = direct_couplings(0.0, cfg.g_minus)
    else:
        couplings = _couplings(cfg)
    try:
        return SweepSpec(_params(cfg), couplings, axis, grid)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_sweep(cfg: RunConfig) -> int:
    spec = _sweep_spec(cfg)
    result = run_sweep(spec)
    lines = ["axis,value,E_N,mu,stable"]
    for row in result.rows:
        lines.append(",".join([
            spec.axis.value, _fmt(row.value),
            _fmt(row.E_N) if row.stable else "nan",
            _fmt(row.mu) if row.stable else "nan",
            "true" if row.stable else "false",
        ]))
    csv_text = "\n".join(lines) + "\n"
    record: dict = {"axis": spec.axis.value, "all_unstable": result.all_unstable}
    if result.optimum is not None:
        record["value"] = _jnum(result.optimum[0])
        record["E_N"] = _jnum(result.optimum[1])
        if cfg.refine:
            x, e = refine_optimum(spec, result)
            record["refined_value"] = _jnum(x)
            record["refined_E_N"] = _jnum(e)
    else:
        record["value"] = None
        record["E_N"] = None
        print("warning: every grid point is unstable", file=sys.stderr)
    json_text = json.dumps(record) + "\n"
    if cfg.out:
        _emit(cfg.out, csv_text)
        root, _ = os.path.splitext(cfg.out)
        _emit(root + ".optimum.json", json_text)
    else:
        sys.stdout.write(csv_text + "\n" + json_text)
    return EXIT_OK


_COMMANDS = {
    "steady": cmd_steady,
    "evolve": cmd_evolve,
    "floquet": cmd_floquet,
    "sweep": cmd_sweep,
}


def _parse_set(pairs: list[str]) -> dict:
    overrides: dict = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"--set expects key=value, got {pair!r}")
        key, _, value = pair.partition("=")
        try:
            overrides[key] = json.loads(value)
        except json.JSONDecodeError:
            overrides[key] = value
    return overrides


def _load(args: argparse.Namespace) -> RunConfig:
    raw: dict = {}
    if args.config:
        with open(args.config, "rb") as fh:
            raw = decode_config(fh.read())
    raw.update(_parse_set(args.set or []))
    if args.mode:
        raw["mode"] = args.mode
    cfg = build_config(raw)
    if args.out:
        cfg.out = args.out
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="omsim",
        description="Three-mode optomechanical entanglement simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", help="output file path")
        p.add_argument("--mode", choices=["full", "rwa"])
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config key")
    args = parser.parse_args(argv)
    try:
        cfg = _load(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InstabilityError as exc:
        print(f"error: model unstable: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except (DivergenceError, NonConvergenceError, SingularSystemError,
            StepSizeError, IncommensurateFrequenciesError,
            EndpointOptimumError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OmsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
