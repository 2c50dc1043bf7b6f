"""Command-line driver.

Subcommands: ``evolve`` (one pulse with a time-series CSV), ``sweep`` (grid
over the frequency spacing M or the Ising constant J), ``critical`` (sweep
plus threshold detector), and ``verify`` (invariant/oracle suite).  Options
can come from a ``key = value`` config file; explicit flags win over file
values.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from ._backend import backend_name
from .evolve import EvolutionConfig
from .model import N_SITES, SystemParams
from .selfcheck import run_all
from .sweeps import (
    SweepSpec,
    find_critical,
    run_single,
    run_sweep,
    write_sweep_csv,
    write_timeseries_csv,
)

CONFIG_KEYS = (
    "omega0", "m", "j", "j_ab", "rabi", "drive", "dt", "method", "initial", "phase_dress",
)


@dataclass
class Settings:
    """Merged configuration: file values overridden by CLI flags."""

    omega0: float = 0.0
    m: float = 100.0
    j: float = 10.0
    j_ab: list = field(default_factory=list)  # (a, b, value) triples
    rabi: tuple = (0.1,)
    drive: str | float = "auto"
    dt: float = 0.001
    method: str = "rk4"
    initial: str | None = None
    phase_dress: float = np.pi / 4

    def rabi_array(self) -> np.ndarray:
        if len(self.rabi) == 1:
            return np.full(N_SITES, self.rabi[0])
        if len(self.rabi) == N_SITES:
            return np.array(self.rabi, dtype=float)
        raise ValueError(f"rabi needs 1 or {N_SITES} values, got {len(self.rabi)}")

    def coupling_matrix(self) -> np.ndarray:
        jmat = np.full((N_SITES, N_SITES), self.j)
        np.fill_diagonal(jmat, 0.0)
        for a, b, value in self.j_ab:
            jmat[a, b] = jmat[b, a] = value
        return jmat

    def params(self) -> SystemParams:
        omega = self.omega0 + self.m * np.arange(N_SITES, dtype=float)
        coupling = self.coupling_matrix()
        if self.drive == "auto":
            drive = omega[0] + float(coupling[0, 1:].sum())
        else:
            drive = float(self.drive)
        return SystemParams(omega=omega, coupling=coupling, rabi=self.rabi_array(), drive=drive)

    def evolution(self, record_every: int = 0) -> EvolutionConfig:
        return EvolutionConfig(dt=self.dt, method=self.method, record_every=record_every)


def parse_config_file(path) -> Settings:
    """Read ``key = value`` lines; blank lines and ``#`` comments ignored."""
    settings = Settings()
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key == "j_ab":
                a, b, v = (s.strip() for s in value.split(","))
                settings.j_ab.append((int(a), int(b), float(v)))
            elif key == "rabi":
                settings.rabi = tuple(float(s) for s in value.split(","))
            elif key == "drive":
                settings.drive = value if value == "auto" else float(value)
            elif key in ("method", "initial"):
                setattr(settings, key, value)
            else:
                setattr(settings, key, float(value))
    return settings


def _apply_flag_overrides(settings: Settings, args) -> Settings:
    for key in ("omega0", "m", "j", "dt", "method", "initial", "phase_dress"):
        value = getattr(args, key, None)
        if value is not None:
            settings = replace(settings, **{key: value})
    if getattr(args, "rabi", None) is not None:
        settings = replace(settings, rabi=(args.rabi,))
    return settings


def _settings_from_args(args) -> Settings:
    settings = parse_config_file(args.config) if args.config else Settings()
    return _apply_flag_overrides(settings, args)


def _add_common_options(sub):
    sub.add_argument("--config", help="key = value configuration file")
    sub.add_argument("--out", help="output CSV path")
    sub.add_argument("--dt", type=float, help="integrator step")
    sub.add_argument("--method", choices=("rk4", "expm"), help="integrator")
    sub.add_argument("--initial", help="initial-state selector")
    sub.add_argument("--phase-dress", dest="phase_dress", type=float,
                     help="phase applied to the dressed superposition block")
    sub.add_argument("--threshold", type=float, default=0.02,
                     help="critical-detector threshold on max_amp")
    sub.add_argument("--omega0", type=float, help="Zeeman frequency of spin 0")
    sub.add_argument("--m", type=float, help="qubit frequency spacing")
    sub.add_argument("--j", type=float, help="uniform Ising constant")
    sub.add_argument("--rabi", type=float, help="uniform Rabi amplitude")
    sub.add_argument("--workers", type=int, help="parallel workers for sweep points")


def _sweep_values(args) -> tuple[float, ...]:
    if args.values:
        return tuple(float(s) for s in args.values.split(","))
    if args.start is None or args.stop is None or args.points is None:
        raise SystemExit("sweep needs either --values or --from/--to/--points")
    return tuple(np.linspace(args.start, args.stop, args.points))


def _build_spec(args, settings: Settings) -> SweepSpec:
    if len(settings.rabi) != 1:
        raise SystemExit("sweeps assume one uniform Rabi amplitude")
    if settings.j_ab:
        raise SystemExit("sweeps assume a uniform Ising constant (no j_ab overrides)")
    return SweepSpec(
        variable=args.variable,
        values=_sweep_values(args),
        omega0=settings.omega0,
        spacing=settings.m,
        coupling=settings.j,
        rabi=settings.rabi[0],
        initial=settings.initial or "superposition-dressed",
        phase_dress=settings.phase_dress,
        cfg=settings.evolution(),
    )


def cmd_evolve(args) -> int:
    settings = _settings_from_args(args)
    traj, report = run_single(
        settings.params(),
        initial=settings.initial or "superposition",
        phase_dress=settings.phase_dress,
        cfg=settings.evolution(record_every=args.record_every),
    )
    out = args.out or "timeseries.csv"
    write_timeseries_csv(traj, out)
    print(f"backend={backend_name()} tau={report.tau:.6f}")
    print(f"max_amp={report.max_amp:.6g} max_phase={report.max_phase:.6g}")
    print(f"max_amp_any={report.max_amp_any:.6g} (all 256 elements)")
    print(f"time series written to {out}")
    return 0


def cmd_sweep(args) -> int:
    settings = _settings_from_args(args)
    rows = run_sweep(_build_spec(args, settings), workers=args.workers or os.cpu_count())
    for row in rows:
        print(f"{args.variable}={row.grid_value:g} max_amp={row.max_amp:.6g}")
    if args.out:
        write_sweep_csv(rows, args.out)
        print(f"sweep written to {args.out}")
    return 0


def cmd_critical(args) -> int:
    settings = _settings_from_args(args)
    rows = run_sweep(_build_spec(args, settings), workers=args.workers or os.cpu_count())
    if args.out:
        write_sweep_csv(rows, args.out)
    critical = find_critical(rows, args.threshold)
    if critical is None:
        print(f"critical {args.variable}: none (max_amp stays below {args.threshold:g})")
    else:
        print(f"critical {args.variable} = {critical:.6g} (threshold {args.threshold:g})")
    return 0


def cmd_verify(args) -> int:
    return 0 if run_all() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spingate",
        description="Single-pulse CONTROL-NOT dynamics in a four-spin Ising register",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_evolve = sub.add_parser("evolve", help="one pulse with a recorded time series")
    _add_common_options(p_evolve)
    p_evolve.add_argument("--record-every", dest="record_every", type=int, default=100,
                          help="snapshot cadence in integrator steps")
    p_evolve.set_defaults(func=cmd_evolve)

    for name, func, help_text in (
        ("sweep", cmd_sweep, "deviations over a parameter grid"),
        ("critical", cmd_critical, "sweep plus critical-value detection"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common_options(p)
        p.add_argument("--variable", choices=("M", "J"), required=True)
        p.add_argument("--from", dest="start", type=float, help="first grid value")
        p.add_argument("--to", dest="stop", type=float, help="last grid value")
        p.add_argument("--points", type=int, help="grid size for --from/--to")
        p.add_argument("--values", help="explicit comma-separated grid values")
        p.set_defaults(func=func)

    p_verify = sub.add_parser("verify", help="run the invariant/oracle suite")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
