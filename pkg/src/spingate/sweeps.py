"""Pulse experiments over parameter grids, with deterministic CSV output.

Two sweep families are supported: varying the qubit frequency spacing
(``w_k = omega0 + spacing*k``) at fixed Ising constant, and varying the
Ising constant at fixed spacing.  Every grid point re-tunes the drive to the
0<->1 resonance ``omega0 + 3*J``, evolves the dressed reference state through
one pi pulse, and records the deviation diagnostics as one CSV row.  Points
are independent and may run in parallel; rows are always assembled in grid
order, so identical inputs produce byte-identical files for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .evolve import EvolutionConfig, Trajectory, apply_cn_pulse, integrate, pi_pulse_duration
from .metrics import DIM, DeviationReport, deviation_report
from .model import SystemParams
from .states import initial_state

SWEEP_VARIABLES = ("M", "J")

# Default time series: the four logic populations then the six upper
# coherences of the logic block.
DEFAULT_TIMESERIES_ELEMENTS = (
    (0, 0), (1, 1), (2, 2), (3, 3),
    (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
)


class SweepPointError(RuntimeError):
    """A grid point failed; the message carries the offending grid value."""


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition plus the experiment held fixed across it."""

    variable: str
    values: tuple[float, ...]
    omega0: float = 0.0
    spacing: float = 100.0
    coupling: float = 10.0
    rabi: float = 0.1
    initial: str = "superposition-dressed"
    phase_dress: float = np.pi / 4
    cfg: EvolutionConfig = field(default_factory=EvolutionConfig)

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"variable must be one of {SWEEP_VARIABLES}")
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError("sweep needs at least one grid value")
        diffs = np.diff(values)
        if not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ValueError("grid values must be strictly monotone")

    def point_params(self, value: float) -> SystemParams:
        """Register parameters at one grid point, drive re-tuned to resonance."""
        if self.variable == "M":
            return SystemParams.uniform(
                spacing=value, coupling=self.coupling, rabi=self.rabi, omega0=self.omega0
            )
        return SystemParams.uniform(
            spacing=self.spacing, coupling=value, rabi=self.rabi, omega0=self.omega0
        )


@dataclass
class SweepRow:
    """Deviation summary of one grid point."""

    grid_value: float
    tau: float
    amp: np.ndarray
    phase: np.ndarray
    max_amp: float
    max_phase: float


def _row_from_report(value: float, report: DeviationReport) -> SweepRow:
    return SweepRow(
        grid_value=value,
        tau=report.tau,
        amp=report.amp,
        phase=report.phase,
        max_amp=report.max_amp,
        max_phase=report.max_phase,
    )


def _sweep_point(spec: SweepSpec, value: float) -> SweepRow:
    try:
        p = spec.point_params(value)
        rho0 = initial_state(spec.initial, p, spec.phase_dress)
        tau = pi_pulse_duration(p, 0)
        final = apply_cn_pulse(rho0, p, spec.cfg)
        return _row_from_report(value, deviation_report(rho0, final, p, tau))
    except Exception as exc:
        raise SweepPointError(f"sweep point {spec.variable}={value} failed: {exc}") from exc


def run_sweep(spec: SweepSpec, workers: int | None = None) -> list[SweepRow]:
    """One row per grid value, in grid order regardless of execution order."""
    if workers is None or workers <= 1 or len(spec.values) == 1:
        return [_sweep_point(spec, v) for v in spec.values]
    with ProcessPoolExecutor(max_workers=min(workers, len(spec.values))) as pool:
        return list(pool.map(_sweep_point, [spec] * len(spec.values), spec.values))


def run_single(
    p: SystemParams,
    initial: str = "superposition",
    phase_dress: float = np.pi / 4,
    cfg: EvolutionConfig = EvolutionConfig(record_every=100),
    t_end: float | None = None,
) -> tuple[Trajectory, DeviationReport]:
    """One pulse with a recorded time series plus its deviation report.

    ``t_end`` defaults to the pi-pulse duration of spin 0.
    """
    rho0 = initial_state(initial, p, phase_dress)
    tau = pi_pulse_duration(p, 0) if t_end is None else float(t_end)
    traj = integrate(rho0, p, tau, cfg)
    return traj, deviation_report(rho0, traj.final, p, tau)


def find_critical(rows: list[SweepRow], threshold: float) -> float | None:
    """Grid value where ``max_amp`` first crosses ``threshold``.

    The rows are traversed from the largest grid value (the well-behaved end)
    toward the smallest; the crossing is located by linear interpolation
    between the bracketing grid points.  Returns the largest grid value when
    even that point is above threshold, and None when the threshold is never
    reached.
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    if len(rows) < 2:
        raise ValueError("need at least two rows to locate a crossing")
    ordered = sorted(rows, key=lambda r: -r.grid_value)
    if ordered[0].max_amp >= threshold:
        return ordered[0].grid_value
    for hi, lo in zip(ordered, ordered[1:]):
        if hi.max_amp < threshold <= lo.max_amp:
            frac = (threshold - hi.max_amp) / (lo.max_amp - hi.max_amp)
            return hi.grid_value + frac * (lo.grid_value - hi.grid_value)
    return None


# ---------------------------------------------------------------------------
# CSV serialization (fixed column order, 17 significant digits, NaN -> empty)

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def sweep_csv_header() -> str:
    cols = ["grid", "tau", "max_amp", "max_phase"]
    cols += [f"amp_{i}_{j}" for i in range(DIM) for j in range(DIM)]
    cols += [f"phase_{i}_{j}" for i in range(DIM) for j in range(DIM)]
    return ",".join(cols)


def sweep_csv_line(row: SweepRow) -> str:
    fields = [_fmt(row.grid_value), _fmt(row.tau), _fmt(row.max_amp), _fmt(row.max_phase)]
    fields += [_fmt(v) for v in row.amp.ravel()]
    fields += ["" if np.isnan(v) else _fmt(v) for v in row.phase.ravel()]
    return ",".join(fields)


def write_sweep_csv(rows: list[SweepRow], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(sweep_csv_header() + "\n")
        for row in rows:
            fh.write(sweep_csv_line(row) + "\n")


def timeseries_csv_header(elements=DEFAULT_TIMESERIES_ELEMENTS) -> str:
    cols = ["t"]
    for i, j in elements:
        cols += [f"re_r{i}{j}", f"im_r{i}{j}"]
    return ",".join(cols)


def write_timeseries_csv(traj: Trajectory, path, elements=DEFAULT_TIMESERIES_ELEMENTS) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(timeseries_csv_header(elements) + "\n")
        for t, state in zip(traj.times, traj.states):
            fields = [_fmt(t)]
            for i, j in elements:
                fields += [_fmt(state[i, j].real), _fmt(state[i, j].imag)]
            fh.write(",".join(fields) + "\n")
