"""Propagate the register state through a resonant pulse.

Two independent routes are provided.  ``integrate`` advances the equation of
motion d(rho)/dt = -i [V''(t), rho] with a fixed-step classical RK4 kernel in
the interaction frame, where only the slow drive-induced dynamics remains.
``exact_propagate`` instead uses the time-independent rotating-frame
generator: it conjugates by its spectral exponential and maps the result back
to the interaction frame, which is exact up to eigendecomposition roundoff
and therefore serves as the oracle for the integrator.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._backend import rk4_run
from .model import SystemParams, basis_energy, rotating_frame
from .operators import require_hermitian

METHODS = ("rk4", "expm")

# RK4 degrades once a single step spans more than about one radian of the
# fastest phase factor appearing in V''.
PHASE_RADIANS_PER_STEP_LIMIT = 1.0


@dataclass(frozen=True)
class EvolutionConfig:
    """Integrator settings.

    ``record_every`` is a snapshot cadence in steps; 0 keeps the final state
    only.  ``method="expm"`` replaces the RK4 kernel by the exact spectral
    propagator evaluated at the same snapshot times.
    """

    dt: float = 0.001
    method: str = "rk4"
    record_every: int = 0

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.record_every < 0:
            raise ValueError("record_every must be >= 0")


@dataclass
class Trajectory:
    """Snapshots of the interaction-frame state at increasing times."""

    times: np.ndarray
    states: list[np.ndarray]

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if len(self.times) != len(self.states):
            raise ValueError("one state per time required")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def pi_pulse_duration(p: SystemParams, target: int = 0) -> float:
    """Duration ``pi / Rabi_target`` of a resonant population-inverting pulse."""
    if p.rabi[target] <= 0:
        raise ValueError(f"spin {target} has zero Rabi amplitude")
    return np.pi / p.rabi[target]


def _fastest_drive_phase(energies: np.ndarray, vprime: np.ndarray) -> float:
    ediff = np.abs(energies[:, None] - energies[None, :])
    coupled = np.abs(vprime) > 0
    return float(ediff[coupled].max()) if coupled.any() else 0.0


def _split_steps(t_end: float, dt: float) -> tuple[int, float]:
    n_full = int(np.floor(t_end / dt + 1e-9))
    rem = t_end - n_full * dt
    if rem <= 1e-12 * max(1.0, t_end):
        rem = 0.0
    return n_full, rem


def integrate(
    rho0: np.ndarray, p: SystemParams, t_end: float, cfg: EvolutionConfig = EvolutionConfig()
) -> Trajectory:
    """Evolve an interaction-frame state to ``t_end``.

    Fixed steps of ``cfg.dt`` with the last step shortened to land exactly on
    ``t_end``; the state is re-symmetrized after every step, which suppresses
    floating-point Hermiticity drift without touching the truncation order.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    require_hermitian(rho0, "initial state")
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    energies, vprime = rotating_frame(p)
    fastest = _fastest_drive_phase(energies, vprime)
    if cfg.dt * fastest > PHASE_RADIANS_PER_STEP_LIMIT:
        warnings.warn(
            f"dt={cfg.dt} spans {cfg.dt * fastest:.2f} rad of the fastest drive phase "
            f"(frequency {fastest:.3g}); halve dt or cross-check against exact_propagate",
            stacklevel=2,
        )

    n_full, rem = _split_steps(t_end, cfg.dt)
    marks = list(range(cfg.record_every, n_full + 1, cfg.record_every)) if cfg.record_every else []
    if marks and marks[-1] == n_full and rem == 0.0:
        marks.pop()  # that snapshot is the final record below

    times: list[float] = []
    states: list[np.ndarray] = []
    if cfg.record_every:
        times.append(0.0)
        states.append(rho0.copy())

    if cfg.method == "expm":
        prop = _ExactPulse(p)
        for s in marks:
            times.append(s * cfg.dt)
            states.append(prop(rho0, s * cfg.dt))
        times.append(t_end)
        states.append(prop(rho0, t_end))
    else:
        rho = np.array(rho0, dtype=complex, order="C")
        prev = 0
        for s in marks:
            rk4_run(rho, energies, vprime, prev * cfg.dt, cfg.dt, s - prev)
            prev = s
            times.append(s * cfg.dt)
            states.append(rho.copy())
        if prev < n_full:
            rk4_run(rho, energies, vprime, prev * cfg.dt, cfg.dt, n_full - prev)
        if rem > 0.0:
            rk4_run(rho, energies, vprime, n_full * cfg.dt, rem, 1)
        times.append(t_end)
        states.append(rho)

    return Trajectory(np.array(times), states)


class _ExactPulse:
    """Spectral propagator of the time-independent rotating-frame generator,
    factored so one eigendecomposition serves many evaluation times."""

    def __init__(self, p: SystemParams):
        self.energies, vprime = rotating_frame(p)
        self.w, self.q = np.linalg.eigh(np.diag(self.energies) + vprime)

    def __call__(self, rho0: np.ndarray, t: float) -> np.ndarray:
        prop = (self.q * np.exp(-1j * self.w * t)) @ self.q.conj().T
        rho_rot = prop @ rho0 @ prop.conj().T
        # Back to the interaction frame, where rho(0) was given.
        ph = np.exp(1j * self.energies * t)
        return (ph[:, None] * rho_rot) * ph.conj()[None, :]


def exact_propagate(rho0: np.ndarray, p: SystemParams, t: float) -> np.ndarray:
    """Interaction-frame state at time ``t``, exact to roundoff.

    Unitary conjugation, so the trace and the eigenvalue multiset of the
    state are preserved exactly.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    require_hermitian(rho0, "initial state")
    return _ExactPulse(p)(rho0, t)


def apply_cn_pulse(
    rho0: np.ndarray, p: SystemParams, cfg: EvolutionConfig = EvolutionConfig()
) -> np.ndarray:
    """Evolve through one resonant pi pulse on spin 0 and return the final state.

    The drive must sit on the 0<->1 transition, i.e. the two lowest basis
    states must be degenerate in the rotating frame.
    """
    detuning = basis_energy(p, 1, "rotating") - basis_energy(p, 0, "rotating")
    if abs(detuning) > 1e-9 * max(1.0, abs(p.drive)):
        raise ValueError(f"drive is off the 0<->1 resonance by {detuning:.3e}")
    return integrate(rho0, p, pi_pulse_duration(p, 0), cfg).final
