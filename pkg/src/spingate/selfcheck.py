"""Runtime verification suite behind the ``verify`` CLI subcommand.

Each check exercises one structural invariant of the simulator: operator
algebra, frame transformations, conservation laws, the integrator against
the spectral oracle, and the closed-form single-spin limit.  The checks are
self-contained so a failed build or a miscompiled kernel shows up directly
in the field.
"""

from __future__ import annotations

import numpy as np

from ._backend import backend_name
from .evolve import EvolutionConfig, exact_propagate, integrate, pi_pulse_duration
from .metrics import expected_final, ideal_cn_unitary
from .model import (
    DIM,
    SystemParams,
    drive_potential_lab,
    frame_generator,
    interaction_potential,
    rotating_frame,
    single_flip_transitions,
)
from .operators import SpinAxis, commutator, hermitian_exponential, single_spin_operator
from .states import prepared_deviation, superposition_rdm


def _random_hermitian(rng, dim=DIM):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def check_spin_algebra():
    worst = 0.0
    axes = (SpinAxis.X, SpinAxis.Y, SpinAxis.Z)
    ops = {(ax, s): single_spin_operator(ax, s) for ax in axes for s in range(4)}
    for s in range(4):
        x, y, z = ops[(SpinAxis.X, s)], ops[(SpinAxis.Y, s)], ops[(SpinAxis.Z, s)]
        worst = max(worst, np.max(np.abs(commutator(x, y) - 1j * z)))
        worst = max(worst, np.max(np.abs(commutator(y, z) - 1j * x)))
        worst = max(worst, np.max(np.abs(commutator(z, x) - 1j * y)))
        for s2 in range(4):
            if s2 != s:
                for ax2 in axes:
                    worst = max(worst, np.max(np.abs(commutator(x, ops[(ax2, s2)]))))
    return worst < 1e-14, f"max algebra defect {worst:.2e}"


def check_propagator_unitarity():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(5):
        u = hermitian_exponential(_random_hermitian(rng), rng.uniform(-2, 2))
        worst = max(worst, np.max(np.abs(u @ u.conj().T - np.eye(DIM))))
    return worst < 1e-10, f"max unitarity defect {worst:.2e}"


def check_frame_transformation():
    p = SystemParams.uniform()
    energies, vprime = rotating_frame(p)
    target = np.diag(energies).astype(complex) + vprime
    rng = np.random.default_rng(5)
    worst = max(
        np.max(np.abs(frame_generator(p, t) - target)) for t in rng.uniform(0, 31.4, size=5)
    )
    return worst < 1e-10, f"max generator defect {worst:.2e}"


def check_drive_norm():
    p = SystemParams.uniform()
    norms = [np.linalg.norm(drive_potential_lab(p, t)) for t in np.linspace(0.0, 0.5, 7)]
    spread = max(norms) - min(norms)
    return spread < 1e-10, f"norm spread over t grid {spread:.2e}"


def check_interaction_potential():
    p = SystemParams.uniform()
    energies, vprime = rotating_frame(p)
    worst_h = worst_m = 0.0
    for t in np.linspace(0.0, 31.4, 5):
        v = interaction_potential(energies, vprime, t)
        worst_h = max(worst_h, np.max(np.abs(v - v.conj().T)))
        worst_m = max(worst_m, np.max(np.abs(np.abs(v) - np.abs(vprime))))
    return max(worst_h, worst_m) < 1e-12, f"hermiticity {worst_h:.2e}, modulus drift {worst_m:.2e}"


def check_resonance_table():
    p = SystemParams.uniform()
    freqs = sorted(f for _, _, f in single_flip_transitions(p, site=0))
    j = p.coupling[0, 1]
    main = sum(1 for f in freqs if abs(f - (p.omega[0] + 3 * j)) < 1e-9)
    side = sum(1 for f in freqs if abs(f - (p.omega[0] + j)) < 1e-9)
    return (main, side) == (1, 3), f"{main} transition(s) at w0+3J, {side} at w0+J"


def check_oracle_agreement():
    p = SystemParams.uniform()
    rho0 = prepared_deviation(superposition_rdm())
    tau = pi_pulse_duration(p)
    final = integrate(rho0, p, tau, EvolutionConfig(dt=0.001)).final
    err = np.max(np.abs(final - exact_propagate(rho0, p, tau)))
    return err < 1e-8, f"rk4 vs spectral oracle {err:.2e}"


def check_conservation():
    p = SystemParams.uniform()
    rng = np.random.default_rng(3)
    rho0 = prepared_deviation(_random_hermitian(rng, 4))
    final = integrate(rho0, p, pi_pulse_duration(p), EvolutionConfig(dt=0.001)).final
    tr = abs(np.trace(final) - np.trace(rho0))
    he = np.max(np.abs(final - final.conj().T))
    ev = np.max(np.abs(np.linalg.eigvalsh(final) - np.linalg.eigvalsh(rho0)))
    ok = tr < 1e-10 and he < 1e-10 and ev < 1e-6
    return ok, f"trace {tr:.2e}, hermiticity {he:.2e}, eigenvalues {ev:.2e}"


def check_rabi_limit():
    p = SystemParams(
        omega=np.array([0.0, 100.0, 200.0, 300.0]),
        coupling=np.zeros((4, 4)),
        rabi=np.array([0.1, 0.0, 0.0, 0.0]),
        drive=0.0,
    )
    rho0 = np.zeros((DIM, DIM), dtype=complex)
    rho0[0, 0] = 1.0
    traj = integrate(rho0, p, 2 * np.pi / 0.1, EvolutionConfig(dt=0.01, record_every=200))
    worst = max(
        max(
            abs(state[0, 0].real - np.cos(0.05 * t) ** 2),
            abs(state[1, 1].real - np.sin(0.05 * t) ** 2),
        )
        for t, state in zip(traj.times, traj.states)
    )
    return worst < 1e-6, f"max deviation from closed form {worst:.2e}"


def check_identity_fixed_point():
    p = SystemParams.uniform()
    eye = np.eye(DIM, dtype=complex)
    final = integrate(eye, p, 1.0, EvolutionConfig(dt=0.002)).final
    drift = np.max(np.abs(final - eye))
    return drift < 1e-14, f"identity drift {drift:.2e}"


def check_gate_unitary():
    g = ideal_cn_unitary()
    unit = np.max(np.abs(g @ g.conj().T - np.eye(DIM)))
    sq = np.max(np.abs(g @ g - np.diag([-1.0, -1.0] + [1.0] * 14)))
    rng = np.random.default_rng(7)
    rho = _random_hermitian(rng)
    conj = np.max(np.abs(expected_final(rho) - g @ rho @ g.conj().T))
    ok = unit < 1e-14 and sq < 1e-14 and conj == 0.0
    return ok, f"unitarity {unit:.2e}, squared form {sq:.2e}"


CHECKS = (
    ("spin operator algebra", check_spin_algebra),
    ("propagator unitarity", check_propagator_unitarity),
    ("rotating-frame generator", check_frame_transformation),
    ("drive norm constancy", check_drive_norm),
    ("interaction-frame drive", check_interaction_potential),
    ("single-flip resonance table", check_resonance_table),
    ("integrator vs spectral oracle", check_oracle_agreement),
    ("conservation laws", check_conservation),
    ("single-spin closed form", check_rabi_limit),
    ("identity fixed point", check_identity_fixed_point),
    ("gate unitary contract", check_gate_unitary),
)


def run_all(report=print) -> bool:
    """Run every check; returns True when all pass."""
    report(f"kernel backend: {backend_name()}")
    all_ok = True
    for name, fn in CHECKS:
        ok, detail = fn()
        all_ok &= ok
        report(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return all_ok
