"""Compare the compiled and pure-numpy integration kernels.

Runs the canonical pulse (frequency spacing 100, Ising constant 10, Rabi
amplitude 0.1, dressed superposition block) at several step sizes and reports
wall time per backend plus the max entry difference between the two results.

Usage: python benchmarks/kernel_benchmark.py
"""

import time

import numpy as np

from spingate import SystemParams, pi_pulse_duration
from spingate import _rk4_py
from spingate.model import rotating_frame
from spingate.states import phase_dressed_rdm, prepared_deviation, superposition_rdm

try:
    from spingate import _rk4
except ImportError:
    _rk4 = None


def run(kernel, rho0, energies, vprime, t_end, dt):
    rho = np.array(rho0, dtype=complex, order="C")
    n_full = int(np.floor(t_end / dt + 1e-9))
    rem = t_end - n_full * dt
    start = time.perf_counter()
    kernel.rk4_run(rho, energies, vprime, 0.0, dt, n_full)
    if rem > 1e-12 * t_end:
        kernel.rk4_run(rho, energies, vprime, n_full * dt, rem, 1)
    return time.perf_counter() - start, rho


def main():
    p = SystemParams.uniform()
    energies, vprime = rotating_frame(p)
    rho0 = prepared_deviation(phase_dressed_rdm(superposition_rdm(), np.pi / 4))
    tau = pi_pulse_duration(p)

    if _rk4 is None:
        print("compiled extension not available; showing the numpy kernel only")
    print(f"{'dt':>8} {'steps':>8} {'numpy [s]':>10} {'cython [s]':>11} {'speedup':>8} {'max diff':>10}")
    for dt in (0.01, 0.005, 0.002, 0.001):
        steps = int(np.ceil(tau / dt))
        t_py, r_py = run(_rk4_py, rho0, energies, vprime, tau, dt)
        if _rk4 is None:
            print(f"{dt:8g} {steps:8d} {t_py:10.3f} {'-':>11} {'-':>8} {'-':>10}")
            continue
        t_cy, r_cy = run(_rk4, rho0, energies, vprime, tau, dt)
        diff = np.max(np.abs(r_py - r_cy))
        print(f"{dt:8g} {steps:8d} {t_py:10.3f} {t_cy:11.3f} {t_py / t_cy:8.1f} {diff:10.2e}")


if __name__ == "__main__":
    main()
