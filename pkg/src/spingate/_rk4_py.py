"""Pure-numpy fallback for the fixed-step integration kernel.

Same contract as the compiled extension ``spingate._rk4``: advance the state
in place by ``nsteps`` classical RK4 steps of size ``h`` starting at ``t0``,
for d(rho)/dt = -i [V''(t), rho] with
``V''_jk(t) = vprime_jk * exp(i (E_j - E_k) t)``.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _deriv(t, rho, energies, vprime):
    ph = np.exp(1j * energies * t)
    vt = (ph[:, None] * vprime) * ph.conj()[None, :]
    return -1j * (vt @ rho - rho @ vt)


def rk4_run(rho, energies, vprime, t0, h, nsteps):
    """Advance ``rho`` in place; one re-symmetrization per step."""
    energies = np.asarray(energies, dtype=float)
    vprime = np.asarray(vprime, dtype=complex)
    for step in range(nsteps):
        t = t0 + step * h
        k1 = _deriv(t, rho, energies, vprime)
        k2 = _deriv(t + 0.5 * h, rho + (0.5 * h) * k1, energies, vprime)
        k3 = _deriv(t + 0.5 * h, rho + (0.5 * h) * k2, energies, vprime)
        k4 = _deriv(t + h, rho + h * k3, energies, vprime)
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        np.copyto(rho, 0.5 * (rho + rho.conj().T))
