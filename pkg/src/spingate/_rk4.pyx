# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-step integration kernel.

Advances a density matrix in place by classical RK4 steps for
d(rho)/dt = -i [V''(t), rho] with V''_jk(t) = vprime_jk * exp(i (E_j - E_k) t).
The matrices are tiny (16x16), so a straight C loop beats vectorized numpy by
avoiding per-call dispatch overhead in the inner loop.
"""

import numpy as np

cimport cython
from libc.math cimport cos, sin

BACKEND = "cython"

ctypedef double complex cplx


cdef inline void _phases(const double[::1] energies, double t, cplx[::1] ph) noexcept nogil:
    cdef Py_ssize_t j, n = energies.shape[0]
    for j in range(n):
        ph[j] = cos(energies[j] * t) + 1j * sin(energies[j] * t)


cdef void _deriv(const cplx[:, ::1] vprime, const Py_ssize_t[:, ::1] cols,
                 const Py_ssize_t[::1] ncols, const cplx[::1] ph,
                 const cplx[:, ::1] rho, cplx[:, ::1] out) noexcept nogil:
    # out = -i (V'' rho - rho V'') with V''_ja = vprime_ja ph_j conj(ph_a).
    # Only the columns listed in cols[j, :ncols[j]] are nonzero in row j of
    # vprime (single-bit-flip coupling), which cuts the matmul cost 4x.
    cdef Py_ssize_t i, j, a, c, n = rho.shape[0]
    cdef cplx via, vai
    for i in range(n):
        for j in range(n):
            out[i, j] = 0
    for i in range(n):
        for c in range(ncols[i]):
            a = cols[i, c]
            via = vprime[i, a] * ph[i] * ph[a].conjugate()
            vai = via.conjugate()
            for j in range(n):
                out[i, j] = out[i, j] - 1j * via * rho[a, j]
                out[j, i] = out[j, i] + 1j * rho[j, a] * vai


def rk4_run(cplx[:, ::1] rho, const double[::1] energies, const cplx[:, ::1] vprime,
            double t0, double h, Py_ssize_t nsteps):
    """Advance ``rho`` in place; one re-symmetrization per step.

    ``vprime`` must be Hermitian (the closed-form interaction-frame phases
    rely on it).
    """
    cdef Py_ssize_t n = rho.shape[0]
    cdef cplx[:, ::1] k1 = np.empty((n, n), dtype=complex)
    cdef cplx[:, ::1] k2 = np.empty((n, n), dtype=complex)
    cdef cplx[:, ::1] k3 = np.empty((n, n), dtype=complex)
    cdef cplx[:, ::1] k4 = np.empty((n, n), dtype=complex)
    cdef cplx[:, ::1] tmp = np.empty((n, n), dtype=complex)
    cdef cplx[::1] ph = np.empty(n, dtype=complex)
    cdef Py_ssize_t step, i, j
    cdef double t
    cdef cplx sym

    # Nonzero-column lists of vprime (4 per row for a single-spin drive).
    cdef Py_ssize_t[:, ::1] cols = np.zeros((n, n), dtype=np.intp)
    cdef Py_ssize_t[::1] ncols = np.zeros(n, dtype=np.intp)
    for i in range(n):
        for j in range(n):
            if vprime[i, j] != 0:
                cols[i, ncols[i]] = j
                ncols[i] += 1

    with nogil:
        for step in range(nsteps):
            t = t0 + step * h

            _phases(energies, t, ph)
            _deriv(vprime, cols, ncols, ph, rho, k1)

            for i in range(n):
                for j in range(n):
                    tmp[i, j] = rho[i, j] + 0.5 * h * k1[i, j]
            _phases(energies, t + 0.5 * h, ph)
            _deriv(vprime, cols, ncols, ph, tmp, k2)

            for i in range(n):
                for j in range(n):
                    tmp[i, j] = rho[i, j] + 0.5 * h * k2[i, j]
            _deriv(vprime, cols, ncols, ph, tmp, k3)

            for i in range(n):
                for j in range(n):
                    tmp[i, j] = rho[i, j] + h * k3[i, j]
            _phases(energies, t + h, ph)
            _deriv(vprime, cols, ncols, ph, tmp, k4)

            for i in range(n):
                for j in range(n):
                    rho[i, j] = rho[i, j] + (h / 6.0) * (
                        k1[i, j] + 2.0 * k2[i, j] + 2.0 * k3[i, j] + k4[i, j])

            for i in range(n):
                for j in range(i, n):
                    sym = 0.5 * (rho[i, j] + rho[j, i].conjugate())
                    rho[i, j] = sym
                    rho[j, i] = sym.conjugate()
