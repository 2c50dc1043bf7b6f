"""Spin-1/2 operators on the 16-dimensional Hilbert space of a four-spin register.

Basis convention: product states are labelled ``|b3 b2 b1 b0>`` and enumerated
by the integer ``k = 8*b3 + 4*b2 + 2*b1 + b0``, so site 0 is the rightmost
(least significant) bit.  Bit value 0 means the spin points along +z and
carries the ``I^z`` eigenvalue +1/2.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

N_SITES = 4
DIM = 2**N_SITES

HERMITIAN_ATOL = 1e-9


class SpinAxis(Enum):
    """Axis label for a single-spin operator.

    ``PLUS`` and ``MINUS`` are the ladder combinations ``I^x + i I^y`` and
    ``I^x - i I^y``; with the bit convention above, ``PLUS`` maps the
    bit-1 (down) state to the bit-0 (up) state.
    """

    X = "x"
    Y = "y"
    Z = "z"
    PLUS = "+"
    MINUS = "-"


_SPIN_HALF = {
    SpinAxis.X: np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex),
    SpinAxis.Y: np.array([[0.0, -0.5j], [0.5j, 0.0]], dtype=complex),
    SpinAxis.Z: np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex),
    SpinAxis.PLUS: np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex),
    SpinAxis.MINUS: np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex),
}


def kron(*matrices: np.ndarray) -> np.ndarray:
    """Kronecker product of two or more matrices, left factor slowest.

    ``kron(A, B)[i*cols(B)+j, ...]`` follows the usual convention, so the
    rightmost factor acts on the least significant part of the index.
    """
    if len(matrices) < 2:
        raise ValueError("kron needs at least two factors")
    out = np.asarray(matrices[0])
    for m in matrices[1:]:
        out = np.kron(out, np.asarray(m))
    return out


def single_spin_operator(axis: SpinAxis, site: int) -> np.ndarray:
    """Embed the spin-1/2 operator ``I^axis`` of one site into the full register.

    Parameters
    ----------
    axis : SpinAxis
        Which component to embed.
    site : int
        Site index 0..3; site 0 is the rightmost label of the basis kets.

    Returns
    -------
    np.ndarray
        16x16 complex matrix acting as ``I^axis`` on ``site`` and as the
        identity elsewhere.
    """
    if not 0 <= site < N_SITES:
        raise ValueError(f"site must be in 0..{N_SITES - 1}, got {site}")
    eye = np.eye(2, dtype=complex)
    factors = [eye] * N_SITES
    factors[N_SITES - 1 - site] = _SPIN_HALF[SpinAxis(axis)]
    return kron(*factors)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix commutator ``a @ b - b @ a``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entry-wise deviation of ``m`` from its conjugate transpose."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def require_hermitian(m: np.ndarray, what: str = "matrix", atol: float = HERMITIAN_ATOL) -> None:
    """Raise ``ValueError`` unless ``m`` is Hermitian within ``atol``."""
    defect = hermiticity_defect(m)
    if defect > atol:
        raise ValueError(f"{what} is not Hermitian (defect {defect:.3e} > {atol:.1e})")


def hermitian_exponential(h: np.ndarray, scale: float) -> np.ndarray:
    """Unitary ``exp(i * scale * h)`` of a Hermitian matrix via eigendecomposition.

    At dimension 16 the spectral route is exact to roundoff, so no series or
    scaling-and-squaring approximation is involved.
    """
    h = np.asarray(h, dtype=complex)
    require_hermitian(h, "exponent")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * scale * w)) @ v.conj().T
