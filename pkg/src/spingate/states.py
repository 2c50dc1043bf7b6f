"""Initial density matrices for gate experiments.

The ensemble signal is carried by a scale-free deviation matrix: a 4x4 block
over the logic states |0>..|3> (the two rightmost spins, with spins 2 and 3
up) embedded in the 16-level register on top of a fixed diagonal background.
The physical prefactor relating it to the thermal ensemble is linear in the
equation of motion and is therefore never simulated.
"""

from __future__ import annotations

import numpy as np

from .model import DIM, SystemParams, basis_energy
from .operators import require_hermitian

BLOCK = 4

# Diagonal occupation pattern on the non-logic states |4>..|15| of the
# prepared deviation matrix; logic states 0..3 carry the reduced block.
BACKGROUND = np.array(
    [0.0, 0.0, 0.0, 0.0, -0.5, 0.5, 0.5, 0.5, 0.5, -0.5, -0.5, -0.5, -1.0, 0.0, 0.0, 0.0]
)


def thermal_density(p: SystemParams, temperature: float) -> np.ndarray:
    """Boltzmann-diagonal register state at the given temperature.

    ``temperature`` is expressed in the same energy unit as the lab-frame
    basis energies (k_B = 1), so the exponent is ``-E_k / temperature``.
    """
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    e = np.array([basis_energy(p, k, "lab") for k in range(DIM)])
    weights = np.exp(-(e - e.min()) / temperature)
    rho = np.zeros((DIM, DIM), dtype=complex)
    np.fill_diagonal(rho, weights / weights.sum())
    return rho


def rdm_from_pure(amplitudes: np.ndarray) -> np.ndarray:
    """Rank-1 reduced block ``c c^dagger`` of a normalized two-spin state."""
    c = np.asarray(amplitudes, dtype=complex)
    if c.shape != (BLOCK,):
        raise ValueError(f"amplitudes must have shape ({BLOCK},)")
    norm = np.sum(np.abs(c) ** 2)
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"amplitudes not normalized: sum |c|^2 = {norm}")
    return np.outer(c, c.conj())


def phase_dressed_rdm(base: np.ndarray, phase: float) -> np.ndarray:
    """Replace the upper off-diagonal entries by ``|r_ij| e^{i phase}``.

    Diagonal entries are untouched and the lower triangle mirrors the upper
    one, so the result is Hermitian for any phase.
    """
    base = np.asarray(base, dtype=complex)
    require_hermitian(base, "reduced block")
    out = base.copy()
    for i in range(BLOCK):
        for j in range(i + 1, BLOCK):
            out[i, j] = np.abs(base[i, j]) * np.exp(1j * phase)
            out[j, i] = out[i, j].conjugate()
    return out


def prepared_deviation(rdm: np.ndarray) -> np.ndarray:
    """Embed a 4x4 reduced block into the 16x16 deviation matrix.

    The logic block occupies indices 0..3; indices 4..15 carry the fixed
    diagonal ``BACKGROUND`` pattern and no coherences.  The trace equals
    ``trace(rdm) - 1``.
    """
    rdm = np.asarray(rdm, dtype=complex)
    if rdm.shape != (BLOCK, BLOCK):
        raise ValueError(f"reduced block must be {BLOCK}x{BLOCK}")
    require_hermitian(rdm, "reduced block")
    rho = np.zeros((DIM, DIM), dtype=complex)
    rho[:BLOCK, :BLOCK] = rdm
    rho[np.arange(BLOCK, DIM), np.arange(BLOCK, DIM)] = BACKGROUND[BLOCK:]
    return rho


def extract_block(rho: np.ndarray) -> np.ndarray:
    """Copy of the 4x4 logic block of a register state."""
    return np.array(np.asarray(rho)[:BLOCK, :BLOCK], dtype=complex)


def ground_rdm() -> np.ndarray:
    """Reduced block of the logic ground state |00>."""
    return rdm_from_pure(np.array([1.0, 0.0, 0.0, 0.0], dtype=complex))


def superposition_rdm() -> np.ndarray:
    """Reduced block of the reference four-component superposition
    sqrt(0.3)|00> + sqrt(0.2)|01> + (1/sqrt(3))|10> + (1/sqrt(6))|11>."""
    c = np.array([np.sqrt(0.3), np.sqrt(0.2), 1.0 / np.sqrt(3.0), 1.0 / np.sqrt(6.0)])
    return rdm_from_pure(c.astype(complex))


def initial_state(selector: str, p: SystemParams, phase_dress: float = np.pi / 4) -> np.ndarray:
    """Build a 16x16 initial state from a selector string.

    Selectors: ``ground``, ``superposition``, ``superposition-dressed``,
    ``pure:<c0,c1,c2,c3>`` (complex literals), and ``thermal:<theta>`` where
    ``theta`` is the mean Zeeman frequency divided by the temperature.
    """
    if selector == "ground":
        return prepared_deviation(ground_rdm())
    if selector == "superposition":
        return prepared_deviation(superposition_rdm())
    if selector == "superposition-dressed":
        return prepared_deviation(phase_dressed_rdm(superposition_rdm(), phase_dress))
    if selector.startswith("pure:"):
        parts = selector[len("pure:") :].split(",")
        if len(parts) != BLOCK:
            raise ValueError(f"pure: selector needs {BLOCK} amplitudes")
        c = np.array([complex(s.strip().replace("i", "j")) for s in parts])
        return prepared_deviation(rdm_from_pure(c))
    if selector.startswith("thermal:"):
        theta = float(selector[len("thermal:") :])
        if theta <= 0:
            raise ValueError("thermal: selector needs a positive theta")
        mean_omega = float(np.mean(p.omega))
        if mean_omega <= 0:
            raise ValueError("thermal: selector needs a positive mean Zeeman frequency")
        return thermal_density(p, mean_omega / theta)
    raise ValueError(f"unknown initial-state selector {selector!r}")
