"""Gate contract and deviation diagnostics.

The target operation is a CONTROL-NOT on the two rightmost spins, realized
as the unitary that swaps the lowest two basis states with a factor ``i``
and leaves the other fourteen untouched.  ``expected_final`` applies it to an
state; comparing an evolved state against it yields amplitude deviations
``| |r_ij(tau)| - |expected_ij| |`` and phase deviations (circular distances
of the arguments), which quantify how strongly off-resonant transitions
perturb the gate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import DIM, SystemParams
from .operators import require_hermitian
from .states import BLOCK

DEFAULT_PHASE_FLOOR = 1e-3

# Elements tracked by the headline deviation maxima: the 4x4 logic block plus
# the (11, 7) background coherence, the leakage channel most exposed to
# off-resonant driving.  Background populations are excluded on purpose: at
# isolated parameter points a sideband transition crosses the drive frequency
# exactly and swaps a pair of background populations wholesale, which says
# nothing about the logic subspace.  The full 16x16 deviation arrays are kept
# in the report for anyone who wants a different selection.
GATE_TRACE_ELEMENTS = tuple(
    [(i, j) for i in range(BLOCK) for j in range(BLOCK)] + [(11, 7), (7, 11)]
)


def ideal_cn_unitary() -> np.ndarray:
    """16x16 unitary ``i|0><1| + i|1><0| + sum_{n>=2} |n><n|``."""
    g = np.eye(DIM, dtype=complex)
    g[0, 0] = g[1, 1] = 0.0
    g[0, 1] = g[1, 0] = 1.0j
    return g


def expected_final(rho0: np.ndarray) -> np.ndarray:
    """State an ideal gate would produce: conjugation by the CN unitary.

    On the logic block this swaps the two populations, transposes the (0,1)
    coherence, and rotates the block-to-outside coherences by a quarter turn;
    entries with both indices >= 2 are unchanged.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    require_hermitian(rho0, "initial state")
    g = ideal_cn_unitary()
    return g @ rho0 @ g.conj().T


def amplitude_deviation(actual: np.ndarray, expected: np.ndarray) -> np.ndarray:
    """Entry-wise ``| |actual| - |expected| |``; symmetric for Hermitian inputs."""
    actual = np.asarray(actual)
    expected = np.asarray(expected)
    if actual.shape != expected.shape:
        raise ValueError(f"shape mismatch: {actual.shape} vs {expected.shape}")
    return np.abs(np.abs(actual) - np.abs(expected))


def phase_deviation(
    actual: np.ndarray, expected: np.ndarray, floor: float = DEFAULT_PHASE_FLOOR
) -> np.ndarray:
    """Circular distance in [0, pi] between the entry arguments.

    Entries where either modulus is below ``floor`` carry no meaningful
    phase and are returned as NaN.  Differences are reduced to (-pi, pi]
    before taking the absolute value, so branch cuts cannot inject spurious
    2*pi jumps between neighboring sweep points.
    """
    if floor <= 0:
        raise ValueError("floor must be positive")
    actual = np.asarray(actual)
    expected = np.asarray(expected)
    if actual.shape != expected.shape:
        raise ValueError(f"shape mismatch: {actual.shape} vs {expected.shape}")
    diff = np.angle(actual) - np.angle(expected)
    diff = (diff + np.pi) % (2.0 * np.pi) - np.pi
    delta = np.abs(diff)
    delta[(np.abs(actual) < floor) | (np.abs(expected) < floor)] = np.nan
    return delta


@dataclass
class DeviationReport:
    """Amplitude and phase deviations of one pulse, with headline maxima
    taken over ``GATE_TRACE_ELEMENTS`` (NaN phases excluded)."""

    amp: np.ndarray
    phase: np.ndarray
    max_amp: float
    max_phase: float
    max_amp_any: float
    max_phase_any: float
    params: SystemParams
    tau: float


def _masked_max(values: np.ndarray, elements=None) -> float:
    if elements is not None:
        values = np.array([values[i, j] for i, j in elements])
    values = values[~np.isnan(values)]
    return float(values.max()) if values.size else 0.0


def summarize(amp: np.ndarray, phase: np.ndarray, params: SystemParams, tau: float) -> DeviationReport:
    """Bundle deviation arrays with their gate-set and whole-matrix maxima."""
    return DeviationReport(
        amp=amp,
        phase=phase,
        max_amp=_masked_max(amp, GATE_TRACE_ELEMENTS),
        max_phase=_masked_max(phase, GATE_TRACE_ELEMENTS),
        max_amp_any=_masked_max(amp),
        max_phase_any=_masked_max(phase),
        params=params,
        tau=tau,
    )


def deviation_report(
    initial: np.ndarray,
    final: np.ndarray,
    params: SystemParams,
    tau: float,
    floor: float = DEFAULT_PHASE_FLOOR,
) -> DeviationReport:
    """Full diagnostics of one pulse against the ideal gate action."""
    expected = expected_final(initial)
    return summarize(
        amplitude_deviation(final, expected),
        phase_deviation(final, expected, floor),
        params,
        tau,
    )
