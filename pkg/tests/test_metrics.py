import numpy as np
import pytest

from spingate.metrics import (
    DIM,
    GATE_TRACE_ELEMENTS,
    amplitude_deviation,
    deviation_report,
    expected_final,
    ideal_cn_unitary,
    phase_deviation,
    summarize,
)
from spingate.model import SystemParams
from spingate.states import prepared_deviation, superposition_rdm

from conftest import EXPECTED_BLOCK_AFTER, INITIAL_BLOCK, PRINTED_ATOL, random_hermitian


def ideal_map_by_hand(rho):
    """Entry-by-entry statement of the gate action, written out independently
    of the unitary-conjugation implementation.

    Rows/columns 0 and 1 swap; coherences between {0,1} and the rest pick up
    a factor i on the bra side and -i on the ket side; everything with both
    indices >= 2 is untouched.
    """
    out = rho.copy()
    out[0, 0], out[1, 1] = rho[1, 1], rho[0, 0]
    out[0, 1], out[1, 0] = rho[1, 0], rho[0, 1]
    for j in range(2, DIM):
        out[0, j] = 1j * rho[1, j]
        out[1, j] = 1j * rho[0, j]
        out[j, 0] = -1j * rho[j, 1]
        out[j, 1] = -1j * rho[j, 0]
    return out


class TestIdealCnUnitary:
    def test_basis_action(self):
        g = ideal_cn_unitary()
        e = np.eye(DIM)
        assert np.array_equal(g @ e[0], 1j * e[1])
        assert np.array_equal(g @ e[1], 1j * e[0])
        assert np.array_equal(g @ e[5], e[5])

    def test_unitary(self):
        g = ideal_cn_unitary()
        assert np.max(np.abs(g @ g.conj().T - np.eye(DIM))) < 1e-14

    def test_square_is_phase_on_swapped_pair(self):
        g = ideal_cn_unitary()
        assert np.allclose(g @ g, np.diag([-1.0, -1.0] + [1.0] * 14), atol=1e-15)


class TestExpectedFinal:
    def test_matches_hand_rules(self, rng):
        for _ in range(10):
            rho = random_hermitian(rng, DIM)
            assert np.allclose(expected_final(rho), ideal_map_by_hand(rho), atol=1e-12)

    def test_reference_block(self):
        rho0 = prepared_deviation(superposition_rdm())
        out = expected_final(rho0)
        assert np.allclose(out[:4, :4], EXPECTED_BLOCK_AFTER, atol=PRINTED_ATOL)

    def test_ground_block(self):
        rho0 = np.zeros((DIM, DIM), dtype=complex)
        rho0[0, 0] = 1.0
        out = expected_final(rho0)
        assert out[1, 1] == 1.0 and out[0, 0] == 0.0

    def test_background_unchanged(self, rng):
        rho0 = prepared_deviation(random_hermitian(rng, 4))
        out = expected_final(rho0)
        assert np.array_equal(out[4:, 4:], rho0[4:, 4:])

    def test_unitary_invariants(self, rng):
        rho = random_hermitian(rng, DIM)
        out = expected_final(rho)
        assert np.isclose(np.trace(out), np.trace(rho), atol=1e-12)
        assert np.max(np.abs(out - out.conj().T)) < 1e-12
        assert np.allclose(np.linalg.eigvalsh(out), np.linalg.eigvalsh(rho), atol=1e-10)


class TestAmplitudeDeviation:
    def test_identical_inputs(self, rng):
        rho = random_hermitian(rng, DIM)
        assert not np.any(amplitude_deviation(rho, rho))

    def test_definition(self):
        a = np.array([[0.03]])
        b = np.array([[0.0]])
        assert amplitude_deviation(a, b)[0, 0] == 0.03

    def test_symmetric(self, rng):
        d = amplitude_deviation(random_hermitian(rng, DIM), random_hermitian(rng, DIM))
        assert np.allclose(d, d.T, atol=1e-15)
        assert np.all(d >= 0)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            amplitude_deviation(np.zeros((2, 2)), np.zeros((3, 3)))


class TestPhaseDeviation:
    def test_identical_inputs(self, rng):
        rho = random_hermitian(rng, DIM)
        d = phase_deviation(rho, rho, floor=1e-3)
        valid = ~np.isnan(d)
        assert valid.any()
        assert np.all(d[valid] == 0.0)

    def test_quarter_turn(self):
        a = np.array([[0.2 * np.exp(1j * (np.pi / 4 + np.pi / 2))]])
        b = np.array([[0.2 * np.exp(1j * np.pi / 4)]])
        assert np.isclose(phase_deviation(a, b, 1e-3)[0, 0], np.pi / 2)

    def test_branch_cut(self):
        # Arguments just on either side of pi are close, not 2 pi apart.
        a = np.array([[np.exp(1j * (np.pi - 0.01))]])
        b = np.array([[np.exp(1j * (-np.pi + 0.01))]])
        assert phase_deviation(a, b, 1e-3)[0, 0] < 0.03

    def test_floor_masks_small_entries(self):
        a = np.array([[1e-6 + 0j, 0.5], [0.5, 0.5]])
        d = phase_deviation(a, a, floor=1e-3)
        assert np.isnan(d[0, 0])
        assert d[1, 1] == 0.0

    def test_rejects_bad_floor(self):
        with pytest.raises(ValueError):
            phase_deviation(np.eye(2), np.eye(2), floor=0.0)


class TestSummarize:
    def test_gate_set_versus_full_maxima(self, canonical):
        amp = np.zeros((DIM, DIM))
        amp[12, 12] = 0.9  # background population, outside the headline set
        amp[2, 3] = 0.07
        amp[11, 7] = 0.02
        phase = np.full((DIM, DIM), np.nan)
        phase[1, 2] = 0.3
        phase[9, 9] = 2.0  # background, excluded from the headline maximum
        report = summarize(amp, phase, canonical, 31.4)
        assert report.max_amp == 0.07
        assert report.max_amp_any == 0.9
        assert report.max_phase == 0.3
        assert report.max_phase_any == 2.0

    def test_leakage_element_is_tracked(self, canonical):
        amp = np.zeros((DIM, DIM))
        amp[11, 7] = 0.05
        report = summarize(amp, np.full((DIM, DIM), np.nan), canonical, 31.4)
        assert report.max_amp == 0.05
        assert report.max_phase == 0.0  # all-masked phases yield zero

    def test_trace_set_contents(self):
        assert (0, 0) in GATE_TRACE_ELEMENTS
        assert (3, 3) in GATE_TRACE_ELEMENTS
        assert (11, 7) in GATE_TRACE_ELEMENTS
        assert (12, 12) not in GATE_TRACE_ELEMENTS


def test_deviation_report_on_perfect_gate(canonical):
    rho0 = prepared_deviation(superposition_rdm())
    final = expected_final(rho0)
    report = deviation_report(rho0, final, canonical, 31.4)
    assert report.max_amp_any == 0.0
    assert report.max_phase_any == 0.0
    assert report.tau == 31.4
    assert report.params is canonical
