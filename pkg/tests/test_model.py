import numpy as np
import pytest

from spingate.model import (
    DIM,
    SystemParams,
    basis_energy,
    drive_potential_lab,
    frame_generator,
    interaction_potential,
    resonant_drive_frequency,
    rotating_frame,
    single_flip_transitions,
    static_hamiltonian,
)
from spingate.operators import SpinAxis, commutator, single_spin_operator


class TestSystemParams:
    def test_uniform_defaults(self, canonical):
        assert np.array_equal(canonical.omega, [0.0, 100.0, 200.0, 300.0])
        assert canonical.coupling[0, 1] == 10.0 and canonical.coupling[2, 2] == 0.0
        assert canonical.drive == 30.0  # auto-tuned to the 0<->1 resonance
        assert np.array_equal(canonical.rabi, [0.1] * 4)

    def test_immutable_arrays(self, canonical):
        with pytest.raises(ValueError):
            canonical.omega[0] = 5.0

    def test_validation(self):
        good = dict(
            omega=np.arange(4.0), coupling=np.zeros((4, 4)), rabi=np.ones(4), drive=1.0
        )
        SystemParams(**good)
        with pytest.raises(ValueError, match="increasing"):
            SystemParams(**{**good, "omega": np.array([0.0, 2.0, 1.0, 3.0])})
        asym = np.zeros((4, 4))
        asym[0, 1] = 1.0
        with pytest.raises(ValueError, match="symmetric"):
            SystemParams(**{**good, "coupling": asym})
        with pytest.raises(ValueError, match="diagonal"):
            SystemParams(**{**good, "coupling": np.eye(4)})
        with pytest.raises(ValueError, match="nonnegative"):
            SystemParams(**{**good, "rabi": np.array([1.0, -1.0, 1.0, 1.0])})


class TestStaticHamiltonian:
    def test_polarized_entry(self, canonical):
        # <0|H|0> = -(sum w_a)/2 - 3J for uniform couplings.
        h = static_hamiltonian(canonical)
        assert np.isclose(h[0, 0].real, -0.5 * (600.0 + 60.0))

    def test_no_coupling_entry(self):
        p = SystemParams.uniform(coupling=0.0, drive=0.0)
        h = static_hamiltonian(p)
        assert np.isclose(h[0, 0].real, -0.5 * p.omega.sum())

    def test_diagonal_and_energy_agreement(self, canonical):
        h = static_hamiltonian(canonical)
        assert np.allclose(h, np.diag(h.diagonal()))
        lab = [basis_energy(canonical, k, "lab") for k in range(DIM)]
        assert np.allclose(h.diagonal().real, lab, atol=1e-12)

    def test_commutes_with_every_iz(self, canonical):
        h = static_hamiltonian(canonical)
        for site in range(4):
            c = commutator(h, single_spin_operator(SpinAxis.Z, site))
            assert np.max(np.abs(c)) < 1e-12


class TestRotatingFrame:
    def test_resonant_degeneracy(self, canonical):
        energies, _ = rotating_frame(canonical)
        assert np.isclose(energies[0], -270.0, atol=1e-12)
        assert np.isclose(energies[1], -270.0, atol=1e-12)

    def test_energy_table_agreement(self, canonical):
        energies, _ = rotating_frame(canonical)
        expected = [basis_energy(canonical, k, "rotating") for k in range(DIM)]
        assert np.allclose(energies, expected, atol=1e-12)

    def test_vprime_selection_rule(self, canonical):
        _, vprime = rotating_frame(canonical)
        assert vprime[0, 1] == -0.05  # single bit flip: -Rabi/2
        assert vprime[0, 3] == 0.0  # two bits differ
        for j in range(DIM):
            for k in range(DIM):
                flips = bin(j ^ k).count("1")
                if flips == 1:
                    assert vprime[j, k] == -0.05
                else:
                    assert vprime[j, k] == 0.0

    def test_traceless(self, canonical):
        energies, _ = rotating_frame(canonical)
        assert abs(energies.sum()) < 1e-9


class TestBasisEnergy:
    def test_bounds(self, canonical):
        with pytest.raises(ValueError):
            basis_energy(canonical, 16)
        with pytest.raises(ValueError):
            basis_energy(canonical, 0, "galilean")

    def test_lab_is_zero_drive(self, canonical):
        undriven = SystemParams(
            omega=canonical.omega,
            coupling=canonical.coupling,
            rabi=canonical.rabi,
            drive=0.0,
        )
        for k in range(DIM):
            assert basis_energy(canonical, k, "lab") == basis_energy(undriven, k, "rotating")

    def test_global_flip_kills_zeeman_part(self):
        # E(k) + E(k with all bits flipped) keeps only the Ising part,
        # so it cannot depend on the Zeeman frequencies.
        pa = SystemParams.uniform(spacing=100.0, omega0=0.0)
        pb = SystemParams.uniform(spacing=55.0, omega0=7.0, drive=pa.drive)
        for k in range(DIM):
            sa = basis_energy(pa, k, "lab") + basis_energy(pa, k ^ 0b1111, "lab")
            sb = basis_energy(pb, k, "lab") + basis_energy(pb, k ^ 0b1111, "lab")
            assert np.isclose(sa, sb, atol=1e-12)


class TestTransitions:
    def test_main_resonance(self, canonical):
        assert np.isclose(resonant_drive_frequency(canonical, 0, 1), 30.0)
        shifted = SystemParams.uniform(omega0=7.0)
        assert np.isclose(resonant_drive_frequency(shifted, 0, 1), 37.0)

    def test_sideband(self, canonical):
        # Flipping spin 0 next to one flipped neighbor sits at w0 + J.
        assert np.isclose(resonant_drive_frequency(canonical, 0b0010, 0b0011), 10.0)

    def test_degenerate_without_coupling(self):
        p = SystemParams.uniform(spacing=30.0, coupling=0.0)
        freqs = [f for _, _, f in single_flip_transitions(p, site=0)]
        assert np.allclose(freqs, p.omega[0])

    def test_identical_indices(self, canonical):
        with pytest.raises(ValueError):
            resonant_drive_frequency(canonical, 3, 3)

    def test_spin0_table(self, canonical):
        # Among the eight spin-0 flips: one at w0+3J, three at w0+J.
        freqs = np.array([f for _, _, f in single_flip_transitions(canonical, site=0)])
        assert np.sum(np.isclose(freqs, 30.0)) == 1
        assert np.sum(np.isclose(freqs, 10.0)) == 3


class TestDrivePotential:
    def test_equals_vprime_at_t0(self, canonical):
        _, vprime = rotating_frame(canonical)
        assert np.allclose(drive_potential_lab(canonical, 0.0), vprime, atol=1e-14)

    def test_zero_amplitudes(self):
        p = SystemParams.uniform(rabi=0.0)
        assert not np.any(drive_potential_lab(p, 0.33))

    def test_norm_independent_of_time(self, canonical):
        norms = [np.linalg.norm(drive_potential_lab(canonical, t)) for t in np.linspace(0, 1, 9)]
        assert max(norms) - min(norms) < 1e-10

    def test_hermitian(self, canonical):
        v = drive_potential_lab(canonical, 0.123)
        assert np.max(np.abs(v - v.conj().T)) < 1e-12


class TestInteractionPotential:
    def test_reduces_to_vprime_at_t0(self, canonical):
        energies, vprime = rotating_frame(canonical)
        assert np.array_equal(interaction_potential(energies, vprime, 0.0), vprime)

    def test_resonant_entry_is_static(self, canonical):
        energies, vprime = rotating_frame(canonical)
        for t in (0.7, 5.0, 29.1):
            v = interaction_potential(energies, vprime, t)
            assert np.isclose(v[0, 1], -0.05, atol=1e-14)

    def test_modulus_and_hermiticity(self, canonical, rng):
        energies, vprime = rotating_frame(canonical)
        for t in rng.uniform(0.0, 31.4, size=5):
            v = interaction_potential(energies, vprime, t)
            assert np.max(np.abs(np.abs(v) - np.abs(vprime))) < 1e-12
            assert np.max(np.abs(v - v.conj().T)) < 1e-12


def test_frame_generator_matches_rotating_frame(canonical, rng):
    energies, vprime = rotating_frame(canonical)
    target = np.diag(energies).astype(complex) + vprime
    for t in rng.uniform(0.0, 31.4, size=4):
        assert np.max(np.abs(frame_generator(canonical, t) - target)) < 1e-10
