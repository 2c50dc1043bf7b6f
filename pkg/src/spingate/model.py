"""Register Hamiltonians in the lab, rotating, and drive-interaction frames.

The model is a four-spin Ising chain in a static field plus a circularly
polarized transverse drive:

    H    = -sum_a [ w_a I^z_a + 2 sum_{b>a} J_ab I^z_a I^z_b ]
    V(t) = -(1/2) sum_a Rabi_a ( e^{+i w t} I^+_a + e^{-i w t} I^-_a )

Everything is expressed with hbar = 1; frequencies and energies share one
dimensionless angular-frequency unit (for typical NMR registers that unit is
2*pi MHz and times come out in microseconds).  Transforming to coordinates
rotating at the drive frequency ``w`` makes the generator time independent,

    H' = -sum_a [ (w_a - w) I^z_a + 2 sum_{b>a} J_ab I^z_a I^z_b ],
    V' = -sum_a Rabi_a I^x_a,

and a further transformation by ``exp(-i H' t)`` removes the remaining fast
diagonal phases, leaving d(rho)/dt = -i [V''(t), rho] with
``V''_jk = V'_jk exp(i (E'_j - E'_k) t)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import (
    DIM,
    N_SITES,
    SpinAxis,
    hermitian_exponential,
    require_hermitian,
    single_spin_operator,
)

FRAMES = ("lab", "rotating")


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of the register and drive.

    Attributes
    ----------
    omega : (4,) array
        Zeeman precession frequencies, strictly increasing.
    coupling : (4, 4) array
        Symmetric Ising constants ``J_ab`` with zero diagonal.
    rabi : (4,) array
        Nonnegative per-spin drive amplitudes.
    drive : float
        Angular frequency of the rotating transverse field.
    """

    omega: np.ndarray
    coupling: np.ndarray
    rabi: np.ndarray
    drive: float

    def __post_init__(self):
        object.__setattr__(self, "omega", _readonly(self.omega))
        object.__setattr__(self, "coupling", _readonly(self.coupling))
        object.__setattr__(self, "rabi", _readonly(self.rabi))
        object.__setattr__(self, "drive", float(self.drive))
        if self.omega.shape != (N_SITES,):
            raise ValueError(f"omega must have shape ({N_SITES},)")
        if np.any(np.diff(self.omega) <= 0):
            raise ValueError("omega must be strictly increasing")
        if self.coupling.shape != (N_SITES, N_SITES):
            raise ValueError(f"coupling must be {N_SITES}x{N_SITES}")
        if not np.allclose(self.coupling, self.coupling.T):
            raise ValueError("coupling must be symmetric")
        if np.any(np.diag(self.coupling) != 0.0):
            raise ValueError("coupling diagonal must be zero")
        if self.rabi.shape != (N_SITES,):
            raise ValueError(f"rabi must have shape ({N_SITES},)")
        if np.any(self.rabi < 0):
            raise ValueError("rabi amplitudes must be nonnegative")

    @classmethod
    def uniform(
        cls,
        spacing: float = 100.0,
        coupling: float = 10.0,
        rabi: float = 0.1,
        omega0: float = 0.0,
        drive: float | None = None,
    ) -> "SystemParams":
        """Equally spaced frequencies ``w_k = omega0 + spacing*k`` with one
        Ising constant and one Rabi amplitude for all spins.

        ``drive=None`` tunes the field to the 0<->1 transition of the fully
        polarized register, ``omega0 + 3*coupling``.
        """
        omega = omega0 + spacing * np.arange(N_SITES, dtype=float)
        jmat = np.full((N_SITES, N_SITES), float(coupling))
        np.fill_diagonal(jmat, 0.0)
        if drive is None:
            drive = omega0 + 3.0 * coupling
        return cls(omega=omega, coupling=jmat, rabi=np.full(N_SITES, float(rabi)), drive=drive)


def spin_projection(k: int, site: int) -> float:
    """``I^z`` eigenvalue of ``site`` in basis state ``k``: +1/2 for bit 0."""
    return 0.5 if (k >> site) & 1 == 0 else -0.5


def basis_energy(p: SystemParams, k: int, frame: str = "rotating") -> float:
    """Diagonal energy of basis state ``k`` in the lab or rotating frame.

    The lab value is the rotating value evaluated at zero drive frequency.
    """
    if not 0 <= k < DIM:
        raise ValueError(f"basis index must be in 0..{DIM - 1}, got {k}")
    if frame not in FRAMES:
        raise ValueError(f"frame must be one of {FRAMES}")
    shift = p.drive if frame == "rotating" else 0.0
    m = np.array([spin_projection(k, a) for a in range(N_SITES)])
    e = -np.dot(m, p.omega - shift)
    for a in range(N_SITES):
        for b in range(a + 1, N_SITES):
            e -= 2.0 * p.coupling[a, b] * m[a] * m[b]
    return float(e)


def static_hamiltonian(p: SystemParams) -> np.ndarray:
    """Lab-frame Zeeman + Ising Hamiltonian; diagonal in the product basis."""
    h = np.zeros((DIM, DIM), dtype=complex)
    iz = [single_spin_operator(SpinAxis.Z, a) for a in range(N_SITES)]
    for a in range(N_SITES):
        h -= p.omega[a] * iz[a]
        for b in range(a + 1, N_SITES):
            h -= 2.0 * p.coupling[a, b] * (iz[a] @ iz[b])
    return h


def drive_potential_lab(p: SystemParams, t: float) -> np.ndarray:
    """Transverse drive coupling at lab time ``t``; equals ``-sum Rabi_a I^x_a``
    at ``t = 0``."""
    v = np.zeros((DIM, DIM), dtype=complex)
    phase = np.exp(1j * p.drive * t)
    for a in range(N_SITES):
        if p.rabi[a] == 0.0:
            continue
        iplus = single_spin_operator(SpinAxis.PLUS, a)
        v -= 0.5 * p.rabi[a] * (phase * iplus + np.conj(phase) * iplus.conj().T)
    return v


def rotating_frame(p: SystemParams) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal energies and static drive term in the co-rotating frame.

    Returns
    -------
    energies : (16,) array
        Rotating-frame eigenvalues ``E'_k`` of the diagonal part.
    vprime : (16, 16) array
        ``-sum_a Rabi_a I^x_a``; couples only basis pairs that differ in
        exactly one bit, with entry ``-Rabi_a / 2``.
    """
    energies = np.array([basis_energy(p, k, "rotating") for k in range(DIM)])
    vprime = np.zeros((DIM, DIM), dtype=complex)
    for a in range(N_SITES):
        vprime -= p.rabi[a] * single_spin_operator(SpinAxis.X, a)
    return energies, vprime


def resonant_drive_frequency(p: SystemParams, source: int, target: int) -> float:
    """Lab-frame transition frequency ``(E_target - E_source)`` between two
    basis states."""
    if source == target:
        raise ValueError("source and target must differ")
    return basis_energy(p, target, "lab") - basis_energy(p, source, "lab")


def single_flip_transitions(p: SystemParams, site: int = 0) -> list[tuple[int, int, float]]:
    """All down-flip transitions of ``site``: (from, to, frequency) triples
    with the flipped bit going 0 -> 1."""
    table = []
    for k in range(DIM):
        if (k >> site) & 1 == 0:
            table.append((k, k | (1 << site), resonant_drive_frequency(p, k, k | (1 << site))))
    return table


def interaction_potential(energies: np.ndarray, vprime: np.ndarray, t: float) -> np.ndarray:
    """Drive term in the interaction frame of the diagonal rotating-frame part.

    Computed in closed form, ``V''_jk = V'_jk * exp(i (E'_j - E'_k) t)``;
    Hermitian for every ``t`` and entry-wise equal in modulus to ``vprime``.
    """
    phases = np.exp(1j * np.asarray(energies) * t)
    return (phases[:, None] * np.asarray(vprime)) * phases.conj()[None, :]


def frame_generator(p: SystemParams, t: float) -> np.ndarray:
    """Generator of the rotating-frame dynamics obtained from the lab frame.

    Conjugates ``H + V(t)`` by ``exp(i w t sum_a I^z_a)`` and adds the frame
    term ``w sum_a I^z_a`` contributed by the time derivative of the
    transformation; the result is time independent and equals
    ``diag(E') + V'``.
    """
    u = np.zeros((DIM, DIM), dtype=complex)
    for a in range(N_SITES):
        u += single_spin_operator(SpinAxis.Z, a)
    rot = hermitian_exponential(u, p.drive * t)
    lab = static_hamiltonian(p) + drive_potential_lab(p, t)
    gen = rot.conj().T @ lab @ rot + p.drive * u
    require_hermitian(gen, "frame generator")
    return gen
