import numpy as np
import pytest

from spingate import SystemParams


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


# Published reference values for the four-state logic block: before the pulse
# (four-component superposition with real positive coherences) and the ideal
# result after one pi pulse.  Entries are truncated to the printed precision,
# hence the 5e-4 comparison tolerance used where these appear.
INITIAL_BLOCK = np.array(
    [
        [0.3, 0.2449, 0.3162, 0.2236],
        [0.2449, 0.2, 0.2582, 0.1826],
        [0.3162, 0.2582, 0.333, 0.2357],
        [0.2236, 0.1826, 0.2357, 0.1666],
    ],
    dtype=complex,
)

EXPECTED_BLOCK_AFTER = np.array(
    [
        [0.2, 0.2449, 0.25819j, 0.1826j],
        [0.2449, 0.3, 0.3162j, 0.2236j],
        [-0.2582j, -0.3162j, 0.333, 0.2357],
        [-0.1826j, -0.2236j, 0.2357, 0.1666],
    ],
    dtype=complex,
)

PRINTED_ATOL = 5e-4


@pytest.fixture(scope="session")
def canonical():
    """Reference register: spacing 100, uniform Ising 10, Rabi 0.1, resonant drive."""
    return SystemParams.uniform()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
