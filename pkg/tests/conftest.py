import numpy as np
import pytest

from qpc import QubitState, StateFamily, gram, random_family

SQ2 = 2**-0.5


@pytest.fixture
def octant_family():
    """States pointing along z, x, and y on the Bloch sphere."""
    return StateFamily(
        (
            QubitState(1.0, 0.0),
            QubitState(SQ2, SQ2),
            QubitState(SQ2, 1j * SQ2),
        )
    )


def family_with_support(rng: np.random.Generator, n: int, min_overlap: float = 1e-6):
    """Random family with every pairwise overlap modulus above min_overlap."""
    while True:
        fam = random_family(n, rng)
        g = gram(fam)
        off = np.abs(g.entries[~np.eye(n, dtype=bool)])
        if off.size == 0 or off.min() > min_overlap:
            return fam, g
