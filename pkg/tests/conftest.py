import numpy as np
import pytest

from groverian import SystemShape, random_state


@pytest.fixture
def two_qubits():
    return SystemShape([2, 2])


@pytest.fixture
def three_qubits():
    return SystemShape([2, 2, 2])


def seeded_states(dims, count, base_seed):
    """Deterministic batch of Haar-random states for loop-style checks."""
    shape = SystemShape(dims)
    return [
        random_state(shape, np.random.SeedSequence((base_seed, i)))
        for i in range(count)
    ]
