import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def ket_projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())
