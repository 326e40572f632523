from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


# dense 2x2 matrices used as the independent single-site oracle
I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.diag([1, -1]).astype(complex)
SINGLE = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}


def pauli_matrix(op) -> np.ndarray:
    """Dense matrix of a PauliOperator; site 0 = least significant bit."""
    m = np.array([[1.0 + 0j]])
    for j in range(op.n):  # site j contributes the j-th Kronecker factor
        m = np.kron(SINGLE[op.letter_at(j)], m)
    return (1j ** op.prefix_exponent) * m


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20230517)
