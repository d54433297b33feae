from functools import reduce

import numpy as np
import pytest
from scipy.linalg import expm

from espwalk.cayley import ConnectionSet
from espwalk.extraspecial import ExtraspecialGroup, GroupElement, IsoType


X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Z2 = np.diag([1, -1]).astype(complex)
I2 = np.eye(2, dtype=complex)


def pauli_image(G: ExtraspecialGroup, g: GroupElement) -> np.ndarray:
    """Independent faithful representation by tensor products of Pauli matrices.

    Pair i uses Z^(v_2i) X^(v_2i-1); the minus type uses iZ, iX on the first pair.
    """
    factors = []
    for i in range(G.n):
        a = g.v >> (G.m - 1 - 2 * i) & 1
        b = g.v >> (G.m - 2 - 2 * i) & 1
        x, z = (1j * X2, 1j * Z2) if (i == 0 and G.iso_type is IsoType.MINUS) else (X2, Z2)
        factors.append(np.linalg.matrix_power(z, b) @ np.linalg.matrix_power(x, a))
    return (-1) ** g.eps * reduce(np.kron, factors)


def brute_adjacency(c: ConnectionSet, G: ExtraspecialGroup) -> np.ndarray:
    """A[a, b] = 1 iff a^-1 b is in S, built from G.mul/G.inv with plain loops."""
    els = G.elements()
    A = np.zeros((G.order, G.order))
    for a in els:
        ainv = G.inv(a)
        for b in els:
            if c.contains(G.mul(ainv, b)):
                A[a.index, b.index] = 1
    return A


def expm_walk(A: np.ndarray, t: float) -> np.ndarray:
    return expm(1j * t * A)


@pytest.fixture
def k4_minus_matching():
    # n=1, C={10,01,11}, z not in S
    return ConnectionSet.from_strings(["10", "01", "11"])


@pytest.fixture
def two_classes_with_z():
    return ConnectionSet.from_strings(["10", "01"], include_z=True)


@pytest.fixture
def two_classes():
    return ConnectionSet.from_strings(["10", "01"])
