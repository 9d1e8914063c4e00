"""Coin matrices for coined discrete-time quantum walks.

Every function returns a unitary ``numpy`` array of dtype complex128.
A coin of dimension d acts on the d port amplitudes of one vertex before
each shift.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

__all__ = [
    "NonUnitaryError",
    "unitarity_defect",
    "hadamard",
    "grover",
    "pauli_x",
    "identity",
    "tensor",
    "permutation",
    "custom",
]

UNITARY_TOL = 1e-12


class NonUnitaryError(ValueError):
    """Raised when a matrix fails the unitarity check.

    The measured defect (max entry of ``|U†U - I|``) is stored on the
    ``defect`` attribute.
    """

    def __init__(self, defect: float, context: str = "matrix"):
        self.defect = defect
        super().__init__(f"{context} is not unitary (defect {defect:.3e})")


def unitarity_defect(matrix: np.ndarray) -> float:
    """Max-norm distance of ``U†U`` from the identity."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    d = m.shape[0]
    return float(np.max(np.abs(m.conj().T @ m - np.eye(d))))


def hadamard() -> np.ndarray:
    """2x2 Hadamard coin, (1/sqrt 2) [[1, 1], [1, -1]]."""
    return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)


def grover(d: int) -> np.ndarray:
    """d-dimensional Grover diffusion coin.

    Entries are 2/d off the diagonal and (2-d)/d on it.  For even d it
    maps equal amplitude on any d/2 ports entirely onto the other d/2.
    ``grover(2)`` equals ``pauli_x()``; ``grover(1)`` is the 1x1 identity.
    """
    if d < 1:
        raise ValueError(f"Grover coin needs dimension >= 1, got {d}")
    return (2.0 / d) * np.ones((d, d), dtype=np.complex128) - np.eye(d)


def pauli_x() -> np.ndarray:
    """2x2 swap, [[0, 1], [1, 0]]."""
    return np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)


def identity(d: int) -> np.ndarray:
    if d < 1:
        raise ValueError(f"identity coin needs dimension >= 1, got {d}")
    return np.eye(d, dtype=np.complex128)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two unitaries (e.g. pauli_x x hadamard)."""
    for name, m in (("left", a), ("right", b)):
        defect = unitarity_defect(m)
        if defect > UNITARY_TOL:
            raise NonUnitaryError(defect, f"{name} factor")
    return np.kron(
        np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)
    )


def permutation(perm: Sequence[int]) -> np.ndarray:
    """Permutation coin sending port i to port ``perm[i]``."""
    d = len(perm)
    seen = sorted(perm)
    if seen != list(range(d)):
        raise ValueError(f"{list(perm)!r} is not a permutation of 0..{d - 1}")
    m = np.zeros((d, d), dtype=np.complex128)
    for i, j in enumerate(perm):
        m[j, i] = 1.0
    return m


def custom(matrix: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    """Validate a user-supplied coin and return it as complex128.

    Raises :class:`NonUnitaryError` carrying the measured defect when the
    matrix is not unitary within ``tol``.
    """
    m = np.array(matrix, dtype=np.complex128, copy=True)
    defect = unitarity_defect(m)
    if defect > tol:
        raise NonUnitaryError(defect, "custom coin")
    return m
