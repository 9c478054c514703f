"""Built-in algebra families with a cyclic separating vector (Hilbert dimension ≤ 9)."""

from __future__ import annotations

import numpy as np

from .modular import (
    AlgebraFamily,
    MatrixAlgebra,
    algebra_from_generators,
    diagonal_algebra,
    full_algebra,
    tensor_left,
    tensor_right,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def schmidt_vector(weights) -> np.ndarray:
    """``Σ √w_k e_k ⊗ e_k``."""
    w = np.asarray(weights, dtype=float)
    k = w.size
    out = np.zeros(k * k, dtype=complex)
    for i, wi in enumerate(w):
        out[i * k + i] = np.sqrt(wi)
    return out / np.linalg.norm(out)


def maximally_entangled(k: int = 2) -> np.ndarray:
    return schmidt_vector(np.full(k, 1.0 / k))


def tensor_split_family(k: int = 2, weights=None) -> AlgebraFamily:
    """``{M_k ⊗ 1, 1 ⊗ M_k}`` with a Schmidt state (maximally entangled by default)."""
    omega = maximally_entangled(k) if weights is None else schmidt_vector(weights)
    full = full_algebra(k)
    name = "tensor-split" if weights is None else "tensor-split-schmidt"
    return AlgebraFamily((tensor_left(full, k), tensor_right(k, full)), omega, f"{name}-{k}")


def diagonal_family(k: int = 2) -> AlgebraFamily:
    return AlgebraFamily((diagonal_algebra(k),), np.ones(k) / np.sqrt(k), f"diagonal-{k}")


def bloch_axis_algebra(angle: float) -> MatrixAlgebra:
    """The maximal abelian subalgebra ``span{1, n·σ}`` with ``n = (sin a, 0, cos a)``."""
    n_sigma = np.sin(angle) * PAULI_X + np.cos(angle) * PAULI_Z
    return algebra_from_generators(2, [n_sigma])


def bloch_triangle_family() -> AlgebraFamily:
    """Three maximal abelian subalgebras of ``M_2`` whose axes are 60° apart in the x–z plane.

    The state is the ``+1`` eigenvector of ``σ_y``.  Each modular conjugation acts on
    Bloch vectors as the reflection fixing ``y`` and its own axis, so it fixes its own
    algebra and swaps the other two: the permutations generate ``S_3``.
    """
    omega = np.array([1.0, 1.0j]) / np.sqrt(2.0)
    members = tuple(bloch_axis_algebra(a) for a in (0.0, np.pi / 3, 2 * np.pi / 3))
    return AlgebraFamily(members, omega, "bloch-triangle")


def mismatched_family() -> AlgebraFamily:
    """``{M_2 ⊗ 1, diag ⊗ 1}``: the conjugate of the second member matches no member."""
    omega = maximally_entangled(2)
    return AlgebraFamily((tensor_left(full_algebra(2), 2), tensor_left(diagonal_algebra(2), 2)), omega, "mismatched")


def builtin_families() -> list[AlgebraFamily]:
    """The catalog run by the Tomita suite; every member has a cyclic separating state."""
    return [
        tensor_split_family(2),
        tensor_split_family(2, (0.7, 0.3)),
        tensor_split_family(3, (0.5, 0.3, 0.2)),
        diagonal_family(2),
        diagonal_family(3),
        bloch_triangle_family(),
    ]
