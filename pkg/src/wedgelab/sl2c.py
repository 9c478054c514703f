"""SL(2,C) as the double cover of the restricted Lorentz group, with reflection-induced automorphisms.

The covering map uses ``x̃ = x0 + x3 σ1 + x2 σ2 + x1 σ3`` (the usual spinor map with
the 1- and 3-axes exchanged), so diagonal matrices ``diag(λ, 1/λ)`` cover the boosts
along and rotations about the 1-axis, i.e. the stabiliser of ``W_R``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .minkowski import IDENTITY4, P3, P3T, TIME_REFLECTION, lorentz_inverse
from .poincare import ComponentLabel, classify_component

SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),  # coordinate 1
    np.array([[0, -1j], [1j, 0]], dtype=complex),  # coordinate 2
    np.array([[0, 1], [1, 0]], dtype=complex),  # coordinate 3
)
SPIN_REFLECTION = np.diag([1j, -1j])

Case = Literal["a", "b", "c", "d"]
CASE_REFLECTIONS: dict[str, np.ndarray] = {"a": IDENTITY4, "b": TIME_REFLECTION, "c": P3, "d": P3T}
CASE_BY_COMPONENT = {
    ComponentLabel.PROPER_ORTHOCHRONOUS: "a",
    ComponentLabel.IMPROPER_ANTICHRONOUS: "b",
    ComponentLabel.IMPROPER_ORTHOCHRONOUS: "c",
    ComponentLabel.PROPER_ANTICHRONOUS: "d",
}


def sl2c(m, tol: float = 1e-12) -> np.ndarray:
    """Validate a 2x2 complex matrix of unit determinant."""
    a = np.asarray(m, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if abs(np.linalg.det(a) - 1) > tol:
        raise ValueError(f"determinant {np.linalg.det(a):.3g} differs from 1")
    return a


def hermitian_of(x) -> np.ndarray:
    return sum(x[k] * SIGMA[k] for k in range(4))


def covering_map(a) -> np.ndarray:
    """ρ(A): the Lorentz matrix with ``(ρ(A) x)~ = A x̃ A*``."""
    a = np.asarray(a, dtype=complex)
    out = np.empty((4, 4))
    ah = a.conj().T
    for nu in range(4):
        image = a @ SIGMA[nu] @ ah
        for mu in range(4):
            out[mu, nu] = 0.5 * np.trace(SIGMA[mu] @ image).real
    return out


def reflection_action(kind: Literal["PT", "P3"], a) -> np.ndarray:
    """Automorphism of SL(2,C) induced by ``P``/``T`` (``A*⁻¹``) or by ``P3`` (``-R Ā R*``)."""
    a = np.asarray(a, dtype=complex)
    if kind == "PT":
        return np.linalg.inv(a.conj().T)
    if kind == "P3":
        r = SPIN_REFLECTION
        return -r @ a.conj() @ r.conj().T
    raise ValueError(f"unknown reflection kind {kind!r}")


def gamma_case_map(case: Case, lambda2: complex, b) -> np.ndarray:
    """The automorphism ``γ_A`` of each case applied to ``B = (α β; γ δ)``."""
    (al, be), (ga, de) = np.asarray(b, dtype=complex)
    l2 = complex(lambda2)
    if l2 == 0:
        raise ValueError("lambda2 must be nonzero")
    il2 = 1.0 / l2
    c = np.conj
    if case == "a":
        return np.array([[al, l2 * be], [il2 * ga, de]])
    if case == "b":
        return np.array([[c(de), -l2 * c(ga)], [-il2 * c(be), c(al)]])
    if case == "c":
        return np.array([[c(al), -l2 * c(be)], [-il2 * c(ga), c(de)]])
    if case == "d":
        return np.array([[de, l2 * ga], [il2 * be, al]])
    raise ValueError(f"unknown case {case!r}")


def diagonal_element(lambda2: complex) -> np.ndarray:
    lam = np.sqrt(complex(lambda2))
    return np.diag([lam, 1.0 / lam])


def case_lorentz_matrix(case: Case, lambda2: complex) -> np.ndarray:
    """``M(A) = ρ(diag(λ, 1/λ)) · S`` with ``S`` the reflection of the case."""
    return covering_map(diagonal_element(lambda2)) @ CASE_REFLECTIONS[case]


def lambda2_from_invariance(m: np.ndarray, tol: float = 1e-8) -> complex:
    """Recover ``λ²`` from an element ``m`` of ``ρ(𝒟)`` (boost along / rotation about the 1-axis)."""
    scale = m[0, 0] + m[0, 1]
    phase = complex(m[3, 3], -m[2, 3])
    l2 = scale * phase
    if np.max(np.abs(covering_map(diagonal_element(l2)) - m)) > tol * max(1.0, abs(scale)):
        raise ValueError("matrix is not in the stabiliser of the standard wedge")
    return l2


def split_case(m: np.ndarray) -> tuple[str, complex]:
    """Write ``m = ρ(D_λ) S`` and return the case label and ``λ²``."""
    case = CASE_BY_COMPONENT[classify_component(m)]
    return case, lambda2_from_invariance(m @ CASE_REFLECTIONS[case])


@dataclass(frozen=True)
class FunctionalEquationReport:
    max_deviation: float
    n_pairs: int
    worst_index: int | None

    def to_json(self) -> dict:
        return {"max_deviation": self.max_deviation, "n_pairs": self.n_pairs, "worst_index": self.worst_index}


def check_functional_equation(m: Callable[[np.ndarray], np.ndarray],
                              samples: Sequence[tuple[np.ndarray, np.ndarray]]) -> FunctionalEquationReport:
    """Largest deviation of ``M(A) M(B)`` from ``M(A γ_A(B))`` over the sampled pairs."""
    worst, worst_i = 0.0, None
    for i, (a, b) in enumerate(samples):
        ma = np.asarray(m(a), dtype=float)
        case, l2 = split_case(ma)
        rhs = np.asarray(m(a @ gamma_case_map(case, l2, b)), dtype=float)
        dev = float(np.max(np.abs(ma @ np.asarray(m(b)) - rhs)))
        if worst_i is None or dev > worst:
            worst, worst_i = dev, i
    return FunctionalEquationReport(worst, len(samples), worst_i)


def automorphism_deviation(case: Case, lambda2: complex, b) -> float:
    """``|ρ(γ_A(B)) - M ρ(B) M⁻¹|`` for the case matrix ``M``."""
    mm = case_lorentz_matrix(case, lambda2)
    lhs = covering_map(gamma_case_map(case, lambda2, b))
    rhs = mm @ covering_map(b) @ lorentz_inverse(mm)
    return float(np.max(np.abs(lhs - rhs)))


def to_json(a) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(a, dtype=complex).reshape(-1)]


def from_json(data) -> np.ndarray:
    return sl2c(np.array([complex(re, im) for re, im in data]).reshape(2, 2))
