"""Modular objects of finite-dimensional matrix algebras and the involution groups they generate.

Conjugate-linear operators are stored as ``(U, parity)`` meaning ``ψ ↦ U conj(ψ)``
when ``parity`` is 1 and ``ψ ↦ U ψ`` when it is 0, with conjugation taken
entrywise in the standard basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import null_space, orth

from .errors import DimensionTooLarge, NotCyclicSeparating, RedundantFamily
from .permutations import Permutation, close_group, compose, cycle_notation, group_label, inverse_perm, orbits

MAX_DIM = 16
ALGEBRA_TOL = 1e-10
SPAN_MATCH = 1e-7
EIG_FLOOR = 1e-12


# --- algebras -----------------------------------------------------------------------------


def _vec(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=complex).reshape(-1)


@dataclass(frozen=True, eq=False)
class MatrixAlgebra:
    """A unital *-subalgebra of ``M_d`` with a Hilbert–Schmidt orthonormal basis."""

    dim: int
    basis: tuple[np.ndarray, ...]

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def span_matrix(self) -> np.ndarray:
        """Columns are the row-major vectorised basis elements."""
        return np.column_stack([_vec(b) for b in self.basis])

    def contains(self, x, tol: float = 1e-8) -> bool:
        v = _vec(x)
        q = self.span_matrix
        return float(np.linalg.norm(v - q @ (q.conj().T @ v))) <= tol * max(1.0, float(np.linalg.norm(v)))

    def closure_residual(self) -> float:
        """Largest distance of products and adjoints of basis elements from the span."""
        q = self.span_matrix
        worst = 0.0
        for a in self.basis:
            for cand in [a.conj().T] + [a @ b for b in self.basis]:
                v = _vec(cand)
                worst = max(worst, float(np.linalg.norm(v - q @ (q.conj().T @ v))))
        return worst

    def is_abelian(self, tol: float = 1e-8) -> bool:
        return all(np.max(np.abs(a @ b - b @ a)) <= tol for a in self.basis for b in self.basis)

    def to_json(self) -> dict:
        return {"dim": self.dim, "generators": [matrix_to_json(b) for b in self.basis]}


def algebra_from_span(dim: int, vectors: np.ndarray) -> MatrixAlgebra:
    """Algebra whose span is the column space of ``vectors`` (vectorised matrices)."""
    q = orth(vectors, rcond=ALGEBRA_TOL)
    return MatrixAlgebra(dim, tuple(q[:, k].reshape(dim, dim) for k in range(q.shape[1])))


def _commutant_of(dim: int, mats: Iterable[np.ndarray]) -> MatrixAlgebra:
    eye = np.eye(dim)
    blocks = [np.kron(b, eye) - np.kron(eye, b.T) for b in mats]
    if not blocks:
        blocks = [np.zeros((1, dim * dim))]
    ns = null_space(np.vstack(blocks), rcond=ALGEBRA_TOL)
    return MatrixAlgebra(dim, tuple(ns[:, k].reshape(dim, dim) for k in range(ns.shape[1])))


def algebra_from_generators(dim: int, gens: Sequence) -> MatrixAlgebra:
    """The unital *-algebra generated by ``gens``: the commutant of the commutant of ``gens ∪ gens*``."""
    if dim > MAX_DIM:
        raise DimensionTooLarge(f"dimension {dim} exceeds {MAX_DIM}")
    mats = [np.asarray(g, dtype=complex) for g in gens]
    for m in mats:
        if m.shape != (dim, dim):
            raise ValueError(f"generator of shape {m.shape} does not act on C^{dim}")
    mats = mats + [m.conj().T for m in mats]
    return commutant(_commutant_of(dim, mats))


def commutant(m: MatrixAlgebra) -> MatrixAlgebra:
    """All matrices commuting with every element of ``m``."""
    return _commutant_of(m.dim, m.basis)


def span_distance(a: MatrixAlgebra, b: MatrixAlgebra) -> float:
    """Sine of the largest principal angle between the spans; 1 if their dimensions differ."""
    if a.size != b.size or a.dim != b.dim:
        return 1.0
    qa, qb = a.span_matrix, b.span_matrix
    return float(np.linalg.norm(qb - qa @ (qa.conj().T @ qb), 2))


def full_algebra(dim: int) -> MatrixAlgebra:
    return MatrixAlgebra(dim, tuple(np.eye(dim * dim)[k].reshape(dim, dim).astype(complex) for k in range(dim * dim)))


def diagonal_algebra(dim: int) -> MatrixAlgebra:
    return MatrixAlgebra(dim, tuple(np.diag(np.eye(dim)[k]).astype(complex) for k in range(dim)))


def tensor_left(m: MatrixAlgebra, k: int) -> MatrixAlgebra:
    """``m ⊗ 1_k``."""
    return MatrixAlgebra(m.dim * k, tuple(np.kron(b, np.eye(k)) / np.sqrt(k) for b in m.basis))


def tensor_right(k: int, m: MatrixAlgebra) -> MatrixAlgebra:
    """``1_k ⊗ m``."""
    return MatrixAlgebra(m.dim * k, tuple(np.kron(np.eye(k), b) / np.sqrt(k) for b in m.basis))


# --- states and modular objects -------------------------------------------------------------


def state_vector(omega) -> np.ndarray:
    v = np.asarray(omega, dtype=complex).reshape(-1)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("state vector must be nonzero")
    if abs(n - 1) > 1e-12:
        v = v / n
    return v


def _rank(vectors: np.ndarray) -> int:
    return int(np.linalg.matrix_rank(vectors, tol=1e-9))


def is_cyclic(m: MatrixAlgebra, omega) -> bool:
    w = state_vector(omega)
    return _rank(np.column_stack([b @ w for b in m.basis])) == m.dim


def is_cyclic_separating(m: MatrixAlgebra, omega) -> bool:
    """Cyclic for ``m`` and for its commutant (the latter is separating for ``m``)."""
    return is_cyclic(m, omega) and is_cyclic(commutant(m), omega)


@dataclass(frozen=True, eq=False)
class AntiLinear:
    """``ψ ↦ U conj^parity(ψ)``."""

    u: np.ndarray
    parity: int = 1

    def apply(self, psi) -> np.ndarray:
        psi = np.asarray(psi, dtype=complex)
        return self.u @ (psi.conj() if self.parity else psi)

    def __matmul__(self, other: "AntiLinear") -> "AntiLinear":
        v = other.u.conj() if self.parity else other.u
        return AntiLinear(self.u @ v, self.parity ^ other.parity)

    def conjugate(self, x: np.ndarray) -> np.ndarray:
        """``A x A⁻¹`` as a linear matrix."""
        xx = x.conj() if self.parity else x
        return self.u @ xx @ np.linalg.inv(self.u)

    def distance(self, other: "AntiLinear") -> float:
        if self.parity != other.parity:
            return float("inf")
        return float(np.max(np.abs(self.u - other.u)))


def identity_operator(dim: int) -> AntiLinear:
    return AntiLinear(np.eye(dim, dtype=complex), 0)


@dataclass(frozen=True, eq=False)
class ModularObjects:
    delta: np.ndarray
    j: AntiLinear

    @property
    def u_j(self) -> np.ndarray:
        return self.j.u

    def delta_power(self, s: complex) -> np.ndarray:
        w, v = np.linalg.eigh(self.delta)
        w = np.maximum(w, EIG_FLOOR)
        return (v * w.astype(complex) ** s) @ v.conj().T

    def flow(self, t: float, x: np.ndarray) -> np.ndarray:
        """``Δ^{it} x Δ^{-it}``."""
        d = self.delta_power(1j * t)
        return d @ x @ d.conj().T


def modular_objects(m: MatrixAlgebra, omega) -> ModularObjects:
    """``S = J Δ^{1/2}`` from ``S(xΩ) = x*Ω``; ``Δ = S*S`` and ``J = S Δ^{-1/2}``."""
    w = state_vector(omega)
    if not is_cyclic_separating(m, w):
        raise NotCyclicSeparating("Ω is not cyclic and separating for the algebra")
    v = np.column_stack([b @ w for b in m.basis])
    vs = np.column_stack([b.conj().T @ w for b in m.basis])
    u_s = vs @ np.linalg.pinv(v.conj(), rcond=1e-12)
    delta = (u_s.conj().T @ u_s).conj()
    delta = 0.5 * (delta + delta.conj().T)
    ev, vecs = np.linalg.eigh(delta)
    inv_sqrt = (vecs * (1.0 / np.sqrt(np.maximum(ev, EIG_FLOOR)))) @ vecs.conj().T
    return ModularObjects(delta, AntiLinear(u_s @ inv_sqrt.conj(), 1))


def conjugate_algebra(op: AntiLinear, m: MatrixAlgebra) -> MatrixAlgebra:
    return algebra_from_span(m.dim, np.column_stack([_vec(op.conjugate(b)) for b in m.basis]))


@dataclass
class TomitaReport:
    j_fixes_omega: float
    delta_fixes_omega: float
    j_involution: float
    j_inverts_delta: float
    commutant_distance: float
    flow_distance: float

    @property
    def max_defect(self) -> float:
        return max(self.j_fixes_omega, self.delta_fixes_omega, self.j_involution, self.j_inverts_delta,
                   self.commutant_distance, self.flow_distance)

    def passed(self, tol: float = 1e-8) -> bool:
        return self.max_defect < tol

    def to_json(self) -> dict:
        return {
            "j_fixes_omega": self.j_fixes_omega,
            "delta_fixes_omega": self.delta_fixes_omega,
            "j_involution": self.j_involution,
            "j_inverts_delta": self.j_inverts_delta,
            "commutant_distance": self.commutant_distance,
            "flow_distance": self.flow_distance,
        }


def tomita_report(m: MatrixAlgebra, omega, times: Sequence[float] = (0.3, 1.7)) -> TomitaReport:
    """Defects of ``JΩ = Ω``, ``ΔΩ = Ω``, ``J² = 1``, ``JΔJ = Δ⁻¹``, ``JMJ = M'`` and flow invariance."""
    w = state_vector(omega)
    mo = modular_objects(m, w)
    j = mo.j
    dim = m.dim
    flow = 0.0
    for t in times:
        flowed = algebra_from_span(dim, np.column_stack([_vec(mo.flow(t, b)) for b in m.basis]))
        flow = max(flow, span_distance(flowed, m))
    return TomitaReport(
        j_fixes_omega=float(np.max(np.abs(j.apply(w) - w))),
        delta_fixes_omega=float(np.max(np.abs(mo.delta @ w - w))),
        j_involution=float(np.max(np.abs((j @ j).u - np.eye(dim)))),
        j_inverts_delta=float(np.max(np.abs(j.conjugate(mo.delta) - np.linalg.inv(mo.delta)))),
        commutant_distance=span_distance(conjugate_algebra(j, m), commutant(m)),
        flow_distance=flow,
    )


# --- families and CGMA permutations ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AlgebraFamily:
    members: tuple[MatrixAlgebra, ...]
    omega: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "omega", state_vector(self.omega))
        dims = {m.dim for m in self.members}
        if len(dims) > 1 or (dims and dims.pop() != self.omega.size):
            raise ValueError("members and state must act on the same space")
        for i in range(len(self.members)):
            for j in range(i):
                if span_distance(self.members[i], self.members[j]) <= ALGEBRA_TOL:
                    raise RedundantFamily(f"members {j} and {i} coincide")

    @property
    def dim(self) -> int:
        return int(self.omega.size)

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "omega": [[float(z.real), float(z.imag)] for z in self.omega],
            "members": [{"generators": [matrix_to_json(b) for b in m.basis]} for m in self.members],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraFamily":
        dim = int(data["dim"])
        omega = np.array([complex_from_json(z) for z in data["omega"]])
        members = [algebra_from_generators(dim, [matrix_from_json(g) for g in m["generators"]])
                   for m in data["members"]]
        return cls(tuple(members), omega, data.get("name", "custom"))


@dataclass
class CGMAResult:
    """Either the permutations ``τ_i`` or the first ``(i, j)`` whose image matches no member."""

    taus: list[Permutation] | None
    involutions: list[AntiLinear] = field(default_factory=list)
    violation: tuple[int, int] | None = None
    distances: list[float] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.taus is not None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "taus": None if self.taus is None else [list(t) for t in self.taus],
            "taus_cycles": None if self.taus is None else [cycle_notation(t) for t in self.taus],
            "violation": None if self.violation is None else list(self.violation),
            "distances": self.distances,
        }


def cgma_permutations(family: AlgebraFamily, tol: float = SPAN_MATCH) -> CGMAResult:
    """Match each ``J_i ℛ_j J_i`` with a family member; stop at the first mismatch."""
    taus, js = [], []
    for i, mi in enumerate(family.members):
        j = modular_objects(mi, family.omega).j
        js.append(j)
        images = []
        for k, mk in enumerate(family.members):
            image = conjugate_algebra(j, mk)
            dists = [span_distance(image, m) for m in family.members]
            best = int(np.argmin(dists))
            if dists[best] >= tol:
                return CGMAResult(None, js, (i, k), dists)
            images.append(best)
        taus.append(tuple(images))
    return CGMAResult(taus, js)


def operator_covariance_defect(result: CGMAResult) -> float:
    """Largest ``|J_i J_j J_i - J_{τ_i(j)}|`` over all index pairs."""
    js, taus = result.involutions, result.taus
    worst = 0.0
    for i, ji in enumerate(js):
        for k, jk in enumerate(js):
            worst = max(worst, (ji @ jk @ ji).distance(js[taus[i][k]]))
    return worst


# --- permutation groups -----------------------------------------------------------------------


@dataclass
class GroupReport:
    order: int
    label: str
    transitive: bool
    orbits: list[list[int]]
    involutive: bool
    covariant: bool | None
    stabilizer_commutation: bool | None
    fixed_points_match: bool | None
    transitive_fixed_consistent: bool | None
    fixed_points_atoms: bool | None
    order_reversal: bool | None

    @property
    def all_pass(self) -> bool:
        flags = (self.involutive, self.covariant, self.stabilizer_commutation, self.transitive_fixed_consistent,
                 self.fixed_points_match, self.fixed_points_atoms, self.order_reversal)
        return all(f for f in flags if f is not None)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "label": self.label,
            "transitive": self.transitive,
            "orbits": self.orbits,
            "involutive": self.involutive,
            "covariant": self.covariant,
            "stabilizer_commutation": self.stabilizer_commutation,
            "fixed_points_match": self.fixed_points_match,
            "transitive_fixed_consistent": self.transitive_fixed_consistent,
            "fixed_points_atoms": self.fixed_points_atoms,
            "order_reversal": self.order_reversal,
            "all_pass": self.all_pass,
        }


def _leq_closure(n: int, relations: Iterable[tuple[int, int]]) -> np.ndarray:
    leq = np.eye(n, dtype=bool)
    for a, b in relations:
        leq[a, b] = True
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    return leq


def group_and_properties(taus: Sequence[Permutation], maximal_abelian: Sequence[bool] | None = None,
                         order_relations: Iterable[tuple[int, int]] | None = None,
                         cap: int = 10**6) -> GroupReport:
    """Close ``{τ_i}`` and test the combinatorial consequences of the modular-action condition.

    When there is one permutation per point (``τ_i`` for index ``i``) the covariance,
    stabiliser and fixed-point checks run; for a bare generating set they are ``None``.
    ``maximal_abelian[i]`` (if given) is compared with ``τ_i(i) = i``;
    ``order_relations`` (pairs ``a ≤ b``) enables the atom and order-reversal checks.
    """
    taus = [tuple(t) for t in taus]
    if not taus:
        raise ValueError("at least one permutation is required")
    n = len(taus[0])
    if any(len(t) != n for t in taus):
        raise ValueError("permutations act on sets of different sizes")
    ident = tuple(range(n))
    group = close_group(taus, cap)
    orbs = orbits(taus, n)
    involutive = all(compose(t, t) == ident for t in taus)
    transitive = len(orbs) == 1
    indexed = len(taus) == n  # one τ_i per index i
    covariant = stab = fixed_match = atoms = reversal = None
    trans_consistent = None
    if indexed:
        covariant = all(compose(compose(g, taus[i]), inverse_perm(g)) == taus[g[i]] for g in group for i in range(n))
        stab = all(compose(g, taus[k]) == compose(taus[k], g) for g in group for k in range(n) if g[k] == k)
        fixed = [taus[i][i] == i for i in range(n)]
        if maximal_abelian is not None:
            fixed_match = all(f == bool(m) for f, m in zip(fixed, maximal_abelian))
        trans_consistent = (not transitive) or all(fixed) or not any(fixed)
        if order_relations is not None:
            leq = _leq_closure(n, order_relations)
            atoms = all(not fixed[i] or all(not leq[j, i] or j == i for j in range(n)) for i in range(n))
            reversal = True
            for i, j, k, l in product(range(n), repeat=4):
                if leq[i, j] and leq[j, k] and leq[k, l] and not leq[taus[l][k], taus[i][j]]:
                    reversal = False
    return GroupReport(len(group), group_label(group, n), transitive, orbs, involutive, covariant, stab,
                       fixed_match, trans_consistent, atoms, reversal)


# --- internal symmetries ----------------------------------------------------------------------


@dataclass
class KernelElement:
    word: tuple[int, ...]
    operator: AntiLinear
    internal: bool
    central: bool

    def to_json(self) -> dict:
        return {"word": list(self.word), "antiunitary": bool(self.operator.parity),
                "internal": self.internal, "central": self.central}


def internal_symmetry_kernel(family: AlgebraFamily, max_word_len: int = 2,
                             result: CGMAResult | None = None, tol: float = 1e-8,
                             even_only: bool = True) -> list[KernelElement]:
    """Distinct operators ``J_{i1}⋯J_{im}`` (m ≤ max_word_len, including the empty word) with trivial permutation.

    By default only even words (unitary operators) are listed; ``even_only=False``
    also admits antiunitary words such as ``J_i`` of a maximal abelian member.
    """
    result = result or cgma_permutations(family)
    if not result.ok:
        raise ValueError("the family does not satisfy the modular-action condition")
    js, taus = result.involutions, result.taus
    n = len(js)
    ident = tuple(range(n))
    found: list[KernelElement] = []
    for m in range(max_word_len + 1):
        if even_only and m % 2:
            continue
        for word in product(range(n), repeat=m):
            perm = ident
            for i in word:
                perm = compose(perm, taus[i])
            if perm != ident:
                continue
            op = identity_operator(family.dim)
            for i in word:
                op = op @ js[i]
            if any(op.distance(k.operator) <= tol for k in found):
                continue
            internal = all(span_distance(conjugate_algebra(op, mk), mk) < SPAN_MATCH for mk in family.members)
            central = all((op @ j).distance(j @ op) <= tol for j in js)
            found.append(KernelElement(word, op, internal, central))
    return found


# --- JSON helpers -----------------------------------------------------------------------------


def complex_from_json(z) -> complex:
    if isinstance(z, (list, tuple)):
        re, im = z
        return complex(re, im)
    return complex(z)


def matrix_from_json(m) -> np.ndarray:
    return np.array([[complex_from_json(z) for z in row] for row in m])


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]
