"""Wedges in Minkowski space and their characteristic half-spaces, hyperplanes and families.

A wedge ``W[l1, l2, a]`` is the open set ``{x : x·l2 > a·l2, x·l1 < a·l1}`` for two
non-parallel future-directed lightlike vectors.  It is stored canonically: both
generators have time component 1 and unit spatial part, and ``a`` is the point of
the edge plane closest to the origin in the Euclidean sense.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import NotDisjoint, NotLightlike, NotNormalForm, ParallelGenerators
from .minkowski import (
    L1M,
    L1P,
    L2P,
    METRIC,
    four_vector,
    lightlike,
    mdot,
    unit_lightlike,
)

_QUADRANT_RAYS = (np.array([1.0, 1.0]), np.array([-1.0, 1.0]))


def _edge_point(l1: np.ndarray, l2: np.ndarray, p1: float, p2: float) -> np.ndarray:
    """Minimum-norm solution of x·l1 = p1, x·l2 = p2."""
    u0, u1, u2, u3 = float(l1[0]), -float(l1[1]), -float(l1[2]), -float(l1[3])
    v0, v1, v2, v3 = float(l2[0]), -float(l2[1]), -float(l2[2]), -float(l2[3])
    uu = u0 * u0 + u1 * u1 + u2 * u2 + u3 * u3
    vv = v0 * v0 + v1 * v1 + v2 * v2 + v3 * v3
    uv = u0 * v0 + u1 * v1 + u2 * v2 + u3 * v3
    det = uu * vv - uv * uv
    c1 = (vv * p1 - uv * p2) / det
    c2 = (uu * p2 - uv * p1) / det
    return np.array([c1 * u0 + c2 * v0, c1 * u1 + c2 * v1, c1 * u2 + c2 * v2, c1 * u3 + c2 * v3])


def _readonly(x: np.ndarray) -> np.ndarray:
    x = np.array(x, dtype=float)
    x.flags.writeable = False
    return x


@dataclass(frozen=True, eq=False)
class Wedge:
    """Canonical wedge ``W[l1, l2, a]``; build it with :func:`make_wedge`."""

    l1: np.ndarray
    l2: np.ndarray
    a: np.ndarray

    @property
    def p1(self) -> float:
        """Offset of the boundary hyperplane with normal ``l1``."""
        return mdot(self.a, self.l1)

    @property
    def p2(self) -> float:
        return mdot(self.a, self.l2)

    def contains(self, x, tol: Tolerances = DEFAULT_TOL) -> bool:
        return contains_point(self, x, tol)

    def translate(self, v) -> "Wedge":
        v = four_vector(v)
        return _from_offsets(self.l1, self.l2, self.p1 + mdot(v, self.l1), self.p2 + mdot(v, self.l2))

    def __add__(self, v) -> "Wedge":
        return self.translate(v)

    def __sub__(self, v) -> "Wedge":
        return self.translate(-four_vector(v))

    def deviation(self, other: "Wedge") -> float:
        """Largest absolute difference between canonical fields."""
        return float(
            max(
                np.max(np.abs(self.l1 - other.l1)),
                np.max(np.abs(self.l2 - other.l2)),
                np.max(np.abs(self.a - other.a)),
            )
        )

    def same_as(self, other: "Wedge", tol: float = DEFAULT_TOL.geom) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.a))), float(np.max(np.abs(other.a))))
        return (
            np.max(np.abs(self.l1 - other.l1)) <= tol
            and np.max(np.abs(self.l2 - other.l2)) <= tol
            and np.max(np.abs(self.a - other.a)) <= tol * scale
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Wedge):
            return NotImplemented
        return self.same_as(other)

    __hash__ = None  # equality is tolerance based

    def __repr__(self) -> str:
        def fmt(v):
            return "(" + ", ".join(f"{c:.6g}" for c in v) + ")"

        return f"Wedge(l1={fmt(self.l1)}, l2={fmt(self.l2)}, a={fmt(self.a)})"

    def to_json(self) -> dict:
        return {"l1": self.l1.tolist(), "l2": self.l2.tolist(), "a": self.a.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "Wedge":
        return make_wedge(data["l1"], data["l2"], data.get("a", [0.0, 0.0, 0.0, 0.0]))


def _from_offsets(l1: np.ndarray, l2: np.ndarray, p1: float, p2: float) -> Wedge:
    return Wedge(_readonly(l1), _readonly(l2), _readonly(_edge_point(l1, l2, p1, p2)))


def _check_not_parallel(l1: np.ndarray, l2: np.ndarray, tol: float) -> None:
    if np.max(np.abs(l1[1:] - l2[1:])) <= tol:
        raise ParallelGenerators(f"generators {l1.tolist()} and {l2.tolist()} are parallel")


def make_wedge(l1, l2, a=(0.0, 0.0, 0.0, 0.0), tol: Tolerances = DEFAULT_TOL) -> Wedge:
    """Build the canonical wedge ``W[l1, l2, a]``.

    Raises NotLightlike, PastDirected or ParallelGenerators for invalid generators.
    """
    n1 = lightlike(l1, tol.geom)
    n2 = lightlike(l2, tol.geom)
    _check_not_parallel(n1, n2, tol.geom)
    a = four_vector(a)
    return _from_offsets(n1, n2, mdot(a, n1), mdot(a, n2))


def wedge_from_vectors(l1: np.ndarray, l2: np.ndarray, a: np.ndarray) -> Wedge:
    """Canonical wedge from (approximately) lightlike vectors without validation.

    Used for images of valid wedges under group elements, where roundoff may push
    the generators slightly off the light cone.
    """
    n1 = unit_lightlike(l1)
    n2 = unit_lightlike(l2)
    return _from_offsets(n1, n2, mdot(a, n1), mdot(a, n2))


STANDARD_WEDGE = make_wedge(L1P, L1M)
"""The right wedge ``{x : x1 > |x0|}``."""


def contains_point(w: Wedge, x, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Strict membership test; boundary points are not members."""
    x = four_vector(x)
    return mdot(x, w.l2) > w.p2 + tol.strict and mdot(x, w.l1) < w.p1 - tol.strict


def causal_complement(w: Wedge) -> Wedge:
    """The causal complement ``W'``, obtained by swapping the generators."""
    return Wedge(w.l2, w.l1, w.a)


def same_generators(w1: Wedge, w2: Wedge, tol: float = DEFAULT_TOL.geom) -> bool:
    return bool(np.max(np.abs(w1.l1 - w2.l1)) <= tol and np.max(np.abs(w1.l2 - w2.l2)) <= tol)


def is_subset(w1: Wedge, w2: Wedge, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Decide ``W1 ⊂ W2``: same generators and nested half-space offsets."""
    if not same_generators(w1, w2, tol.geom):
        return False
    return w1.p2 >= w2.p2 - tol.geom and w1.p1 <= w2.p1 + tol.geom


def is_spacelike_separated(w1: Wedge, w2: Wedge, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Decide ``W1 ⊂ W2'``."""
    return is_subset(w1, causal_complement(w2), tol)


# --- characteristic half-spaces, hyperplanes and families -------------------------


@dataclass(frozen=True, eq=False)
class CharacteristicHyperplane:
    """``{x : x·l = p}`` for a lightlike normal ``l``."""

    l: np.ndarray
    p: float

    def contains(self, x, tol: float = DEFAULT_TOL.geom) -> bool:
        return abs(mdot(four_vector(x), self.l) - self.p) <= tol

    def same_as(self, other: "CharacteristicHyperplane", tol: float = DEFAULT_TOL.geom) -> bool:
        scale = max(1.0, abs(self.p), abs(other.p))
        return bool(np.max(np.abs(self.l - other.l)) <= tol and abs(self.p - other.p) <= tol * scale)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacteristicHyperplane):
            return NotImplemented
        return self.same_as(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"CharacteristicHyperplane(l={np.round(self.l, 9).tolist()}, p={self.p:.9g})"


def make_hyperplane(l, p: float, tol: Tolerances = DEFAULT_TOL) -> CharacteristicHyperplane:
    """Hyperplane ``H_p[l]``; ``l`` is rescaled to time component 1 and ``p`` with it."""
    v = four_vector(l)
    if v[0] == 0.0:
        raise NotLightlike(f"{v.tolist()} has zero time component")
    return CharacteristicHyperplane(_readonly(lightlike(v / v[0], tol.geom)), float(p) / v[0])


@dataclass(frozen=True, eq=False)
class CharacteristicHalfSpace:
    """``{x : sign·(x·l - p) > 0}``."""

    l: np.ndarray
    p: float
    sign: Literal[1, -1]

    def contains(self, x, tol: Tolerances = DEFAULT_TOL) -> bool:
        return self.sign * (mdot(four_vector(x), self.l) - self.p) > tol.strict

    @property
    def boundary(self) -> CharacteristicHyperplane:
        return CharacteristicHyperplane(self.l, self.p)


@dataclass(frozen=True, eq=False)
class CharacteristicFamily:
    """The chain ``{W + λ l : λ ∈ ℝ}``.

    ``direction="plus"`` translates along ``l2`` of the base (its union is the
    half-space ``H+``), ``"minus"`` along ``l1`` (union ``H-``).
    """

    base: Wedge
    direction: Literal["plus", "minus"]

    @property
    def generator(self) -> np.ndarray:
        return self.base.l2 if self.direction == "plus" else self.base.l1

    def member(self, lam: float) -> Wedge:
        return self.base.translate(lam * self.generator)

    @property
    def union(self) -> CharacteristicHalfSpace:
        if self.direction == "plus":
            return CharacteristicHalfSpace(self.base.l2, self.base.p2, 1)
        return CharacteristicHalfSpace(self.base.l1, self.base.p1, -1)


@dataclass(frozen=True)
class CharacteristicData:
    h_plus: CharacteristicHalfSpace
    h_minus: CharacteristicHalfSpace
    f_plus: CharacteristicFamily
    f_minus: CharacteristicFamily


def characteristic_data(w: Wedge) -> CharacteristicData:
    """Generating half-spaces ``H± `` and the two characteristic families of ``w``."""
    return CharacteristicData(
        h_plus=CharacteristicHalfSpace(w.l2, w.p2, 1),
        h_minus=CharacteristicHalfSpace(w.l1, w.p1, -1),
        f_plus=CharacteristicFamily(w, "plus"),
        f_minus=CharacteristicFamily(w, "minus"),
    )


def boundary_hyperplanes(w: Wedge) -> tuple[CharacteristicHyperplane, CharacteristicHyperplane]:
    """The hyperplanes bounding ``w``: normal ``l1`` first, then normal ``l2``."""
    return CharacteristicHyperplane(w.l1, w.p1), CharacteristicHyperplane(w.l2, w.p2)


# --- standard frames ------------------------------------------------------------


def standard_frame(w: Wedge) -> tuple[np.ndarray, np.ndarray]:
    """A restricted Poincaré element ``(Λ, a)`` with ``Λ W_R + a = w``.

    The Lorentz part sends the generators of ``W_R`` to positive multiples of the
    generators of ``w``; its last two columns are an orthonormal basis of the edge
    directions chosen greedily from the coordinate axes (e3 first, then e2).
    The result is deterministic and equals the identity for ``W_R``.
    """
    l1, l2 = w.l1, w.l2
    c = np.sqrt(2.0 / mdot(l1, l2))
    n0 = 0.5 * c * (l1 + l2)
    n1 = 0.5 * c * (l1 - l2)

    def project(v: np.ndarray, extra: np.ndarray | None) -> np.ndarray:
        out = v - mdot(v, n0) * n0 + mdot(v, n1) * n1
        if extra is not None:
            out = out + mdot(out, extra) * extra
        return out

    def pick(order: tuple[int, ...], extra: np.ndarray | None) -> np.ndarray:
        best, best_norm = None, -1.0
        for k in order:
            v = project(np.eye(4)[k], extra)
            norm = -mdot(v, v)
            if norm > best_norm + 1e-12:
                best, best_norm = v, norm
        return best / np.sqrt(best_norm)

    f3 = pick((3, 2, 1, 0), None)
    f2 = pick((2, 3, 1, 0), f3)
    m = np.column_stack([n0, n1, f2, f3])
    if np.linalg.det(m) < 0:
        m[:, 2] = -m[:, 2]
    return m, np.array(w.a, dtype=float)


def transform_wedge(lam: np.ndarray, shift: np.ndarray, w: Wedge, gamma: float = 1.0) -> Wedge:
    """Image of ``w`` under ``x ↦ γ Λ x + shift``.

    Time-reversing Λ maps future generators to past ones, which swaps their roles.
    """
    m1 = lam @ w.l1
    m2 = lam @ w.l2
    edge = gamma * (lam @ w.a) + shift
    if m1[0] > 0:
        return wedge_from_vectors(m1, m2, edge)
    return wedge_from_vectors(m2, m1, edge)


# --- projection onto the (x0, x1) plane and disjointness ------------------------------


@dataclass(frozen=True)
class HalfPlaneOrAll:
    """Either the whole plane or the open half-plane ``{y : n·(y - point) > 0}``."""

    is_all: bool
    normal: tuple[float, float] | None = None
    point: tuple[float, float] | None = None

    @property
    def offset(self) -> float | None:
        if self.is_all:
            return None
        return float(np.dot(self.normal, self.point))

    def contains(self, y) -> bool:
        if self.is_all:
            return True
        return float(np.dot(self.normal, np.asarray(y) - np.asarray(self.point))) > 0


ALL_PLANE = HalfPlaneOrAll(True)


def project_time_x1(w: Wedge, tol: Tolerances = DEFAULT_TOL) -> HalfPlaneOrAll:
    """Image of ``W[l2+, l, d]`` under ``(x0, x1, x2, x3) ↦ (x0, x1)``.

    With ``l = (1, a, b, c)`` this is the whole plane when ``b < 0`` or ``c ≠ 0``,
    and otherwise the half-plane through ``Pd`` with normal ``(1 - b, -a)``.
    """
    if np.max(np.abs(w.l1 - L2P)) > tol.geom:
        raise NotNormalForm(f"first generator {w.l1.tolist()} is not (1, 0, 1, 0)")
    _, a, b, c = w.l2
    if b < -tol.geom or abs(c) > tol.geom:
        return ALL_PLANE
    return HalfPlaneOrAll(False, (float(1 - b), float(-a)), (float(w.a[0]), float(w.a[1])))


@dataclass(frozen=True)
class PlaneShadow:
    """Projection of an arbitrary wedge onto the (x0, x1) plane.

    ``kind`` is ``"all"``, ``"half-plane"`` (``n·(y - point) > 0``) or one of the
    quadrant translates ``"quadrant+"`` (``point + Q``) and ``"quadrant-"``
    (``point - Q``) with ``Q = {y1 > |y0|}``.
    """

    kind: Literal["all", "half-plane", "quadrant+", "quadrant-"]
    normal: np.ndarray | None
    point: np.ndarray


def plane_shadow(w: Wedge, tol: Tolerances = DEFAULT_TOL) -> PlaneShadow:
    point = np.array(w.a[:2])
    constraints = np.vstack([METRIC @ w.l1, METRIC @ w.l2])
    _, _, vt = np.linalg.svd(constraints)
    edge = vt[2:]  # Euclidean orthonormal basis of the edge directions
    sing = np.linalg.svd(edge[:, :2], compute_uv=False)
    if sing[-1] > tol.geom:
        return PlaneShadow("all", None, point)
    if sing[0] <= tol.geom:
        kind = "quadrant+" if w.l1[1] > 0 else "quadrant-"
        return PlaneShadow(kind, None, point)
    u, _, _ = np.linalg.svd(edge[:, :2].T)
    e = u[:, 0]
    n = np.array([-e[1], e[0]])
    s1 = float(n @ w.l1[:2])
    s2 = float(-(n @ w.l2[:2]))
    if (s1 > tol.geom and s2 < -tol.geom) or (s1 < -tol.geom and s2 > tol.geom):
        return PlaneShadow("all", None, point)
    if s1 + s2 < 0:
        n = -n
    return PlaneShadow("half-plane", n, point)


def _shadow_against_quadrant(shadow: PlaneShadow, tol: float) -> tuple[bool, bool]:
    """(disjoint, maximal) for a shadow tested against ``Q = {y1 > |y0|}``."""
    if shadow.kind in ("all", "quadrant+"):
        return False, False
    p = shadow.point
    if shadow.kind == "quadrant-":
        return bool(p[1] <= abs(p[0]) + tol), False
    n = shadow.normal
    r1, r2 = (float(n @ r) for r in _QUADRANT_RAYS)
    height = float(n @ p)
    scale = max(1.0, float(np.max(np.abs(p))))
    disjoint = r1 <= tol and r2 <= tol and height >= -tol * scale
    maximal = disjoint and r1 < -tol and r2 < -tol and abs(height) <= tol * scale
    return disjoint, maximal


def _relative_to_first(w1: Wedge, w2: Wedge) -> Wedge:
    lam, shift = standard_frame(w1)
    inv = METRIC @ lam.T @ METRIC
    return transform_wedge(inv, -(inv @ shift), w2)


def are_disjoint(w1: Wedge, w2: Wedge, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Decide ``W1 ∩ W2 = ∅``.

    ``W1`` is moved to ``W_R`` by the inverse of its standard frame.  Since ``W_R``
    is a cylinder over the quadrant ``{x1 > |x0|}``, disjointness reduces to the
    projection of the moved ``W2`` onto the (x0, x1) plane missing that quadrant.
    """
    return _shadow_against_quadrant(plane_shadow(_relative_to_first(w1, w2), tol), tol.geom)[0]


def is_maximal_pair(w1: Wedge, w2: Wedge, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Decide whether two disjoint wedges form a maximal pair.

    After moving ``W1`` to ``W_R`` the pair is maximal exactly when the shadow of
    ``W2`` is a half-plane whose normal lies strictly inside the dual of the
    quadrant and whose boundary line passes through the origin.  Raises
    NotDisjoint when the wedges intersect.
    """
    disjoint, maximal = _shadow_against_quadrant(
        plane_shadow(_relative_to_first(w1, w2), tol), tol.geom
    )
    if not disjoint:
        raise NotDisjoint("maximality is only defined for disjoint wedges")
    return maximal


def normal_form_criterion(l, d=(0.0, 0.0, 0.0, 0.0), tol: Tolerances = DEFAULT_TOL) -> tuple[bool, bool]:
    """(disjoint, maximal) for ``W_R`` against ``W[l2+, l, d]`` straight from the half-plane rule.

    Disjoint iff ``c = 0``, ``0 ≤ b < 1``, ``a > 0`` and ``Pd·(1-b, -a) ≥ 0``;
    maximal iff moreover ``0 < a, b < 1`` and ``Pd·(1-b, -a) = 0``.
    """
    w = make_wedge(L2P, l, d, tol)
    _, a, b, c = w.l2
    if abs(c) > tol.geom or b < -tol.geom or a <= tol.geom:
        return False, False
    height = (1 - b) * w.a[0] - a * w.a[1]
    disjoint = height >= -tol.geom * max(1.0, float(np.max(np.abs(w.a))))
    maximal = disjoint and b > tol.geom and a < 1 - tol.geom and abs(height) <= tol.geom * max(
        1.0, float(np.max(np.abs(w.a)))
    )
    return bool(disjoint), bool(maximal)
