"""The (extended) Poincaré group acting on points, wedges and characteristic hyperplanes.

Elements act as ``x ↦ γ Λ x + a``; restricted elements have ``γ = 1`` and
``Λ`` in the identity component.  The module also provides wedge reflections,
transport between wedges, factorisation of restricted elements into wedge
reflections, the standard boosts of a wedge and the group-level identities that
accompany them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np
from scipy.spatial.transform import Rotation

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    NotCharacteristicDirection,
    NotLorentz,
    NotRestricted,
    SingularOneMinusLambda,
    VerificationFailed,
)
from .minkowski import (
    IDENTITY4,
    L1M,
    L1P,
    METRIC,
    STANDARD_REFLECTION,
    four_vector,
    is_lorentz,
    lorentz_defect,
    lorentz_inverse,
    mdot,
    symmetric_sqrt,
    unit_lightlike,
)
from .wedges import (
    STANDARD_WEDGE,
    CharacteristicHalfSpace,
    CharacteristicHyperplane,
    Wedge,
    causal_complement,
    make_wedge,
    standard_frame,
    transform_wedge,
)


@dataclass(frozen=True, eq=False)
class PoincareElement:
    """``x ↦ γ Λ x + a``.  With ``gamma = 1`` this is an ordinary Poincaré element."""

    lam: np.ndarray
    a: np.ndarray
    gamma: float = 1.0

    def __post_init__(self):
        lam = np.array(self.lam, dtype=float)
        a = np.array(self.a, dtype=float).reshape(4)
        if lam.shape != (4, 4) or not np.all(np.isfinite(lam)) or not np.all(np.isfinite(a)):
            raise ValueError("element needs a finite 4x4 matrix and a finite 4-vector")
        if not self.gamma > 0:
            raise ValueError("dilation factor must be positive")
        lam.flags.writeable = False
        a.flags.writeable = False
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def linear(self) -> np.ndarray:
        return self.gamma * self.lam

    def __matmul__(self, other: "PoincareElement") -> "PoincareElement":
        return PoincareElement(
            self.lam @ other.lam,
            self.a + self.gamma * (self.lam @ other.a),
            self.gamma * other.gamma,
        )

    def inverse(self) -> "PoincareElement":
        inv = lorentz_inverse(self.lam)
        return PoincareElement(inv, -(inv @ self.a) / self.gamma, 1.0 / self.gamma)

    def deviation(self, other: "PoincareElement") -> float:
        return float(
            max(
                abs(self.gamma - other.gamma),
                np.max(np.abs(self.lam - other.lam)),
                np.max(np.abs(self.a - other.a)),
            )
        )

    def is_close(self, other: "PoincareElement", tol: float = 1e-9) -> bool:
        return self.deviation(other) <= tol

    def __repr__(self) -> str:
        return (
            f"PoincareElement(gamma={self.gamma:.9g}, lam={np.round(self.lam, 9).tolist()}, "
            f"a={np.round(self.a, 9).tolist()})"
        )

    def to_json(self) -> dict:
        return {"gamma": self.gamma, "lambda": self.lam.tolist(), "a": self.a.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "PoincareElement":
        return cls(np.asarray(data["lambda"], dtype=float), np.asarray(data["a"], dtype=float),
                   float(data.get("gamma", 1.0)))


IDENTITY = PoincareElement(IDENTITY4, np.zeros(4))


def translation(v) -> PoincareElement:
    return PoincareElement(IDENTITY4, four_vector(v))


def lorentz(m) -> PoincareElement:
    return PoincareElement(np.asarray(m, dtype=float), np.zeros(4))


def dilation(gamma: float) -> PoincareElement:
    return PoincareElement(IDENTITY4, np.zeros(4), gamma)


Target = Union[np.ndarray, Sequence[float], Wedge, CharacteristicHyperplane, CharacteristicHalfSpace]


def act(e: PoincareElement, target: Target):
    """Image of a point, wedge, characteristic hyperplane or half-space under ``e``."""
    if isinstance(target, Wedge):
        return transform_wedge(e.lam, e.a, target, e.gamma)
    if isinstance(target, (CharacteristicHyperplane, CharacteristicHalfSpace)):
        m = e.lam @ target.l
        p = (e.gamma * target.p + mdot(e.a, m)) / m[0]
        l = unit_lightlike(m)
        l.flags.writeable = False
        if isinstance(target, CharacteristicHyperplane):
            return CharacteristicHyperplane(l, p)
        sign = target.sign if m[0] > 0 else -target.sign
        return CharacteristicHalfSpace(l, p, sign)
    x = four_vector(target)
    return e.gamma * (e.lam @ x) + e.a


# --- components ---------------------------------------------------------------------


class ComponentLabel(str, Enum):
    PROPER_ORTHOCHRONOUS = "proper-orthochronous"
    IMPROPER_ORTHOCHRONOUS = "improper-orthochronous"
    PROPER_ANTICHRONOUS = "proper-antichronous"
    IMPROPER_ANTICHRONOUS = "improper-antichronous"


def classify_component(m, tol: Tolerances = DEFAULT_TOL) -> ComponentLabel:
    """Connected component of the Lorentz group containing ``m``."""
    m = np.asarray(m, dtype=float)
    if not is_lorentz(m, tol.group * max(1.0, float(np.max(np.abs(m))) ** 2)):
        raise NotLorentz("matrix does not preserve the metric")
    proper = np.linalg.det(m) > 0
    ortho = m[0, 0] > 0
    if proper:
        return ComponentLabel.PROPER_ORTHOCHRONOUS if ortho else ComponentLabel.PROPER_ANTICHRONOUS
    return ComponentLabel.IMPROPER_ORTHOCHRONOUS if ortho else ComponentLabel.IMPROPER_ANTICHRONOUS


def is_restricted(m, tol: Tolerances = DEFAULT_TOL) -> bool:
    try:
        return classify_component(m, tol) is ComponentLabel.PROPER_ORTHOCHRONOUS
    except NotLorentz:
        return False


def _require_restricted(m: np.ndarray, tol: Tolerances) -> None:
    if not is_restricted(m, tol):
        raise NotRestricted("expected an element of the restricted Lorentz group")


def boost_rotation_split(m, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Polar split ``Λ = B R`` with ``B = √(Λ Λᵀ)`` a pure boost and ``R = B⁻¹ Λ`` a rotation."""
    m = np.asarray(m, dtype=float)
    _require_restricted(m, tol)
    b = symmetric_sqrt(m @ m.T)
    r = np.linalg.solve(b, m)
    return b, r


# --- wedge frames, transport and reflections ----------------------------------------------


def wedge_frame(w: Wedge) -> PoincareElement:
    """The deterministic restricted element carrying ``W_R`` onto ``w``."""
    lam, a = standard_frame(w)
    return PoincareElement(lam, a)


def transport(w1: Wedge, w2: Wedge) -> PoincareElement:
    """A restricted element ``λ`` with ``act(λ, w1) = w2``."""
    return wedge_frame(w2) @ wedge_frame(w1).inverse()


def wedge_reflection(w: Wedge) -> PoincareElement:
    """The involution ``g_W``: conjugate of ``(diag(-1,-1,1,1), 0)`` by the frame of ``w``."""
    frame = wedge_frame(w)
    return frame @ PoincareElement(STANDARD_REFLECTION, np.zeros(4)) @ frame.inverse()


def coherent_origin_wedge(w: Wedge) -> Wedge:
    """The translate of ``w`` whose edge contains the origin."""
    return make_wedge(w.l1, w.l2)


# --- standard boosts and Borchers-type identities ----------------------------------------

TWO_PI = 2.0 * np.pi


def standard_boost_matrix(t: float, alpha: float = TWO_PI) -> np.ndarray:
    """Boost of ``W_R`` that scales ``l1+`` by ``e^{-αt}`` and ``l1-`` by ``e^{αt}``."""
    m = np.eye(4)
    ch, sh = np.cosh(alpha * t), np.sinh(alpha * t)
    m[0, 0] = m[1, 1] = ch
    m[0, 1] = m[1, 0] = -sh
    return m


def standard_boost(t: float, w: Wedge = STANDARD_WEDGE, alpha: float = TWO_PI) -> PoincareElement:
    """One-parameter boost group of ``w``, contracting its generator ``l1`` by ``e^{-αt}``."""
    base = PoincareElement(standard_boost_matrix(t, alpha), np.zeros(4))
    if w.same_as(STANDARD_WEDGE):
        return base
    frame = wedge_frame(w)
    return frame @ base @ frame.inverse()


def borchers_conjugate(t: float, l, w: Wedge = STANDARD_WEDGE, alpha: float = TWO_PI,
                       tol: float = 1e-9) -> PoincareElement:
    """``B(t) (1, l) B(t)⁻¹`` for the standard boost ``B`` of ``w``.

    ``l`` must be a generator direction of ``w``.  The result is checked against
    ``(1, e^{-αt} l)`` when ``w + l ⊂ w`` and ``(1, e^{αt} l)`` when ``w - l ⊂ w``.
    """
    v = four_vector(l)
    n = unit_lightlike(v)
    if np.max(np.abs(n - w.l1)) <= 1e-9:
        factor = np.exp(-alpha * t)
    elif np.max(np.abs(n - w.l2)) <= 1e-9:
        factor = np.exp(alpha * t)
    else:
        raise NotCharacteristicDirection(f"{v.tolist()} is not a generator direction of {w}")
    b = standard_boost(t, w, alpha)
    result = b @ translation(v) @ b.inverse()
    expected = translation(factor * v)
    dev = result.deviation(expected)
    if dev > tol * max(1.0, factor * float(np.max(np.abs(v)))):
        raise VerificationFailed(f"conjugation identity off by {dev:.3g}")
    return result


def solve_cocycle(m, a_of_m, max_condition: float = 1e12) -> np.ndarray:
    """Solve ``a(Λ) = (1 - Λ) a`` for ``a``."""
    m = np.asarray(m, dtype=float)
    k = IDENTITY4 - m
    if np.linalg.cond(k) > max_condition:
        raise SingularOneMinusLambda("1 - Λ is not invertible")
    return np.linalg.solve(k, four_vector(a_of_m))


# --- factorisation into wedge reflections ----------------------------------------------


def axis_wedge(direction) -> Wedge:
    """The origin-edge wedge ``{x : x·n̂ > |x0|}`` for a spatial direction ``n``."""
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    return make_wedge(np.concatenate(([1.0], n)), np.concatenate(([1.0], -n)))


def _perpendicular(n: np.ndarray) -> np.ndarray:
    k = int(np.argmin(np.abs(n)))
    e = np.cross(n, np.eye(3)[k])
    return e / np.linalg.norm(e)


def reflection_product(wedges: Sequence[Wedge]) -> PoincareElement:
    out = IDENTITY
    for w in wedges:
        out = out @ wedge_reflection(w)
    return out


def factor_into_wedge_reflections(e: PoincareElement, tol: Tolerances = DEFAULT_TOL,
                                  skip: float = 1e-12) -> list[Wedge]:
    """Wedges ``W1..W2k`` (k ≤ 4) with ``g_W1 ⋯ g_W2k = e``.

    ``e = (1, x)(B, 0)(R, 0)``; each factor is a product of two reflections:
    a translation by ``2z`` in the reflected plane of ``W`` is ``g_{W+z} g_W``,
    the boost ``B`` is ``g_{B^{1/2} W} g_W`` and the rotation ``R`` is
    ``g_{R^{1/2} W} g_W`` with ``W`` an axis wedge orthogonal to the boost
    direction or rotation axis.
    """
    if e.gamma != 1.0:
        raise NotRestricted("dilations are not products of wedge reflections")
    _require_restricted(e.lam, tol)
    out: list[Wedge] = []

    x = e.a
    if np.max(np.abs(x[:2])) > skip:
        w = STANDARD_WEDGE
        z = np.array([x[0], x[1], 0.0, 0.0]) / 2
        out += [w.translate(z), w]
    if np.max(np.abs(x[2:])) > skip:
        u = np.array([0.0, x[2], x[3]])
        w = axis_wedge(u)
        z = np.array([0.0, 0.0, x[2], x[3]]) / 2
        out += [w.translate(z), w]

    b, r = boost_rotation_split(e.lam, tol)
    shift = b[1:, 0]
    if np.linalg.norm(shift) > skip:
        n = shift / np.linalg.norm(shift)
        w = axis_wedge(_perpendicular(n))
        half = PoincareElement(symmetric_sqrt(b), np.zeros(4))
        out += [act(half, w), w]

    rotvec = Rotation.from_matrix(r[1:, 1:]).as_rotvec()
    if np.linalg.norm(rotvec) > skip:
        axis = rotvec / np.linalg.norm(rotvec)
        w = axis_wedge(_perpendicular(axis))
        half = np.eye(4)
        half[1:, 1:] = Rotation.from_rotvec(rotvec / 2).as_matrix()
        out += [act(lorentz(half), w), w]
    return out


# --- the paired net of coherent families ----------------------------------------------


def paired_partner(w: Wedge) -> Wedge:
    """``-N(W)``, the point reflection of the origin-edge translate of ``w``."""
    return act(lorentz(-IDENTITY4), coherent_origin_wedge(w))


@dataclass(frozen=True)
class PairedNetReport:
    reflection_consistent: bool
    reflection_samples: int
    flow_consistent: bool
    flow_deviation: float
    flowed_partner: Wedge
    partner_of_flowed: Wedge

    def to_json(self) -> dict:
        return {
            "reflection_consistent": self.reflection_consistent,
            "reflection_samples": self.reflection_samples,
            "flow_consistent": self.flow_consistent,
            "flow_deviation": self.flow_deviation,
            "flowed_partner": self.flowed_partner.to_json(),
            "partner_of_flowed": self.partner_of_flowed.to_json(),
        }


def paired_net_flow_check(w: Wedge, t: float, n_samples: int = 20, seed: int = 0,
                          tol: float = 1e-9) -> PairedNetReport:
    """Compare the pair bookkeeping ``(W, -N(W))`` with reflections and with the boost flow.

    Reflections: ``(g_{W0} W, g_{N(W0)} (-N(W)))`` must again be a pair
    ``(V, -N(V))``.  Flow: the second factor is moved by the opposite boost, so
    ``(λ_R(t) W, λ_R(-t)(-N(W)))`` is generally not of the form ``(V, -N(V))``.
    """
    from .sampling import random_wedge

    rng = np.random.default_rng(seed)
    consistent = True
    partner = paired_partner(w)
    for _ in range(n_samples):
        w0 = random_wedge(rng)
        first = act(wedge_reflection(w0), w)
        second = act(wedge_reflection(coherent_origin_wedge(w0)), partner)
        if not second.same_as(paired_partner(first), tol):
            consistent = False
    flowed = act(standard_boost(t), w)
    flowed_partner = act(standard_boost(-t), partner)
    expected = paired_partner(flowed)
    dev = flowed_partner.deviation(expected)
    return PairedNetReport(consistent, n_samples, dev <= tol, dev, flowed_partner, expected)


def group_law_deviation(s: float, t: float, w: Wedge = STANDARD_WEDGE) -> float:
    return (standard_boost(s, w) @ standard_boost(t, w)).deviation(standard_boost(s + t, w))


def invariance_inversion_deviation(m: np.ndarray) -> float:
    """``|R0 Λ R0⁻¹ - Λ⁻¹|`` for ``R0 = diag(1, -1, 1, -1)``."""
    from .minkowski import R0

    return float(np.max(np.abs(R0 @ m @ R0 - lorentz_inverse(m))))


__all__ = [
    "ComponentLabel",
    "IDENTITY",
    "PairedNetReport",
    "PoincareElement",
    "act",
    "axis_wedge",
    "boost_rotation_split",
    "borchers_conjugate",
    "causal_complement",
    "classify_component",
    "coherent_origin_wedge",
    "dilation",
    "factor_into_wedge_reflections",
    "group_law_deviation",
    "is_restricted",
    "lorentz",
    "lorentz_defect",
    "paired_net_flow_check",
    "paired_partner",
    "reflection_product",
    "solve_cocycle",
    "standard_boost",
    "standard_boost_matrix",
    "transport",
    "translation",
    "wedge_frame",
    "wedge_reflection",
]
