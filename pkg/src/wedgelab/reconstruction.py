"""Recovering the point transformation behind a bijection of wedges.

A wedge bijection that preserves inclusion and (closure-)disjointness maps
characteristic families to characteristic families, hence characteristic
hyperplanes to characteristic hyperplanes.  Intersecting the images of four
hyperplanes through a point pins down the image of that point; five points fix
an affine map, which must then be an element of the extended Poincaré group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    AmbiguousFamilyDirection,
    DegenerateNormals,
    NotBoundary,
    NotConformal,
    OracleDomainError,
    OracleInconsistent,
    ReconstructionError,
    VerificationFailed,
)
from .feasibility import intersection_feasibility
from .minkowski import (
    L1M,
    L1P,
    L2M,
    L2P,
    L3M,
    L3P,
    METRIC,
    TIME_REFLECTION,
    four_vector,
    lorentz_defect,
    rotation,
)
from .poincare import PoincareElement, act, axis_wedge, dilation as dilation_element, lorentz
from .sampling import random_wedge
from .wedges import (
    STANDARD_WEDGE,
    CharacteristicHyperplane,
    Wedge,
    are_disjoint,
    boundary_hyperplanes,
    causal_complement,
    is_subset,
    make_wedge,
)

FIT_THRESHOLD = 1e-6
MAX_CONDITION = 1e10


# --- oracles ------------------------------------------------------------------------


@dataclass(frozen=True)
class WedgeBijectionOracle:
    """A bijection of wedges given by both directions.

    ``domain`` lists the wedges a table oracle answers (and ``pairs`` the table
    itself); both are ``None`` for oracles defined on every wedge.
    """

    forward: Callable[[Wedge], Wedge]
    inverse: Callable[[Wedge], Wedge]
    domain: tuple[Wedge, ...] | None = None
    label: str = "custom"
    pairs: tuple[tuple[Wedge, Wedge], ...] | None = None

    def __call__(self, w: Wedge) -> Wedge:
        return self.forward(w)

    @classmethod
    def from_element(cls, e: PoincareElement) -> "WedgeBijectionOracle":
        inv = e.inverse()
        return cls(lambda w: act(e, w), lambda w: act(inv, w), label="element")

    @classmethod
    def identity(cls) -> "WedgeBijectionOracle":
        return cls(lambda w: w, lambda w: w, label="identity")

    @classmethod
    def dilation(cls, gamma: float) -> "WedgeBijectionOracle":
        return cls.from_element(dilation_element(gamma))

    @classmethod
    def table(cls, pairs: Sequence[tuple[Wedge, Wedge]]) -> "WedgeBijectionOracle":
        """Oracle answering only the listed wedges; other queries raise OracleDomainError."""
        pairs = tuple(pairs)

        def lookup(w: Wedge, column: int) -> Wedge:
            for pair in pairs:
                if pair[column].same_as(w):
                    return pair[1 - column]
            raise OracleDomainError(f"{w} is not in the table")

        return cls(lambda w: lookup(w, 0), lambda w: lookup(w, 1),
                   domain=tuple(p[0] for p in pairs), label="table", pairs=pairs)

    @classmethod
    def with_swap(cls, base: "WedgeBijectionOracle", w1: Wedge, w2: Wedge) -> "WedgeBijectionOracle":
        """``base`` with the images of ``w1`` and ``w2`` exchanged."""
        a, b = base.forward(w1), base.forward(w2)

        def forward(w: Wedge) -> Wedge:
            if w.same_as(w1):
                return b
            if w.same_as(w2):
                return a
            return base.forward(w)

        def inverse(w: Wedge) -> Wedge:
            if w.same_as(a):
                return w2
            if w.same_as(b):
                return w1
            return base.inverse(w)

        return cls(forward, inverse, base.domain, label=f"{base.label}+swap")

    @classmethod
    def from_json(cls, data: dict) -> "WedgeBijectionOracle":
        """Parse ``{"poincare": element}``, ``{"dilation": γ}`` or ``{"table": [[w, w], ...]}``."""
        if not isinstance(data, dict) or len(data) != 1:
            raise ValueError("oracle JSON must have exactly one of 'poincare', 'dilation', 'table'")
        (kind, value), = data.items()
        if kind == "poincare":
            return cls.from_element(PoincareElement.from_json(value))
        if kind == "dilation":
            return cls.dilation(float(value))
        if kind == "table":
            return cls.table([(Wedge.from_json(a), Wedge.from_json(b)) for a, b in value])
        raise ValueError(f"unknown oracle kind {kind!r}")


def _relative_gap(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


# --- conditions (A) and (B) -----------------------------------------------------------


@dataclass
class ConditionsReport:
    passed: bool
    condition_a: bool
    condition_b: bool
    disjointness_preserved: bool
    complement_preserved: bool
    pairs_checked: int
    witness: tuple[Wedge, Wedge] | None = None
    failure: str | None = None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "condition_a": self.condition_a,
            "condition_b": self.condition_b,
            "disjointness_preserved": self.disjointness_preserved,
            "complement_preserved": self.complement_preserved,
            "pairs_checked": self.pairs_checked,
            "witness": None if self.witness is None else [w.to_json() for w in self.witness],
            "failure": self.failure,
        }


def table_consistency(pairs: Sequence[tuple[Wedge, Wedge]]) -> ConditionsReport:
    """Check a finite table against inclusion, disjointness and complement preservation.

    Only relations between listed wedges are examined, so no query leaves the table.
    """
    checked = 0
    lookup = list(pairs)
    for (a, fa), (b, fb) in product(lookup, repeat=2):
        checked += 1
        if is_subset(a, b) != is_subset(fa, fb):
            return ConditionsReport(False, True, False, True, True, checked, (a, b),
                                    "inclusion is not preserved by the table")
        if are_disjoint(a, b) != are_disjoint(fa, fb):
            return ConditionsReport(False, False, True, False, True, checked, (a, b),
                                    "disjointness is not preserved by the table")
        if causal_complement(a).same_as(b) and not causal_complement(fa).same_as(fb):
            return ConditionsReport(False, True, True, True, False, checked, (a, b),
                                    "complements are not mapped to complements")
    return ConditionsReport(True, True, True, True, True, checked)


def _closure_disjoint_partner(w: Wedge, t: float) -> Wedge:
    """``W' + t l2`` (t > 0): its closure misses the closure of ``w``."""
    return causal_complement(w).translate(t * w.l2)


def _nested_partner(w: Wedge, s: float, t: float) -> Wedge:
    """``W + s l1 - t l2 ⊂ W`` for s, t ≥ 0."""
    return w.translate(s * w.l1 - t * w.l2)


def _sample_pairs(n_samples: int, rng: np.random.Generator):
    """Anchor pairs around ``W_R`` first, then random disjoint, nested and coherent pairs."""
    w = STANDARD_WEDGE
    anchors_b = [(w + L1P, w), (w, w + L1P), (w - L1M, w)]
    anchors_a = [(w, _closure_disjoint_partner(w, 1.0))]
    disjoint, nested, coherent, generic = list(anchors_a), list(anchors_b), [], []
    for _ in range(n_samples):
        base = random_wedge(rng)
        s, t = rng.uniform(0.0, 1.0, size=2)
        disjoint.append((base, _closure_disjoint_partner(base, rng.uniform(0.1, 1.0))))
        nested.append((_nested_partner(base, s, t), base))
        coherent.append((base.translate(rng.uniform(-1, 1, size=4)), base))
        generic.append((base, random_wedge(rng)))
    return disjoint, nested, coherent, generic


def verify_conditions_AB(tau: WedgeBijectionOracle, n_samples: int = 50, seed: int = 0,
                         tol: Tolerances = DEFAULT_TOL) -> ConditionsReport:
    """Spot-check conditions (A) and (B) and their consequences on sampled wedge pairs.

    (A): closure-disjoint pairs have disjoint images under ``tau`` and its inverse.
    (B): ``W1 ⊂ W2`` iff ``tau(W1) ⊂ tau(W2)``.  Also checked: disjointness is
    preserved in both directions and ``tau(W') = tau(W)'``.  Raises
    OracleInconsistent when ``inverse(forward(W)) ≠ W``.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = np.random.default_rng(seed)
    disjoint, nested, coherent, generic = _sample_pairs(n_samples, rng)
    f, g = tau.forward, tau.inverse
    checked = 0

    def round_trip(w: Wedge) -> None:
        back = g(f(w))
        if not back.same_as(w, 1e-7):
            raise OracleInconsistent(f"inverse(forward(W)) = {back} differs from W = {w}")

    def fail(cond: str, pair, **flags) -> ConditionsReport:
        state = dict(condition_a=True, condition_b=True, disjointness_preserved=True,
                     complement_preserved=True)
        state.update(flags)
        return ConditionsReport(False, pairs_checked=checked, witness=tuple(pair), failure=cond, **state)

    for pair in nested + coherent:
        for w in pair:
            round_trip(w)
        checked += 1
        before = is_subset(pair[0], pair[1], tol)
        if before != is_subset(f(pair[0]), f(pair[1]), tol):
            return fail("B", pair, condition_b=False)
        if before != is_subset(g(pair[0]), g(pair[1]), tol):
            return fail("B", pair, condition_b=False)
    for pair in disjoint:
        for w in pair:
            round_trip(w)
        checked += 1
        if not are_disjoint(f(pair[0]), f(pair[1]), tol) or not are_disjoint(g(pair[0]), g(pair[1]), tol):
            return fail("A", pair, condition_a=False)
    for pair in generic + disjoint:
        checked += 1
        before = are_disjoint(*pair, tol)
        if before != are_disjoint(f(pair[0]), f(pair[1]), tol) or before != are_disjoint(
            g(pair[0]), g(pair[1]), tol
        ):
            return fail("disjointness", pair, disjointness_preserved=False)
    for pair in generic:
        w = pair[0]
        if not f(causal_complement(w)).same_as(causal_complement(f(w)), 1e-7):
            return fail("complement", (w, causal_complement(w)), complement_preserved=False)
    return ConditionsReport(True, True, True, True, True, checked)


# --- hyperplane and point images ----------------------------------------------------------


def image_hyperplane(tau: WedgeBijectionOracle, h: CharacteristicHyperplane, via: Wedge,
                     tol: float = 1e-8) -> CharacteristicHyperplane:
    """Image of a boundary hyperplane ``h`` of ``via``.

    The family ``via + λ l`` sweeping ``h`` (``l`` = normal of ``h``) is mapped to a
    family of the image; the offset that stays fixed identifies the image hyperplane.
    """
    h1, h2 = boundary_hyperplanes(via)
    if h.same_as(h1, 1e-9):
        step = via.l1
    elif h.same_as(h2, 1e-9):
        step = via.l2
    else:
        raise NotBoundary(f"{h} does not bound {via}")
    w0 = tau.forward(via)
    w1 = tau.forward(via.translate(step))
    if np.max(np.abs(w0.l1 - w1.l1)) > tol or np.max(np.abs(w0.l2 - w1.l2)) > tol:
        raise AmbiguousFamilyDirection("images of a characteristic family are not coherent")
    fixed1 = _relative_gap(w0.p1, w1.p1, tol)
    fixed2 = _relative_gap(w0.p2, w1.p2, tol)
    if fixed1 and not fixed2:
        return CharacteristicHyperplane(w0.l1, w0.p1)
    if fixed2 and not fixed1:
        return CharacteristicHyperplane(w0.l2, w0.p2)
    raise AmbiguousFamilyDirection("edge displacement is not along a single generator")


PROBES = ((L1P, L1M), (L1M, L1P), (L2P, L2M), (L3P, L3M))
_FALLBACK_ROTATION = rotation((1.0, 2.0, 3.0), 0.7)


def _solve_probes(tau: WedgeBijectionOracle, x: np.ndarray, probes) -> tuple[np.ndarray, float]:
    rows, rhs = [], []
    for l, partner in probes:
        w = make_wedge(l, partner, x)
        image = image_hyperplane(tau, boundary_hyperplanes(w)[0], w)
        rows.append(METRIC @ image.l)
        rhs.append(image.p)
    m = np.array(rows)
    cond = float(np.linalg.cond(m))
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise DegenerateNormals(f"image normals have condition number {cond:.3g}")
    return np.linalg.solve(m, np.array(rhs)), cond


def point_map_with_condition(tau: WedgeBijectionOracle, x) -> tuple[np.ndarray, float]:
    x = four_vector(x)
    try:
        return _solve_probes(tau, x, PROBES)
    except DegenerateNormals:
        rotated = tuple((_FALLBACK_ROTATION @ l, _FALLBACK_ROTATION @ p) for l, p in PROBES)
        return _solve_probes(tau, x, rotated)


def point_map(tau: WedgeBijectionOracle, x) -> np.ndarray:
    """The image point: the common point of the images of four characteristic hyperplanes through ``x``."""
    return point_map_with_condition(tau, x)[0]


# --- affine reconstruction ----------------------------------------------------------------


@dataclass
class ReconstructionReport:
    element: PoincareElement
    fit_residual: float
    samples_checked: int
    condition_estimate: float
    involutive: bool = False

    def to_json(self) -> dict:
        return {
            "element": self.element.to_json(),
            "fit_residual": float(self.fit_residual),
            "samples_checked": int(self.samples_checked),
            "condition_estimate": float(self.condition_estimate),
            "involutive": bool(self.involutive),
        }


@lru_cache(maxsize=32)
def verification_wedges(n: int, seed: int) -> tuple[Wedge, ...]:
    """Seeded sample of wedges used to check a reconstructed element (wedges are immutable)."""
    rng = np.random.default_rng(seed)
    return tuple(random_wedge(rng) for _ in range(n))


def _wedge_residual(a: Wedge, b: Wedge) -> float:
    return a.deviation(b) / max(1.0, float(np.max(np.abs(a.a))), float(np.max(np.abs(b.a))))


def reconstruct(tau: WedgeBijectionOracle, n_verify: int = 50, seed: int = 0,
                threshold: float = FIT_THRESHOLD) -> ReconstructionReport:
    """Recover ``δ = (γ, Λ, a)`` with ``tau(W) = δ W`` and verify it on sampled wedges."""
    frame = [np.zeros(4)] + [np.eye(4)[k] for k in range(4)]
    try:
        images, conds = zip(*(point_map_with_condition(tau, x) for x in frame))
    except (OracleDomainError, AmbiguousFamilyDirection, DegenerateNormals) as exc:
        raise VerificationFailed(f"oracle is not induced by a point map: {exc}") from exc
    c = images[0]
    a = np.column_stack([y - c for y in images[1:]])
    metric_image = a.T @ METRIC @ a
    gamma = float(np.sqrt(abs(metric_image[0, 0])))
    if gamma == 0.0 or np.max(np.abs(metric_image / gamma**2 - METRIC)) > 1e-6:
        raise NotConformal("recovered linear part is not a multiple of a Lorentz matrix")
    lam = a / gamma
    if lorentz_defect(lam) > 1e-6:
        raise NotConformal("recovered linear part is not a multiple of a Lorentz matrix")
    element = PoincareElement(lam, c, gamma)

    if tau.domain is not None:
        samples = list(tau.domain)
    else:
        samples = list(verification_wedges(n_verify, seed))
    residual = 0.0
    involutive = True
    try:
        for w in samples:
            image = tau.forward(w)
            residual = max(residual, _wedge_residual(act(element, w), image))
            if involutive:
                try:
                    involutive = tau.forward(image).same_as(w, 1e-7)
                except OracleDomainError:
                    involutive = False
    except ReconstructionError as exc:
        raise VerificationFailed(f"oracle failed during verification: {exc}") from exc
    if residual > threshold:
        raise VerificationFailed(f"fit residual {residual:.3g} exceeds {threshold:g}")
    if involutive and samples and abs(gamma - 1.0) > threshold:
        raise VerificationFailed(f"involutive oracle reconstructed with dilation {gamma:.9g}")
    return ReconstructionReport(element, residual, len(samples), float(max(conds)), involutive and bool(samples))


# --- the partial-wedge counterexample ---------------------------------------------------

CENTER = (-5.0, 0.0, 0.0, 0.0)


def counterexample_normals() -> list[np.ndarray]:
    angles = (0.0, 2 * np.pi / 3, 4 * np.pi / 3)
    normals = [np.array([np.cos(a), np.sin(a), 0.0]) for a in angles]
    return normals + [np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, -1.0])]


def counterexample_wedges(epsilon: float = 0.1, center=CENTER, count: int = 5) -> list[Wedge]:
    """Axis wedges ``{(x - b + εn)·n > |x0 - b0|}``; all contain ``b`` when ``ε > 0``."""
    b = four_vector(center)
    out = []
    for n in counterexample_normals()[:count]:
        shift = b - epsilon * np.concatenate(([0.0], n))
        out.append(axis_wedge(n).translate(shift))
    return out


def _cone_complement_rows() -> list[tuple[np.ndarray, float]]:
    """Half-spaces ``x0 < s·x`` for the eight sign patterns ``s``; together they cover the complement of ``{x0 ≥ Σ|xi|}``."""
    rows = []
    for signs in product((1.0, -1.0), repeat=3):
        rows.append((np.array([-1.0, *signs]), 0.0))
    return rows


def _outside_forward_cone_rows() -> list[tuple[np.ndarray, float]]:
    """Half-spaces ``x0 < 0`` and ``x0 < ±xk``, each inside the complement of the closed forward cone."""
    rows = [(np.array([-1.0, 0.0, 0.0, 0.0]), 0.0)]
    for k in range(1, 4):
        for s in (1.0, -1.0):
            r = np.zeros(4)
            r[0], r[k] = -1.0, s
            rows.append((r, 0.0))
    return rows


def _nonempty_outside_forward_cone(*wedges: Wedge) -> bool:
    return any(intersection_feasibility(*wedges, extra=(r, b)).feasible for r, b in _outside_forward_cone_rows())


def _image_in_forward_cone(wedges: Sequence[Wedge]) -> tuple[bool, list[float]]:
    slacks = [intersection_feasibility(*wedges, extra=(r, b)).slack for r, b in _cone_complement_rows()]
    return all(s <= 1e-8 for s in slacks), slacks


@dataclass
class CounterexampleReport:
    valid_parameters: bool
    epsilon: float
    wedge_count: int
    wedges: list[Wedge] = field(default_factory=list)
    triple_nonempty: bool | None = None
    witness: np.ndarray | None = None
    witness_margin: float | None = None
    witness_outside_forward_cone: bool | None = None
    image_empty: bool | None = None
    image_certificate: list[float] = field(default_factory=list)
    pair_equivalence: bool | None = None
    pairs_checked: int = 0
    reason: str | None = None

    @property
    def counterexample(self) -> bool:
        return bool(self.valid_parameters and self.triple_nonempty and self.image_empty)

    def to_json(self) -> dict:
        return {
            "valid_parameters": self.valid_parameters,
            "epsilon": self.epsilon,
            "wedge_count": self.wedge_count,
            "wedges": [w.to_json() for w in self.wedges],
            "triple_nonempty": self.triple_nonempty,
            "witness": None if self.witness is None else [float(v) for v in self.witness],
            "witness_margin": self.witness_margin,
            "witness_outside_forward_cone": self.witness_outside_forward_cone,
            "image_empty": self.image_empty,
            "image_certificate": self.image_certificate,
            "pair_equivalence": self.pair_equivalence,
            "pairs_checked": self.pairs_checked,
            "counterexample": self.counterexample,
            "reason": self.reason,
        }


def counterexample_partial_wedges(epsilon: float = 0.1, center=CENTER, count: int = 5,
                                  n_random_pairs: int = 20, seed: int = 0) -> CounterexampleReport:
    """Certify that removing the closed forward cone from every wedge breaks point-map induction.

    The map ``W₊ ↦ (TW)₊`` (``W₊ = W`` minus the closed forward cone, ``T`` time
    reflection) keeps emptiness of pairwise intersections, yet the ``count`` wedges
    built here have a nonempty common part below the origin while the common part of
    their time-reflected images lies inside the forward cone and is removed.
    """
    if count < 2 or count > 5:
        raise ValueError("count must be between 2 and 5")
    wedges = counterexample_wedges(epsilon, center, count) if epsilon > 0 else []
    common = intersection_feasibility(*wedges) if wedges else None
    if epsilon <= 0 or not common.feasible:
        return CounterexampleReport(False, float(epsilon), count, wedges,
                                    reason="the centre lies on every boundary; the common intersection is empty")
    t_op = lorentz(TIME_REFLECTION)
    images = [act(t_op, w) for w in wedges]
    witness = common.point
    outside = bool(witness[0] < np.linalg.norm(witness[1:]))
    image_empty, slacks = _image_in_forward_cone(images)

    pairs = list(combinations(wedges, 2)) + list(combinations(images, 2))
    rng = np.random.default_rng(seed)
    pairs += [(random_wedge(rng), random_wedge(rng)) for _ in range(n_random_pairs)]
    equivalence = True
    for w1, w2 in pairs:
        meets = intersection_feasibility(w1, w2).feasible
        if meets != _nonempty_outside_forward_cone(w1, w2):
            equivalence = False
    return CounterexampleReport(
        valid_parameters=True,
        epsilon=float(epsilon),
        wedge_count=count,
        wedges=wedges,
        triple_nonempty=(count >= 3) and outside,
        witness=witness,
        witness_margin=common.slack,
        witness_outside_forward_cone=outside,
        image_empty=image_empty if count >= 3 else None,
        image_certificate=slacks,
        pair_equivalence=equivalence,
        pairs_checked=len(pairs),
    )
