"""Wedges of three-dimensional de Sitter space and reconstruction of Lorentz maps from wedge bijections.

dS³ is the hyperboloid ``x·x = -1``.  Its wedges are origin-edge wedges of the
ambient Minkowski space intersected with dS³.  Every point of such an ambient
wedge is spacelike, so the wedge is a cone over its dS³ part and questions of
intersection reduce to the ambient wedges.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    DegenerateNormals,
    NotLorentz,
    ParallelGenerators,
    SignUndetermined,
    VerificationFailed,
    OracleDomainError,
)
from .minkowski import L2M, L2P, METRIC, four_vector, lightlike, lorentz_defect, lorentz_inverse, mdot, unit_lightlike
from .poincare import wedge_reflection
from .reconstruction import WedgeBijectionOracle
from .sampling import random_lightlike
from .wedges import Wedge, are_disjoint, contains_point, make_wedge, standard_frame

POINT_TOL = 1e-9


def ds_point(x, tol: float = POINT_TOL) -> np.ndarray:
    """Validate a point of dS³."""
    v = four_vector(x)
    if abs(mdot(v, v) + 1.0) > tol * max(1.0, float(v @ v)):
        raise ValueError(f"{v.tolist()} is not on the hyperboloid x·x = -1")
    return v


def normalize_to_hyperboloid(y: np.ndarray) -> np.ndarray:
    n = -mdot(y, y)
    if n <= 0:
        raise ValueError("only spacelike vectors can be normalised onto dS³")
    return y / np.sqrt(n)


@dataclass(frozen=True, eq=False)
class DSWedge:
    """``W[l1, l2] = W̃[l1, l2, 0] ∩ dS³``."""

    l1: np.ndarray
    l2: np.ndarray

    def __post_init__(self):
        # validates lightlike, future-directed, non-parallel generators and normalizes them
        w = make_wedge(self.l1, self.l2)
        object.__setattr__(self, "l1", w.l1)
        object.__setattr__(self, "l2", w.l2)

    @classmethod
    def make(cls, l1, l2, tol: Tolerances = DEFAULT_TOL) -> "DSWedge":
        w = make_wedge(l1, l2, tol=tol)
        return cls(w.l1, w.l2)

    @classmethod
    def from_ambient(cls, w: Wedge) -> "DSWedge":
        return cls(w.l1, w.l2)

    @property
    def ambient(self) -> Wedge:
        return Wedge(self.l1, self.l2, np.zeros(4))

    def contains(self, x) -> bool:
        return contains_point(self.ambient, x)

    def complement(self) -> "DSWedge":
        return DSWedge(self.l2, self.l1)

    def same_as(self, other: "DSWedge", tol: float = DEFAULT_TOL.geom) -> bool:
        return bool(np.max(np.abs(self.l1 - other.l1)) <= tol and np.max(np.abs(self.l2 - other.l2)) <= tol)

    def deviation(self, other: "DSWedge") -> float:
        return float(max(np.max(np.abs(self.l1 - other.l1)), np.max(np.abs(self.l2 - other.l2))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DSWedge):
            return NotImplemented
        return self.same_as(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"DSWedge(l1={np.round(self.l1, 9).tolist()}, l2={np.round(self.l2, 9).tolist()})"

    def to_json(self) -> dict:
        return {"l1": self.l1.tolist(), "l2": self.l2.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "DSWedge":
        return cls.make(data["l1"], data["l2"])


def lorentz_image(m: np.ndarray, w: DSWedge) -> DSWedge:
    """Image of ``w`` under a Lorentz matrix; antichronous maps swap generator roles."""
    m1, m2 = m @ w.l1, m @ w.l2
    if m1[0] > 0:
        return DSWedge(unit_lightlike(m1), unit_lightlike(m2))
    return DSWedge(unit_lightlike(m2), unit_lightlike(m1))


def lorentz_oracle(m) -> WedgeBijectionOracle:
    m = np.asarray(m, dtype=float)
    inv = lorentz_inverse(m)
    return WedgeBijectionOracle(lambda w: lorentz_image(m, w), lambda w: lorentz_image(inv, w), label="lorentz")


def identity_oracle() -> WedgeBijectionOracle:
    return WedgeBijectionOracle(lambda w: w, lambda w: w, label="identity")


def random_ds_wedge(rng: np.random.Generator) -> DSWedge:
    while True:
        l1, l2 = random_lightlike(rng), random_lightlike(rng)
        if np.linalg.norm(l1[1:] - l2[1:]) > 0.2:
            return DSWedge(l1, l2)


def random_ds_point(rng: np.random.Generator, max_rapidity: float = 1.5) -> np.ndarray:
    """A point ``(sinh s, cosh s · n)`` with ``n`` a random unit vector."""
    n = rng.normal(size=3)
    n /= np.linalg.norm(n)
    s = rng.uniform(-max_rapidity, max_rapidity)
    return np.concatenate(([np.sinh(s)], np.cosh(s) * n))


# --- disjointness ---------------------------------------------------------------------


def ds_disjoint(w1: DSWedge, w2: DSWedge, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Decide ``W1 ∩ W2 = ∅`` on dS³ via the ambient origin-edge wedges."""
    return are_disjoint(w1.ambient, w2.ambient, tol)


def sample_wedge_points(w: DSWedge, n: int, rng: np.random.Generator, max_rapidity: float = 4.0) -> np.ndarray:
    """``n`` points of ``w``: frame images of ``(ρ sinh η, ρ cosh η, y2, y3)`` with ``ρ = √(1 - |y|²)``.

    Half of the points have ``|y|`` uniform on the disc, half have ``ρ``
    log-uniform down to 1e-6 so that the thin region near the edge is covered.
    """
    lam, _ = standard_frame(w.ambient)
    half = n // 2
    r_disc = np.sqrt(rng.uniform(0.0, 1.0, size=half))
    rho_edge = 10.0 ** rng.uniform(-6.0, 0.0, size=n - half)
    r = np.concatenate([r_disc, np.sqrt(1.0 - rho_edge**2)])
    rho = np.concatenate([np.sqrt(1.0 - r_disc**2), rho_edge])
    phi = rng.uniform(0.0, 2 * np.pi, size=n)
    eta = rng.uniform(-max_rapidity, max_rapidity, size=n)
    pts = np.column_stack([rho * np.sinh(eta), rho * np.cosh(eta), r * np.cos(phi), r * np.sin(phi)])
    return pts @ lam.T


def _inside(w: DSWedge, pts: np.ndarray) -> np.ndarray:
    g2 = METRIC @ w.l2
    g1 = METRIC @ w.l1
    return (pts @ g2 > 0) & (pts @ g1 < 0)


def _positive_roots(qa: np.ndarray, qb: np.ndarray, qc: np.ndarray) -> np.ndarray:
    """Real positive roots of ``qa u² + qb u + qc`` per row, padded with NaN to two columns."""
    out = np.full((qa.size, 2), np.nan)
    scale = np.maximum(np.maximum(np.abs(qa), np.abs(qb)), np.abs(qc))
    linear = np.abs(qa) <= 1e-14 * np.maximum(scale, 1e-300)
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = qb * qb - 4 * qa * qc
        sq = np.sqrt(np.where(disc >= 0, disc, np.nan))
        out[:, 0] = np.where(linear, -qc / qb, (-qb - sq) / (2 * qa))
        out[:, 1] = np.where(linear, np.nan, (-qb + sq) / (2 * qa))
    out[~(out > 0)] = np.nan
    return out


def _orbits_meet(w: DSWedge, target: DSWedge, n: int, rng: np.random.Generator) -> bool:
    """Does some boost orbit of ``w``, at ``n`` random transverse positions, enter ``target``?

    In the frame of ``w`` a point is ``(ρ sinh η, ρ cosh η, y2, y3)`` with ``ρ² + |y|² = 1``.
    Each linear inequality of ``target`` along the orbit becomes, with ``u = e^η``, a
    quadratic in ``u > 0``; the orbit meets ``target`` iff both quadratics are positive
    somewhere, which is decided at the midpoints between their positive roots.
    """
    lam, _ = standard_frame(w.ambient)
    half = n // 2
    r_disc = np.sqrt(rng.uniform(0.0, 1.0, size=half))
    rho_edge = 10.0 ** rng.uniform(-6.0, 0.0, size=n - half)
    r = np.concatenate([r_disc, np.sqrt(1.0 - rho_edge**2)])
    rho = np.concatenate([np.sqrt(1.0 - r_disc**2), rho_edge])
    phi = rng.uniform(0.0, 2 * np.pi, size=n)
    y2, y3 = r * np.cos(phi), r * np.sin(phi)
    quads = []
    for g in (METRIC @ target.l2, -(METRIC @ target.l1)):
        h = lam.T @ g
        c = h[2] * y2 + h[3] * y3
        quads.append((rho * (h[0] + h[1]), 2 * c, rho * (h[1] - h[0])))
    crit = np.column_stack([np.zeros(n)] + [_positive_roots(*q) for q in quads])
    crit = np.sort(crit, axis=1)  # NaN sorts last
    last = np.nanmax(crit, axis=1)
    tests = np.column_stack([(crit[:, :-1] + crit[:, 1:]) / 2, 2 * last + 1.0])
    ok = np.ones_like(tests, dtype=bool)
    for qa, qb, qc in quads:
        vals = qa[:, None] * tests**2 + qb[:, None] * tests + qc[:, None]
        ok &= vals > 1e-13 * np.maximum(1.0, tests**2)
    return bool(np.any(ok))


def sampled_disjoint(w1: DSWedge, w2: DSWedge, n: int = 10_000, seed: int = 0) -> bool:
    """Sampling oracle over ``n`` transverse positions split between the two wedges.

    Each sample is a whole boost orbit inside one wedge, tested exactly against the
    other wedge, so thin intersections far out along the boost direction are not missed.
    """
    rng = np.random.default_rng(seed)
    half = n // 2
    return not (_orbits_meet(w1, w2, half, rng) or _orbits_meet(w2, w1, n - half, rng))


def disjointness_criterion(l, tol: float = DEFAULT_TOL.geom) -> bool:
    """Direct rule for ``W_R`` against ``W[l2+, l]`` with ``l = (1, a, b, c)``: ``0 < a ≤ 1``, ``0 ≤ b < 1``, ``c = 0``."""
    n = lightlike(l)
    _, a, b, c = n
    return bool(tol < a <= 1 + tol and -tol <= b < 1 - tol and abs(c) <= tol)


# --- dual pairs -----------------------------------------------------------------------


def _parallel(u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    return bool(np.max(np.abs(u - v)) <= tol)


def dual_pair(w1: DSWedge, w2: DSWedge, tol: float = DEFAULT_TOL.geom) -> tuple[DSWedge, DSWedge]:
    """``(W[l1, l2], W[l3, l4]) ↦ (W[l1, l4], W[l3, l2])``; both pairs have the same intersection."""
    l1, l2, l3, l4 = w1.l1, w1.l2, w2.l1, w2.l2
    if _parallel(l1, l4, tol) or _parallel(l3, l2, tol):
        raise ParallelGenerators("the exchanged generators are parallel; the dual pair is undefined")
    if _parallel(l1, l3, tol) or _parallel(l2, l4, tol):
        raise ParallelGenerators("the pair shares a generator and is its own dual")
    return DSWedge(l1, l4), DSWedge(l3, l2)


# --- lines through a point --------------------------------------------------------------


def frame_to_e2(x) -> np.ndarray:
    """Orthochronous proper Lorentz ``Λ`` with ``Λ x = e2`` for ``x ∈ dS³``."""
    x = ds_point(x, 1e-7)
    eye = np.eye(4)

    def orthogonalize(v: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
        v = v + mdot(v, x) * x
        for f in basis:
            v = v - mdot(v, f) / mdot(f, f) * f
        return v

    f0 = orthogonalize(eye[0], [])
    basis = [f0 / np.sqrt(mdot(f0, f0))]
    for _ in range(2):
        candidates = [orthogonalize(eye[k], basis) for k in (1, 2, 3)]
        v = max(candidates, key=lambda c: -mdot(c, c))
        basis.append(v / np.sqrt(-mdot(v, v)))
    inv = np.column_stack([basis[0], basis[1], x, basis[2]])
    if np.linalg.det(inv) < 0:
        inv[:, 3] = -inv[:, 3]
    return lorentz_inverse(inv)


def line_meeting_signs(x, w: DSWedge) -> tuple[float, float]:
    """``(b1, b2)``: second spatial components of the generators after moving ``x`` to ``e2``."""
    m = frame_to_e2(x)
    return float(unit_lightlike(m @ w.l1)[2]), float(unit_lightlike(m @ w.l2)[2])


def line_meets_wedge(x, w: DSWedge, tol: float = DEFAULT_TOL.geom) -> bool:
    b1, b2 = line_meeting_signs(x, w)
    return b1 * b2 < -tol


# --- point maps and reconstruction ----------------------------------------------------

_PROBE_ANGLES = (0.0, 2 * np.pi / 3, 4 * np.pi / 3)


def _common_generator(a: DSWedge, b: DSWedge, tol: float) -> np.ndarray:
    for u in (a.l1, a.l2):
        for v in (b.l1, b.l2):
            if np.max(np.abs(u - v)) <= tol:
                return u
    raise DegenerateNormals("images of wedges sharing a hyperplane share no generator")


def ds_point_map(tau: WedgeBijectionOracle, x, tol: float = 1e-7) -> np.ndarray:
    """Image point of ``x``: the normalised common point of three image hyperplanes through the origin."""
    m = frame_to_e2(x)
    back = lorentz_inverse(m)
    x = back @ np.array([0.0, 0.0, 1.0, 0.0])
    pa, pb = unit_lightlike(back @ L2P), unit_lightlike(back @ L2M)
    rows = []
    try:
        for theta in _PROBE_ANGLES:
            l = unit_lightlike(back @ np.array([1.0, np.cos(theta), 0.0, np.sin(theta)]))
            ia = tau.forward(DSWedge(l, pa))
            ib = tau.forward(DSWedge(l, pb))
            rows.append(METRIC @ _common_generator(ia, ib, tol))
        w0 = DSWedge(pa, pb)
        image0 = tau.forward(w0)
    except OracleDomainError as exc:
        raise VerificationFailed(f"oracle is not defined on the probe wedges: {exc}") from exc
    _, s, vt = np.linalg.svd(np.array(rows))
    if s[-1] < 1e-10 * s[0]:
        raise DegenerateNormals("image hyperplanes are linearly dependent")
    y = vt[-1]
    if mdot(y, y) >= 0:
        raise SignUndetermined("common line of the image hyperplanes is not spacelike")
    y = normalize_to_hyperboloid(y)
    plus, minus = image0.contains(y), image0.contains(-y)
    if plus == minus:
        raise SignUndetermined("neither or both of ±y lie in the image of a wedge containing x")
    return y if plus else -y


RECONSTRUCTION_POINTS = np.column_stack([
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [1.0, np.sqrt(2.0), 0.0, 0.0],
])


@lru_cache(maxsize=8)
def _verification_ds_wedges(n: int, seed: int) -> tuple[DSWedge, ...]:
    rng = np.random.default_rng(seed)
    return tuple(random_ds_wedge(rng) for _ in range(n))


@dataclass
class DSReconstructionReport:
    lam: np.ndarray
    lorentz_defect: float
    fit_residual: float
    samples_checked: int

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.tolist(),
            "lorentz_defect": self.lorentz_defect,
            "fit_residual": self.fit_residual,
            "samples_checked": self.samples_checked,
        }


def ds_reconstruct_report(tau: WedgeBijectionOracle, n_verify: int = 50, seed: int = 0,
                          threshold: float = 1e-6) -> DSReconstructionReport:
    images = np.column_stack([ds_point_map(tau, RECONSTRUCTION_POINTS[:, k]) for k in range(4)])
    lam = images @ np.linalg.inv(RECONSTRUCTION_POINTS)
    defect = lorentz_defect(lam)
    if defect > threshold:
        raise NotLorentz(f"reconstructed matrix misses the metric by {defect:.3g}")
    residual = 0.0
    samples = _verification_ds_wedges(n_verify, seed)
    try:
        for w in samples:
            residual = max(residual, lorentz_image(lam, w).deviation(tau.forward(w)))
    except OracleDomainError as exc:
        raise VerificationFailed(str(exc)) from exc
    if residual > threshold:
        raise VerificationFailed(f"fit residual {residual:.3g} exceeds {threshold:g}")
    return DSReconstructionReport(lam, defect, residual, len(samples))


def ds_reconstruct(tau: WedgeBijectionOracle, **kwargs) -> np.ndarray:
    """The Lorentz matrix ``Λ`` with ``tau(W) = ΛW`` on dS³ wedges."""
    return ds_reconstruct_report(tau, **kwargs).lam


def reflection_dichotomy(tau: WedgeBijectionOracle, w: DSWedge, tol: float = 1e-6) -> str | None:
    """Compare the matrix behind ``tau`` with the wedge reflection of ``w`` and with its product with ``-1``.

    Returns ``"reflection"``, ``"reflection-times-inversion"`` or ``None``.
    """
    lam = ds_reconstruct(tau)
    ref = wedge_reflection(w.ambient).lam
    if np.max(np.abs(lam - ref)) <= tol:
        return "reflection"
    if np.max(np.abs(lam + ref)) <= tol:
        return "reflection-times-inversion"
    return None


def dual_pair_covariance_defect(tau: WedgeBijectionOracle, pairs) -> float:
    """Largest deviation between images of dual pairs and dual pairs of images."""
    worst = 0.0
    for w1, w2 in pairs:
        d1, d2 = dual_pair(w1, w2)
        e1, e2 = dual_pair(tau.forward(w1), tau.forward(w2))
        worst = max(worst, tau.forward(d1).deviation(e1), tau.forward(d2).deviation(e2))
    return worst


OracleFn = Callable[[DSWedge], DSWedge]
