"""Minkowski metric, four-vectors, lightlike directions and basic Lorentz matrices."""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial.transform import Rotation

from .config import DEFAULT_TOL
from .errors import NotLightlike, PastDirected

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
METRIC.flags.writeable = False


def four_vector(x) -> np.ndarray:
    """Validate and return ``x`` as a finite float array of shape (4,)."""
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape != (4,):
        raise ValueError(f"expected 4 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("four-vector entries must be finite")
    return v


def mdot(x, y) -> float:
    """Minkowski product x·y = x0 y0 - x1 y1 - x2 y2 - x3 y3."""
    return float(x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3])


def msquare(x) -> float:
    return mdot(x, x)


def lightlike(v, tol: float = DEFAULT_TOL.geom) -> np.ndarray:
    """Return the future-directed lightlike vector ``v`` rescaled to time component 1.

    The spatial part is renormalised to unit length so that the result lies
    exactly on the light cone.
    """
    v = four_vector(v)
    if v[0] == 0.0:
        raise NotLightlike(f"{v.tolist()} has zero time component")
    if abs(msquare(v)) > tol * v[0] * v[0]:
        raise NotLightlike(f"{v.tolist()} is not lightlike (v·v = {msquare(v):.3g})")
    if v[0] < 0:
        raise PastDirected(f"{v.tolist()} is past-directed")
    return unit_lightlike(v)


def unit_lightlike(v: np.ndarray) -> np.ndarray:
    """Rescale an (approximately) lightlike vector to (1, s) with |s| = 1, without checks.

    Past-directed input is flipped to the future.
    """
    x1, x2, x3 = float(v[1]), float(v[2]), float(v[3])
    r = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
    if v[0] < 0:
        r = -r
    return np.array([1.0, x1 / r, x2 / r, x3 / r])


def lightlike_from_spatial(direction) -> np.ndarray:
    s = np.asarray(direction, dtype=float)
    return np.concatenate(([1.0], s / np.linalg.norm(s)))


L1P = np.array([1.0, 1.0, 0.0, 0.0])
L1M = np.array([1.0, -1.0, 0.0, 0.0])
L2P = np.array([1.0, 0.0, 1.0, 0.0])
L2M = np.array([1.0, 0.0, -1.0, 0.0])
L3P = np.array([1.0, 0.0, 0.0, 1.0])
L3M = np.array([1.0, 0.0, 0.0, -1.0])
for _v in (L1P, L1M, L2P, L2M, L3P, L3M):
    _v.flags.writeable = False

IDENTITY4 = np.eye(4)
IDENTITY4.flags.writeable = False
TIME_REFLECTION = np.diag([-1.0, 1.0, 1.0, 1.0])
PARITY = np.diag([1.0, -1.0, -1.0, -1.0])
P3 = np.diag([1.0, 1.0, 1.0, -1.0])
P3T = np.diag([-1.0, 1.0, 1.0, -1.0])
TOTAL_REFLECTION = -np.eye(4)
R0 = np.diag([1.0, -1.0, 1.0, -1.0])
STANDARD_REFLECTION = np.diag([-1.0, -1.0, 1.0, 1.0])
for _m in (TIME_REFLECTION, PARITY, P3, P3T, TOTAL_REFLECTION, R0, STANDARD_REFLECTION):
    _m.flags.writeable = False


def lorentz_inverse(m: np.ndarray) -> np.ndarray:
    """Inverse of a Lorentz matrix, g mᵀ g."""
    return METRIC @ m.T @ METRIC


def lorentz_defect(m: np.ndarray) -> float:
    """max |mᵀ g m - g|."""
    return float(np.max(np.abs(m.T @ METRIC @ m - METRIC)))


def is_lorentz(m, tol: float = DEFAULT_TOL.group) -> bool:
    m = np.asarray(m, dtype=float)
    return m.shape == (4, 4) and bool(np.all(np.isfinite(m))) and lorentz_defect(m) <= tol


def boost(direction, rapidity: float) -> np.ndarray:
    """Pure boost with the given rapidity along a spatial direction."""
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    m = np.eye(4)
    m[0, 0] = ch
    m[0, 1:] = sh * n
    m[1:, 0] = sh * n
    m[1:, 1:] += (ch - 1.0) * np.outer(n, n)
    return m


def rotation(axis, angle: float) -> np.ndarray:
    """Spatial rotation by ``angle`` about ``axis`` (right-handed)."""
    a = np.asarray(axis, dtype=float)
    m = np.eye(4)
    m[1:, 1:] = Rotation.from_rotvec(a / np.linalg.norm(a) * angle).as_matrix()
    return m


def spatial(r3: np.ndarray) -> np.ndarray:
    m = np.eye(4)
    m[1:, 1:] = r3
    return m


def symmetric_sqrt(m: np.ndarray, floor: float = 1e-14) -> np.ndarray:
    """Square root of a symmetric positive-definite matrix via its eigendecomposition."""
    w, v = np.linalg.eigh((m + m.T) / 2)
    return (v * np.sqrt(np.maximum(w, floor))) @ v.T
