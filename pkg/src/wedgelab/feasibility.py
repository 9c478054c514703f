"""Linear feasibility of small systems of strict inequalities ``A x > b``.

Feasibility is decided by maximising a common slack ``t`` subject to
``A_i x ≥ b_i + t`` with unit-norm rows, ``t ≤ 1`` and a bounding box on ``x``;
the system counts as feasible when the optimal slack exceeds ``margin``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .minkowski import METRIC
from .wedges import Wedge

DEFAULT_MARGIN = 1e-8


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    slack: float
    point: np.ndarray | None


def wedge_inequalities(w: Wedge) -> tuple[np.ndarray, np.ndarray]:
    """Rows ``(A, b)`` with ``w = {x : A x > b}``."""
    u = METRIC @ w.l2
    v = METRIC @ w.l1
    return np.vstack([u, -v]), np.array([w.p2, -w.p1])


def max_slack(a: np.ndarray, b: np.ndarray, box: float = 1e4, margin: float = DEFAULT_MARGIN) -> FeasibilityResult:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    norms = np.linalg.norm(a, axis=1)
    a = a / norms[:, None]
    b = b / norms
    n = a.shape[1]
    # variables (x, t); minimise -t subject to -A x + t <= -b
    c = np.zeros(n + 1)
    c[-1] = -1.0
    a_ub = np.hstack([-a, np.ones((a.shape[0], 1))])
    bounds = [(-box, box)] * n + [(None, 1.0)]
    res = linprog(c, A_ub=a_ub, b_ub=-b, bounds=bounds, method="highs")
    if res.status != 0:
        return FeasibilityResult(False, float("-inf"), None)
    slack = float(res.x[-1])
    return FeasibilityResult(slack > margin, slack, res.x[:n].copy())


def intersection_feasibility(*wedges: Wedge, extra: tuple[np.ndarray, np.ndarray] | None = None,
                             box: float = 1e4, margin: float = DEFAULT_MARGIN) -> FeasibilityResult:
    rows, rhs = [], []
    for w in wedges:
        a, b = wedge_inequalities(w)
        rows.append(a)
        rhs.append(b)
    if extra is not None:
        rows.append(np.atleast_2d(extra[0]))
        rhs.append(np.atleast_1d(extra[1]))
    return max_slack(np.vstack(rows), np.concatenate(rhs), box=box, margin=margin)


def wedges_intersect(*wedges: Wedge, margin: float = DEFAULT_MARGIN) -> bool:
    return intersection_feasibility(*wedges, margin=margin).feasible


@dataclass(frozen=True)
class EnlargementResult:
    """Outcome of trying to grow either wedge of a disjoint pair along its own generators."""

    enlargeable: bool
    witness: Wedge | None
    moved: str | None


def enlargement_oracle(w1: Wedge, w2: Wedge, eps: float = 1e-4,
                       margin: float = 1e-10) -> EnlargementResult:
    """Try the four one-hyperplane enlargements ``W - eps·l1`` and ``W + eps·l2`` of each wedge.

    Any wedge strictly containing ``W`` is a translate that contains one of these
    (moving a single boundary hyperplane outward), so a disjoint pair is maximal exactly
    when all four enlargements meet the other wedge.  The LP decides each meeting.
    """
    for name, w, other in (("first", w1, w2), ("second", w2, w1)):
        for label, v in (("l1", -w.l1), ("l2", w.l2)):
            bigger = w.translate(eps * v)
            if not intersection_feasibility(bigger, other, margin=margin).feasible:
                return EnlargementResult(True, bigger, f"{name}:{label}")
    return EnlargementResult(False, None, None)
