"""Tolerance and run configuration."""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.

    ``geom`` governs comparisons of canonical wedge data and the non-strict
    inequalities of the disjointness criteria. ``strict`` is the margin added
    to the strict membership inequalities (zero by default, so boundary
    points are non-members). ``group`` bounds Lorentz-invariance residuals.
    """

    geom: float = 1e-9
    strict: float = 0.0
    group: float = 1e-9
    algebra: float = 1e-10
    span_match: float = 1e-7

    def with_overrides(self, **kwargs: float) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    tol: float | None = None
    output: Path | None = None
    format: str = "json"
