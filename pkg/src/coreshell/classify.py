"""Normal/anomalous level classification and inter-level gaps."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectrum import LevelCurve

NORMAL = "N-EL"
ANOMALOUS = "A-EL"
NON_MONOTONIC = "non-monotonic"


@dataclass(frozen=True)
class LevelClass:
    tag: str
    slope_stats: tuple[float, float, float]  # min, max, mean of dE/dr0


@dataclass(frozen=True)
class Transition:
    points: list[tuple[float, float]]  # (r0, E_B - E_A)
    trend: str  # "decreasing", "increasing" or "non-monotonic"


def _trend(values: np.ndarray) -> str:
    steps = np.diff(values)
    if len(steps) and np.all(steps < 0):
        return "decreasing"
    if len(steps) and np.all(steps > 0):
        return "increasing"
    return "non-monotonic"


def classify_level_curve(curve: LevelCurve) -> LevelClass:
    """N-EL if E falls strictly with r0 everywhere, A-EL if it rises, else non-monotonic.

    Slopes are central differences inside the curve, one-sided at the ends.
    """
    if len(curve.points) < 3:
        raise ValueError(f"need >= 3 points to classify, got {len(curve.points)}")
    r0, E = curve.r0, curve.energies
    slopes = np.gradient(E, r0, edge_order=1)
    stats = (float(slopes.min()), float(slopes.max()), float(slopes.mean()))
    if np.all(slopes < 0):
        return LevelClass(NORMAL, stats)
    if np.all(slopes > 0):
        return LevelClass(ANOMALOUS, stats)
    return LevelClass(NON_MONOTONIC, stats)


def transition_energies(curve_a: LevelCurve, curve_b: LevelCurve) -> Transition:
    """E_B(r0) - E_A(r0) on the well widths both curves share."""
    ea = dict(curve_a.points)
    eb = dict(curve_b.points)
    common = sorted(set(ea) & set(eb))
    if len(common) < 3:
        raise ValueError(f"curves share {len(common)} r0 samples, need >= 3")
    points = [(r, eb[r] - ea[r]) for r in common]
    return Transition(points, _trend(np.array([p[1] for p in points])))
