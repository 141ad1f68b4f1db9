"""Finite-difference shooting solver used as an independent reference.

Integrates the reduced radial equation G'' = [c / r**2 + eps(r)] G with a
fixed-step classical Runge-Kutta scheme: outward through the core from the
regular behaviour r**a, inward through the shell from the decaying tail.
Nothing here touches the hypergeometric functions.  The core is integrated
for y = G / r**a, which is smooth at the origin:

    y'' + (2a / r) y' - eps_1 y = 0.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.optimize import brentq

from .spectrum import EigenResult, SolverWarning, sign_change_brackets
from .well import BranchExponent, WellConfig, bound_window, centrifugal_strength

STEPS = 10_000
R_MIN_FRACTION = 1e-4
SHELL_DECAY_LENGTHS = 20.0
TARGET_ERROR = 1e-7
SCAN_POINTS = 2000
WINDOW_SHRINK = 1e-6


@dataclass(frozen=True)
class ShootingGrid:
    r_min: float
    r_max: float
    steps: int

    def __post_init__(self):
        if not self.r_min > 0:
            raise ValueError("r_min must be positive")
        if self.steps < 10_000:
            raise ValueError("steps must be >= 1e4")

    @classmethod
    def for_energy(cls, cfg: WellConfig, E: float, steps: int = STEPS) -> "ShootingGrid":
        b2 = math.sqrt(cfg.m2**2 - (E - cfg.V0) ** 2)
        return cls(R_MIN_FRACTION * cfg.r0, cfg.r0 + SHELL_DECAY_LENGTHS / b2, steps)


@njit(cache=True)
def _core_rhs(r, y, dy, a, eps):
    return dy, eps * y - 2.0 * a / r * dy


@njit(cache=True)
def _integrate_core(a, eps, r_min, r0, steps):
    """Return (G, G', sign changes) at r0 for G = r**a y, unit leading coefficient."""
    # regular series start: y = 1 + eps r^2 / (2 (2a + 1))
    y = 1.0 + eps * r_min * r_min / (2.0 * (2.0 * a + 1.0))
    dy = eps * r_min / (2.0 * a + 1.0)
    h = (r0 - r_min) / steps
    r = r_min
    nodes = 0
    for i in range(steps):
        k1y, k1d = _core_rhs(r, y, dy, a, eps)
        k2y, k2d = _core_rhs(r + 0.5 * h, y + 0.5 * h * k1y, dy + 0.5 * h * k1d, a, eps)
        k3y, k3d = _core_rhs(r + 0.5 * h, y + 0.5 * h * k2y, dy + 0.5 * h * k2d, a, eps)
        k4y, k4d = _core_rhs(r + h, y + h * k3y, dy + h * k3d, a, eps)
        y_new = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        dy = dy + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        if y_new * y < 0.0:
            nodes += 1
        y = y_new
        r = r_min + (i + 1) * h
    ra = r0**a
    return ra * y, ra * (dy + a * y / r0), nodes


@njit(cache=True)
def _integrate_shell(c, eps, r_max, r0, steps):
    """Integrate inward from r_max; return (G, G', sign changes) at r0 up to scale."""
    # local WKB log-derivative as the decaying start
    g = 1.0
    dg = -math.sqrt(eps + c / (r_max * r_max))
    h = (r0 - r_max) / steps
    r = r_max
    nodes = 0
    for i in range(steps):
        k1g = dg
        k1d = (c / (r * r) + eps) * g
        rm = r + 0.5 * h
        k2g = dg + 0.5 * h * k1d
        k2d = (c / (rm * rm) + eps) * (g + 0.5 * h * k1g)
        k3g = dg + 0.5 * h * k2d
        k3d = (c / (rm * rm) + eps) * (g + 0.5 * h * k2g)
        re = r + h
        k4g = dg + h * k3d
        k4d = (c / (re * re) + eps) * (g + h * k3g)
        g_new = g + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
        dg = dg + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        if g_new * g < 0.0:
            nodes += 1
        g = g_new
        r = r_max + (i + 1) * h
        # rescale to keep the growing inward solution finite
        if abs(g) > 1e100:
            g *= 1e-100
            dg *= 1e-100
    return g, dg, nodes


def _core_steps(a: float, steps: int) -> int:
    # explicit RK4 needs h * 2a / r_min below its stability limit (~2.8)
    return max(steps, int(math.ceil(steps * 2.0 * a / 2.5)))


def shooting_mismatch(E: float, cfg: WellConfig, branch: BranchExponent, steps: int = STEPS):
    """Weighted log-derivative mismatch at r0 and the node count of the matched G."""
    grid = ShootingGrid.for_energy(cfg, E, steps)
    a = branch.a
    c = centrifugal_strength(cfg.kappa, cfg.U0)
    eps1 = cfg.m1**2 - (E + cfg.V0) ** 2
    eps2 = cfg.m2**2 - (E - cfg.V0) ** 2
    g1, dg1, n1 = _integrate_core(a, eps1, grid.r_min, cfg.r0, _core_steps(a, steps))
    g2, dg2, n2 = _integrate_shell(c, eps2, grid.r_max, cfg.r0, steps)
    w1, w2 = (1.0 / cfg.m1, 1.0 / cfg.m2) if cfg.matching == "weighted" else (1.0, 1.0)
    num = w1 * dg1 * g2 - w2 * dg2 * g1
    scale = abs(w1 * dg1 * g2) + abs(w2 * dg2 * g1)
    # the shell run is an arbitrary-sign multiple: normalise so G2(r0) > 0
    if g2 < 0:
        num = -num
    return num / scale, n1 + n2


def _solve_at(cfg, branch, steps, brackets):
    roots = []
    for lo, hi in brackets:
        if lo == hi:
            roots.append(lo)
            continue
        roots.append(
            brentq(lambda E: shooting_mismatch(E, cfg, branch, steps)[0], lo, hi, xtol=1e-13, rtol=1e-15)
        )
    return roots


def shoot_eigenvalues(
    cfg: WellConfig,
    branch: BranchExponent,
    n_max: int,
    steps: int = STEPS,
    scan_points: int = SCAN_POINTS,
) -> list[EigenResult]:
    """Bound states by shooting, Richardson-extrapolated over steps and 2*steps.

    The step count doubles (up to 16x) until every extrapolated eigenvalue has
    an estimated error <= 1e-7 fm^-1.
    """
    lo, hi = bound_window(cfg)
    energies = np.linspace(lo + WINDOW_SHRINK, hi - WINDOW_SHRINK, scan_points)
    mismatch = np.array([shooting_mismatch(E, cfg, branch, steps)[0] for E in energies])
    brackets = sign_change_brackets(energies, mismatch)
    if not brackets:
        return []
    coarse = _solve_at(cfg, branch, steps, brackets)
    for _ in range(4):
        fine = _solve_at(cfg, branch, 2 * steps, brackets)
        errors = [abs(f - c) / 15.0 for f, c in zip(fine, coarse)]
        if max(errors) <= TARGET_ERROR:
            break
        steps *= 2
        coarse = fine
    else:
        warnings.warn(f"shooting error estimate {max(errors):.3g} above target", SolverWarning, stacklevel=2)
    results = []
    for (b_lo, b_hi), f, c, err in zip(brackets, fine, coarse, errors):
        E = f + (f - c) / 15.0
        residual, n = shooting_mismatch(E, cfg, branch, 2 * steps)
        if n > n_max:
            break
        results.append(EigenResult(E, n, branch, abs(residual), (float(b_lo), float(b_hi))))
    return results
