"""Bound-state search, node counting, well-width sweeps and degeneracy checks."""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .radial import composite_values, determinant_terms, normalized_residual
from .well import BranchExponent, WellConfig, admissible_branches, bound_window, region_energy

logger = logging.getLogger(__name__)

SCAN_POINTS = 2000
WINDOW_SHRINK = 1e-6
TOL_E = 1e-10
RESIDUAL_TOL = 1e-9
NODE_POINTS = 2000
NODE_DECAY_LENGTHS = 8.0
MAX_SWEEP_BISECTIONS = 10


class SolverWarning(UserWarning):
    """Non-fatal solver diagnostic (unrefined bracket, continuation split, ...)."""


@dataclass(frozen=True)
class EigenResult:
    E: float
    n: int
    branch: BranchExponent
    residual: float
    bracket: tuple[float, float]


@dataclass
class LevelCurve:
    label: tuple[int, int, str]  # (n, kappa, branch tag)
    points: list[tuple[float, float]] = field(default_factory=list)

    @property
    def r0(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def energies(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])


def scan_grid(cfg: WellConfig, scan_points: int = SCAN_POINTS) -> np.ndarray:
    lo, hi = bound_window(cfg)
    return np.linspace(lo + WINDOW_SHRINK, hi - WINDOW_SHRINK, scan_points)


def sign_change_brackets(x: np.ndarray, y: np.ndarray) -> list[tuple[float, float]]:
    """Adjacent grid cells over which ``y`` changes sign (exact zeros included)."""
    brackets = []
    for i in range(len(x) - 1):
        if y[i] == 0.0:
            brackets.append((x[i], x[i]))
        elif y[i] * y[i + 1] < 0:
            brackets.append((x[i], x[i + 1]))
    if len(y) and y[-1] == 0.0:
        brackets.append((x[-1], x[-1]))
    return brackets


def count_nodes(cfg: WellConfig, branch: BranchExponent, E: float, points: int = NODE_POINTS) -> int:
    """Strict sign changes of the matched G on (1e-4 r0, r0 + 8 / b2)."""
    b2 = region_energy(E, cfg, "shell").wave.real
    if not b2 > 0:
        raise ValueError(f"E={E} outside the bound window")
    r = np.linspace(1e-4 * cfg.r0, cfg.r0 + NODE_DECAY_LENGTHS / b2, points)
    g, _ = composite_values(r, cfg, branch.a, E)
    return _count_sign_changes(r, g, lambda rr: composite_values(rr, cfg, branch.a, E)[0])


def _count_sign_changes(r, g, evaluate, refine: int = 40) -> int:
    s = np.sign(g)
    nodes = int(np.count_nonzero(s[:-1] * s[1:] < 0))
    # a pair of nodes hiding inside one cell shows up as a near-zero local
    # minimum of |G|; resample those cells
    mag = np.abs(g)
    dips = np.nonzero((mag[1:-1] < mag[:-2]) & (mag[1:-1] < mag[2:]))[0] + 1
    for i in dips:
        if s[i - 1] * s[i + 1] < 0 or s[i] == 0:
            continue
        fine = np.linspace(r[i - 1], r[i + 1], refine)
        sf = np.sign(evaluate(fine))
        nodes += int(np.count_nonzero(sf[:-1] * sf[1:] < 0))
    return nodes


def _refine(cfg: WellConfig, a: float, lo: float, hi: float, tol_E: float) -> float:
    if lo == hi:
        return lo

    def f(E):
        return float(determinant_terms(E, cfg, a)[0])

    # brentq is the bisection/secant/inverse-quadratic hybrid; xtol is absolute
    return brentq(f, lo, hi, xtol=min(tol_E, 1e-12), rtol=4 * np.finfo(float).eps, maxiter=200)


def find_levels(
    cfg: WellConfig,
    branch: BranchExponent,
    n_max: int,
    scan_points: int = SCAN_POINTS,
    tol_E: float = TOL_E,
) -> list[EigenResult]:
    """All bound states of one branch with node count <= ``n_max``, ascending in E."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    grid = scan_grid(cfg, scan_points)
    D = determinant_terms(grid, cfg, branch.a)[0]
    results = []
    for lo, hi in sign_change_brackets(grid, D):
        try:
            E = _refine(cfg, branch.a, lo, hi, tol_E)
        except (RuntimeError, ValueError) as exc:
            warnings.warn(f"bracket ({lo!r}, {hi!r}) failed to refine: {exc}", SolverWarning, stacklevel=2)
            continue
        terms = determinant_terms(E, cfg, branch.a)
        residual = float(normalized_residual(*terms, cfg))
        if residual >= RESIDUAL_TOL:
            warnings.warn(
                f"root E={E!r} in bracket ({lo!r}, {hi!r}) has residual {residual:.3g}",
                SolverWarning,
                stacklevel=2,
            )
        n = count_nodes(cfg, branch, E)
        if n > n_max:
            # node counts rise with E, nothing above can qualify
            break
        results.append(EigenResult(E, n, branch, residual, (float(lo), float(hi))))
    nodes = [res.n for res in results]
    if any(b <= a for a, b in zip(nodes, nodes[1:])):
        warnings.warn(f"node counts not increasing with energy: {nodes}", SolverWarning, stacklevel=2)
    return results


def _level_between(cfg, branch, n, e_a, e_b, margin, tol_E, points=200):
    """Energy of level ``n`` searched only near [e_a, e_b]; None if absent there."""
    lo, hi = bound_window(cfg)
    start = max(min(e_a, e_b) - margin, lo + WINDOW_SHRINK)
    stop = min(max(e_a, e_b) + margin, hi - WINDOW_SHRINK)
    grid = np.linspace(start, stop, points)
    D = determinant_terms(grid, cfg, branch.a)[0]
    for b_lo, b_hi in sign_change_brackets(grid, D):
        E = _refine(cfg, branch.a, b_lo, b_hi, tol_E)
        if count_nodes(cfg, branch, E) == n:
            return E
    return None


def continuation_threshold(cfg: WellConfig, scan_points: int = SCAN_POINTS) -> float:
    lo, hi = bound_window(cfg)
    return 5.0 * (hi - lo) / scan_points


def sweep_well_width(
    cfg: WellConfig,
    r0_grid,
    branch: BranchExponent,
    n_max: int,
    scan_points: int = SCAN_POINTS,
    tol_E: float = TOL_E,
) -> list[LevelCurve]:
    """Track every level of ``branch`` across the well widths in ``r0_grid``.

    Levels are labelled by node count.  Between neighbouring samples a level
    may move at most ``continuation_threshold``; a larger jump triggers
    bisection of the r0 step, and a jump that survives bisection splits the
    curve with a SolverWarning.
    """
    r0_grid = [float(r) for r in r0_grid]
    if len(r0_grid) < 1:
        raise ValueError("r0_grid is empty")
    if any(b <= a for a, b in zip(r0_grid, r0_grid[1:])):
        raise ValueError("r0_grid must be strictly increasing")
    threshold = continuation_threshold(cfg, scan_points)
    cache: dict[float, dict[int, float]] = {}

    def levels_at(r0):
        if r0 not in cache:
            found = find_levels(cfg.with_(r0=r0), branch, n_max, scan_points, tol_E)
            by_n = {}
            for res in found:
                if res.n in by_n:
                    warnings.warn(f"two roots with n={res.n} at r0={r0}", SolverWarning, stacklevel=3)
                by_n.setdefault(res.n, res.E)
            cache[r0] = by_n
        return cache[r0]

    def continuous(n, r_a, e_a, r_b, e_b, depth=0):
        if abs(e_b - e_a) <= threshold:
            return True
        if depth >= MAX_SWEEP_BISECTIONS:
            return False
        mid = 0.5 * (r_a + r_b)
        e_mid = _level_between(cfg.with_(r0=mid), branch, n, e_a, e_b, threshold, tol_E)
        if e_mid is None:
            return False
        return continuous(n, r_a, e_a, mid, e_mid, depth + 1) and continuous(
            n, mid, e_mid, r_b, e_b, depth + 1
        )

    finished: list[LevelCurve] = []
    open_curves: dict[int, LevelCurve] = {}
    prev_r0 = None
    for r0 in r0_grid:
        current = levels_at(r0)
        for n in sorted(set(open_curves) - set(current)):
            finished.append(open_curves.pop(n))
        for n, E in sorted(current.items()):
            curve = open_curves.get(n)
            if curve is not None:
                e_prev = curve.points[-1][1]
                if not continuous(n, prev_r0, e_prev, r0, E):
                    warnings.warn(
                        f"level n={n} jumps from {e_prev:.6g} to {E:.6g} between r0={prev_r0} and {r0}; curve split",
                        SolverWarning,
                        stacklevel=2,
                    )
                    finished.append(open_curves.pop(n))
                    curve = None
            if curve is None:
                curve = open_curves[n] = LevelCurve((n, cfg.kappa, branch.branch))
            curve.points.append((r0, E))
        prev_r0 = r0
    finished.extend(open_curves.values())
    finished.sort(key=lambda c: (c.label[0], c.points[0][0]))
    return finished


@dataclass
class DegeneracyReport:
    degenerate: bool
    verified: bool
    exponents_a: list[float]
    exponents_b: list[float]
    # (branch tag, n, E_a, E_b, E_b - E_a)
    splittings: list[tuple[str, int, float, float, float]]
    unmatched: list[tuple[str, str, int, float]]

    @property
    def max_splitting(self) -> float:
        return max((abs(s[-1]) for s in self.splittings), default=0.0)


EXPONENT_TOL = 1e-12
SPECTRUM_TOL = 1e-8


def degeneracy_report(cfg_a: WellConfig, cfg_b: WellConfig, n_max: int = 20, scan_points: int = SCAN_POINTS) -> DegeneracyReport:
    """Compare two channels that differ only in (kappa, U0).

    The pair is degenerate when their admissible exponents coincide; the claim
    is then checked level by level against ``find_levels``.
    """
    same = cfg_a.with_(kappa=cfg_b.kappa, U0=cfg_b.U0) == cfg_b
    if not same:
        raise ValueError("configurations must differ only in kappa and U0")
    branches_a = admissible_branches(cfg_a.kappa, cfg_a.U0)
    branches_b = admissible_branches(cfg_b.kappa, cfg_b.U0)
    exps_a = [br.a for br in branches_a]
    exps_b = [br.a for br in branches_b]
    degenerate = len(exps_a) == len(exps_b) and all(
        abs(x - y) <= EXPONENT_TOL for x, y in zip(exps_a, exps_b)
    )
    levels_a = {br.branch: find_levels(cfg_a, br, n_max, scan_points) for br in branches_a}
    levels_b = {br.branch: find_levels(cfg_b, br, n_max, scan_points) for br in branches_b}
    splittings = []
    unmatched = []
    for tag in ("plus", "minus"):
        la = {res.n: res.E for res in levels_a.get(tag, [])}
        lb = {res.n: res.E for res in levels_b.get(tag, [])}
        for n in sorted(set(la) | set(lb)):
            if n in la and n in lb:
                splittings.append((tag, n, la[n], lb[n], lb[n] - la[n]))
            elif n in la:
                unmatched.append(("a", tag, n, la[n]))
            else:
                unmatched.append(("b", tag, n, lb[n]))
    verified = (not unmatched and all(abs(s[-1]) <= SPECTRUM_TOL for s in splittings)) == degenerate
    if not verified:
        warnings.warn(
            "exponent-based degeneracy verdict disagrees with the computed spectra",
            SolverWarning,
            stacklevel=2,
        )
    return DegeneracyReport(degenerate, verified, exps_a, exps_b, splittings, unmatched)
