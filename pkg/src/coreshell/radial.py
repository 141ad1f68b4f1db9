"""Core and shell solutions of the reduced radial equation and their matching.

In each region the lower spinor obeys

    G'' - a (a - 1) / r**2 G - eps G = 0,

solved by r**a e^{-b r} M(a, 2a; 2 b r) (regular at the origin) and
r**a e^{-b r} U(a, 2a; 2 b r) (decaying at infinity), with b = sqrt(eps).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import specfun
from .well import BranchExponent, Region, RegionEnergy, WellConfig, bound_window, region_energy

REALNESS_TOL = 1e-10


@dataclass(frozen=True)
class RadialSolution:
    value: float
    derivative: float
    region: Region


@dataclass(frozen=True)
class MatchingPoint:
    E: float
    D: float
    g1: RadialSolution
    g2: RadialSolution


def core_values(r, a, wave):
    """G and dG/dr of the regular solution; broadcasts over ``r`` and ``wave``.

    ``wave`` is sqrt(eps_1), real or purely imaginary.  The result is the real
    part of the complex Kummer form; its imaginary residue is checked.
    """
    r = np.asarray(r, dtype=float)
    b = np.asarray(wave, dtype=np.complex128)
    r, b = np.broadcast_arrays(r, b)
    m, dm = specfun.kummer_m_pair(a, 2.0 * a, 2.0 * b * r)
    pref = r**a * np.exp(-b * r)
    g = pref * m
    dg = pref * ((a / r - b) * m + 2.0 * b * dm)
    bad = (np.abs(g.imag) > REALNESS_TOL * (np.abs(g) + r * np.abs(dg))) | (
        np.abs(dg.imag) > REALNESS_TOL * (np.abs(g) / r + np.abs(dg))
    )
    if np.any(bad):
        raise ArithmeticError("core solution has a non-negligible imaginary part")
    return g.real, dg.real


def shell_values(r, a, wave):
    """G and dG/dr of the decaying solution; ``wave`` must be real and positive."""
    r = np.asarray(r, dtype=float)
    b = np.asarray(wave, dtype=float)
    r, b = np.broadcast_arrays(r, b)
    u, du = specfun.decaying_companion_pair(a, 2.0 * a, 2.0 * b * r)
    pref = r**a * np.exp(-b * r)
    return pref * u, pref * ((a / r - b) * u + 2.0 * b * du)


def inner_solution(r: float, a: float, eps1: RegionEnergy) -> RadialSolution:
    """Regular core solution at radius ``r`` (unit coefficient of r**a at the origin)."""
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    if not a > 0:
        raise ValueError(f"inadmissible exponent a={a}")
    g, dg = core_values(r, a, eps1.wave)
    return RadialSolution(float(g), float(dg), "core")


def outer_solution(r: float, a: float, eps2: RegionEnergy) -> RadialSolution:
    """Decaying shell solution r**a e^{-b r} U(a, 2a; 2 b r) at radius ``r``."""
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    if not a > 0:
        raise ValueError(f"inadmissible exponent a={a}")
    if not eps2.eps > 0:
        raise ValueError(f"eps2={eps2.eps} <= 0: energy outside the bound window")
    g, dg = shell_values(r, a, eps2.wave.real)
    return RadialSolution(float(g), float(dg), "shell")


def _weights(cfg: WellConfig) -> tuple[float, float]:
    if cfg.matching == "weighted":
        return 1.0 / cfg.m1, 1.0 / cfg.m2
    return 1.0, 1.0


def determinant_terms(E, cfg: WellConfig, a: float):
    """Vectorised matching data at r0: (D, g1, dg1, g2, dg2) for energies ``E``.

    D = w1 G1'(r0) G2(r0) - w2 G2'(r0) G1(r0) with w_i = 1/m_i (weighted) or 1.
    """
    E = np.asarray(E, dtype=float)
    lo, hi = bound_window(cfg)
    if np.any((E <= lo) | (E >= hi)):
        raise ValueError(f"energy outside the open bound window ({lo}, {hi})")
    eps1 = cfg.m1**2 - (E + cfg.V0) ** 2
    eps2 = cfg.m2**2 - (E - cfg.V0) ** 2
    wave1 = np.sqrt(eps1.astype(np.complex128))
    g1, dg1 = core_values(cfg.r0, a, wave1)
    g2, dg2 = shell_values(cfg.r0, a, np.sqrt(eps2))
    w1, w2 = _weights(cfg)
    D = w1 * dg1 * g2 - w2 * dg2 * g1
    return D, g1, dg1, g2, dg2


def normalized_residual(D, g1, dg1, g2, dg2, cfg: WellConfig):
    """|D| relative to the magnitude of its two terms."""
    w1, w2 = _weights(cfg)
    scale = np.abs(w1 * dg1 * g2) + np.abs(w2 * dg2 * g1)
    return np.abs(D) / np.where(scale > 0, scale, 1.0)


def matching_determinant(E: float, cfg: WellConfig, branch: BranchExponent) -> MatchingPoint:
    """Matching determinant at trial energy E; its zeros are the bound states."""
    D, g1, dg1, g2, dg2 = determinant_terms(E, cfg, branch.a)
    return MatchingPoint(
        float(E),
        float(D),
        RadialSolution(float(g1), float(dg1), "core"),
        RadialSolution(float(g2), float(dg2), "shell"),
    )


def composite_values(r, cfg: WellConfig, a: float, E: float):
    """Matched G on an r-grid: core solution inside, shell solution scaled to be
    continuous at r0 outside."""
    r = np.asarray(r, dtype=float)
    core = region_energy(E, cfg, "core")
    shell = region_energy(E, cfg, "shell")
    inside = r < cfg.r0
    g = np.empty_like(r)
    dg = np.empty_like(r)
    if np.any(inside):
        g[inside], dg[inside] = core_values(r[inside], a, core.wave)
    if np.any(~inside):
        g1, _ = core_values(cfg.r0, a, core.wave)
        g2, _ = shell_values(cfg.r0, a, shell.wave.real)
        s, ds = shell_values(r[~inside], a, shell.wave.real)
        scale = g1 / g2
        g[~inside] = scale * s
        dg[~inside] = scale * ds
    return g, dg


def reconstruct_upper_spinor(r: float, G: RadialSolution, cfg: WellConfig, E: float) -> float:
    """Upper component F from the lower one.

    F = [G' - (kappa / r) G + U(r) G] / (m0 - E + Sigma0), U(r) = -U0 / r,
    with m0 the rest mass of the region containing ``r``.
    """
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    m0 = cfg.m1 if r < cfg.r0 else cfg.m2
    denom = m0 - E + cfg.sigma0
    if denom == 0:
        raise ZeroDivisionError(
            f"spinor-singular energy E={E}: m0 - E + sigma0 vanishes (m0={m0})"
        )
    tensor = -cfg.U0 / r
    return (G.derivative - (cfg.kappa / r) * G.value + tensor * G.value) / denom
