"""Core/shell well configuration, exponent algebra and region energies.

Units are natural (hbar = c = 1): masses, energies and potentials in fm^-1,
lengths in fm.  The core (r < r0) carries rest mass m1 and scalar potential
-V0; the shell (r >= r0) carries m2 and +V0.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

Branch = Literal["plus", "minus"]
Region = Literal["core", "shell"]
MATCHING_MODES = ("weighted", "plain")

# a+ and a- closer than this are one (double) root
DOUBLE_ROOT_TOL = 1e-12


@dataclass(frozen=True)
class WellConfig:
    m1: float
    m2: float
    V0: float
    r0: float
    U0: float = 0.0
    kappa: int = 0
    sigma0: float = 0.0
    matching: str = "weighted"

    def __post_init__(self):
        for name in ("m1", "m2", "r0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        for name in ("V0", "U0", "sigma0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if isinstance(self.kappa, bool) or int(self.kappa) != self.kappa:
            raise ValueError(f"kappa must be an integer, got {self.kappa!r}")
        object.__setattr__(self, "kappa", int(self.kappa))
        if self.matching not in MATCHING_MODES:
            raise ValueError(f"matching must be one of {MATCHING_MODES}, got {self.matching!r}")

    def with_(self, **changes) -> "WellConfig":
        """Copy with some fields replaced."""
        fields = {k: getattr(self, k) for k in self.__dataclass_fields__}
        fields.update(changes)
        return WellConfig(**fields)


@dataclass(frozen=True)
class BranchExponent:
    """Admissible small-r power: G ~ r**a near the origin."""

    a: float
    branch: Branch


@dataclass(frozen=True)
class RegionEnergy:
    eps: float
    region: Region
    wave: complex


def tensor_strength_f(kappa: int, U0: float) -> float:
    """Centrifugal shift from the Coulomb tensor term, (2 kappa - 1) U0 + U0**2."""
    return U0 * (2 * kappa - 1 + U0)


def centrifugal_strength(kappa: int, U0: float) -> float:
    """kappa (kappa - 1) + f(U0), the coefficient of 1/r**2 in the radial equation."""
    return kappa * (kappa - 1) + tensor_strength_f(kappa, U0)


def radial_exponents(kappa: int, U0: float) -> tuple[float, float]:
    """Both roots of a (a - 1) = kappa (kappa - 1) + f(U0), largest first.

    The discriminant equals (kappa + U0 - 1/2)**2, so real inputs always give
    real roots; a rounding-level negative value is clamped to zero.
    """
    disc = 0.25 + centrifugal_strength(kappa, U0)
    if not math.isfinite(disc) or disc < -1e-12:
        raise ValueError(
            f"complex exponents for kappa={kappa}, U0={U0}: discriminant {disc:.6g} < 0"
        )
    root = math.sqrt(max(disc, 0.0))
    return 0.5 + root, 0.5 - root


def admissible_branches(kappa: int, U0: float) -> list[BranchExponent]:
    """Exponents with a > 0, i.e. solutions that vanish at the origin.

    A double root is returned once, tagged ``plus``.  An empty list means the
    channel has no regular solution (including the complex-exponent regime).
    """
    try:
        a_plus, a_minus = radial_exponents(kappa, U0)
    except ValueError:
        return []
    out = []
    if a_plus > 0:
        out.append(BranchExponent(a_plus, "plus"))
    if a_minus > 0 and a_plus - a_minus > DOUBLE_ROOT_TOL:
        out.append(BranchExponent(a_minus, "minus"))
    return out


def region_energy(E: float, cfg: WellConfig, region: Region) -> RegionEnergy:
    """eps_i and the wave parameter b = sqrt(eps_i) (i*sqrt(-eps_i) when eps_i < 0)."""
    if region == "core":
        eps = cfg.m1**2 - (E + cfg.V0) ** 2
    elif region == "shell":
        eps = cfg.m2**2 - (E - cfg.V0) ** 2
    else:
        raise ValueError(f"unknown region {region!r}")
    return RegionEnergy(eps, region, cmath.sqrt(complex(eps)))


def bound_window(cfg: WellConfig) -> tuple[float, float]:
    """Open energy interval with a decaying shell solution (eps_2 > 0)."""
    return cfg.V0 - cfg.m2, cfg.V0 + cfg.m2
