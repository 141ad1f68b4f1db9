"""Bound states of Dirac particles in a spherical core/shell well.

Pseudospin-symmetric lower spinor, Coulomb-type tensor interaction, two-region
step in rest mass and scalar potential.
"""
from .classify import LevelClass, Transition, classify_level_curve, transition_energies
from .oracle import ShootingGrid, shoot_eigenvalues
from .radial import (
    MatchingPoint,
    RadialSolution,
    inner_solution,
    matching_determinant,
    outer_solution,
    reconstruct_upper_spinor,
)
from .spectrum import (
    DegeneracyReport,
    EigenResult,
    LevelCurve,
    SolverWarning,
    count_nodes,
    degeneracy_report,
    find_levels,
    sweep_well_width,
)
from .well import (
    BranchExponent,
    RegionEnergy,
    WellConfig,
    admissible_branches,
    bound_window,
    radial_exponents,
    region_energy,
    tensor_strength_f,
)

__version__ = "0.1.0"
