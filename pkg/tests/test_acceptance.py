"""Acceptance suite: one test per criterion, verdicts summarised at the end of the run."""
import math
import warnings

import numpy as np
import pytest

from coreshell.classify import ANOMALOUS, NORMAL, classify_level_curve, transition_energies
from coreshell.cli import run
from coreshell.oracle import shoot_eigenvalues
from coreshell.specfun import (
    decaying_companion,
    decaying_companion_derivative,
    kummer_m,
    kummer_m_derivative,
)
from coreshell.spectrum import SolverWarning, find_levels, sweep_well_width
from coreshell.well import WellConfig, admissible_branches, radial_exponents

N_ALL = 50
SWEEP_R0 = np.round(np.arange(1.0, 8.0 + 1e-9, 0.1), 12)


def _spectrum(cfg):
    """{a: [(n, E), ...]} over every admissible branch."""
    out = {}
    for br in admissible_branches(cfg.kappa, cfg.U0):
        out[round(br.a, 12)] = [(res.n, res.E) for res in find_levels(cfg, br, N_ALL)]
    return out


def _assert_same_spectrum(sa, sb, tol):
    assert sorted(sa) == sorted(sb)
    for a in sa:
        assert [n for n, _ in sa[a]] == [n for n, _ in sb[a]]
        for (_, ea), (_, eb) in zip(sa[a], sb[a]):
            assert abs(ea - eb) <= tol, (a, ea, eb)


def _sweep(cfg, branch):
    with warnings.catch_warnings():
        warnings.simplefilter("error", SolverWarning)
        return sweep_well_width(cfg, SWEEP_R0, branch, N_ALL)


@pytest.mark.criterion(1, "exponent algebra exactness")
def test_criterion_1_exponents():
    plus, minus = radial_exponents(0, 0.5)
    assert abs(plus - 0.5) <= 1e-12 and abs(minus - 0.5) <= 1e-12
    plus, minus = radial_exponents(0, 0.4)
    assert abs(plus - 0.6) <= 1e-12 and abs(minus - 0.4) <= 1e-12


@pytest.mark.criterion(2, "degeneracy lifted by the tensor term")
def test_criterion_2_degeneracy():
    base = WellConfig(m1=1.5, m2=1.75, V0=1.0, r0=2.0, kappa=0)
    split = 0.0
    for r0 in (2.0, 4.0, 6.0):
        cfg = base.with_(r0=r0)
        without = _spectrum(cfg.with_(U0=0.0))
        assert without and all(without.values())
        _assert_same_spectrum(without, _spectrum(cfg.with_(U0=1.0)), 1e-8)
        tensor = _spectrum(cfg.with_(U0=0.3))
        ref = sorted(E for levels in without.values() for _, E in levels)
        got = sorted(E for levels in tensor.values() for _, E in levels)
        # every U0=0.3 level sits away from the U0=0 ladder
        split = max(split, max(min(abs(e - r) for r in ref) for e in got))
    assert split > 1e-4


@pytest.mark.criterion(3, "level monotonicity over the well-width sweep")
def test_criterion_3_monotonicity():
    light = WellConfig(m1=1.5, m2=1.75, V0=1.0, r0=1.0, U0=0.0, kappa=0)
    heavy = light.with_(m1=1.75, m2=1.5)
    (branch,) = admissible_branches(0, 0.0)

    light_curves = _sweep(light, branch)
    assert light_curves
    assert all(classify_level_curve(c).tag == NORMAL for c in light_curves)

    heavy_curves = _sweep(heavy, branch)
    assert heavy_curves
    tags = [classify_level_curve(c).tag for c in heavy_curves]
    assert all(tag == ANOMALOUS for tag in tags), tags
    ground = min(heavy_curves, key=lambda c: c.energies[0])
    E = ground.energies
    assert E[0] < 0
    assert np.all(E < 0) and np.all(np.diff(E) > 0)
    assert abs(E[-1]) < abs(E[0])


@pytest.mark.criterion(4, "two-branch gap shrinks with well width")
def test_criterion_4_two_branches():
    cfg = WellConfig(m1=1.5, m2=1.75, V0=1.0, r0=1.0, U0=0.4, kappa=0)
    branches = {br.branch: br for br in admissible_branches(0, 0.4)}
    assert abs(branches["plus"].a - 0.6) < 1e-12 and abs(branches["minus"].a - 0.4) < 1e-12
    plus = _sweep(cfg, branches["plus"])
    minus = _sweep(cfg, branches["minus"])
    assert plus and minus
    ground_plus = next(c for c in plus if c.label[0] == 0)
    ground_minus = next(c for c in minus if c.label[0] == 0)
    gap = transition_energies(ground_minus, ground_plus)
    values = np.array([dE for _, dE in gap.points])
    assert len(values) == len(SWEEP_R0)
    assert np.all(values > 0)
    assert gap.trend == "decreasing"
    assert np.all(np.diff(values) < 0)


@pytest.mark.criterion(5, "analytic spectra agree with the shooting oracle")
def test_criterion_5_oracle():
    worst = 0.0
    for m1 in (1.5, 1.75):
        for r0 in (2.0, 4.0, 6.0):
            for U0 in (0.0, 0.4, 0.5):
                cfg = WellConfig(m1=m1, m2=1.75, V0=1.0, r0=r0, U0=U0, kappa=0)
                for br in admissible_branches(0, U0):
                    analytic = find_levels(cfg, br, N_ALL)
                    shot = shoot_eigenvalues(cfg, br, N_ALL)
                    assert [res.n for res in analytic] == [res.n for res in shot], (cfg, br)
                    for x, y in zip(analytic, shot):
                        worst = max(worst, abs(x.E - y.E))
    assert worst <= 1e-6


def _rel(x, ref):
    return abs(x - ref) / abs(ref)


@pytest.mark.criterion(6, "special-function suite")
def test_criterion_6_specfun():
    zs = np.linspace(-20.0, 20.0, 161)
    for a in (0.1, 0.4, 0.5, 0.6, 1.0, 3.7):
        for z in zs:
            assert _rel(kummer_m(a, a, z), math.exp(z)) <= 1e-12
        assert kummer_m(a, 2 * a, 0.0) == 1.0
        assert kummer_m(a, a + 1.3, 0.0) == 1.0

    for z in np.linspace(0.5, 40.0, 80):
        assert _rel(decaying_companion(1.0, 2.0, z), 1.0 / z) <= 1e-10

    for a in (0.4, 0.5, 0.6, 1.0, 2.5):
        b = 2 * a
        for z in (0.3, 1.0, 4.0, 12.0, 30.0, 60.0):
            m, dm = kummer_m(a, b, z), kummer_m_derivative(a, b, z)
            d2m = a / b * kummer_m_derivative(a + 1, b + 1, z)
            terms = np.array([z * d2m, (b - z) * dm, -a * m])
            assert abs(terms.sum()) / np.abs(terms).max() < 1e-6
            u, du = decaying_companion(a, b, z), decaying_companion_derivative(a, b, z)
            d2u = -a * decaying_companion_derivative(a + 1, b + 1, z)
            terms = np.array([z * d2u, (b - z) * du, -a * u])
            assert abs(terms.sum()) / np.abs(terms).max() < 1e-6

            h = 1e-3 * min(z, 1.0)
            # five-point central difference, O(h^4)
            fd_m = (kummer_m(a, b, z - 2 * h) - 8 * kummer_m(a, b, z - h) + 8 * kummer_m(a, b, z + h) - kummer_m(a, b, z + 2 * h)) / (12 * h)
            fd_u = (
                decaying_companion(a, b, z - 2 * h)
                - 8 * decaying_companion(a, b, z - h)
                + 8 * decaying_companion(a, b, z + h)
                - decaying_companion(a, b, z + 2 * h)
            ) / (12 * h)
            assert _rel(fd_m, dm) <= 1e-7
            assert _rel(fd_u, du) <= 1e-7


@pytest.mark.criterion(7, "tensor half-point symmetry")
def test_criterion_7_half_point():
    for U0 in (0.1, 0.25, 0.4):
        for r0 in (2.0, 4.0, 6.0):
            cfg = WellConfig(m1=1.5, m2=1.75, V0=1.0, r0=r0, kappa=0)
            lower = _spectrum(cfg.with_(U0=U0))
            assert lower and all(lower.values())
            _assert_same_spectrum(lower, _spectrum(cfg.with_(U0=1.0 - U0)), 1e-8)


SWEEP_CONFIG = """\
[well]
m1 = 1.5
m2 = 1.75
V0 = 1.0
r0_start = 1.0
r0_stop = 3.0
r0_step = 0.1
U0 = 0.4
kappa = 0, 1

[solver]
n_max = 3

[output]
plots = true
"""


def _body(path):
    return b"".join(line for line in path.read_bytes().splitlines(True) if not line.startswith(b"#"))


@pytest.mark.criterion(8, "repeated CLI sweeps are byte-identical")
def test_criterion_8_determinism(tmp_path):
    cfg = tmp_path / "sweep.ini"
    cfg.write_text(SWEEP_CONFIG)
    dirs = [tmp_path / "first", tmp_path / "second"]
    for out in dirs:
        assert run(["--config", str(cfg), "--command", "sweep", "--out", str(out), "--quiet"]) == 0
    for name in ("levels.csv", "transitions.csv"):
        first, second = (_body(out / name) for out in dirs)
        assert first.count(b"\n") > 10
        assert first == second
