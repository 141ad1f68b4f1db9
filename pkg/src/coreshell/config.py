"""INI-style run configuration.

    [well]
    m1 = 1.5
    m2 = 1.75
    V0 = 1.0
    r0 = 4.0            ; or r0_start / r0_stop / r0_step for sweeps
    U0 = 0.0
    kappa = 0           ; comma-separated list allowed for solve/sweep
    sigma0 = 0.0

    [solver]
    n_max = 10
    scan_points = 2000
    tol_E = 1e-10
    matching = weighted ; or plain

    [output]
    dir = out
    plots = true

    [compare]           ; second channel for the degeneracy command
    kappa = 0
    U0 = 1.0
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .well import MATCHING_MODES, WellConfig

KNOWN = {
    "well": {"m1", "m2", "v0", "r0", "r0_start", "r0_stop", "r0_step", "u0", "kappa", "sigma0"},
    "solver": {"n_max", "scan_points", "tol_e", "matching"},
    "output": {"dir", "plots"},
    "compare": {"kappa", "u0"},
}


class ConfigError(ValueError):
    """Invalid configuration; the message lists every problem found."""


@dataclass
class RunConfig:
    base: WellConfig
    kappas: list[int]
    r0_grid: list[float] | None
    n_max: int = 10
    scan_points: int = 2000
    tol_E: float = 1e-10
    out_dir: str = "out"
    plots: bool = True
    compare: dict = field(default_factory=dict)


class _Reader:
    def __init__(self, parser, path):
        self.parser = parser
        self.path = path
        self.errors: list[str] = []

    def _where(self, section, key):
        return f"{self.path}: [{section}] {key}"

    def get(self, section, key, kind, default=None, required=False, check=None, what=""):
        if not self.parser.has_option(section, key):
            if required:
                self.errors.append(f"{self._where(section, key)}: missing required value")
            return default
        raw = self.parser.get(section, key).strip()
        try:
            value = kind(raw)
        except ValueError:
            self.errors.append(f"{self._where(section, key)}: cannot parse {raw!r} as {kind.__name__}")
            return default
        if isinstance(value, float) and not math.isfinite(value):
            self.errors.append(f"{self._where(section, key)}: must be finite, got {raw!r}")
            return default
        if check is not None and not check(value):
            self.errors.append(f"{self._where(section, key)}: {what}, got {raw!r}")
            return default
        return value


def _int(raw: str) -> int:
    return int(raw)


def _int_list(raw: str) -> list:
    items = [item.strip() for item in raw.split(",") if item.strip()]
    if not items:
        raise ValueError(raw)
    return [int(item) for item in items]


def _bool(raw: str) -> bool:
    low = raw.lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(raw)


def _float(raw: str) -> float:
    return float(raw)


def _str(raw: str) -> str:
    return raw


_float.__name__ = "number"
_int.__name__ = "integer"
_int_list.__name__ = "integer list"
_bool.__name__ = "boolean"


def _syntax_message(exc: configparser.Error, path: str) -> str:
    lineno = getattr(exc, "lineno", None)
    if isinstance(exc, configparser.DuplicateOptionError):
        what = f"[{exc.section}] {exc.option}: duplicate key"
    elif isinstance(exc, configparser.DuplicateSectionError):
        what = f"[{exc.section}]: duplicate section"
    elif isinstance(exc, configparser.MissingSectionHeaderError):
        what = "expected a [section] header"
    else:
        what = exc.message.splitlines()[0]
    return f"{path}: line {lineno}: {what}" if lineno else f"{path}: {what}"


def parse_config(text: str, path: str = "<config>") -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text, source=path)
    except configparser.Error as exc:
        raise ConfigError(_syntax_message(exc, path)) from None
    errors = []
    for section in parser.sections():
        if section not in KNOWN:
            errors.append(f"{path}: unknown section [{section}]")
            continue
        for key in parser.options(section):
            if key not in KNOWN[section]:
                errors.append(f"{path}: [{section}] {key}: unknown key")
    if not parser.has_section("well"):
        raise ConfigError("\n".join(errors + [f"{path}: missing [well] section"]))

    rd = _Reader(parser, path)
    positive = dict(check=lambda v: v > 0, what="must be positive")
    m1 = rd.get("well", "m1", _float, required=True, **positive)
    m2 = rd.get("well", "m2", _float, required=True, **positive)
    V0 = rd.get("well", "V0", _float, required=True)
    U0 = rd.get("well", "U0", _float, default=0.0)
    sigma0 = rd.get("well", "sigma0", _float, default=0.0)
    kappas = rd.get("well", "kappa", _int_list, default=[0])
    r0 = rd.get("well", "r0", _float, **positive)
    r0_start = rd.get("well", "r0_start", _float, **positive)
    r0_stop = rd.get("well", "r0_stop", _float, **positive)
    r0_step = rd.get("well", "r0_step", _float, **positive)
    n_max = rd.get("solver", "n_max", _int, default=10, check=lambda v: v >= 0, what="must be >= 0")
    scan_points = rd.get("solver", "scan_points", _int, default=2000, check=lambda v: v >= 10, what="must be >= 10")
    tol_E = rd.get("solver", "tol_E", _float, default=1e-10, **positive)
    matching = rd.get(
        "solver", "matching", _str, default="weighted",
        check=lambda v: v in MATCHING_MODES, what=f"must be one of {', '.join(MATCHING_MODES)}",
    )
    out_dir = rd.get("output", "dir", _str, default="out")
    plots = rd.get("output", "plots", _bool, default=True)
    compare = {}
    if parser.has_section("compare"):
        compare["kappa"] = rd.get("compare", "kappa", _int, default=None)
        compare["U0"] = rd.get("compare", "U0", _float, default=None)
    errors += rd.errors

    r0_grid = None
    sweep_keys = (r0_start, r0_stop, r0_step)
    if any(v is not None for v in sweep_keys):
        if any(v is None for v in sweep_keys):
            errors.append(f"{path}: [well] r0_start, r0_stop and r0_step must be given together")
        elif r0_stop < r0_start:
            errors.append(f"{path}: [well] r0_stop must not be below r0_start")
        else:
            count = int(math.floor((r0_stop - r0_start) / r0_step + 1e-9)) + 1
            # rounding keeps grid values identical across platforms and runs
            r0_grid = [float(v) for v in np.round(r0_start + r0_step * np.arange(count), 12)]
    if r0 is None and r0_grid is None and not rd.errors:
        errors.append(f"{path}: [well] needs r0 or r0_start/r0_stop/r0_step")
    if errors:
        raise ConfigError("\n".join(errors))

    base = WellConfig(m1, m2, V0, r0 if r0 is not None else r0_grid[0], U0, kappas[0], sigma0, matching)
    return RunConfig(base, kappas, r0_grid, n_max, scan_points, tol_E, out_dir, plots, compare)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return parse_config(text, str(path))
