"""Scenario documents: a flat INI-style file with fixed sections.

Example::

    [gas]
    T1 = 600
    T3 = 300
    R = 1.5          # or V1, V2, gamma
    Cv = 1
    N = 1

    [levels]
    eps_a = 11
    eps_b = 1
    eps_c = 0

    [cavity]         # optional
    T_cavity = 300   # defaults to T3
    A = 1
    B = 10
    C = 0.5
    n_bar_l = 1

    [sweep]          # optional, at most two axes: name = start, stop, steps
    T3 = 0.01, 1.0, 50

    [output]
    dir = out
    format = json

    [solver]
    tol = 1e-12
    max_passes = 10000
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from quantum_otto.afterburner import DEFAULT_MAX_PASSES, DEFAULT_TOL
from quantum_otto.cavity_fields import DEFAULT_N_MAX, LaserGainParams, thermal_photon_mean
from quantum_otto.errors import ConfigError, DomainError
from quantum_otto.internal_states import LevelSystem
from quantum_otto.otto_core import GasSpec

SWEEPABLE = ("T1", "T3", "R", "eps_a", "eps_b", "eps_c", "Cv", "N")
GAS_KEYS = ("T1", "T3", "R", "V1", "V2", "gamma", "Cv", "N")
LEVEL_KEYS = ("eps_a", "eps_b", "eps_c")
CAVITY_KEYS = ("T_cavity", "nu_maser", "n_bar_m", "A", "B", "C", "n_bar_l", "n_max")
OUTPUT_KEYS = ("dir", "format", "points_per_segment")
SOLVER_KEYS = ("tol", "max_passes")
FORMATS = ("json", "csv")
SECTIONS = {
    "gas": GAS_KEYS,
    "levels": LEVEL_KEYS,
    "cavity": CAVITY_KEYS,
    "sweep": SWEEPABLE,
    "output": OUTPUT_KEYS,
    "solver": SOLVER_KEYS,
}


@dataclass(frozen=True)
class CavityConfig:
    """Cavity field settings. Unset temperatures and frequencies follow the gas and levels."""

    T_cavity: Optional[float] = None
    nu_maser: Optional[float] = None
    n_bar_m: Optional[float] = None
    A: Optional[float] = None
    B: Optional[float] = None
    C: Optional[float] = None
    n_bar_l: Optional[float] = None
    n_max: int = DEFAULT_N_MAX

    @property
    def has_laser(self) -> bool:
        return self.A is not None

    def temperature(self, gas: GasSpec) -> float:
        return self.T_cavity if self.T_cavity is not None else gas.T3

    def maser_mean(self, gas: GasSpec, levels: LevelSystem) -> float:
        if self.n_bar_m is not None:
            return self.n_bar_m
        nu = self.nu_maser if self.nu_maser is not None else levels.eps_bc
        return thermal_photon_mean(nu, self.temperature(gas))

    def laser_params(self, gas: GasSpec, levels: LevelSystem) -> Optional[LaserGainParams]:
        if not self.has_laser:
            return None
        n_bar_l = self.n_bar_l
        if n_bar_l is None:
            n_bar_l = thermal_photon_mean(levels.eps_ab, self.temperature(gas))
        return LaserGainParams(self.A, self.B, self.C, n_bar_l)


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    steps: int

    @property
    def values(self) -> list[float]:
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]


@dataclass(frozen=True)
class OutputConfig:
    dir: str = "."
    format: str = "json"
    points_per_segment: int = 50


@dataclass(frozen=True)
class SolverConfig:
    tol: float = DEFAULT_TOL
    max_passes: int = DEFAULT_MAX_PASSES


@dataclass(frozen=True)
class ScenarioConfig:
    gas: GasSpec
    levels: LevelSystem
    cavity: Optional[CavityConfig] = None
    sweep: tuple[SweepAxis, ...] = ()
    output: OutputConfig = field(default_factory=OutputConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)


def _number(raw: str, where: str, problems: list[str]) -> Optional[float]:
    try:
        value = float(raw)
    except ValueError:
        problems.append(f"{where}: {raw!r} is not a number")
        return None
    if not math.isfinite(value):
        problems.append(f"{where}: {raw!r} is not finite")
        return None
    return value


def _integer(raw: str, where: str, problems: list[str]) -> Optional[int]:
    value = _number(raw, where, problems)
    if value is None:
        return None
    if value != int(value):
        problems.append(f"{where}: {raw!r} is not an integer")
        return None
    return int(value)


def _build(factory, where: str, problems: list[str], **kwargs):
    try:
        return factory(**kwargs)
    except DomainError as exc:
        prefix = where if exc.param in (None, where) else f"{where}.{exc.param}"
        problems.append(f"{prefix}: {exc.args[0]}")
        return None


def _read(text: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";"), empty_lines_in_values=False
    )
    parser.optionxform = str  # keys are case-sensitive (T1 vs t1)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError([f"syntax: {exc}"]) from exc
    return parser


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario document, reporting every problem at once."""
    parser = _read(text)
    problems: list[str] = []

    for section in parser.sections():
        if section not in SECTIONS:
            problems.append(f"[{section}]: unknown section")
            continue
        for key in parser[section]:
            if key not in SECTIONS[section]:
                problems.append(f"{section}.{key}: unknown key")

    def numbers(section: str, keys) -> dict[str, float]:
        if not parser.has_section(section):
            return {}
        out = {}
        for key in keys:
            if key in parser[section]:
                value = _number(parser[section][key], f"{section}.{key}", problems)
                if value is not None:
                    out[key] = value
        return out

    def require(section: str, values: dict, keys) -> bool:
        ok = True
        for key in keys:
            if key not in values and not (
                parser.has_section(section) and key in parser[section]
            ):
                problems.append(f"{section}.{key}: missing required key")
                ok = False
        return ok

    # [gas]
    gas = None
    if not parser.has_section("gas"):
        problems.append("[gas]: missing required section")
    else:
        g = numbers("gas", GAS_KEYS)
        if require("gas", g, ("T1", "T3")) and len(g) == len(
            [k for k in parser["gas"] if k in GAS_KEYS]
        ):
            if "R" not in g and not any(k in g for k in ("V1", "V2", "gamma")):
                problems.append("gas.R: missing required key (or give V1, V2, gamma)")
            else:
                gas = _build(GasSpec, "gas", problems, **g)

    # [levels]
    levels = None
    if not parser.has_section("levels"):
        problems.append("[levels]: missing required section")
    else:
        lv = numbers("levels", LEVEL_KEYS)
        if require("levels", lv, LEVEL_KEYS) and len(lv) == 3:
            levels = _build(LevelSystem, "levels", problems, **lv)

    # [cavity]
    cavity = None
    if parser.has_section("cavity"):
        c = numbers("cavity", [k for k in CAVITY_KEYS if k != "n_max"])
        n_max = DEFAULT_N_MAX
        if "n_max" in parser["cavity"]:
            n_max = _integer(parser["cavity"]["n_max"], "cavity.n_max", problems)
            if n_max is not None and n_max < 1:
                problems.append(f"cavity.n_max: must be >= 1, got {n_max}")
        laser_keys = [k for k in ("A", "B", "C") if k in c]
        if laser_keys and len(laser_keys) < 3:
            missing = sorted({"A", "B", "C"} - set(laser_keys))
            problems.append(f"cavity: laser gain needs A, B and C together (missing {', '.join(missing)})")
        for key in ("T_cavity", "nu_maser"):
            if key in c and not c[key] > 0:
                problems.append(f"cavity.{key}: must be positive, got {c[key]!r}")
        if "n_bar_m" in c and c["n_bar_m"] < 0:
            problems.append(f"cavity.n_bar_m: must be >= 0, got {c['n_bar_m']!r}")
        if len(laser_keys) == 3:
            _build(LaserGainParams, "cavity", problems,
                   A=c["A"], B=c["B"], C=c["C"], n_bar_l=c.get("n_bar_l", 0.0))
        if n_max is not None:
            cavity = CavityConfig(n_max=n_max, **c)

    # [sweep]
    axes: list[SweepAxis] = []
    if parser.has_section("sweep"):
        for key, raw in parser["sweep"].items():
            if key not in SWEEPABLE:
                continue  # already reported as unknown
            where = f"sweep.{key}"
            parts = [p.strip() for p in raw.split(",")]
            if len(parts) != 3:
                problems.append(f"{where}: expected 'start, stop, steps', got {raw!r}")
                continue
            start = _number(parts[0], where, problems)
            stop = _number(parts[1], where, problems)
            steps = _integer(parts[2], where, problems)
            if steps is not None and steps < 1:
                problems.append(f"{where}: steps must be >= 1, got {steps}")
                continue
            if None not in (start, stop, steps):
                axes.append(SweepAxis(key, start, stop, steps))

    # [output]
    output = OutputConfig()
    if parser.has_section("output"):
        sec = parser["output"]
        fmt = sec.get("format", output.format).strip()
        if fmt not in FORMATS:
            problems.append(f"output.format: must be one of {FORMATS}, got {fmt!r}")
        pps = output.points_per_segment
        if "points_per_segment" in sec:
            pps = _integer(sec["points_per_segment"], "output.points_per_segment", problems)
            if pps is not None and pps < 2:
                problems.append(f"output.points_per_segment: must be >= 2, got {pps}")
        output = OutputConfig(dir=sec.get("dir", output.dir).strip(), format=fmt,
                              points_per_segment=pps if pps is not None else output.points_per_segment)

    # [solver]
    solver = SolverConfig()
    if parser.has_section("solver"):
        sec = parser["solver"]
        tol, max_passes = solver.tol, solver.max_passes
        if "tol" in sec:
            tol = _number(sec["tol"], "solver.tol", problems)
            if tol is not None and not tol > 0:
                problems.append(f"solver.tol: must be positive, got {tol!r}")
        if "max_passes" in sec:
            max_passes = _integer(sec["max_passes"], "solver.max_passes", problems)
            if max_passes is not None and max_passes < 1:
                problems.append(f"solver.max_passes: must be >= 1, got {max_passes}")
        if tol is not None and max_passes is not None:
            solver = SolverConfig(tol=tol, max_passes=max_passes)

    if problems:
        raise ConfigError(problems)
    return ScenarioConfig(gas=gas, levels=levels, cavity=cavity, sweep=tuple(axes),
                          output=output, solver=solver)


def serialize_config(config: ScenarioConfig) -> str:
    """Inverse of ``parse_config``; floats are written with repr so they round-trip."""
    lines = ["[gas]"]
    gas = config.gas
    lines += [f"T1 = {gas.T1!r}", f"T3 = {gas.T3!r}"]
    if gas.from_volumes:
        lines += [f"V1 = {gas.V1!r}", f"V2 = {gas.V2!r}", f"gamma = {gas.gamma!r}"]
    else:
        lines.append(f"R = {gas.R!r}")
    lines += [f"Cv = {gas.Cv!r}", f"N = {gas.N!r}", "", "[levels]"]
    lines += [f"{k} = {getattr(config.levels, k)!r}" for k in LEVEL_KEYS]
    if config.cavity is not None:
        lines += ["", "[cavity]"]
        for key in CAVITY_KEYS:
            value = getattr(config.cavity, key)
            if value is not None:
                lines.append(f"{key} = {value!r}")
    if config.sweep:
        lines += ["", "[sweep]"]
        lines += [f"{a.name} = {a.start!r}, {a.stop!r}, {a.steps}" for a in config.sweep]
    out = config.output
    lines += ["", "[output]", f"dir = {out.dir}", f"format = {out.format}",
              f"points_per_segment = {out.points_per_segment}"]
    lines += ["", "[solver]", f"tol = {config.solver.tol!r}",
              f"max_passes = {config.solver.max_passes}"]
    return "\n".join(lines) + "\n"
