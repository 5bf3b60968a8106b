"""CSV data behind the T-S diagram, the population trace and the cavity fields.

Rendering is left to downstream tools; every file is UTF-8, comma-delimited,
with a header row and a trailing newline.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

from quantum_otto.afterburner import PassLedger, cold_pin, iterate_passes
from quantum_otto.cavity_fields import PhotonDistribution, laser_distribution, thermal_distribution
from quantum_otto.config import ScenarioConfig
from quantum_otto.internal_states import Populations, boltzmann_populations, internal_entropy
from quantum_otto.otto_core import TSPoint, ts_diagram

TS_FILE = "fig2_ts.csv"
POPULATIONS_FILE = "fig3_populations.csv"
TRACE_FILE = "pass_trace.csv"
MASER_FILE = "photon_maser.csv"
LASER_FILE = "photon_laser.csv"


def _fmt(value) -> str:
    return repr(float(value)) if isinstance(value, float) else str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def write_ts_csv(points: Sequence[TSPoint], path: Path) -> Path:
    return write_csv(path, ("stage_label", "S_total", "T"), ((p.stage, p.S, p.T) for p in points))


def write_populations_csv(ledger: PassLedger, path: Path) -> Path:
    return write_csv(path, ("pass", "p_a", "p_b", "p_c"), (row[:4] for row in ledger.rows()))


def write_trace_csv(ledger: PassLedger, path: Path) -> Path:
    return write_csv(path, ("pass", "p_a", "p_b", "p_c", "laser_cum", "maser_cum"), ledger.rows())


def write_photon_csv(dist: PhotonDistribution, path: Path) -> Path:
    return write_csv(path, ("n", "probability"), ((n, float(p)) for n, p in enumerate(dist.probs)))


def scenario_ledger(config: ScenarioConfig) -> PassLedger:
    """Pass trace starting from the hot thermal populations."""
    hot = boltzmann_populations(config.levels, config.gas.T1)
    p_b3 = cold_pin(config.levels, config.gas.T3)
    return iterate_passes(hot, p_b3, config.solver.tol, config.solver.max_passes)


def scenario_ts(config: ScenarioConfig) -> list[TSPoint]:
    gas, levels = config.gas, config.levels
    hot = boltzmann_populations(levels, gas.T1)
    fixed = Populations.fixed_point(cold_pin(levels, gas.T3))
    internal = (internal_entropy(hot, gas.N), internal_entropy(fixed, gas.N))
    return ts_diagram(gas, internal, config.output.points_per_segment)


def emit_figures(config: ScenarioConfig, out_dir: Path) -> list[Path]:
    """Write every figure-data file the scenario supports into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ledger = scenario_ledger(config)
    written = [
        write_ts_csv(scenario_ts(config), out_dir / TS_FILE),
        write_populations_csv(ledger, out_dir / POPULATIONS_FILE),
        write_trace_csv(ledger, out_dir / TRACE_FILE),
    ]
    cavity = config.cavity
    if cavity is not None:
        n_bar = cavity.maser_mean(config.gas, config.levels)
        written.append(write_photon_csv(thermal_distribution(n_bar, cavity.n_max), out_dir / MASER_FILE))
        params = cavity.laser_params(config.gas, config.levels)
        if params is not None:
            written.append(write_photon_csv(laser_distribution(params, cavity.n_max), out_dir / LASER_FILE))
    return written
