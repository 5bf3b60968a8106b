"""Single-scenario runs, parameter sweeps, and their serialized forms."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from itertools import product
from typing import Any, Optional

from quantum_otto.afterburner import (
    AfterburnerReport,
    EntropyLedger,
    afterburner_report,
    second_law_audit,
)
from quantum_otto.config import ScenarioConfig
from quantum_otto.errors import ConfigError, DomainError
from quantum_otto.internal_states import LevelSystem
from quantum_otto.otto_core import ClassicalCycleReport, GasSpec, classical_cycle

MAX_AXES = 2
GAS_PARAMS = ("T1", "T3", "R", "Cv", "N")
LEVEL_PARAMS = ("eps_a", "eps_b", "eps_c")


@dataclass(frozen=True)
class CycleReport:
    gas: GasSpec
    levels: LevelSystem
    classical: ClassicalCycleReport
    afterburner: AfterburnerReport
    audit: EntropyLedger
    flags: tuple[str, ...]

    @property
    def gain(self) -> float:
        return self.afterburner.eta_qo - self.classical.eta0

    def to_dict(self) -> dict[str, Any]:
        return {
            "parameters": _parameters(self.gas, self.levels),
            "classical": asdict(self.classical),
            "afterburner": asdict(self.afterburner),
            "audit": asdict(self.audit),
            "flags": list(self.flags),
        }

    def flat(self) -> dict[str, Any]:
        """One-level mapping used for CSV rows."""
        out: dict[str, Any] = {}
        for section in ("parameters", "classical", "afterburner", "audit"):
            out.update(self.to_dict()[section])
        out["gain"] = self.gain
        out["flags"] = ";".join(self.flags)
        return out


def _parameters(gas: GasSpec, levels: LevelSystem) -> dict[str, float]:
    return {
        "T1": gas.T1,
        "T3": gas.T3,
        "R": gas.R,
        "Cv": gas.Cv,
        "N": gas.N,
        "eps_a": levels.eps_a,
        "eps_b": levels.eps_b,
        "eps_c": levels.eps_c,
    }


def evaluate(gas: GasSpec, levels: LevelSystem) -> CycleReport:
    classical = classical_cycle(gas)
    ab = afterburner_report(levels, gas, classical)
    audit = second_law_audit(gas, levels, classical, ab)
    flags = []
    if not classical.net_positive_work:
        flags.append("non_positive_net_work")
    if not ab.inversion:
        flags.append("no_inversion")
    if not audit.consistent:
        flags.append("second_law_violation")
    return CycleReport(gas, levels, classical, ab, audit, tuple(flags))


def run_scenario(config: ScenarioConfig) -> CycleReport:
    """Evaluate the configured base point; any sweep axes are ignored."""
    return evaluate(config.gas, config.levels)


def report_json(report: CycleReport) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"


# -- sweeps ------------------------------------------------------------------


def config_at(config: ScenarioConfig, point: dict[str, float]) -> ScenarioConfig:
    """Base config with the swept parameters substituted and no sweep axes."""
    gas, levels = config.gas, config.levels
    gas_over = {k: v for k, v in point.items() if k in GAS_PARAMS}
    level_over = {k: v for k, v in point.items() if k in LEVEL_PARAMS}
    if gas_over:
        kwargs = {k: getattr(gas, k) for k in ("T1", "T3", "Cv", "N")}
        if gas.from_volumes and "R" not in gas_over:
            kwargs.update(V1=gas.V1, V2=gas.V2, gamma=gas.gamma)
        else:
            kwargs["R"] = gas.R
        kwargs.update(gas_over)
        gas = GasSpec(**kwargs)
    if level_over:
        levels = LevelSystem(**{**asdict(levels), **level_over})
    return replace(config, gas=gas, levels=levels, sweep=())


@dataclass(frozen=True)
class SweepRow:
    index: int
    point: dict[str, float]
    report: Optional[CycleReport]
    error: Optional[str] = None


@dataclass(frozen=True)
class SweepResult:
    axes: tuple[str, ...]
    rows: list[SweepRow]
    argmax: Optional[int]  # row index with the largest eta_qo - eta0

    def argmax_record(self) -> dict[str, Any]:
        if self.argmax is None:
            return {"index": None}
        row = self.rows[self.argmax]
        return {"index": row.index, "point": row.point, "gain": row.report.gain,
                "report": row.report.to_dict()}


def _evaluate_point(args: tuple[ScenarioConfig, int, dict[str, float]]) -> SweepRow:
    config, index, point = args
    try:
        report = run_scenario(config_at(config, point))
    except DomainError as exc:
        return SweepRow(index, point, None, str(exc))
    return SweepRow(index, point, report)


def sweep_points(config: ScenarioConfig) -> list[dict[str, float]]:
    """Grid points in row-major order (last axis varies fastest)."""
    names = [axis.name for axis in config.sweep]
    return [dict(zip(names, combo)) for combo in product(*(a.values for a in config.sweep))]


def run_sweep(config: ScenarioConfig, workers: int = 1) -> SweepResult:
    """Evaluate every grid point; failing points become rows carrying an error.

    Rows come back in row-major order whatever ``workers`` is, so the output
    does not depend on parallelism.
    """
    if not config.sweep:
        raise ConfigError(["sweep: no axes defined"])
    if len(config.sweep) > MAX_AXES:
        raise ConfigError([f"sweep: {len(config.sweep)} axes given, at most {MAX_AXES} supported"])
    jobs = [(config, i, point) for i, point in enumerate(sweep_points(config))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_point, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_evaluate_point(job) for job in jobs]

    best = None
    for row in rows:
        if row.report is not None and (best is None or row.report.gain > rows[best].report.gain):
            best = row.index
    return SweepResult(tuple(a.name for a in config.sweep), rows, best)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def table_csv(reports: list[SweepRow], axes: tuple[str, ...] = ()) -> str:
    """CSV with one row per grid point; failed points fill only the error column."""
    columns: list[str] = ["index", *axes]
    template = next((r.report for r in reports if r.report is not None), None)
    report_cols = [c for c in template.flat() if c not in axes] if template is not None else []
    columns += report_cols + ["error"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in reports:
        values = {"index": row.index, **row.point, "error": row.error}
        if row.report is not None:
            values.update(row.report.flat())
        writer.writerow([_cell(values.get(c)) for c in columns])
    return buf.getvalue()


def report_csv(report: CycleReport) -> str:
    return table_csv([SweepRow(0, {}, report)])


def sweep_json(result: SweepResult) -> str:
    payload = {
        "axes": list(result.axes),
        "rows": [
            {"index": r.index, "point": r.point,
             "report": r.report.to_dict() if r.report is not None else None,
             "error": r.error}
            for r in result.rows
        ],
        "argmax": result.argmax_record(),
    }
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"
