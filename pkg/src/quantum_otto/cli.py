"""Command line front end: ``quantum-otto run|sweep|figures``.

Exit codes: 0 success, 1 config error, 2 physical-domain error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from quantum_otto.config import FORMATS, ScenarioConfig, parse_config
from quantum_otto.errors import ConfigError, ConvergenceError, DomainError
from quantum_otto.figures import emit_figures
from quantum_otto.scenario import report_csv, report_json, run_scenario, run_sweep, sweep_json, table_csv

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DOMAIN = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quantum-otto", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, type=Path, help="scenario file")
        p.add_argument("--out", type=Path, default=None, help="output directory (default: [output] dir)")

    run = sub.add_parser("run", help="evaluate one scenario")
    common(run)
    run.add_argument("--format", choices=FORMATS, default=None)

    sweep = sub.add_parser("sweep", help="evaluate a 1-D or 2-D parameter grid")
    common(sweep)
    sweep.add_argument("--format", choices=FORMATS, default=None)
    sweep.add_argument("--workers", type=int, default=1, help="parallel worker processes")

    figures = sub.add_parser("figures", help="write T-S, population and photon-statistics CSVs")
    common(figures)
    return parser


def _load(path: Path) -> ScenarioConfig:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError([f"cannot read {path}: {exc.strerror}"]) from exc
    return parse_config(text)


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def _dispatch(args: argparse.Namespace) -> list[Path]:
    config = _load(args.config)
    out = args.out if args.out is not None else Path(config.output.dir)
    fmt = getattr(args, "format", None) or config.output.format

    if args.command == "run":
        report = run_scenario(config)
        if fmt == "json":
            return [_write(out / "report.json", report_json(report))]
        return [_write(out / "report.csv", report_csv(report))]

    if args.command == "sweep":
        result = run_sweep(config, workers=args.workers)
        argmax = _write(out / "argmax.json", json.dumps(result.argmax_record(), indent=2) + "\n")
        if fmt == "json":
            return [_write(out / "sweep.json", sweep_json(result)), argmax]
        return [_write(out / "sweep.csv", table_csv(result.rows, result.axes)), argmax]

    return emit_figures(config, out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        written = _dispatch(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        where = exc.filename if exc.filename is not None else ""
        print(f"error: cannot write {where}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
