"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class DomainError(ValueError):
    """A physical input lies outside the domain of an operation.

    ``param`` names the offending parameter when it is known, so the CLI can
    point at the config key responsible.
    """

    def __init__(self, message: str, param: str | None = None):
        super().__init__(message)
        self.param = param

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.param}: {msg}" if self.param else msg


class ConvergenceError(RuntimeError):
    """Pass iteration did not settle within the allowed number of passes."""

    def __init__(self, message: str, ledger: Any):
        super().__init__(message)
        self.ledger = ledger


class ConfigError(ValueError):
    """A scenario document failed to parse or validate.

    All problems found are collected in ``problems`` rather than stopping at
    the first one.
    """

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {p}" for p in self.problems))
