"""Thermal statistics of the three-level internal states.

Natural units: k_B = hbar = 1, so energies and temperatures share a unit.
States are diagonal in the level basis; coherences never appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.optimize import brentq

from quantum_otto.errors import DomainError

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class LevelSystem:
    """Three internal levels with eps_a > eps_b > eps_c."""

    eps_a: float
    eps_b: float
    eps_c: float

    def __post_init__(self):
        values = (self.eps_a, self.eps_b, self.eps_c)
        if not all(math.isfinite(v) for v in values):
            raise DomainError("level energies must be finite", param="levels")
        if not (self.eps_a > self.eps_b > self.eps_c):
            raise DomainError(
                f"levels must be strictly ordered eps_a > eps_b > eps_c, got {values}",
                param="levels",
            )

    @property
    def energies(self) -> tuple[float, float, float]:
        return (self.eps_a, self.eps_b, self.eps_c)

    @property
    def eps_ab(self) -> float:
        return self.eps_a - self.eps_b

    @property
    def eps_bc(self) -> float:
        return self.eps_b - self.eps_c

    @property
    def eps_ac(self) -> float:
        # eps_ab + eps_bc rather than eps_a - eps_c so the gap identity is exact
        return self.eps_ab + self.eps_bc


@dataclass(frozen=True)
class Populations:
    """Diagonal occupation (p_a, p_b, p_c) of the internal levels."""

    p_a: float
    p_b: float
    p_c: float

    def __post_init__(self):
        values = (self.p_a, self.p_b, self.p_c)
        for name, p in zip(("p_a", "p_b", "p_c"), values):
            if not (0.0 <= p <= 1.0):
                raise DomainError(f"{name} = {p!r} is outside [0, 1]", param=name)
        total = math.fsum(values)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise DomainError(f"populations sum to {total!r}, not 1")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.p_a, self.p_b, self.p_c)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    @classmethod
    def uniform(cls) -> "Populations":
        return cls(1 / 3, 1 / 3, 1 / 3)

    @classmethod
    def fixed_point(cls, p_b3: float) -> "Populations":
        """The many-pass mixed state: a and b pinned at p_b3, the rest in c."""
        return cls(p_b3, p_b3, 1.0 - 2.0 * p_b3)


def _energies(levels: Union[LevelSystem, Sequence[float]]) -> tuple[float, float, float]:
    if isinstance(levels, LevelSystem):
        return levels.energies
    energies = tuple(float(e) for e in levels)
    if len(energies) != 3:
        raise DomainError(f"expected three level energies, got {len(energies)}", param="levels")
    return energies


def boltzmann_populations(levels: Union[LevelSystem, Sequence[float]], T: float) -> Populations:
    """Equilibrium populations exp(-eps/T)/Z at temperature ``T``.

    ``levels`` may also be a bare triple of energies, which admits the
    degenerate case (all weights equal) that ``LevelSystem`` rejects.
    """
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T!r}", param="T")
    energies = _energies(levels)
    # shift by the ground energy so the largest weight is exactly 1
    ground = min(energies)
    weights = [math.exp(-(e - ground) / T) for e in energies]
    Z = math.fsum(weights)
    p_a, p_b = weights[0] / Z, weights[1] / Z
    p_c = weights[2] / Z
    return Populations(p_a, p_b, p_c)


def internal_entropy(pop: Populations, N: float = 1.0) -> float:
    """Von Neumann entropy -N sum p ln p of a diagonal state (0 ln 0 = 0)."""
    return -N * math.fsum(p * math.log(p) for p in pop.as_tuple() if p > 0.0)


def internal_energy(levels: LevelSystem, pop: Populations, N: float = 1.0) -> float:
    return N * math.fsum(p * e for p, e in zip(pop.as_tuple(), levels.energies))


def temperature_for_population(
    levels: LevelSystem,
    level: str,
    target: float,
    T_lo: float = 1e-6,
    T_hi: float = 1e6,
) -> float:
    """Temperature at which the Boltzmann weight of ``level`` equals ``target``.

    The weight need not be monotone in T for the middle level, so the
    bracket [T_lo, T_hi] must enclose a single crossing.
    """
    index = {"a": 0, "b": 1, "c": 2}[level]

    def residual(T):
        return boltzmann_populations(levels, T).as_tuple()[index] - target

    lo, hi = residual(T_lo), residual(T_hi)
    if lo * hi > 0:
        raise DomainError(
            f"p_{level} = {target} is not bracketed on T in [{T_lo}, {T_hi}]", param="T"
        )
    return brentq(residual, T_lo, T_hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
