"""Ideal Otto cycle for the translational (external) degrees of freedom.

State chain used throughout::

    1 (T1, V1) -> 2 (T2, V2)      isentropic expansion, work Wg out
    2 -> 3 (T3, V2)               isochoric cooling, Q_out to the cold side
    3 -> 4 (T3, V2)               cavity extraction (internal states only)
    4 -> 5 (R*T3, V1)             isentropic compression, waste work Ww in
    5 -> 6 (T1, V1)               isochoric reheat, Q_in from the hot side
    6 -> 1                        internal reheat in the hot cavities

``T4`` in reports is the post-compression temperature R*T3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from quantum_otto.errors import DomainError

STAGES = ("1-2", "2-3", "3-4", "4-5", "5-6", "6-1")


def compression_ratio(V1: float, V2: float, gamma: float) -> float:
    """Isentropic temperature ratio R = (V1/V2)**(gamma - 1)."""
    if not V2 > 0:
        raise DomainError(f"V2 must be positive, got {V2!r}", param="V2")
    if not V1 >= V2:
        raise DomainError(f"need V1 >= V2, got V1={V1!r}, V2={V2!r}", param="V1")
    if not gamma > 1:
        raise DomainError(f"gamma must exceed 1, got {gamma!r}", param="gamma")
    return (V1 / V2) ** (gamma - 1.0)


@dataclass(frozen=True)
class GasSpec:
    """Working-gas parameters.

    Give either ``R`` directly or all of ``V1``, ``V2``, ``gamma``. R = 1 is
    admitted as the degenerate zero-work cycle.
    """

    T1: float
    T3: float
    R: Optional[float] = None
    Cv: float = 1.0
    N: float = 1.0
    V1: Optional[float] = None
    V2: Optional[float] = None
    gamma: Optional[float] = None

    def __post_init__(self):
        volumes = (self.V1, self.V2, self.gamma)
        if any(v is not None for v in volumes):
            if any(v is None for v in volumes):
                raise DomainError("V1, V2 and gamma must be given together", param="gamma")
            if self.R is not None:
                raise DomainError("give either R or (V1, V2, gamma), not both", param="R")
            object.__setattr__(self, "R", compression_ratio(self.V1, self.V2, self.gamma))
        elif self.R is None:
            raise DomainError("compression ratio R (or V1, V2, gamma) is required", param="R")
        if not (math.isfinite(self.T3) and self.T3 > 0):
            raise DomainError(f"T3 must be positive, got {self.T3!r}", param="T3")
        if not (math.isfinite(self.T1) and self.T1 > self.T3):
            raise DomainError(f"need T1 > T3, got T1={self.T1!r}, T3={self.T3!r}", param="T1")
        if not (math.isfinite(self.R) and self.R >= 1):
            raise DomainError(f"R must be >= 1, got {self.R!r}", param="R")
        if not (math.isfinite(self.Cv) and self.Cv > 0):
            raise DomainError(f"Cv must be positive, got {self.Cv!r}", param="Cv")
        if not (math.isfinite(self.N) and self.N > 0):
            raise DomainError(f"N must be positive, got {self.N!r}", param="N")

    @property
    def from_volumes(self) -> bool:
        return self.V1 is not None


@dataclass(frozen=True)
class ClassicalCycleReport:
    R: float
    T2: float
    T4: float
    Wg: float
    Ww: float
    Q_in: float
    Q_out: float
    eta0: float
    net_positive_work: bool


def classical_cycle(spec: GasSpec) -> ClassicalCycleReport:
    """Temperatures, works and heats of the ideal Otto loop.

    When T1 <= R*T3 the loop does no net positive work; values are still
    returned with ``net_positive_work`` cleared.
    """
    T1, T3, R, Cv = spec.T1, spec.T3, spec.R, spec.Cv
    T2 = T1 / R
    T4 = R * T3
    Wg = Cv * (T1 - T2)
    Ww = Cv * (R - 1.0) * T3
    Q_out = Cv * (T2 - T3)
    Q_in = Cv * (T1 - T4)
    eta0 = 1.0 - 1.0 / R
    return ClassicalCycleReport(
        R=R,
        T2=T2,
        T4=T4,
        Wg=Wg,
        Ww=Ww,
        Q_in=Q_in,
        Q_out=Q_out,
        eta0=eta0,
        net_positive_work=T1 > T4,
    )


class TSPoint(NamedTuple):
    stage: str
    S: float
    T: float


def external_entropy(spec: GasSpec, T: float, expanded: bool) -> float:
    """Translational entropy relative to S(T3, V2) = 0.

    ``expanded`` selects the V2 isochore (states 2-4); otherwise the V1
    isochore (states 5-6-1), which sits Cv ln R to the left at equal T.
    """
    S = spec.Cv * math.log(T / spec.T3)
    return S if expanded else S - spec.Cv * math.log(spec.R)


def ts_diagram(
    spec: GasSpec,
    internal_entropies: Optional[tuple[float, float]] = None,
    points_per_segment: int = 50,
) -> list[TSPoint]:
    """Closed T-S polyline of the cycle, total = external + internal entropy.

    ``internal_entropies`` is (S_int of states 1-3, S_int of states 4-6);
    when given, the cavity stages 3-4 and 6-1 become horizontal jumps.
    Every stage contributes ``points_per_segment`` points, endpoints included.
    """
    if points_per_segment < 2:
        raise DomainError(
            f"points_per_segment must be >= 2, got {points_per_segment!r}",
            param="points_per_segment",
        )
    S_hot, S_cold = internal_entropies if internal_entropies is not None else (0.0, 0.0)
    T1, T3, R = spec.T1, spec.T3, spec.R
    T2, T4 = T1 / R, R * T3
    S_top = external_entropy(spec, T2, expanded=True)  # isentrope 1-2, shared by state 6
    k = points_per_segment

    points: list[TSPoint] = []

    def vertical(stage, S, Ta, Tb):
        points.extend(TSPoint(stage, S, T) for T in np.linspace(Ta, Tb, k))

    def horizontal(stage, T, Sa, Sb):
        points.extend(TSPoint(stage, S, T) for S in np.linspace(Sa, Sb, k))

    def isochore(stage, Ta, Tb, S_start, S_end, expanded, S_int):
        temps = np.linspace(Ta, Tb, k)
        for i, T in enumerate(temps):
            if i == 0:
                S = S_start
            elif i == k - 1:
                S = S_end
            else:
                S = external_entropy(spec, T, expanded) + S_int
            points.append(TSPoint(stage, S, T))

    vertical("1-2", S_top + S_hot, T1, T2)
    isochore("2-3", T2, T3, S_top + S_hot, S_hot, True, S_hot)
    horizontal("3-4", T3, S_hot, S_cold)
    vertical("4-5", S_cold, T3, T4)
    isochore("5-6", T4, T1, S_cold, S_top + S_cold, False, S_cold)
    horizontal("6-1", T1, S_top + S_cold, S_top + S_hot)
    return [TSPoint(p.stage, float(p.S), float(p.T)) for p in points]
