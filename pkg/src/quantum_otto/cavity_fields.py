"""Photon-number statistics of the maser (thermal) and laser cavity fields."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from quantum_otto.errors import DomainError

DEFAULT_N_MAX = 1024
MASS_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PhotonDistribution:
    """Truncated distribution over photon number n = 0..n_max.

    ``tail_mass`` is the probability beyond ``n_max`` (analytic for thermal
    fields, zero for the renormalized laser field). ``cutoff_index`` is the
    first photon number excluded because a gain factor went non-positive;
    None when the support runs all the way to ``n_max``.
    """

    probs: np.ndarray
    tail_mass: float = 0.0
    cutoff_index: Optional[int] = None
    kind: str = "custom"

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        if probs.ndim != 1 or probs.size == 0:
            raise DomainError("probs must be a non-empty 1-D sequence", param="probs")
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise DomainError("probabilities must be finite and non-negative", param="probs")
        if self.tail_mass < 0:
            raise DomainError(f"tail_mass must be >= 0, got {self.tail_mass!r}", param="tail_mass")
        total = self.total_mass
        if abs(total - 1.0) > MASS_TOL:
            raise DomainError(f"probabilities plus tail sum to {total!r}, not 1", param="probs")

    @property
    def n_max(self) -> int:
        return self.probs.size - 1

    @property
    def total_mass(self) -> float:
        return math.fsum(self.probs) + self.tail_mass


@dataclass(frozen=True)
class LaserGainParams:
    """Linear gain A, saturation B, linear loss C and thermal seed n_bar_l."""

    A: float
    B: float
    C: float
    n_bar_l: float = 0.0

    def __post_init__(self):
        for name in ("A", "B", "C"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"must be positive, got {value!r}", param=name)
        if not (math.isfinite(self.n_bar_l) and self.n_bar_l >= 0):
            raise DomainError(f"must be >= 0, got {self.n_bar_l!r}", param="n_bar_l")

    def gain_factor(self, l: int) -> float:
        """Ratio p(l)/p(l-1), transcribed literally including the (l+1) arguments."""
        m = l + 1
        seed = self.n_bar_l / (self.n_bar_l + 1.0)
        return self.A * m / (1.0 + (self.A / self.B) * m) - self.C * m + seed


class FieldMetrics(NamedTuple):
    mean: float
    variance: float
    mandel_q: Optional[float]  # None when the mean photon number is zero


def thermal_photon_mean(nu: float, T: float) -> float:
    """Bose-Einstein occupation 1/(exp(nu/T) - 1)."""
    if not nu > 0:
        raise DomainError(f"frequency must be positive, got {nu!r}", param="nu")
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T!r}", param="T")
    # expm1 keeps precision when nu << T
    return 1.0 / math.expm1(nu / T)


def thermal_distribution(n_bar: float, n_max: int = DEFAULT_N_MAX) -> PhotonDistribution:
    """Geometric (Bose-Einstein) photon distribution with analytic tail."""
    if not (math.isfinite(n_bar) and n_bar >= 0):
        raise DomainError(f"mean photon number must be >= 0, got {n_bar!r}", param="n_bar")
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max!r}", param="n_max")
    ratio = n_bar / (n_bar + 1.0)
    n = np.arange(n_max + 1)
    probs = ratio**n / (n_bar + 1.0)
    tail = ratio ** (n_max + 1)
    return PhotonDistribution(probs=probs, tail_mass=float(tail), kind="thermal")


def laser_distribution(params: LaserGainParams, n_max: int = DEFAULT_N_MAX) -> PhotonDistribution:
    """Steady-state laser photon distribution from the product of gain factors.

    p(n) is proportional to the product of ``params.gain_factor(l)`` for
    l = 1..n. Support ends just before the first non-positive factor; the
    retained weights are renormalized to unit mass.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max!r}", param="n_max")
    factors = np.array([params.gain_factor(l) for l in range(1, n_max + 1)])
    nonpositive = np.flatnonzero(factors <= 0)
    if nonpositive.size and nonpositive[0] == 0:
        raise DomainError(
            f"below threshold: first gain factor is {factors[0]!r} <= 0", param="laser"
        )
    cutoff = int(nonpositive[0]) + 1 if nonpositive.size else None
    support = cutoff if cutoff is not None else n_max + 1

    # log space: products of factors >> 1 overflow long before n_max
    log_weights = np.zeros(support)
    log_weights[1:] = np.cumsum(np.log(factors[: support - 1]))
    weights = np.exp(log_weights - log_weights.max())
    probs = np.zeros(n_max + 1)
    probs[:support] = weights / math.fsum(weights)
    return PhotonDistribution(probs=probs, tail_mass=0.0, cutoff_index=cutoff, kind="laser")


def field_metrics(dist: PhotonDistribution) -> FieldMetrics:
    """Mean, variance and Mandel Q of the retained distribution."""
    n = np.arange(dist.probs.size, dtype=float)
    p = dist.probs
    mean = math.fsum(n * p)
    second = math.fsum(n * n * p)
    variance = second - mean * mean
    mandel_q = (variance - mean) / mean if mean > 0 else None
    return FieldMetrics(mean, variance, mandel_q)
