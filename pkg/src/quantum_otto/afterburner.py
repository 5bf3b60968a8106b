"""Maser-laser afterburner acting on the internal three-level populations.

One pass through the cavities is two stages: the cold maser pins the b
population at its cold Boltzmann weight p_b3 (moving the difference to c),
then the laser equalizes a and b. Repeated passes converge geometrically to
(p_b3, p_b3, 1 - 2 p_b3). Work and heat use the closed forms; the iterated
ledger is kept as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from quantum_otto.errors import ConvergenceError, DomainError
from quantum_otto.internal_states import (
    LevelSystem,
    Populations,
    boltzmann_populations,
    internal_energy,
    internal_entropy,
)
from quantum_otto.otto_core import ClassicalCycleReport, GasSpec, classical_cycle

DEFAULT_TOL = 1e-12
DEFAULT_MAX_PASSES = 10_000
AUDIT_TOL = 1e-9


def _check_pin(p_b3: float) -> None:
    if not (0.0 <= p_b3 < 0.5):
        raise DomainError(f"pinned b population must lie in [0, 1/2), got {p_b3!r}", param="T3")


def _check_temperatures(T1: float, T3: float) -> None:
    if not T3 > 0:
        raise DomainError(f"T3 must be positive, got {T3!r}", param="T3")
    if not T1 >= T3:
        raise DomainError(f"need T1 >= T3, got T1={T1!r}, T3={T3!r}", param="T1")


# -- pass map -----------------------------------------------------------------


def single_pass(pop: Populations, p_b3: float) -> tuple[Populations, float, float]:
    """One maser-then-laser pass.

    Returns the new populations, the population moved a -> b by the laser
    (laser energy in units of eps_ab) and the population moved into c by the
    maser (maser energy in units of eps_bc). Transfers are signed: a b
    population below p_b3 is refilled from c.
    """
    _check_pin(p_b3)
    p_a, p_b, p_c = pop.as_tuple()
    maser = p_b - p_b3
    p_c = p_c + maser
    shared = 0.5 * (p_a + p_b3)
    laser = p_a - shared
    return Populations(shared, shared, p_c), laser, maser


class PassRecord(NamedTuple):
    populations: Populations
    laser: float
    maser: float


@dataclass
class PassLedger:
    """Per-pass trace of the iterated map, starting from ``initial``."""

    initial: Populations
    p_b3: float
    passes: list[PassRecord] = field(default_factory=list)
    converged: bool = False

    @property
    def n_passes(self) -> int:
        return len(self.passes)

    @property
    def final(self) -> Populations:
        return self.passes[-1].populations if self.passes else self.initial

    @property
    def laser_total(self) -> float:
        return math.fsum(r.laser for r in self.passes)

    @property
    def maser_total(self) -> float:
        return math.fsum(r.maser for r in self.passes)

    def rows(self) -> list[tuple[int, float, float, float, float, float]]:
        """(pass, p_a, p_b, p_c, laser_cum, maser_cum), pass 0 being the start."""
        out = [(0, *self.initial.as_tuple(), 0.0, 0.0)]
        laser_cum = maser_cum = 0.0
        for i, rec in enumerate(self.passes, start=1):
            laser_cum += rec.laser
            maser_cum += rec.maser
            out.append((i, *rec.populations.as_tuple(), laser_cum, maser_cum))
        return out


def iterate_passes(
    pop0: Populations,
    p_b3: float,
    tol: float = DEFAULT_TOL,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> PassLedger:
    """Bounce through the cavities until the max-norm population change < tol."""
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}", param="tol")
    if max_passes < 1:
        raise DomainError(f"max_passes must be >= 1, got {max_passes!r}", param="max_passes")
    _check_pin(p_b3)
    ledger = PassLedger(initial=pop0, p_b3=p_b3)
    pop = pop0
    for _ in range(max_passes):
        new, laser, maser = single_pass(pop, p_b3)
        ledger.passes.append(PassRecord(new, laser, maser))
        change = max(abs(x - y) for x, y in zip(new.as_tuple(), pop.as_tuple()))
        pop = new
        if change < tol:
            ledger.converged = True
            return ledger
    raise ConvergenceError(f"no convergence to tol={tol} within {max_passes} passes", ledger)


# -- closed forms -------------------------------------------------------------


def cold_pin(levels: LevelSystem, T3: float) -> float:
    """Cold three-level Boltzmann weight of b, the maser pin p_b3."""
    return boltzmann_populations(levels, T3).p_b


def coherent_work(eps_ab: float, hot: Populations, p_b3: float, N: float = 1.0) -> float:
    """Laser work eps_ab * N * (p_a^hot - p_b3)."""
    return eps_ab * N * (hot.p_a - p_b3)


def incoherent_heat(eps_bc: float, hot: Populations, p_b3: float, N: float = 1.0) -> float:
    """Maser heat eps_bc * N * (p_a^hot + p_b^hot - 2 p_b3)."""
    return eps_bc * N * ((hot.p_a - p_b3) + (hot.p_b - p_b3))


def laser_work(levels: LevelSystem, T1: float, T3: float, N: float = 1.0) -> float:
    """Coherent work per cycle; <= 0 means there is no a-b inversion."""
    _check_temperatures(T1, T3)
    hot = boltzmann_populations(levels, T1)
    return coherent_work(levels.eps_ab, hot, cold_pin(levels, T3), N)


def maser_heat(levels: LevelSystem, T1: float, T3: float, N: float = 1.0) -> float:
    _check_temperatures(T1, T3)
    hot = boltzmann_populations(levels, T1)
    return incoherent_heat(levels.eps_bc, hot, cold_pin(levels, T3), N)


def has_inversion(levels: LevelSystem, T1: float, T3: float) -> bool:
    return boltzmann_populations(levels, T1).p_a > cold_pin(levels, T3)


# -- efficiency and the enhancement criterion ------------------------------------


def quantum_efficiency(classical: ClassicalCycleReport, w_l: float, q_m: float) -> float:
    """(Wg - Ww + w_l) / (Q_in + w_l + q_m)."""
    denominator = classical.Q_in + w_l + q_m
    if not denominator > 0:
        raise DomainError(f"total heat input {denominator!r} is not positive", param="Q_in")
    return (classical.Wg - classical.Ww + w_l) / denominator


def quantum_efficiency_shifted(eta0: float, Q_in: float, w_l: float, q_m: float) -> float:
    """Same efficiency written as eta0 plus the afterburner correction."""
    denominator = Q_in + w_l + q_m
    if not denominator > 0:
        raise DomainError(f"total heat input {denominator!r} is not positive", param="Q_in")
    return eta0 + ((1.0 - eta0) * w_l - eta0 * q_m) / denominator


class Enhancement(NamedTuple):
    enhanced: bool
    lhs: Optional[float]  # None unless well_defined
    rhs: Optional[float]
    well_defined: bool


def enhancement_from_populations(
    levels: LevelSystem, eta0: float, hot: Populations, p_b3: float
) -> Enhancement:
    if not (0.0 < eta0 < 1.0):
        raise DomainError(f"eta0 must lie in (0, 1), got {eta0!r}", param="R")
    inversion = hot.p_a - p_b3
    gain = (1.0 - eta0) * levels.eps_ab * inversion
    loss = eta0 * levels.eps_bc * (inversion + (hot.p_b - p_b3))
    enhanced = gain > loss
    if inversion <= 0:
        return Enhancement(enhanced, None, None, False)
    lhs = (1.0 / eta0 - 1.0) * (levels.eps_ac / levels.eps_bc - 1.0)
    rhs = 1.0 + (hot.p_b - p_b3) / inversion
    return Enhancement(enhanced, lhs, rhs, True)


def enhancement_condition(levels: LevelSystem, eta0: float, T1: float, T3: float) -> Enhancement:
    """Does the afterburner raise the efficiency above eta0?

    ``enhanced`` comes from the cross-multiplied comparison
    (1 - eta0) w_l > eta0 q_m, which stays meaningful at zero inversion. The
    ratio form (lhs, rhs) divides by the inversion and is only reported when
    p_a^hot > p_b3.
    """
    _check_temperatures(T1, T3)
    return enhancement_from_populations(
        levels, eta0, boltzmann_populations(levels, T1), cold_pin(levels, T3)
    )


# -- entropy -----------------------------------------------------------------


def entropy_change(hot: Populations, p_b3: float, N: float = 1.0) -> tuple[float, float]:
    """(dS_extract, dS_reheat) between the hot thermal state and the fixed point."""
    _check_pin(p_b3)
    dS_reheat = internal_entropy(hot, N) - internal_entropy(Populations.fixed_point(p_b3), N)
    return -dS_reheat, dS_reheat


def entropy_balance(levels: LevelSystem, T1: float, T3: float, N: float = 1.0) -> tuple[float, float]:
    """Internal entropy change over the extraction and reheat stages."""
    _check_temperatures(T1, T3)
    return entropy_change(boltzmann_populations(levels, T1), cold_pin(levels, T3), N)


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class AfterburnerReport:
    p_b3: float
    w_l: float
    q_m: float
    q_in: float
    eta_qo: float
    enhanced: bool
    lhs_7b: Optional[float]
    rhs_7b: Optional[float]
    dS_extract: float
    dS_reheat: float
    inversion: bool


def afterburner_report(
    levels: LevelSystem, spec: GasSpec, classical: Optional[ClassicalCycleReport] = None
) -> AfterburnerReport:
    """Work, heat, efficiency and entropy of the afterburner for one cycle.

    ``q_in`` is the internal energy needed to bring the fixed-point state back
    to the hot thermal state, computed independently of w_l and q_m.
    """
    if classical is None:
        classical = classical_cycle(spec)
    T1, T3, N = spec.T1, spec.T3, spec.N
    hot = boltzmann_populations(levels, T1)
    p_b3 = cold_pin(levels, T3)
    _check_pin(p_b3)
    w_l = coherent_work(levels.eps_ab, hot, p_b3, N)
    q_m = incoherent_heat(levels.eps_bc, hot, p_b3, N)
    q_in = internal_energy(levels, hot, N) - internal_energy(levels, Populations.fixed_point(p_b3), N)
    eta0 = classical.eta0
    # eta_qo and `enhanced` share one numerator so their signs cannot disagree
    gain, loss = (1.0 - eta0) * w_l, eta0 * q_m
    eta_qo = quantum_efficiency_shifted(eta0, classical.Q_in, w_l, q_m)
    enhanced = gain > loss
    lhs = rhs = None
    if eta0 > 0:
        criterion = enhancement_from_populations(levels, eta0, hot, p_b3)
        lhs, rhs = criterion.lhs, criterion.rhs
    dS_extract, dS_reheat = entropy_change(hot, p_b3, N)
    return AfterburnerReport(
        p_b3=p_b3,
        w_l=w_l,
        q_m=q_m,
        q_in=q_in,
        eta_qo=eta_qo,
        enhanced=enhanced,
        lhs_7b=lhs,
        rhs_7b=rhs,
        dS_extract=dS_extract,
        dS_reheat=dS_reheat,
        inversion=hot.p_a > p_b3,
    )


@dataclass(frozen=True)
class EntropyLedger:
    """Entropy changes over one closed cycle.

    Reservoir terms are heat over contact temperature; the working fluid
    returns to its initial state so its total should vanish.
    """

    dS_hot_reservoir: float
    dS_cold_reservoir: float
    dS_fluid_external: float
    dS_fluid_internal: float
    dS_working_fluid: float
    dS_universe: float
    consistent: bool  # dS_universe >= -AUDIT_TOL


def second_law_audit(
    spec: GasSpec,
    levels: LevelSystem,
    classical: ClassicalCycleReport,
    ab: AfterburnerReport,
) -> EntropyLedger:
    """Clausius bookkeeping for the whole engine.

    Q_out and q_m go to the cold side at T3, Q_in and q_in come from the hot
    side at T1; the isentropic strokes and the laser work carry no entropy.
    """
    expected = classical_cycle(spec)
    if not math.isclose(classical.R, expected.R, rel_tol=1e-12) or not math.isclose(
        classical.Q_in, expected.Q_in, rel_tol=1e-9, abs_tol=1e-12
    ):
        raise DomainError("classical report does not match the gas spec", param="classical")
    p_b3 = cold_pin(levels, spec.T3)
    w_l = coherent_work(levels.eps_ab, boltzmann_populations(levels, spec.T1), p_b3, spec.N)
    if ab.p_b3 != p_b3 or not math.isclose(ab.w_l, w_l, rel_tol=1e-9, abs_tol=1e-12):
        raise DomainError("afterburner report does not match the levels and gas spec", param="afterburner")

    T1, T3 = spec.T1, spec.T3
    dS_hot = -(classical.Q_in + ab.q_in) / T1
    dS_cold = (classical.Q_out + ab.q_m) / T3
    dS_ext = spec.Cv * math.log(T3 / classical.T2) + spec.Cv * math.log(T1 / classical.T4)
    dS_int = ab.dS_extract + ab.dS_reheat
    dS_fluid = dS_ext + dS_int
    total = math.fsum((dS_hot, dS_cold, dS_fluid))
    return EntropyLedger(
        dS_hot_reservoir=dS_hot,
        dS_cold_reservoir=dS_cold,
        dS_fluid_external=dS_ext,
        dS_fluid_internal=dS_int,
        dS_working_fluid=dS_fluid,
        dS_universe=total,
        consistent=total >= -AUDIT_TOL,
    )
