"""Quantum Otto engine with a maser-laser afterburner.

Classical Otto energetics for the translational degrees of freedom, a
three-level internal-state model pumped through maser/laser cavities, and the
energy and entropy bookkeeping that ties them together.
"""

from quantum_otto.errors import ConfigError, ConvergenceError, DomainError
from quantum_otto.internal_states import (
    LevelSystem,
    Populations,
    boltzmann_populations,
    internal_energy,
    internal_entropy,
)
from quantum_otto.cavity_fields import (
    LaserGainParams,
    PhotonDistribution,
    field_metrics,
    laser_distribution,
    thermal_distribution,
    thermal_photon_mean,
)
from quantum_otto.otto_core import (
    ClassicalCycleReport,
    GasSpec,
    classical_cycle,
    compression_ratio,
    ts_diagram,
)
from quantum_otto.afterburner import (
    AfterburnerReport,
    PassLedger,
    afterburner_report,
    enhancement_condition,
    entropy_balance,
    iterate_passes,
    laser_work,
    maser_heat,
    quantum_efficiency,
    second_law_audit,
    single_pass,
)

__version__ = "0.1.0"

__all__ = [
    "AfterburnerReport",
    "ClassicalCycleReport",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "GasSpec",
    "LaserGainParams",
    "LevelSystem",
    "PassLedger",
    "PhotonDistribution",
    "Populations",
    "afterburner_report",
    "boltzmann_populations",
    "classical_cycle",
    "compression_ratio",
    "enhancement_condition",
    "entropy_balance",
    "field_metrics",
    "internal_energy",
    "internal_entropy",
    "iterate_passes",
    "laser_distribution",
    "laser_work",
    "maser_heat",
    "quantum_efficiency",
    "second_law_audit",
    "single_pass",
    "thermal_distribution",
    "thermal_photon_mean",
    "ts_diagram",
]
