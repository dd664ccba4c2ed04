"""Coherence-assisted quantum heat engine toolkit.

Steady-state photon numbers and effective temperatures for three atomic
configurations, coherence-modified Carnot efficiencies, RK4 photon-number
dynamics with a Fock-space birth-death cross-check, and figure sweeps.
"""
__version__ = "0.1.0"

from .units import (
    DomainError,
    mean_photon_from_temperature,
    radiation_pressure,
    temperature_from_mean_photon,
)
from .atoms import (
    FourLevelAtom,
    MultiGroundAtom,
    TwoExcitedAtom,
    chi_bounds,
    chi_from_phase,
    epsilon_e_bounds,
    epsilon_g,
    reference_nbar,
    validate_positivity,
)
from .steady_state import (
    Regime,
    Tag,
    classify_regime,
    effective_temperature,
    steady_photon_number,
    steady_state,
)
from .dynamics import (
    FockDistribution,
    RateCoefficients,
    birth_death_evolve,
    birth_death_steady_state,
    evolve_mean_photon,
    rate_coefficients,
)
from .engine import (
    carnot_efficiency,
    cycle_summary,
    high_temperature_efficiency_approx,
    quantum_efficiency_cooling,
    quantum_efficiency_heating,
)
from .kernels import BACKEND
