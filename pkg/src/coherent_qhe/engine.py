"""Photo-Carnot cycle bookkeeping and coherence-modified efficiencies.

Negative ground coherence raises the effective temperature of the hot
isotherm (heating); positive coherence lowers the cold isotherm (cooling).
Each formula refuses inputs from the other regime because the two assign
the effective temperature to different legs of the cycle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .steady_state import CANCELLATION_TOL, EffectiveTemperature, Tag, temperature
from .units import DomainError, temperature_from_mean_photon

__all__ = [
    "CycleSpec",
    "CycleResult",
    "carnot_efficiency",
    "quantum_efficiency_heating",
    "quantum_efficiency_cooling",
    "single_bath_heating",
    "single_bath_cooling",
    "high_temperature_efficiency_approx",
    "coherent_efficiency",
    "cycle_summary",
    "carnot_cycle",
]


@dataclass(frozen=True)
class CycleSpec:
    t_hot: float
    t_cold: float
    delta_s: float

    def __post_init__(self):
        if not (self.t_hot >= self.t_cold > 0.0):
            raise DomainError(f"need t_hot >= t_cold > 0, got {self.t_hot!r}, {self.t_cold!r}")
        if not self.delta_s > 0.0:
            raise DomainError(f"delta_s must be > 0, got {self.delta_s!r}")


@dataclass(frozen=True)
class CycleResult:
    """Heat bookkeeping of one ideal cycle. ``q_out`` is the released magnitude."""

    q_in: float
    q_out: float
    work: float
    efficiency: float
    unbounded: bool = False


def carnot_efficiency(t_cold: float, t_hot: float) -> float:
    if not (0.0 < t_cold <= t_hot) or not math.isfinite(t_hot):
        raise DomainError(f"need 0 < t_cold <= t_hot < inf, got t_cold={t_cold!r}, t_hot={t_hot!r}")
    return 1.0 - t_cold / t_hot


def _bath_temperatures(nbar_c: float, nbar_h: float) -> tuple[float, float]:
    for name, v in (("nbar_c", nbar_c), ("nbar_h", nbar_h)):
        if not (v > 0.0 and math.isfinite(v)):
            raise DomainError(f"{name} must be finite and > 0, got {v!r}")
    if nbar_c > nbar_h:
        raise DomainError(f"cold bath must not be hotter than hot bath: nbar_c={nbar_c!r} > nbar_h={nbar_h!r}")
    return temperature_from_mean_photon(nbar_c), temperature_from_mean_photon(nbar_h)


def quantum_efficiency_heating(eps_g: float, nbar_c: float, nbar_h: float, strict: bool = True) -> float:
    """``eta - ln(1 + eps_g) / ln(1 + 1/nbar_c)`` for ``-1/(nbar_h + 1) < eps_g <= 0``.

    ``eta`` is the Carnot efficiency of the two baths. With ``strict=False``
    only ``eps_g > -1`` is enforced, for probing the formula itself outside
    the range where the steady state exists.
    """
    t_c, t_h = _bath_temperatures(nbar_c, nbar_h)
    lower = -1.0 / (nbar_h + 1.0)
    if eps_g > 0.0:
        raise DomainError(f"heating needs eps_g <= 0, got {eps_g!r}; use the cooling formula")
    if strict and not eps_g > lower:
        raise DomainError(
            f"eps_g = {eps_g!r} violates steady-state positivity eps_g > -1/(nbar_h+1) = {lower!r}"
        )
    if not eps_g > -1.0:
        raise DomainError(f"eps_g must exceed -1, got {eps_g!r}")
    return (1.0 - t_c / t_h) - math.log1p(eps_g) / math.log1p(1.0 / nbar_c)


def quantum_efficiency_cooling(eps_g: float, nbar_c: float, nbar_h: float) -> float:
    """``1 - T_Q / T_h`` with ``T_Q`` the coherence-lowered cold-leg temperature.

    Valid for ``eps_g >= 0``; ``eps_g = 0`` reduces to the Carnot value.
    """
    if not (eps_g >= 0.0 and math.isfinite(eps_g)):
        raise DomainError(f"cooling needs finite eps_g >= 0, got {eps_g!r}; use the heating formula")
    _, t_h = _bath_temperatures(nbar_c, nbar_h)
    t_q = 1.0 / (math.log1p(eps_g) + math.log1p(1.0 / nbar_c))
    return 1.0 - t_q / t_h


def single_bath_heating(chi: float, n_levels: int, nbar_eq: float) -> float:
    """``-ln[1 + chi (N-1)] / ln(1 + 1/nbar_eq)``: work from one bath with negative coherence."""
    return quantum_efficiency_heating(chi * (n_levels - 1), nbar_eq, nbar_eq)


def single_bath_cooling(chi: float, n_levels: int, nbar_eq: float) -> float:
    """``[1 + ln(1 + 1/nbar_eq) / ln(1 + chi (N-1))]^-1``; zero for a single ground level."""
    eps = chi * (n_levels - 1)
    if eps == 0.0:
        _bath_temperatures(nbar_eq, nbar_eq)
        return 0.0
    if not eps > 0.0:
        raise DomainError(f"cooling needs chi*(N-1) >= 0, got {eps!r}")
    return 1.0 / (1.0 + math.log1p(1.0 / nbar_eq) / math.log1p(eps))


def high_temperature_efficiency_approx(
    eta: float, t_cold: float, t_hot: float, nbar_h: float, eps_g: float
) -> float:
    """Linearized heating efficiency ``eta - (T_c/T_h) nbar_h eps_g`` for large occupations."""
    return eta - (t_cold / t_hot) * nbar_h * eps_g


def coherent_efficiency(eps_g: float, eps_e: float, nbar_c: float, nbar_h: float) -> float:
    """Efficiency with both coherences, routed by the regime they produce.

    Heating places the effective temperature on the hot isotherm
    (``1 - T_c / T_Q``); cooling places it on the cold isotherm
    (``1 - T_Q / T_h``); cancellation leaves the Carnot value.
    """
    t_c, t_h = _bath_temperatures(nbar_c, nbar_h)
    if abs(eps_g - eps_e) <= CANCELLATION_TOL:
        return 1.0 - t_c / t_h
    heating = eps_e > eps_g
    t_q = temperature(eps_g, eps_e, nbar_h if heating else nbar_c)
    if t_q.kind is Tag.ZERO:
        return 1.0
    if not t_q.is_finite:
        leg = "hot" if heating else "cold"
        raise DomainError(f"{leg}-leg temperature is {t_q.kind.value}: {t_q.reason}")
    return 1.0 - t_c / t_q.theta if heating else 1.0 - t_q.theta / t_h


def cycle_summary(t_effective_hot: EffectiveTemperature, t_cold: float, delta_s: float) -> CycleResult:
    """Heat in, heat out and work of an ideal cycle between ``T_Q`` and ``t_cold``.

    A divergent hot temperature gives efficiency 1 with unbounded heat input.
    """
    if not (t_cold > 0.0 and delta_s > 0.0):
        raise DomainError(f"need t_cold > 0 and delta_s > 0, got {t_cold!r}, {delta_s!r}")
    q_out = t_cold * delta_s
    if t_effective_hot.kind is Tag.DIVERGENT:
        return CycleResult(math.inf, q_out, math.inf, 1.0, unbounded=True)
    if not t_effective_hot.is_finite:
        raise DomainError(f"hot isotherm temperature is {t_effective_hot.kind.value}; no cycle")
    t_q = t_effective_hot.theta
    if t_q < t_cold:
        raise DomainError(f"hot isotherm T_Q = {t_q!r} is colder than t_cold = {t_cold!r}")
    q_in = t_q * delta_s
    return CycleResult(q_in, q_out, q_in - q_out, 1.0 - t_cold / t_q)


def carnot_cycle(spec: CycleSpec) -> CycleResult:
    return cycle_summary(EffectiveTemperature(Tag.FINITE, spec.t_hot), spec.t_cold, spec.delta_s)
