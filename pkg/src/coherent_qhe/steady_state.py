"""Closed-form steady photon numbers and effective cavity temperatures.

All three configurations share one master form. With ``d = 1 - n eps_e +
(n + 1) eps_g`` the steady occupation is ``n (1 + eps_e) / d`` and the
effective temperature is ``1 / log1p(d / (n (1 + eps_e)))``; the
multi-ground atom is the ``eps_e = 0`` slice and the two-excited atom the
``eps_g = 0`` slice.

Boundary cases are returned as tags rather than raised: ``d == 0`` is
:attr:`Tag.DIVERGENT`, ``d < 0`` is :attr:`Tag.UNPHYSICAL` and
``eps_e == -1`` is :attr:`Tag.ZERO`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

from .atoms import Atom, epsilon_e, epsilon_g, reference_nbar
from .units import DomainError, temperature_from_mean_photon

__all__ = [
    "BOUNDARY_TOL",
    "CANCELLATION_TOL",
    "Tag",
    "Regime",
    "EffectiveTemperature",
    "SteadyStateResult",
    "positivity_denominator",
    "photon_number",
    "steady_photon_number",
    "temperature",
    "effective_temperature",
    "temperature_ratio",
    "classify_regime",
    "steady_state",
]

#: Relative width of the divergence line ``d == 0``.
BOUNDARY_TOL = 1e-12
#: Absolute tolerance on ``eps_g - eps_e`` for the cancellation line.
CANCELLATION_TOL = 1e-12


class Tag(str, enum.Enum):
    FINITE = "finite"
    ZERO = "zero"
    DIVERGENT = "divergent"
    UNPHYSICAL = "unphysical"


class Regime(str, enum.Enum):
    HEATING = "heating"
    COOLING = "cooling"
    CANCELLATION = "cancellation"
    UNPHYSICAL = "unphysical"


@dataclass(frozen=True)
class EffectiveTemperature:
    """Reduced effective temperature, or the boundary it sits on.

    ``theta`` is set only when ``kind`` is :attr:`Tag.FINITE`.
    """

    kind: Tag
    theta: Optional[float] = None
    reason: str = ""

    def __post_init__(self):
        if self.kind is Tag.FINITE:
            if self.theta is None or not self.theta > 0.0:
                raise ValueError(f"finite temperature needs theta > 0, got {self.theta!r}")
        elif self.theta is not None:
            raise ValueError(f"{self.kind.value} temperature carries no value")

    @property
    def is_finite(self) -> bool:
        return self.kind is Tag.FINITE


@dataclass(frozen=True)
class SteadyStateResult:
    nbar_q: Optional[float]
    status: Tag
    temperature: EffectiveTemperature
    regime: Regime


def positivity_denominator(eps_g: float, eps_e: float, nbar: float) -> float:
    """``1 - nbar eps_e + (nbar + 1) eps_g``; the steady state exists only while it is positive."""
    return 1.0 - nbar * eps_e + (nbar + 1.0) * eps_g


def _check_nbar(nbar: float) -> float:
    nbar = float(nbar)
    if not (nbar > 0.0 and math.isfinite(nbar)):
        raise DomainError(f"reference nbar must be finite and > 0, got {nbar!r}")
    return nbar


def _boundary(eps_g: float, eps_e: float, nbar: float) -> tuple[float, Optional[Tag], str]:
    d = positivity_denominator(eps_g, eps_e, nbar)
    scale = 1.0 + abs(nbar * eps_e) + abs((nbar + 1.0) * eps_g)
    if abs(d) <= BOUNDARY_TOL * scale:
        return d, Tag.DIVERGENT, "1 - nbar*eps_e + (nbar+1)*eps_g = 0"
    if d < 0.0:
        return d, Tag.UNPHYSICAL, "1 - nbar*eps_e + (nbar+1)*eps_g < 0 (negative photon number)"
    if 1.0 + eps_e < 0.0:
        return d, Tag.UNPHYSICAL, "eps_e < -1 (negative photon number)"
    if 1.0 + eps_e == 0.0:
        return d, Tag.ZERO, "eps_e = -1"
    return d, None, ""


def photon_number(eps_g: float, eps_e: float, nbar: float) -> Union[float, Tag]:
    """Steady occupation ``nbar (1 + eps_e) / (1 - nbar eps_e + (nbar + 1) eps_g)``.

    Returns ``0.0`` on the zero-temperature line ``eps_e = -1`` and a
    :class:`Tag` at or beyond the positivity boundary.
    """
    nbar = _check_nbar(nbar)
    d, tag, _ = _boundary(eps_g, eps_e, nbar)
    if tag is Tag.ZERO:
        return 0.0
    if tag is not None:
        return tag
    return nbar * (1.0 + eps_e) / d


def steady_photon_number(atom: Atom, nbar: Optional[float] = None) -> Union[float, Tag]:
    """Coherence-modified steady photon number for an atom configuration.

    ``nbar`` defaults to the atom's own thermal reference
    (:func:`~coherent_qhe.atoms.reference_nbar`); passing it explicitly keeps
    only the atom's coherence parameters.
    """
    if nbar is None:
        nbar = reference_nbar(atom)
    return photon_number(epsilon_g(atom), epsilon_e(atom), nbar)


def temperature(eps_g: float, eps_e: float, nbar: float) -> EffectiveTemperature:
    """Effective temperature ``1 / ln[(nbar+1)(1+eps_g) / (nbar (1+eps_e))]``."""
    nbar = _check_nbar(nbar)
    d, tag, why = _boundary(eps_g, eps_e, nbar)
    if tag is not None:
        return EffectiveTemperature(tag, None, why)
    # log argument minus one is exactly d / (nbar (1 + eps_e))
    return EffectiveTemperature(Tag.FINITE, 1.0 / math.log1p(d / (nbar * (1.0 + eps_e))))


def effective_temperature(atom: Atom, nbar: Optional[float] = None) -> EffectiveTemperature:
    if nbar is None:
        nbar = reference_nbar(atom)
    return temperature(epsilon_g(atom), epsilon_e(atom), nbar)


def temperature_ratio(eps_g: float, eps_e: float, nbar: float) -> Union[float, Tag]:
    """``T_Q / T_bath``; a :class:`Tag` when the effective temperature is not finite."""
    t = temperature(eps_g, eps_e, nbar)
    if not t.is_finite:
        return t.kind
    return t.theta / temperature_from_mean_photon(nbar)


def classify_regime(eps_g: float, eps_e: float, nbar: float) -> Regime:
    """Label a point of the coherence plane.

    Unphysical on the closed half-plane ``1 - nbar eps_e + (nbar+1) eps_g <= 0``;
    otherwise cancellation on the diagonal, heating above it
    (``eps_e > eps_g``) and cooling below.
    """
    if positivity_denominator(eps_g, eps_e, nbar) <= 0.0:
        return Regime.UNPHYSICAL
    if abs(eps_g - eps_e) <= CANCELLATION_TOL:
        return Regime.CANCELLATION
    if eps_e > eps_g:
        return Regime.HEATING
    return Regime.COOLING


def steady_state(atom: Atom, nbar: Optional[float] = None) -> SteadyStateResult:
    if nbar is None:
        nbar = reference_nbar(atom)
    eg, ee = epsilon_g(atom), epsilon_e(atom)
    n_q = photon_number(eg, ee, nbar)
    t = temperature(eg, ee, nbar)
    if isinstance(n_q, Tag):
        return SteadyStateResult(None, n_q, t, classify_regime(eg, ee, nbar))
    return SteadyStateResult(n_q, t.kind, t, classify_regime(eg, ee, nbar))
