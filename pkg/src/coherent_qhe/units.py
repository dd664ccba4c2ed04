"""Dimensionless thermal conversions for a single cavity mode.

Temperatures are reduced, ``theta = k_B T / (hbar omega)``, and photon
numbers are Bose occupations of the mode, so every hbar*omega/k_B prefactor
is unity.
"""
from __future__ import annotations

import math

__all__ = [
    "DomainError",
    "ZERO_TEMPERATURE",
    "mean_photon_from_temperature",
    "temperature_from_mean_photon",
    "radiation_pressure",
]


class DomainError(ValueError):
    """Raised when an argument lies outside the physical domain of an operation."""


#: Returned by :func:`temperature_from_mean_photon` for an empty mode.
ZERO_TEMPERATURE = 0.0


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def mean_photon_from_temperature(theta: float) -> float:
    """Bose occupation ``1 / (exp(1/theta) - 1)`` of the mode at reduced temperature ``theta``."""
    theta = _check_finite("theta", theta)
    if theta <= 0.0:
        raise DomainError(f"theta must be > 0, got {theta!r}")
    x = 1.0 / theta
    if x > 745.0:
        # exp(-x) underflows; occupation is exactly zero in double precision
        return 0.0
    return 1.0 / math.expm1(x)


def temperature_from_mean_photon(nbar: float) -> float:
    """Inverse of :func:`mean_photon_from_temperature`.

    ``nbar = 0`` maps to :data:`ZERO_TEMPERATURE` rather than raising, so
    callers can plot straight onto the zero-temperature boundary.
    """
    nbar = _check_finite("nbar", nbar)
    if nbar < 0.0:
        raise DomainError(f"nbar must be >= 0, got {nbar!r}")
    if nbar == 0.0:
        return ZERO_TEMPERATURE
    return 1.0 / math.log1p(1.0 / nbar)


def radiation_pressure(nbar: float, volume: float, omega_scale: float = 1.0) -> float:
    """Radiation pressure of the mode from ``P * V = omega_scale * nbar``."""
    nbar = _check_finite("nbar", nbar)
    volume = _check_finite("volume", volume)
    if nbar < 0.0:
        raise DomainError(f"nbar must be >= 0, got {nbar!r}")
    if volume <= 0.0:
        raise DomainError(f"volume must be > 0, got {volume!r}")
    if omega_scale <= 0.0:
        raise DomainError(f"omega_scale must be > 0, got {omega_scale!r}")
    return omega_scale * nbar / volume
