"""Photon-number dynamics of the cavity.

Two independent routes are provided:

* the mean-photon rate equation ``dn/dtau = s * (A (n + 1) - B n)``,
  integrated with fixed-step RK4 (:func:`evolve_mean_photon`);
* the diagonal of the reduced cavity master equation, a birth-death chain on
  the truncated Fock ladder with up-rate ``s A (n + 1)`` and down-rate
  ``s B n`` (:func:`birth_death_steady_state`, :func:`birth_death_evolve`).

The chain never looks at the closed-form steady states, which makes it the
ground truth those are checked against. Time is reduced, ``tau = alpha t``.
Off-diagonal cavity coherences are not tracked: they decouple from the
diagonal under these master equations, so for diagonal initial states the
chain is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .atoms import Atom, FourLevelAtom, MultiGroundAtom, TwoExcitedAtom
from .units import DomainError

__all__ = [
    "RateCoefficients",
    "Trajectory",
    "FockDistribution",
    "ChainHistory",
    "TruncationError",
    "rate_coefficients",
    "default_dtau",
    "relaxation_closed_form",
    "evolve_mean_photon",
    "generator_matrix",
    "choose_truncation",
    "birth_death_steady_state",
    "birth_death_history",
    "birth_death_evolve",
    "total_variation",
]

#: Largest Fock truncation the oracle will allocate.
MAX_LEVELS = 1 << 24


class TruncationError(RuntimeError):
    """Probability leaked into the top Fock level beyond the declared tolerance."""


@dataclass(frozen=True)
class RateCoefficients:
    """Gain ``A`` and loss ``B`` of the linear photon-number rate equation.

    ``scale`` is the overall prefactor in front of the bracket: 1 for the
    multi-ground atom and 2 for the configurations with two excited levels.
    It only sets the time scale; the steady state ``A / (B - A)`` ignores it.
    """

    gain: float
    loss: float
    scale: float = 1.0

    def __post_init__(self):
        for name in ("gain", "loss", "scale"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        if self.gain < 0.0 or self.loss < 0.0:
            raise DomainError(f"rates must be >= 0, got gain={self.gain!r}, loss={self.loss!r}")
        if self.scale <= 0.0:
            raise DomainError(f"scale must be > 0, got {self.scale!r}")

    @property
    def has_steady_state(self) -> bool:
        return self.loss > self.gain

    @property
    def ratio(self) -> float:
        return self.gain / self.loss

    @property
    def relaxation_rate(self) -> float:
        return self.scale * (self.loss - self.gain)

    @property
    def steady_mean(self) -> float:
        if not self.has_steady_state:
            raise DomainError(
                f"no steady state (divergent pumping): loss {self.loss!r} <= gain {self.gain!r}"
            )
        return self.gain / (self.loss - self.gain)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    values: np.ndarray
    diverged: bool = False

    def __post_init__(self):
        if self.times.shape != self.values.shape:
            raise ValueError("times and values differ in length")

    @property
    def final(self) -> float:
        return float(self.values[-1])

    def rows(self):
        for t, v in zip(self.times, self.values):
            yield float(t), float(v)


@dataclass(frozen=True, eq=False)
class FockDistribution:
    """Photon-number distribution on levels ``0..n_max``."""

    probabilities: np.ndarray
    tail_tol: float = 1e-12

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("probabilities must be a non-empty 1-D array")
        object.__setattr__(self, "probabilities", p)

    @property
    def n_max(self) -> int:
        return self.probabilities.size - 1

    @property
    def total(self) -> float:
        return float(self.probabilities.sum())

    @property
    def mean(self) -> float:
        return float(np.arange(self.probabilities.size) @ self.probabilities)

    @property
    def tail(self) -> float:
        return float(self.probabilities[-1])

    def check(self, norm_tol: float = 1e-9) -> None:
        p = self.probabilities
        if p.min() < -norm_tol:
            raise ValueError(f"negative probability {p.min():.3g}")
        if not 1.0 - norm_tol <= self.total <= 1.0 + norm_tol:
            raise ValueError(f"distribution not normalized: sum = {self.total!r}")
        if self.tail >= self.tail_tol:
            raise TruncationError(
                f"tail mass {self.tail:.3g} at n_max={self.n_max} exceeds {self.tail_tol:.3g}"
            )

    @classmethod
    def vacuum(cls, n_max: int, tail_tol: float = 1e-12) -> "FockDistribution":
        p = np.zeros(n_max + 1)
        p[0] = 1.0
        return cls(p, tail_tol)

    @classmethod
    def geometric(cls, ratio: float, n_max: int, tail_tol: float = 1e-12) -> "FockDistribution":
        """Thermal-like distribution ``p_n ~ ratio**n`` normalized on the truncation."""
        p = ratio ** np.arange(n_max + 1, dtype=float)
        return cls(p / p.sum(), tail_tol)


@dataclass(frozen=True)
class ChainHistory:
    times: np.ndarray
    means: np.ndarray
    norms: np.ndarray
    tails: np.ndarray
    final: FockDistribution


def rate_coefficients(atom: Atom) -> RateCoefficients:
    """Gain and loss coefficients of the photon-number rate equation for ``atom``.

    ============================  ======================  ======================  =====
    configuration                 gain ``A``              loss ``B``              scale
    ============================  ======================  ======================  =====
    :class:`MultiGroundAtom`      ``N P_ee``              ``N p (1 + chi(N-1))``  1
    :class:`TwoExcitedAtom`       ``2 P_ee (1 + eps_e)``  ``2 P_gg``              2
    :class:`FourLevelAtom`        ``2 P_ee (1 + eps_e)``  ``2 p (1 + eps_g)``     2
    ============================  ======================  ======================  =====
    """
    if isinstance(atom, MultiGroundAtom):
        n = atom.n_levels
        return RateCoefficients(n * atom.excited_pop, n * atom.ground_pop * (1.0 + atom.chi * (n - 1)), 1.0)
    if isinstance(atom, TwoExcitedAtom):
        return RateCoefficients(
            2.0 * atom.excited_pop * (1.0 + atom.epsilon_e), 2.0 * atom.ground_pop, 2.0
        )
    if isinstance(atom, FourLevelAtom):
        return RateCoefficients(
            2.0 * atom.excited_pop * (1.0 + atom.eps_e),
            2.0 * atom.ground_pop * (1.0 + atom.eps_g),
            2.0,
        )
    raise TypeError(f"not an atom configuration: {atom!r}")


def default_dtau(coeffs: RateCoefficients) -> float:
    """``0.01`` relaxation times, or an equivalent step when there is no relaxation."""
    rate = abs(coeffs.relaxation_rate)
    if rate == 0.0:
        rate = coeffs.scale * max(coeffs.gain, coeffs.loss, 1.0)
    return 0.01 / rate


def relaxation_closed_form(coeffs: RateCoefficients, nbar0: float, tau) -> np.ndarray:
    """Exact solution ``n_ss + (nbar0 - n_ss) exp(-s (B - A) tau)`` of the rate equation."""
    n_ss = coeffs.steady_mean
    return n_ss + (nbar0 - n_ss) * np.exp(-coeffs.relaxation_rate * np.asarray(tau, dtype=float))


def _step_grid(tau_end: float, dtau: float) -> tuple[int, float]:
    if not (tau_end > 0.0 and math.isfinite(tau_end)):
        raise DomainError(f"tau_end must be finite and > 0, got {tau_end!r}")
    if not (dtau > 0.0) or dtau > tau_end:
        raise DomainError(f"dtau must lie in (0, tau_end], got {dtau!r}")
    n = max(1, int(round(tau_end / dtau)))
    return n, tau_end / n


def evolve_mean_photon(
    coeffs: RateCoefficients,
    nbar0: float,
    tau_end: float,
    dtau: Optional[float] = None,
    cap: float = 1e12,
) -> Trajectory:
    """Integrate the mean-photon rate equation from ``nbar0`` to ``tau_end``.

    The step is adjusted so the grid lands exactly on ``tau_end``; keep
    ``dtau * s * |B - A|`` below about 0.1. With ``B <= A`` the solution grows
    without bound; integration stops once it passes ``cap`` and the
    trajectory is flagged ``diverged``.
    """
    if nbar0 < 0.0 or not math.isfinite(nbar0):
        raise DomainError(f"nbar0 must be finite and >= 0, got {nbar0!r}")
    if dtau is None:
        dtau = min(default_dtau(coeffs), tau_end)
    n_steps, h = _step_grid(tau_end, dtau)
    values, done = kernels.rk4_mean(coeffs.gain, coeffs.loss, coeffs.scale, float(nbar0), h, n_steps, cap)
    times = h * np.arange(n_steps + 1)
    if done < n_steps:
        return Trajectory(times[: done + 1], values[: done + 1], diverged=True)
    times[-1] = tau_end
    return Trajectory(times, values, diverged=False)


def generator_matrix(coeffs: RateCoefficients, n_max: int) -> np.ndarray:
    """Dense generator ``Q`` of the truncated chain, ``dp/dtau = Q @ p``."""
    n = np.arange(n_max + 1, dtype=float)
    up = coeffs.scale * coeffs.gain * (n + 1.0)
    up[-1] = 0.0
    down = coeffs.scale * coeffs.loss * n
    q = np.diag(-(up + down))
    q[np.arange(1, n_max + 1), np.arange(n_max)] = up[:-1]
    q[np.arange(n_max), np.arange(1, n_max + 1)] = down[1:]
    return q


def choose_truncation(coeffs: RateCoefficients, tail_tol: float) -> int:
    """Smallest doubling of ``max(50, 20 n_ss)`` whose geometric tail ``r^n / (1 - r)`` is below ``tail_tol``."""
    n_ss = coeffs.steady_mean
    r = coeffs.ratio
    n_max = max(50, int(math.ceil(20.0 * n_ss)))
    if r == 0.0:
        return n_max
    log_tol = math.log(tail_tol)
    while n_max * math.log(r) - math.log1p(-r) >= log_tol:
        n_max *= 2
        if n_max > MAX_LEVELS:
            raise TruncationError(f"steady state needs more than {MAX_LEVELS} Fock levels (r = {r!r})")
    return n_max


def birth_death_steady_state(coeffs: RateCoefficients, tail_tol: float = 1e-12) -> FockDistribution:
    """Stationary distribution of the birth-death chain.

    Built level by level from detailed balance,
    ``p_{n+1} B (n+1) = p_n A (n+1)``, on an adaptively chosen truncation and
    normalized explicitly. Its :attr:`~FockDistribution.mean` is summed from
    the distribution, not taken from any closed form.
    """
    if not coeffs.has_steady_state:
        raise DomainError(
            f"no normalizable steady state: loss {coeffs.loss!r} <= gain {coeffs.gain!r}"
        )
    if not 0.0 < tail_tol < 1.0:
        raise DomainError(f"tail_tol must lie in (0, 1), got {tail_tol!r}")
    n_max = choose_truncation(coeffs, tail_tol)
    levels = np.arange(1, n_max + 1, dtype=float)
    weights = np.empty(n_max + 1)
    weights[0] = 1.0
    # up-rate out of n-1 over down-rate out of n
    weights[1:] = np.cumprod((coeffs.gain * levels) / (coeffs.loss * levels))
    return FockDistribution(weights / weights.sum(), tail_tol)


def _stable_substeps(coeffs: RateCoefficients, n_max: int, dtau: float) -> tuple[int, float]:
    # Gershgorin bound on the generator spectrum; keep |lambda h| <= 2 inside RK4's region
    lam = 2.0 * coeffs.scale * (coeffs.gain + coeffs.loss) * (n_max + 1)
    h_max = 2.0 / lam if lam > 0.0 else dtau
    n_sub = max(1, int(math.ceil(dtau / h_max)))
    return n_sub, dtau / n_sub


def birth_death_history(
    coeffs: RateCoefficients,
    initial: FockDistribution,
    tau_end: float,
    dtau: Optional[float] = None,
) -> ChainHistory:
    """Evolve the truncated chain with RK4, recording every ``dtau``.

    Internal steps are subdivided as needed for RK4 stability on the chosen
    truncation. Raises :class:`TruncationError` if the top level collects
    more than ``initial.tail_tol`` at any record point.
    """
    p0 = initial.probabilities
    if abs(p0.sum() - 1.0) > 1e-9 or p0.min() < 0.0:
        raise DomainError("initial distribution must be non-negative and normalized")
    if dtau is None:
        dtau = min(default_dtau(coeffs), tau_end)
    n_records, h = _step_grid(tau_end, dtau)
    n_sub, h_int = _stable_substeps(coeffs, initial.n_max, h)
    p, means, norms, tails = kernels.rk4_chain(
        p0, coeffs.gain, coeffs.loss, coeffs.scale, h_int, n_sub, n_records
    )
    bad = np.flatnonzero(tails >= initial.tail_tol)
    if bad.size:
        raise TruncationError(
            f"tail mass {tails[bad[0]]:.3g} at tau={bad[0] * h:.6g} exceeds "
            f"{initial.tail_tol:.3g}; increase n_max beyond {initial.n_max}"
        )
    times = h * np.arange(n_records + 1)
    times[-1] = tau_end
    return ChainHistory(times, means, norms, tails, FockDistribution(p, initial.tail_tol))


def birth_death_evolve(
    coeffs: RateCoefficients,
    initial: FockDistribution,
    tau_end: float,
    dtau: Optional[float] = None,
) -> FockDistribution:
    return birth_death_history(coeffs, initial, tau_end, dtau).final


def total_variation(p: FockDistribution, q: FockDistribution) -> float:
    """Total-variation distance, padding the shorter ladder with zeros."""
    a, b = p.probabilities, q.probabilities
    m = max(a.size, b.size)
    a = np.pad(a, (0, m - a.size))
    b = np.pad(b, (0, m - b.size))
    return 0.5 * float(np.abs(a - b).sum())
