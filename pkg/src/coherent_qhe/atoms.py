"""Atomic configurations injected into the cavity and their coherence bounds.

Three configurations are supported:

* :class:`MultiGroundAtom` -- one excited level above ``N`` degenerate ground
  levels sharing a common real coherence ``xi = chi * p``.
* :class:`TwoExcitedAtom` -- two degenerate excited levels above one ground
  level with excited-state coherence ``epsilon_e``.
* :class:`FourLevelAtom` -- two ground and two excited levels with
  independent coherences ``eps_g`` and ``eps_e``.

Populations are per level. Coherences are stored as the canonical real
parameter; complex phases only enter through :func:`chi_from_phase`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .units import DomainError

__all__ = [
    "PSD_TOL",
    "MultiGroundAtom",
    "TwoExcitedAtom",
    "FourLevelAtom",
    "Atom",
    "CoherenceBounds",
    "ValidationReport",
    "epsilon_g",
    "epsilon_e",
    "chi_bounds",
    "epsilon_e_bounds",
    "density_matrix",
    "validate_positivity",
    "closed_form_positivity",
    "chi_from_phase",
    "reference_nbar",
]

#: Smallest eigenvalue accepted as positive semidefinite.
PSD_TOL = 1e-12


@dataclass(frozen=True)
class MultiGroundAtom:
    """One excited level and ``n_levels`` degenerate ground levels.

    Parameters
    ----------
    n_levels : int
        Number of ground levels ``N >= 2``.
    ground_pop : float
        Population ``p`` of each ground level, ``0 < p <= 1/N``.
    chi : float
        Relative ground coherence ``xi / p``. Construction only requires it
        to be finite; use :func:`validate_positivity` for the PSD check.
    """

    n_levels: int
    ground_pop: float
    chi: float = 0.0

    def __post_init__(self):
        if int(self.n_levels) != self.n_levels or self.n_levels < 2:
            raise DomainError(f"n_levels must be an integer >= 2, got {self.n_levels!r}")
        if not (0.0 < self.ground_pop <= 1.0 / self.n_levels):
            raise DomainError(
                f"ground_pop must lie in (0, 1/N] = (0, {1.0 / self.n_levels:g}], got {self.ground_pop!r}"
            )
        if not math.isfinite(self.chi):
            raise DomainError(f"chi must be finite, got {self.chi!r}")

    @property
    def excited_pop(self) -> float:
        return 1.0 - self.n_levels * self.ground_pop

    @property
    def xi(self) -> float:
        return self.chi * self.ground_pop

    @classmethod
    def from_reference(cls, n_levels: int, nbar: float, chi: float = 0.0) -> "MultiGroundAtom":
        """Populations whose incoherent steady state is the thermal occupation ``nbar``."""
        if nbar <= 0.0 or not math.isfinite(nbar):
            raise DomainError(f"nbar must be finite and > 0, got {nbar!r}")
        ratio = nbar / (nbar + 1.0)  # P_ee / p
        return cls(n_levels, 1.0 / (n_levels + ratio), chi)


@dataclass(frozen=True)
class TwoExcitedAtom:
    """Two degenerate excited levels above a single ground level.

    ``excited_pop`` is the population of *each* excited level; the ground
    population is ``1 - 2 * excited_pop`` and must exceed it.
    """

    excited_pop: float
    epsilon_e: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.excited_pop < 1.0 / 3.0):
            raise DomainError(
                f"excited_pop must lie in (0, 1/3) so that P_gg > P_ee, got {self.excited_pop!r}"
            )
        if not math.isfinite(self.epsilon_e):
            raise DomainError(f"epsilon_e must be finite, got {self.epsilon_e!r}")

    @property
    def ground_pop(self) -> float:
        return 1.0 - 2.0 * self.excited_pop

    @classmethod
    def from_reference(cls, nbar: float, epsilon_e: float = 0.0) -> "TwoExcitedAtom":
        if nbar <= 0.0 or not math.isfinite(nbar):
            raise DomainError(f"nbar must be finite and > 0, got {nbar!r}")
        # P_ee = nbar (P_gg - P_ee) with P_gg = 1 - 2 P_ee
        return cls(nbar / (1.0 + 3.0 * nbar), epsilon_e)


@dataclass(frozen=True)
class FourLevelAtom:
    """Two ground and two excited levels.

    ``ground_pop`` is ``p`` per ground level; each excited level holds
    ``1/2 - p``. Requires ``1/4 < p < 1/2``.
    """

    ground_pop: float
    eps_g: float = 0.0
    eps_e: float = 0.0

    def __post_init__(self):
        if not (0.25 < self.ground_pop < 0.5):
            raise DomainError(f"ground_pop must lie in (1/4, 1/2), got {self.ground_pop!r}")
        if not (math.isfinite(self.eps_g) and math.isfinite(self.eps_e)):
            raise DomainError("eps_g and eps_e must be finite")

    @property
    def excited_pop(self) -> float:
        return 0.5 - self.ground_pop

    @classmethod
    def from_reference(cls, nbar: float, eps_g: float = 0.0, eps_e: float = 0.0) -> "FourLevelAtom":
        if nbar <= 0.0 or not math.isfinite(nbar):
            raise DomainError(f"nbar must be finite and > 0, got {nbar!r}")
        # P_ee = nbar (p - P_ee) with P_ee = 1/2 - p
        return cls((1.0 + nbar) / (2.0 + 4.0 * nbar), eps_g, eps_e)


Atom = Union[MultiGroundAtom, TwoExcitedAtom, FourLevelAtom]


@dataclass(frozen=True)
class CoherenceBounds:
    lower: float
    upper: float
    lower_open: bool
    upper_open: bool

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    def __contains__(self, x: float) -> bool:
        above = x > self.lower if self.lower_open else x >= self.lower
        below = x < self.upper if self.upper_open else x <= self.upper
        return above and below

    def describe(self) -> str:
        lb = "(" if self.lower_open else "["
        ub = ")" if self.upper_open else "]"
        return f"{lb}{self.lower:.17g}, {self.upper:.17g}{ub}"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    min_eigenvalue: float
    violation: str = ""

    def __bool__(self) -> bool:
        return self.valid


def epsilon_g(atom: Atom) -> float:
    """Normalized ground-state coherence: ``chi * (N - 1)`` for ``N`` ground levels."""
    if isinstance(atom, MultiGroundAtom):
        return atom.chi * (atom.n_levels - 1)
    if isinstance(atom, FourLevelAtom):
        return atom.eps_g
    if isinstance(atom, TwoExcitedAtom):
        return 0.0
    raise TypeError(f"not an atom configuration: {atom!r}")


def epsilon_e(atom: Atom) -> float:
    if isinstance(atom, TwoExcitedAtom):
        return atom.epsilon_e
    if isinstance(atom, FourLevelAtom):
        return atom.eps_e
    if isinstance(atom, MultiGroundAtom):
        return 0.0
    raise TypeError(f"not an atom configuration: {atom!r}")


def chi_bounds(n_levels: int, nbar: float) -> CoherenceBounds:
    """Admissible ``chi`` for ``N`` ground levels against a bath of occupation ``nbar``.

    The lower end keeps the steady photon number positive and is open; the
    upper end is the PSD limit ``xi = p`` and is closed.
    """
    if int(n_levels) != n_levels or n_levels < 2:
        raise DomainError(f"chi bounds need n_levels >= 2, got {n_levels!r}")
    if not (nbar > 0.0 and math.isfinite(nbar)):
        raise DomainError(f"nbar must be finite and > 0, got {nbar!r}")
    return CoherenceBounds(-1.0 / ((n_levels - 1) * (nbar + 1.0)), 1.0, True, False)


def epsilon_e_bounds(nbar: float) -> CoherenceBounds:
    """Admissible excited-state coherence, ``-1 <= eps_e < 1/nbar``."""
    if not (nbar > 0.0 and math.isfinite(nbar)):
        raise DomainError(f"nbar must be finite and > 0, got {nbar!r}")
    return CoherenceBounds(-1.0, min(1.0 / nbar, 1.0), False, nbar >= 1.0)


def density_matrix(atom: Atom) -> np.ndarray:
    """Explicit real density matrix of the configuration (excited block first)."""
    if isinstance(atom, MultiGroundAtom):
        n, p, xi = atom.n_levels, atom.ground_pop, atom.xi
        rho = np.zeros((n + 1, n + 1))
        rho[0, 0] = atom.excited_pop
        rho[1:, 1:] = xi
        rho[np.arange(1, n + 1), np.arange(1, n + 1)] = p
        return rho
    if isinstance(atom, TwoExcitedAtom):
        pe, c = atom.excited_pop, atom.epsilon_e * atom.excited_pop
        return np.array([[pe, c, 0.0], [c, pe, 0.0], [0.0, 0.0, atom.ground_pop]])
    if isinstance(atom, FourLevelAtom):
        pe, p = atom.excited_pop, atom.ground_pop
        ce, cg = atom.eps_e * pe, atom.eps_g * p
        return np.array(
            [
                [pe, ce, 0.0, 0.0],
                [ce, pe, 0.0, 0.0],
                [0.0, 0.0, p, cg],
                [0.0, 0.0, cg, p],
            ]
        )
    raise TypeError(f"not an atom configuration: {atom!r}")


def validate_positivity(atom: Atom) -> ValidationReport:
    """Check that the atomic density matrix is positive semidefinite.

    Uses a dense symmetric eigensolver on :func:`density_matrix`; the report
    names the violated closed-form bound when the check fails.
    """
    lam = float(np.linalg.eigvalsh(density_matrix(atom))[0])
    if lam >= -PSD_TOL:
        return ValidationReport(True, lam)
    return ValidationReport(False, lam, _violated_bound(atom))


def _violated_bound(atom: Atom) -> str:
    if isinstance(atom, MultiGroundAtom):
        n, p, xi = atom.n_levels, atom.ground_pop, atom.xi
        if xi > p:
            return f"xi = {xi:.6g} exceeds p = {p:.6g} (ground-block eigenvalue p - xi < 0)"
        return (
            f"xi = {xi:.6g} below -p/(N-1) = {-p / (n - 1):.6g} "
            "(ground-block eigenvalue p + (N-1) xi < 0)"
        )
    if isinstance(atom, TwoExcitedAtom):
        return f"|epsilon_e| = {abs(atom.epsilon_e):.6g} exceeds 1"
    parts = []
    if abs(atom.eps_e) > 1.0:
        parts.append(f"|eps_e| = {abs(atom.eps_e):.6g} exceeds 1")
    if abs(atom.eps_g) > 1.0:
        parts.append(f"|eps_g| = {abs(atom.eps_g):.6g} exceeds 1")
    return "; ".join(parts) or "determinant (1/2-p)^2 p^2 (1-eps_e^2)(1-eps_g^2) < 0"


def closed_form_positivity(atom: Atom) -> bool:
    """PSD test from the analytic bounds, independent of any eigensolver.

    Ground block of :class:`MultiGroundAtom`: ``-p/(N-1) <= xi <= p``.
    Two-level coherence blocks: ``|eps| <= 1``, i.e. the block determinants
    (and so ``(1/2-p)^2 p^2 (1-eps_e^2)(1-eps_g^2)`` for four levels) stay
    non-negative.
    """
    if isinstance(atom, MultiGroundAtom):
        n, p, xi = atom.n_levels, atom.ground_pop, atom.xi
        return p - xi >= -PSD_TOL and p + (n - 1) * xi >= -PSD_TOL
    if isinstance(atom, TwoExcitedAtom):
        pe = atom.excited_pop
        return pe * (1.0 - abs(atom.epsilon_e)) >= -PSD_TOL
    if isinstance(atom, FourLevelAtom):
        pe, p = atom.excited_pop, atom.ground_pop
        return pe * (1.0 - abs(atom.eps_e)) >= -PSD_TOL and p * (1.0 - abs(atom.eps_g)) >= -PSD_TOL
    raise TypeError(f"not an atom configuration: {atom!r}")


def chi_from_phase(magnitude: float, phase: float, ground_pop: float) -> float:
    """Effective real ``chi = |P| cos(phase) / p`` for a complex coherence ``|P| e^{i phase}``."""
    if magnitude < 0.0:
        raise DomainError(f"magnitude must be >= 0, got {magnitude!r}")
    if ground_pop <= 0.0:
        raise DomainError(f"ground_pop must be > 0, got {ground_pop!r}")
    if magnitude > ground_pop:
        raise DomainError(
            f"|P| = {magnitude!r} exceeds ground population {ground_pop!r}; matrix not PSD"
        )
    return magnitude * math.cos(phase) / ground_pop


def reference_nbar(atom: Atom) -> float:
    """Thermal occupation the incoherent populations would sustain.

    ``P_ee / (P_g - P_ee)`` per level, which equals ``(p / P_ee - 1)^-1``
    for the multi-ground configuration.
    """
    if isinstance(atom, (MultiGroundAtom, FourLevelAtom)):
        pe, pg = atom.excited_pop, atom.ground_pop
    elif isinstance(atom, TwoExcitedAtom):
        pe, pg = atom.excited_pop, atom.ground_pop
    else:
        raise TypeError(f"not an atom configuration: {atom!r}")
    if pe >= pg:
        raise DomainError(f"inverted population P_ee = {pe:.6g} >= P_g = {pg:.6g}: no thermal reference")
    return pe / (pg - pe)
