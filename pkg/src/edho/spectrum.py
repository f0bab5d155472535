"""Closed-form eigenvalues of the oscillator with energy-dependent frequency.

The eigenvalue problem is self-consistent: the squared frequency is
1 + gamma * E**nu, so each level solves a characteristic equation that is
quadratic in E.  Only the positive, normalizable branch is kept.  For
gamma < 0 the spectrum is bounded and accumulates at a finite limit
instead of growing linearly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError, NonPositiveEnergy, NotReached


class DensityMode(Enum):
    """How the density weight f(x) = 1 - g*x**2 picks its coefficient g.

    LITERAL uses g = gamma/2 for both cases (the published convention).
    NU_CONSISTENT differentiates the potential with respect to E, giving
    g = nu * gamma * E**(nu-1) / 2, which differs from LITERAL when nu = 2.
    """

    LITERAL = "paper"
    NU_CONSISTENT = "nu-consistent"


@dataclass(frozen=True)
class ModelParams:
    """Physical configuration in units hbar = m = omega = k_B = 1.

    gamma must be <= 0 for the density to stay positive; gamma > 0 is
    rejected unless ``permissive`` is set (exploratory use only).
    """

    gamma: float
    nu: int = 1
    density_mode: DensityMode = DensityMode.LITERAL
    permissive: bool = False

    def __post_init__(self):
        if self.nu not in (1, 2):
            raise DomainError(f"nu must be 1 or 2, got {self.nu}")
        if not math.isfinite(self.gamma):
            raise DomainError(f"gamma must be finite, got {self.gamma}")
        if self.gamma > 0 and not self.permissive:
            raise DomainError(
                f"gamma = {self.gamma} > 0 breaks density positivity; "
                "pass permissive=True to override"
            )


@dataclass(frozen=True)
class EnergyLevel:
    """Quantum number n with its eigenvalue and width parameter lam."""

    n: int
    energy: float
    lam: float


def residual(params: ModelParams, n: int, energy: float) -> float:
    """Characteristic-equation residual E**2 - (n+1/2)**2 (gamma E**nu + 1).

    Zero (to rounding) exactly when ``energy`` is an eigenvalue of case nu.
    """
    s = (n + 0.5) ** 2
    return energy * energy - s * params.gamma * energy**params.nu - s


def _energies(params: ModelParams, ns) -> np.ndarray:
    """Vectorized positive-branch eigenvalues for an array of quantum numbers."""
    ns = np.asarray(ns, dtype=float)
    half = ns + 0.5
    s = half * half
    g = params.gamma
    if params.nu == 1:
        q = half * np.sqrt(1.0 + g * g * s / 4.0)
        if g <= 0:
            # rearranged root: avoids the cancellation of the textbook
            # quadratic formula when |gamma| * n is large
            return s / (q - g * s / 2.0)
        return g * s / 2.0 + q
    disc = 4.0 - g * (2.0 * ns + 1.0) ** 2
    if np.any(disc <= 0):
        raise DomainError(
            f"4 - gamma*(2n+1)**2 must stay positive (gamma={g})"
        )
    return (2.0 * ns + 1.0) / np.sqrt(disc)


def eigenvalue(params: ModelParams, n: int) -> EnergyLevel:
    """Positive-branch eigenvalue for quantum number n.

    lam = sqrt(1 + gamma * E**nu) follows from the characteristic equation
    as E / (n + 1/2), which is exact and free of cancellation.
    """
    if n < 0:
        raise DomainError(f"quantum number must be non-negative, got {n}")
    energy = float(_energies(params, n))
    if energy <= 0 or not math.isfinite(energy):
        raise NonPositiveEnergy(
            f"retained branch gave E={energy} at n={n}, gamma={params.gamma}"
        )
    lam = energy / (n + 0.5)
    return EnergyLevel(n=n, energy=energy, lam=lam)


def saturation_limit(params: ModelParams) -> float:
    """Accumulation point of the spectrum: 1/|gamma| (nu=1) or 1/sqrt|gamma| (nu=2)."""
    if params.gamma >= 0:
        raise DomainError("saturation limit requires gamma < 0")
    a = abs(params.gamma)
    return 1.0 / a if params.nu == 1 else 1.0 / math.sqrt(a)


def saturation_index(params: ModelParams, eps: float = 1e-6,
                     n_max: int = 10**6) -> int:
    """Smallest n whose relative deviation from the saturation limit is < eps.

    The deviation (limit - E_n)/limit decreases monotonically in n, so the
    threshold is located by exponential doubling plus bisection.
    """
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    limit = saturation_limit(params)

    def deviation(n):
        return (limit - float(_energies(params, n))) / limit

    if deviation(0) < eps:
        return 0
    lo, hi = 0, 1
    while deviation(hi) >= eps:
        lo, hi = hi, hi * 2
        if lo >= n_max:
            raise NotReached(
                f"no n <= {n_max} within eps={eps} of the saturation limit"
            )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if deviation(mid) < eps:
            hi = mid
        else:
            lo = mid
    return hi


def spectrum_table(params: ModelParams, n_max: int) -> list[EnergyLevel]:
    """Levels n = 0..n_max; strictly increasing and bounded for gamma < 0."""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    ns = np.arange(n_max + 1)
    energies = _energies(params, ns)
    if np.any(energies <= 0) or not np.all(np.isfinite(energies)):
        raise NonPositiveEnergy(
            f"non-positive energy in table for gamma={params.gamma}"
        )
    lams = energies / (ns + 0.5)
    return [
        EnergyLevel(n=int(n), energy=float(e), lam=float(l))
        for n, e, l in zip(ns, energies, lams)
    ]
