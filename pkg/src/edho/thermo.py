"""Canonical thermodynamics from the saturation-split partition function.

For gamma < 0 the spectrum accumulates at a finite limit, so the partition
function is a finite sum over the pre-saturation levels plus one term for
the accumulation point.  Internal energy and specific heat come from exact
Boltzmann-weighted moments of that discrete level set, never from numeric
differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .spectrum import ModelParams, _energies, saturation_index, saturation_limit


@dataclass(frozen=True)
class ThermoPoint:
    """(beta, Z, U, Cv) with the saturation index used; N_used is None for
    the textbook reference."""

    beta: float
    Z: float
    U: float
    Cv: float
    N_used: int | None = None


def reference_partition_function(beta: float) -> ThermoPoint:
    """Textbook oscillator: Z = 1/(2 sinh(beta/2)) and its exact U, Cv."""
    if beta <= 0:
        raise DomainError(f"beta must be positive, got {beta}")
    half = 0.5 * beta
    z = 1.0 / (2.0 * math.sinh(half))
    u = 0.5 / math.tanh(half)
    cv = (half / math.sinh(half)) ** 2
    return ThermoPoint(beta=beta, Z=z, U=u, Cv=cv, N_used=None)


def _level_set(params: ModelParams, eps_sat: float, n_max: int) -> tuple[np.ndarray, int]:
    n_sat = saturation_index(params, eps_sat, n_max=n_max)
    energies = _energies(params, np.arange(n_sat + 1))
    return np.append(energies, saturation_limit(params)), n_sat


def _point(energies: np.ndarray, beta: float, n_used: int) -> ThermoPoint:
    e0 = energies[0]
    w = np.exp(-beta * (energies - e0))
    w_sum = float(w.sum())
    z = math.exp(-beta * e0) * w_sum
    u = float((energies * w).sum() / w_sum)
    e2 = float((energies * energies * w).sum() / w_sum)
    cv = beta * beta * max(e2 - u * u, 0.0)
    return ThermoPoint(beta=beta, Z=z, U=u, Cv=cv, N_used=n_used)


def partition_function(params: ModelParams, beta: float, eps_sat: float = 1e-6,
                       n_max: int = 10**6) -> ThermoPoint:
    """Saturation-split partition function at inverse temperature beta.

    gamma = 0 routes to the textbook reference.  The accumulation point
    enters as exactly one pseudo-level.
    """
    if beta <= 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if params.gamma == 0:
        return reference_partition_function(beta)
    energies, n_sat = _level_set(params, eps_sat, n_max)
    return _point(energies, beta, n_sat)


def specific_heat_curve(params: ModelParams, beta_grid, eps_sat: float = 1e-6,
                        n_max: int = 10**6) -> list[ThermoPoint]:
    """Thermo points over a sorted, strictly positive beta grid."""
    beta_grid = np.asarray(beta_grid, dtype=float)
    if beta_grid.size == 0:
        raise DomainError("beta grid is empty")
    if np.any(beta_grid <= 0) or np.any(np.diff(beta_grid) <= 0):
        raise DomainError("beta grid must be strictly positive and increasing")
    if params.gamma == 0:
        return [reference_partition_function(b) for b in beta_grid]
    energies, n_sat = _level_set(params, eps_sat, n_max)
    return [_point(energies, float(b), n_sat) for b in beta_grid]
