"""Charge accumulation at the boundary of a finite conducting plate.

A field ``E`` switched on inside a conductor drives a current that piles up
charge on the edges; the charge field opposes ``E`` and the total field
relaxes as ``E_tot = E exp(-4 pi sigma0 t)``. Gaussian units, with the field
amplitude left abstract since the model is linear in ``E``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class RelaxationScenario:
    """Static conductivity ``sigma0`` (s^-1), applied field ``E_field`` and time ``t`` (s)."""

    sigma0: float
    E_field: float = 1.0
    t: float = 0.0

    def __post_init__(self):
        if not self.sigma0 > 0:
            raise DomainError(f"conductivity must be positive, got {self.sigma0}")
        if np.any(np.asarray(self.t) < 0):
            raise DomainError("time must be >= 0")

    @property
    def rate(self):
        """Relaxation rate ``4 pi sigma0`` in s^-1."""
        return 4 * math.pi * self.sigma0


def surface_charge(scenario):
    """``rho(t) = E/(4 pi) (1 - exp(-4 pi sigma0 t))``."""
    t = np.asarray(scenario.t, dtype=float)
    out = scenario.E_field / (4 * math.pi) * -np.expm1(-scenario.rate * t)
    return float(out) if out.ndim == 0 else out


def total_field(scenario):
    """``E_tot(t) = E - 4 pi rho(t) = E exp(-4 pi sigma0 t)``."""
    t = np.asarray(scenario.t, dtype=float)
    out = scenario.E_field * np.exp(-scenario.rate * t)
    return float(out) if out.ndim == 0 else out


def saturation_charge(scenario):
    """Limit ``rho(inf) = E/(4 pi)``."""
    return scenario.E_field / (4 * math.pi)
