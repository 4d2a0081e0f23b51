"""Physical constants (CODATA 2018 via :mod:`scipy.constants`)."""

from dataclasses import dataclass

from scipy import constants as _sc


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = _sc.hbar
    c: float = _sc.c
    k_B: float = _sc.k
    eV_to_rad_per_s: float = _sc.e / _sc.hbar


CONSTANTS = PhysicalConstants()

HBAR = CONSTANTS.hbar
C = CONSTANTS.c
K_B = CONSTANTS.k_B
EV = CONSTANTS.eV_to_rad_per_s
