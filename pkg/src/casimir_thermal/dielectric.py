"""Dielectric permittivities of metals along the imaginary frequency axis.

Four models are provided: Drude, the free-electron plasma model, the
normal-skin-effect limit and the generalized plasma-like model (plasma term
plus Lorentz oscillators for core-electron interband transitions). A perfect
conductor is also available as a reference surrogate.

Frequencies are angular frequencies in rad/s, conductivities in Gaussian
units (s^-1). Inside the Lifshitz engine everything is rescaled by the
characteristic frequency ``omega_c = c/(2a)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import C
from .errors import DomainError


@dataclass(frozen=True)
class OscillatorSet:
    """Core-electron oscillators ``f_j / (omega_j^2 - omega^2 - i g_j omega)``.

    ``entries`` holds ``(f_j, g_j, omega_j)`` triples with ``f_j`` in
    rad^2/s^2 and ``g_j``, ``omega_j`` in rad/s.
    """

    entries: tuple = ()

    def __post_init__(self):
        entries = tuple(tuple(float(v) for v in e) for e in self.entries)
        for e in entries:
            if len(e) != 3:
                raise DomainError(f"oscillator needs (f, g, omega), got {e}")
            f, g, w = e
            if not (f >= 0 and g >= 0 and w > 0):
                raise DomainError(f"oscillator parameters must satisfy f>=0, g>=0, omega>0: {e}")
        object.__setattr__(self, "entries", entries)

    @property
    def K(self):
        return len(self.entries)

    def arrays(self):
        if not self.entries:
            z = np.zeros(0)
            return z, z, z
        f, g, w = np.array(self.entries, dtype=float).T
        return f, g, w

    def scaled(self, omega_c):
        """Dimensionless ``C_j, gamma_j, delta_j`` for characteristic frequency ``omega_c``."""
        f, g, w = self.arrays()
        return ScaledOscillators(C=f / w**2, gamma=omega_c**2 / w**2, delta=omega_c * g / w**2)


@dataclass(frozen=True)
class ScaledOscillators:
    C: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray

    def a_term(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        if self.C.size == 0:
            return np.zeros_like(zeta)
        z = zeta[..., None]
        return np.sum(self.C / (1.0 + self.gamma * z**2 + self.delta * z), axis=-1)

    @property
    def sum_c(self):
        return float(np.sum(self.C))

    @property
    def sum_c_delta(self):
        return float(np.sum(self.C * self.delta))


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class Plasma:
    omega_p: float

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError(f"plasma frequency must be positive, got {self.omega_p}")


@dataclass(frozen=True)
class Drude:
    """Drude model. ``gamma == 0`` yields a :class:`Plasma` instance instead."""

    omega_p: float
    gamma: float

    def __new__(cls, omega_p=None, gamma=None):
        if gamma == 0:
            return Plasma(omega_p)
        return super().__new__(cls)

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError(f"plasma frequency must be positive, got {self.omega_p}")
        if not self.gamma > 0:
            raise DomainError(f"relaxation parameter must be >= 0, got {self.gamma}")

    @property
    def sigma0(self):
        """Static conductivity ``omega_p^2/(4 pi gamma)`` (Gaussian units)."""
        return self.omega_p**2 / (4 * math.pi * self.gamma)


@dataclass(frozen=True)
class NormalSkin:
    """``eps = 1 + 4 pi i sigma0/omega``; physically meaningful at low frequency only."""

    sigma0: float

    def __post_init__(self):
        if not self.sigma0 > 0:
            raise DomainError(f"conductivity must be positive, got {self.sigma0}")


@dataclass(frozen=True)
class GeneralizedPlasma:
    omega_p: float
    oscillators: OscillatorSet = OscillatorSet()

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError(f"plasma frequency must be positive, got {self.omega_p}")


@dataclass(frozen=True)
class PerfectConductor:
    """Reference surrogate with ``r_TM = r_TE = 1`` at every frequency."""


MODEL_TYPES = (Drude, Plasma, NormalSkin, GeneralizedPlasma, PerfectConductor)


@dataclass(frozen=True)
class ZeroFreqLimit:
    """Zero-frequency behaviour ``w = lim zeta^2 (eps(i zeta) - 1)``."""

    w: float
    te_vanishes: bool


@dataclass(frozen=True)
class CurrentSplit:
    displacement_coeff: float
    conduction_coeff: float


def _check_model(model):
    if not isinstance(model, MODEL_TYPES):
        raise TypeError(f"not a dielectric model: {model!r}")


def plasma_frequency(model):
    """Plasma frequency of a model, or ``None`` where the model has none."""
    return getattr(model, "omega_p", None)


def scaled_response(model, omega_c, zeta):
    """Return ``(eps, w)`` at dimensionless imaginary frequencies ``zeta = xi/omega_c``.

    ``w = zeta^2 (eps - 1)`` is computed directly so it stays finite as
    ``zeta -> 0``; at ``zeta == 0`` ``eps`` is ``inf`` and ``w`` takes its
    limiting value.
    """
    _check_model(model)
    # eps overflows to inf below zeta ~ 1e-154; w stays finite
    with np.errstate(over="ignore", divide="ignore"):
        return _scaled_response(model, omega_c, zeta)


def _scaled_response(model, omega_c, zeta):
    zeta = np.asarray(zeta, dtype=float)
    pos = zeta > 0
    zs = np.where(pos, zeta, 1.0)
    if isinstance(model, PerfectConductor):
        inf = np.full_like(zeta, np.inf)
        return inf, inf
    if isinstance(model, Plasma):
        p2 = (model.omega_p / omega_c) ** 2
        w = np.full_like(zeta, p2)
        chi = p2 / zs**2
    elif isinstance(model, GeneralizedPlasma):
        p2 = (model.omega_p / omega_c) ** 2
        a = model.oscillators.scaled(omega_c).a_term(zeta)
        w = p2 + a * zeta**2
        chi = p2 / zs**2 + a
    elif isinstance(model, Drude):
        p2 = (model.omega_p / omega_c) ** 2
        g = model.gamma / omega_c
        w = p2 * zeta / (zeta + g)
        chi = p2 / (zs * (zs + g))
    else:
        s = 4 * math.pi * model.sigma0 / omega_c
        w = s * zeta
        chi = s / zs
    eps = np.where(pos, 1.0 + chi, np.inf)
    return eps, w


def zero_freq_limit(model, frame):
    """Zero-frequency limit in the frame of ``frame`` (uses ``frame.omega_c``).

    Plasma-like models keep a finite ``w = (omega_p/omega_c)^2 = 1/alpha^2``;
    for Drude and normal-skin media ``w = 0`` and the TE reflection vanishes.
    """
    _check_model(model)
    if isinstance(model, PerfectConductor):
        return ZeroFreqLimit(w=math.inf, te_vanishes=False)
    if isinstance(model, (Plasma, GeneralizedPlasma)):
        return ZeroFreqLimit(w=(model.omega_p / frame.omega_c) ** 2, te_vanishes=False)
    return ZeroFreqLimit(w=0.0, te_vanishes=True)


@dataclass(frozen=True)
class _UnitFrame:
    omega_c: float = 1.0


def eps_imag(model, xi):
    """Permittivity ``eps(i xi)`` at imaginary angular frequency ``xi`` (rad/s).

    All models diverge at ``xi = 0``; there the :class:`ZeroFreqLimit` with
    ``w = lim xi^2 (eps - 1)`` in rad^2/s^2 is returned instead of a number.
    Array input must be strictly positive.
    """
    _check_model(model)
    if np.ndim(xi) == 0:
        xi = float(xi)
        if xi < 0 or math.isnan(xi):
            raise DomainError(f"imaginary frequency must be >= 0, got {xi}")
        if xi == 0.0:
            return zero_freq_limit(model, _UnitFrame())
        return float(scaled_response(model, 1.0, xi)[0])
    xi = np.asarray(xi, dtype=float)
    if np.any(~(xi > 0)):
        raise DomainError("array frequencies must be strictly positive")
    return scaled_response(model, 1.0, xi)[0]


def a_term(oscillators, zeta, omega_c):
    """Core-electron term ``A(zeta) = sum_j C_j/(1 + gamma_j zeta^2 + delta_j zeta)``."""
    zeta = np.asarray(zeta, dtype=float)
    if np.any(zeta < 0):
        raise DomainError("zeta must be >= 0")
    out = oscillators.scaled(omega_c).a_term(zeta)
    return float(out) if out.ndim == 0 else out


def sum_cj_deltaj(oscillators, a):
    """``sum_j C_j delta_j`` at plate separation ``a`` (m), with ``omega_c = c/(2a)``."""
    if not a > 0:
        raise DomainError(f"separation must be positive, got {a}")
    return oscillators.scaled(C / (2 * a)).sum_c_delta


def conductivity(model, omega):
    """Complex Drude conductivity ``sigma0 (1 + i omega/gamma)/(1 + omega^2/gamma^2)``."""
    if not isinstance(model, Drude):
        raise DomainError("conductivity needs a Drude model with gamma > 0")
    if omega < 0:
        raise DomainError(f"frequency must be >= 0, got {omega}")
    r = omega / model.gamma
    return model.sigma0 * complex(1.0, r) / (1.0 + r * r)


def current_split(model, omega):
    """Amplitudes of the displacement and conduction parts of the Drude current.

    The displacement part multiplies ``Im[E0 e^{-i omega t}]``, the conduction
    part ``Re[E0 e^{-i omega t}]`` (the physical field).
    """
    if not omega > 0:
        raise DomainError(f"frequency must be positive, got {omega}")
    if isinstance(model, Plasma):
        gamma, sigma0 = 0.0, 0.0
    elif isinstance(model, Drude):
        gamma, sigma0 = model.gamma, model.sigma0
    else:
        raise DomainError("current split is defined for Drude and plasma models")
    wp2 = model.omega_p**2
    disp = omega / (4 * math.pi) * (1.0 - wp2 / (omega**2 + gamma**2))
    cond = sigma0 * gamma**2 / (omega**2 + gamma**2)
    return CurrentSplit(displacement_coeff=disp, conduction_coeff=cond)
