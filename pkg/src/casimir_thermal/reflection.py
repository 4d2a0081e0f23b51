"""TM and TE reflection coefficients on the imaginary frequency axis.

Variables are dimensionless: ``zeta = xi/omega_c`` and
``y = sqrt(4 a^2 k^2 + zeta^2)`` with ``omega_c = c/(2a)``. A plate of
thickness ``d`` enters through ``coth((d/2a) h)`` with
``h = sqrt(y^2 + w)`` and ``w = zeta^2 (eps - 1)``.

In terms of the semispace Fresnel coefficient ``r`` the slab coefficient is
the two-interface sum ``r (1 - e^{-2z}) / (1 - r^2 e^{-2z})`` with
``z = (d/2a) h``; clearing denominators gives the coth form used below.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import C
from .dielectric import scaled_response
from .errors import DomainError

COTH_CUTOFF = 350.0


@dataclass(frozen=True)
class Geometry:
    """Plate separation ``a`` and thickness ``d`` in metres (``d = inf`` for semispaces)."""

    a: float
    d: float = math.inf

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"separation must be positive, got {self.a}")
        if not self.d > 0:
            raise DomainError(f"thickness must be positive, got {self.d}")

    @classmethod
    def semispace(cls, a):
        return cls(a=a, d=math.inf)

    @property
    def is_semispace(self):
        return math.isinf(self.d)

    @property
    def omega_c(self):
        return C / (2 * self.a)

    @property
    def half_ratio(self):
        """``d/(2a)``, infinite for semispaces."""
        return self.d / (2 * self.a)


@dataclass(frozen=True)
class ReflectionPair:
    r_tm: float
    r_te: float


def coth_safe(z):
    """``coth z`` for ``z >= 0`` as ``(1 + e^{-2z})/(1 - e^{-2z})``; exactly 1 beyond the cutoff."""
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        e = np.exp(-2.0 * np.minimum(z, COTH_CUTOFF))
        out = (1.0 + e) / -np.expm1(-2.0 * z)
    return np.where(z > COTH_CUTOFF, 1.0, out)


def coefficients(w, zeta, y, half_ratio=math.inf):
    """Reflection coefficients and their complements from ``w = zeta^2 (eps - 1)``.

    Returns ``(r_tm, 1 - r_tm, r_te, 1 - r_te)``. The complements are formed
    directly so that ``ln(1 - r^2 e^{-y})`` keeps full precision when ``r``
    is close to one. ``w = inf`` describes a perfect conductor.
    """
    w, zeta, y = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (w, zeta, y)))
    perfect = np.isinf(w)
    ws = np.where(perfect, 0.0, w)
    h = np.sqrt(y * y + ws)
    if math.isinf(half_ratio):
        k = np.ones_like(h)
    else:
        k = coth_safe(half_ratio * h)
    z2 = zeta * zeta
    with np.errstate(divide="ignore", invalid="ignore"):
        # eh = h/eps; every model is a conductor, so eps = inf and eh = 0 at zeta = 0
        eh = np.where(z2 > 0, z2 * h / np.where(z2 + ws > 0, z2 + ws, 1.0), 0.0)
        den_tm = y * y + eh * eh + 2 * y * eh * k
        q_tm = (2 * eh * eh + 2 * y * eh * k) / den_tm
        r_tm = (y * y - eh * eh) / den_tm
        den_te = 2 * y * y + ws + 2 * y * h * k
        q_te = (2 * y * y + 2 * y * h * k) / den_te
        r_te = ws / den_te
    one, zero = np.ones_like(h), np.zeros_like(h)
    r_tm = np.where(perfect, one, r_tm)
    q_tm = np.where(perfect, zero, q_tm)
    r_te = np.where(perfect, one, r_te)
    q_te = np.where(perfect, zero, q_te)
    return r_tm, q_tm, r_te, q_te


def _check_point(zeta, y):
    zeta = np.asarray(zeta, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(zeta < 0) or np.any(np.isnan(zeta)) or np.any(np.isnan(y)):
        raise DomainError("zeta must be >= 0")
    if np.any(y < zeta):
        raise DomainError("need y >= zeta")
    if np.any((y == 0) & (zeta == 0)):
        raise DomainError("y = zeta = 0 is excluded")
    return zeta, y


def reflect(model, geometry, zeta, y):
    """Reflection pair at dimensionless ``zeta``, ``y`` (``y >= zeta``).

    At ``zeta = 0`` the analytic limits are used: ``r_tm = 1`` for every
    metal model and ``r_te`` follows from the zero-frequency ``w``.
    Scalars give a :class:`ReflectionPair` of floats, arrays of arrays.
    """
    zeta, y = _check_point(zeta, y)
    _, w = scaled_response(model, geometry.omega_c, zeta)
    r_tm, _, r_te, _ = coefficients(w, zeta, y, geometry.half_ratio)
    if r_tm.ndim == 0:
        return ReflectionPair(float(r_tm), float(r_te))
    return ReflectionPair(r_tm, r_te)


def thickness_factor(geometry, frame, zeta, y, a_term_value):
    """``coth[(d/2a) sqrt(y^2 + 1/alpha^2 + A zeta^2)]``; approaches ``1 + 2 e^{-d/(a alpha)}``."""
    h = np.sqrt(np.asarray(y, dtype=float) ** 2 + frame.alpha**-2 + a_term_value * np.asarray(zeta, dtype=float) ** 2)
    if geometry.is_semispace:
        out = np.ones_like(h)
    else:
        out = coth_safe(geometry.half_ratio * h)
    return float(out) if out.ndim == 0 else out


def slab_from_interface(r, z):
    """Two-interface slab coefficient ``r (1 - e^{-2z})/(1 - r^2 e^{-2z})``."""
    e = np.exp(-2.0 * np.asarray(z, dtype=float))
    return r * (1.0 - e) / (1.0 - r * r * e)
