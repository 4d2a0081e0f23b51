"""Low-temperature expansions of the Casimir free energy and entropy.

The reflection logarithms are expanded in ``alpha = omega_c/omega_p`` up to
fourth order, and the resulting thermal correction is expanded in
``tau = 2 pi T/T_eff``. Free energies are written as

    Delta F = -(hbar c/32 pi^2 a^3) {b3 tau^3 + b4 tau^4 + b5 tau^5},

with the brackets assembled from a :class:`ExpansionCoefficients` set.
Two sets are shipped: ``PUBLISHED``, the closed forms in the standard
literature form, and ``REDERIVED``, an independent re-derivation whose
alpha^2 tau^5, alpha^3 and alpha^4 tau^4 coefficients differ and which
agrees with direct Lifshitz numerics (see ``demos/``). The published set is
the default everywhere.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .constants import C, HBAR, K_B
from .errors import DomainError
from .lifshitz import DimensionlessFrame, prefactor
from .specialfn import ZETA, appendix_integral

Z3 = ZETA.zeta3
Z5 = ZETA.zeta5
PI = math.pi

VALIDITY_TAU = 0.3


# ---------------------------------------------------------------------------
# expansion of y ln(1 - r^2 e^{-y}) in alpha


@dataclass(frozen=True)
class LogTermExpansion:
    """Coefficients ``c0 .. c4`` of ``y ln(1 - r^2 e^{-y}) = sum_k c_k alpha^k``."""

    c0: float
    c1: float
    c2: float
    c3: float
    c4: float

    @property
    def coefficients(self):
        return (self.c0, self.c1, self.c2, self.c3, self.c4)

    def evaluate(self, alpha, order=4):
        return sum(c * alpha**k for k, c in enumerate(self.coefficients[: order + 1]))


def expand_log_term(polarization, zeta, y, a_value=0.0):
    """Fourth-order alpha expansion of ``y ln(1 - r^2 e^{-y})`` for semispaces.

    ``a_value`` is the core-electron term ``A(zeta)``; it enters only the
    third and fourth orders. Works elementwise on arrays.
    """
    pol = polarization.upper()
    if pol not in ("TM", "TE"):
        raise DomainError(f"polarization must be TM or TE, got {polarization!r}")
    zeta = np.asarray(zeta, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0) or np.any(zeta < 0):
        raise DomainError("need y > 0 and zeta >= 0")
    a = np.asarray(a_value, dtype=float)
    q = np.exp(-y)
    em = -np.expm1(-y)
    c0 = y * np.log(em)
    z2 = zeta * zeta
    if pol == "TM":
        b = y * y - 2 * z2 - z2 * a
        c1 = 4 * z2 * q / em
        c2 = -8 * z2**2 * q / (y * em**2)
        c3 = 4 * z2**3 / (3 * y * y) * q * (3 + q) ** 2 / em**3 + 2 * z2 * b * q / em
        c4 = -16 * z2**4 * q * (1 + q) ** 2 / (y**3 * em**4) - 8 * z2**2 * b * q / (y * em**2)
    else:
        c1 = 4 * y * y * q / em
        c2 = -8 * y**3 * q / em**2
        c3 = -2 * y * y * z2 * a * q / em + 2 * y**4 / 3 * q * (15 + 18 * q - q * q) / em**3
        c4 = 8 * y**3 * z2 * a * q / em**2 - 8 * y**5 * q * (1 + 6 * q + q * q) / em**4
    vals = [np.asarray(v, dtype=float) for v in (c0, c1, c2, c3, c4)]
    if all(v.ndim == 0 for v in vals):
        vals = [float(v) for v in vals]
    return LogTermExpansion(*vals)


# ---------------------------------------------------------------------------
# coefficient sets


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Bracket coefficients of the alpha^2 .. alpha^4 thermal terms.

    ``b5 += k2 alpha^2``, ``b4 += k3a alpha^3 S_cd``,
    ``b5 += k3b alpha^3 (S_c + 2)``, ``b4 += k4a alpha^4 S_cd``,
    ``b5 += k4b alpha^4`` with ``S_c = sum C_j`` and ``S_cd = sum C_j delta_j``.
    The alpha^0 and alpha^1 parts are common to all sets.
    """

    name: str
    k2: float
    k3a: float
    k3b: float
    k4a: float
    k4b: float


PUBLISHED = ExpansionCoefficients(
    name="published",
    k2=-6 * Z5 / PI**2,
    k3a=-Z3 / 60,
    k3b=-3 * Z5 / (2 * PI**4),
    k4a=4 * Z3 / 15,
    k4b=6 * Z5 / PI**4,
)

REDERIVED = ExpansionCoefficients(
    name="rederived",
    k2=-Z5 / (2 * PI**4),
    k3a=-Z3 / 30,
    k3b=3 * Z5 / (2 * PI**4),
    k4a=2 * Z3 / 5,
    k4b=6 * Z5 / PI**4,
)

COEFFICIENT_SETS = {c.name: c for c in (PUBLISHED, REDERIVED)}


@dataclass(frozen=True)
class RegroupedCoefficients:
    """The same expansion regrouped in powers of ``t = T/T_eff``.

    ``F = E - (hbar c zeta(3)/16 pi a^3) t^3 {1 + 4 alpha
    - (pi^3/45 zeta(3)) t (1 + 8 alpha + x3 alpha^3 S_cd + x4 alpha^4 S_cd)
    - q5 t^2 alpha^2 [1 + s3 alpha (S_c + 2) + s4 alpha^2]}``.
    """

    x3: float
    x4: float
    q5: float
    s3: float
    s4: float


# the t-grouped constants exactly as they appear in the literature form
PUBLISHED_REGROUPED = RegroupedCoefficients(
    x3=6 * Z3,
    x4=-96 * Z3,
    q5=96 * PI**2 * Z5 / Z3,
    s3=1 / (4 * PI**2),
    s4=-1 / PI**2,
)


def regroup(coeffs):
    """Convert tau-bracket coefficients to the ``T/T_eff`` grouping."""
    return RegroupedCoefficients(
        x3=-360 * coeffs.k3a,
        x4=-360 * coeffs.k4a,
        q5=-16 * PI**4 * coeffs.k2 / Z3,
        s3=coeffs.k3b / coeffs.k2,
        s4=coeffs.k4b / coeffs.k2,
    )


def _coeffs(coefficients):
    if isinstance(coefficients, str):
        try:
            return COEFFICIENT_SETS[coefficients]
        except KeyError:
            raise DomainError(f"unknown coefficient set {coefficients!r}") from None
    return coefficients


def _oscillator_sums(oscillators, omega_c):
    if oscillators is None:
        return 0.0, 0.0
    s = oscillators.scaled(omega_c)
    return s.sum_c, s.sum_c_delta


def _sep(frame, a):
    return frame.a if a is None else a


# ---------------------------------------------------------------------------
# free energy pieces


def delta_f_plasma(frame, a=None, coefficients=PUBLISHED):
    """Thermal correction from the alpha^0 .. alpha^2 orders (J/m^2)."""
    c = _coeffs(coefficients)
    al, t = frame.alpha, frame.tau
    braces = (Z3 / (4 * PI**2) * t**3 - t**4 / 360
              + al * (Z3 / PI**2 * t**3 - t**4 / 45)
              + c.k2 * al**2 * t**5)
    return -prefactor(_sep(frame, a)) * braces


def delta_f_core(frame, a=None, oscillators=None, coefficients=PUBLISHED):
    """Thermal correction from the alpha^3 and alpha^4 orders (J/m^2).

    With ``oscillators=None`` (or an empty set) only the ``S_c + 2`` and
    alpha^4 tau^5 pieces survive.
    """
    c = _coeffs(coefficients)
    al, t = frame.alpha, frame.tau
    s_c, s_cd = _oscillator_sums(oscillators, frame.omega_c)
    braces = (al**3 * (c.k3a * s_cd * t**4 + c.k3b * (s_c + 2) * t**5)
              + al**4 * (c.k4a * s_cd * t**4 + c.k4b * t**5))
    return -prefactor(_sep(frame, a)) * braces


@dataclass(frozen=True)
class AsymptoticBreakdown:
    """Free energy expansion split by power of temperature (J/m^2)."""

    e0: float
    t3_term: float
    t4_term: float
    t5_term: float
    total: float
    extrapolated: bool = False


def free_energy_expansion(frame, a=None, oscillators=None, e0=0.0, coefficients=PUBLISHED):
    """Low-temperature free energy grouped in powers of ``T/T_eff``.

    ``e0`` is the zero-temperature energy (e.g. from
    :func:`casimir_thermal.lifshitz.zero_t_energy`). Results with
    ``tau > 0.3`` are flagged ``extrapolated``.
    """
    c = _coeffs(coefficients)
    g = PUBLISHED_REGROUPED if c is PUBLISHED else regroup(c)
    a = _sep(frame, a)
    al = frame.alpha
    t = frame.tau / (2 * PI)
    s_c, s_cd = _oscillator_sums(oscillators, frame.omega_c)
    lead = -HBAR * C * Z3 / (16 * PI * a**3) * t**3
    t3 = lead * (1 + 4 * al)
    t4 = lead * (-(PI**3 / (45 * Z3)) * t
                 * (1 + 8 * al + g.x3 * al**3 * s_cd + g.x4 * al**4 * s_cd))
    t5 = lead * (-g.q5 * t**2 * al**2 * (1 + g.s3 * al * (s_c + 2) + g.s4 * al**2))
    return AsymptoticBreakdown(
        e0=e0, t3_term=t3, t4_term=t4, t5_term=t5,
        total=e0 + t3 + t4 + t5,
        extrapolated=frame.tau > VALIDITY_TAU,
    )


def entropy_expansion(frame, a=None, oscillators=None, coefficients=PUBLISHED):
    """Low-temperature entropy per unit area (J/(K m^2)), ``-dF/dT`` of the expansion."""
    c = _coeffs(coefficients)
    g = PUBLISHED_REGROUPED if c is PUBLISHED else regroup(c)
    a = _sep(frame, a)
    al = frame.alpha
    t = frame.tau / (2 * PI)
    s_c, s_cd = _oscillator_sums(oscillators, frame.omega_c)
    if c is PUBLISHED:
        k4, k5 = 4 * PI**3 / (135 * Z3), 160 * PI**2 * Z5 / Z3
    else:
        k4, k5 = 4 / 3 * PI**3 / (45 * Z3), 5 / 3 * g.q5
    braces = (1 + 4 * al
              - k4 * t * (1 + 8 * al + g.x3 * al**3 * s_cd + g.x4 * al**4 * s_cd)
              - k5 * t**2 * al**2 * (1 + g.s3 * al * (s_c + 2) + g.s4 * al**2))
    return 3 * Z3 * K_B / (8 * PI * a**2) * t**2 * braces


def frame_at(a, T, omega_p):
    """Shorthand for :meth:`DimensionlessFrame.from_physical`."""
    return DimensionlessFrame.from_physical(a, T, omega_p)


# ---------------------------------------------------------------------------
# third and fourth order thermal functions


@dataclass(frozen=True)
class F34Difference:
    """Imaginary parts of ``F^(n)(i tau t) - F^(n)(-i tau t)``.

    ``tau3`` and ``tau4`` multiply ``tau^3 t^3`` and ``tau^4 t^4``; ``value``
    is their sum at the requested point.
    """

    order: int
    tau3: float
    tau4: float
    value: float


def f34_difference(order, frame, oscillators=None, t=1.0, coefficients=PUBLISHED):
    """Leading small-argument discontinuity of the third/fourth order thermal function."""
    c = _coeffs(coefficients)
    al = frame.alpha
    s_c, s_cd = _oscillator_sums(oscillators, frame.omega_c)
    if order == 3:
        # Abel-Plana weights: int t^3/(e^{2 pi t}-1) = 1/240, int t^4/(...) = 3 zeta(5)/(4 pi^5)
        c3 = 240 * c.k3a * al**3 * s_cd
        c4 = 4 * PI**5 / (3 * Z5) * c.k3b * al**3 * (s_c + 2)
    elif order == 4:
        c3 = 240 * c.k4a * al**4 * s_cd
        c4 = 4 * PI**5 / (3 * Z5) * c.k4b * al**4
    else:
        raise DomainError(f"order must be 3 or 4, got {order}")
    tt = frame.tau * t
    return F34Difference(order=order, tau3=c3, tau4=c4, value=c3 * tt**3 + c4 * tt**4)


def thermal_from_difference(diff3, diff4, frame, a=None):
    """Thermal correction obtained by integrating the two discontinuities over ``t``."""
    w3 = 1.0 / 240.0
    w4 = 3 * Z5 / (4 * PI**5)
    tau = frame.tau
    braces = w3 * (diff3.tau3 + diff4.tau3) * tau**4 + w4 * (diff3.tau4 + diff4.tau4) * tau**5
    return -prefactor(_sep(frame, a)) * braces


def _a_of(osc_scaled, x):
    if osc_scaled is None:
        return 0.0
    return float(osc_scaled.a_term(x))


def third_order_function(x, osc_scaled=None, variant="consistent", rtol=1e-12):
    """``F^(3)(x)/alpha^3`` by quadrature of its four integrals.

    ``variant="consistent"`` integrates the alpha^3 coefficients of the log
    expansion; ``variant="printed"`` uses a ``1/y^3`` kernel in the last
    integral, the form in which this function is usually written out.
    """
    tag4 = {"consistent": "I4_3", "printed": "I4_3_printed"}[variant]
    a = _a_of(osc_scaled, x)
    return -2 * ((a - 1) * x**2 * appendix_integral("I1_3", x, rtol)
                 - appendix_integral("I2_3", x, rtol) / 3
                 + (a + 2) * x**4 * appendix_integral("I3_3", x, rtol)
                 - 2 / 3 * x**6 * appendix_integral(tag4, x, rtol))


def fourth_order_function(x, osc_scaled=None, variant="consistent", rtol=1e-12):
    """``F^(4)(x)/alpha^4`` by quadrature; ``variant`` selects the fourth kernel
    (``y e^y/(e^y-1)^2`` or the printed ``e^y/(y^2 (e^y-1)^2)``)."""
    tag4 = {"consistent": "I4_4", "printed": "I4_4_printed"}[variant]
    a = _a_of(osc_scaled, x)
    return 8 * (a * x**2 * appendix_integral("I1_4", x, rtol)
                - appendix_integral("I2_4", x, rtol)
                + (a + 2) * x**6 * appendix_integral("I3_4", x, rtol)
                - x**4 * appendix_integral(tag4, x, rtol)
                - 2 * x**8 * appendix_integral("I5_4", x, rtol))


def order_function_direct(order, x, osc_scaled=None, alpha=None):
    """``F^(n)(x)/alpha^n`` by integrating :func:`expand_log_term` coefficients over ``y``.

    An independent route to :func:`third_order_function` /
    :func:`fourth_order_function` with ``variant="consistent"``.
    """
    a = _a_of(osc_scaled, x)
    k = {3: 3, 4: 4}[order]

    def f(y):
        tm = expand_log_term("TM", x, y, a).coefficients[k]
        te = expand_log_term("TE", x, y, a).coefficients[k]
        return tm + te

    edges = [x]
    while edges[-1] < 1.0:
        edges.append(edges[-1] * 4)
    edges += list(np.arange(max(x, 1.0) + 8, x + 90, 8.0))
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        total += integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)[0]
    return total


def fit_odd_coefficients(order, osc_scaled=None, variant="consistent", xs=None):
    """Fit the ``x^3`` and ``x^4 ln x`` coefficients of ``F^(n)(x)/alpha^n`` at small x.

    The basis is ``1, x, x^2, x^3, x^4 ln x, x^4, x^5 ln x, x^5``; the ``x``
    term is zero for a consistent expansion and absorbs the spurious ``1/y^3``
    behaviour otherwise. Returns ``(c_x3, c_x4lnx)``; the discontinuity
    coefficients are ``-2 c_x3`` and ``pi c_x4lnx``.
    """
    if xs is None:
        xs = np.linspace(0.02, 0.1, 17)
    xs = np.asarray(xs, dtype=float)
    fun = third_order_function if order == 3 else fourth_order_function
    vals = np.array([fun(x, osc_scaled, variant) for x in xs])
    lx = np.log(xs)
    basis = np.vstack([xs**0, xs, xs**2, xs**3, xs**4 * lx, xs**4, xs**5 * lx, xs**5]).T
    # column scaling keeps the least-squares problem well conditioned
    scale = np.abs(basis).max(axis=0)
    coef = np.linalg.lstsq(basis / scale, vals, rcond=None)[0] / scale
    return float(coef[3]), float(coef[4])
