"""Special functions and the small-x integrals behind the low-temperature expansions.

The integrals are all of the form ``int_x^inf g(y) dy`` with ``g`` built from
Bose-like factors ``1/(e^y - 1)``. Tags follow the ``I<k>_<order>`` naming:
``I1_3`` .. ``I4_3`` enter the third-order (in alpha) thermal function,
``I1_4`` .. ``I5_4`` the fourth-order one.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceError, DomainError


@dataclass(frozen=True)
class EulerMaclaurinConstants:
    zeta3: float
    zeta4: float
    zeta5: float
    euler_gamma: float


ZETA = EulerMaclaurinConstants(
    zeta3=float(special.zeta(3.0)),
    zeta4=math.pi**4 / 90.0,
    zeta5=float(special.zeta(5.0)),
    euler_gamma=float(np.euler_gamma),
)

# taylor terms kept in the small-x polylog expansion; (x/2pi)^40 is far below eps for x < 1
_POLYLOG_TAYLOR_TERMS = 40
_BERNOULLI = special.bernoulli(_POLYLOG_TAYLOR_TERMS + 2)


def _zeta_int(s):
    """Riemann zeta at an integer argument s != 1."""
    if s >= 2:
        return float(special.zeta(float(s)))
    if s == 0:
        return -0.5
    m = -s
    # zeta(-m) = -B_{m+1}/(m+1), zero for even m > 0
    return -float(_BERNOULLI[m + 1]) / (m + 1)


def polylog(n, x):
    """Polylogarithm ``Li_n(exp(-x))`` for integer ``n >= 1`` and real ``x >= 0``.

    For ``x >= 1`` the exponential series is summed until the geometric tail
    bound drops below double precision. Below that the expansion around
    ``x = 0`` in terms of zeta values (convergent for ``x < 2 pi``) is used,
    which avoids summing ~1/x terms.
    """
    n = int(n)
    x = float(x)
    if n < 1:
        raise DomainError(f"polylog order must be >= 1, got {n}")
    if x < 0 or math.isnan(x):
        raise DomainError(f"polylog argument must be >= 0, got {x}")
    if n == 1:
        if x == 0.0:
            raise DomainError("Li_1(1) diverges")
        if x > math.log(2.0):
            return -math.log1p(-math.exp(-x))
        return -math.log(-math.expm1(-x))
    if x == 0.0:
        return _zeta_int(n)
    if x >= 1.0:
        # tail after N terms is below exp(-(N+1)x)/((N+1)^n (1-exp(-x)))
        nterms = int(math.ceil(40.0 / x)) + 1
        k = np.arange(1, nterms + 1, dtype=float)
        return float(math.fsum(np.exp(-k * x) / k**n))
    terms = []
    harmonic = math.fsum(1.0 / j for j in range(1, n))
    for k in range(_POLYLOG_TAYLOR_TERMS):
        if k == n - 1:
            terms.append((-x) ** k / math.factorial(k) * (harmonic - math.log(x)))
        else:
            terms.append(_zeta_int(n - k) * (-x) ** k / math.factorial(k))
    return math.fsum(terms)


def inc_gamma_zero(x):
    """Upper incomplete gamma function ``Gamma(0, x) = E_1(x)`` for ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"Gamma(0, x) needs x > 0, got {x}")
    return float(special.exp1(x))


def inc_gamma_zero_expansion(x):
    """Small-x form ``-gamma - ln x + x - x^2/4 + x^3/18`` (error O(x^4))."""
    return -ZETA.euler_gamma - math.log(x) + x - x**2 / 4 + x**3 / 18


def inc_gamma_neg(n, x):
    """``Gamma(-n, x)`` for integer ``n >= 1`` via the recurrence onto ``Gamma(0, x)``.

    Gamma(-n, x) = (-1)^n/n! [Gamma(0,x) - e^{-x} sum_{m<n} (-1)^m m!/x^{m+1}]
    """
    n = int(n)
    x = float(x)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not x > 0:
        raise DomainError(f"Gamma(-n, x) needs x > 0, got {x}")
    s = math.fsum((-1) ** m * math.factorial(m) / x ** (m + 1) for m in range(n))
    return (-1) ** n / math.factorial(n) * (inc_gamma_zero(x) - math.exp(-x) * s)


# ---------------------------------------------------------------------------
# appendix integrals


def _bose(y):
    """Return (q, 1-q) with q = exp(-y), the second computed without cancellation."""
    return np.exp(-y), -np.expm1(-y)


def _g_i1_3(y):
    q, em = _bose(y)
    return y**2 * q / em


def _g_i2_3(y):
    q, em = _bose(y)
    return y**4 * q * (15 + 18 * q - q**2) / em**3


def _g_i3_3(y):
    q, em = _bose(y)
    return q / em


def _g_i4_3(y):
    q, em = _bose(y)
    return q * (3 + q) ** 2 / (y**2 * em**3)


def _g_i4_3_printed(y):
    # the 1/y^3 variant appearing in the written-out third-order thermal function
    q, em = _bose(y)
    return q * (3 + q) ** 2 / (y**3 * em**3)


def _g_i1_4(y):
    q, em = _bose(y)
    return y**3 * q / em**2


def _g_i2_4(y):
    q, em = _bose(y)
    return y**5 * q * (1 + 6 * q + q**2) / em**4


def _g_i3_4(y):
    q, em = _bose(y)
    return q / (y * em**2)


def _g_i4_4(y):
    q, em = _bose(y)
    return y * q / em**2


def _g_i4_4_printed(y):
    q, em = _bose(y)
    return q / (y**2 * em**2)


def _g_i5_4(y):
    q, em = _bose(y)
    return q * (1 + q) ** 2 / (y**3 * em**4)


@dataclass(frozen=True)
class _Appendix:
    integrand: object
    growth: int  # polynomial order of the integrand at large y
    at_zero: object = None  # closed form of int_0^inf when it converges


_APPENDIX = {
    "I1_3": _Appendix(_g_i1_3, 2, lambda: 2 * ZETA.zeta3),
    "I2_3": _Appendix(_g_i2_3, 4, lambda: 384 * ZETA.zeta3 - 24 * ZETA.zeta5),
    "I3_3": _Appendix(_g_i3_3, 0),
    "I4_3": _Appendix(_g_i4_3, 0),
    "I4_3_printed": _Appendix(_g_i4_3_printed, 0),
    "I1_4": _Appendix(_g_i1_4, 3, lambda: 6 * ZETA.zeta3),
    "I2_4": _Appendix(_g_i2_4, 5, lambda: 160 * ZETA.zeta3 - 40 * ZETA.zeta5),
    "I3_4": _Appendix(_g_i3_4, 0),
    "I4_4": _Appendix(_g_i4_4, 1),
    "I4_4_printed": _Appendix(_g_i4_4_printed, 0),
    "I5_4": _Appendix(_g_i5_4, 0),
}

APPENDIX_TAGS = ("I1_3", "I2_3", "I3_3", "I4_3", "I1_4", "I4_4")
EXTRA_TAGS = ("I2_4", "I3_4", "I5_4", "I4_3_printed", "I4_4_printed")


def _lookup(tag):
    try:
        return _APPENDIX[tag]
    except KeyError:
        raise DomainError(f"unknown appendix integral {tag!r}") from None


# quadpack refuses relative tolerances below 50 machine epsilons
_QUAD_EPSREL_FLOOR = 1.2e-14


def _quad_pieces(f, edges, rtol):
    total, err = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        with warnings.catch_warnings():
            # roundoff notices at the tolerance floor; the returned error is checked by the caller
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, e = integrate.quad(f, lo, hi, epsabs=0.0, epsrel=max(rtol * 1e-2, _QUAD_EPSREL_FLOOR), limit=200)
        total.append(val)
        err.append(e)
    return math.fsum(total), math.fsum(err)


def appendix_integral(tag, x, rtol=1e-10):
    """Evaluate ``int_x^inf g_tag(y) dy`` by adaptive quadrature.

    The range is cut into geometric pieces below ``y = 1`` and unit-scale
    pieces above, up to ``x + 40 + 5 p`` (``p`` the polynomial growth of the
    integrand), with the exponential remainder added analytically. Integrals
    that converge at ``x = 0`` are evaluated as ``I(0) - int_0^x g`` when
    ``x < 1``, which keeps the full double precision of the small-x behaviour.
    """
    entry = _lookup(tag)
    x = float(x)
    if not x > 0:
        raise DomainError(f"appendix integrals need x > 0, got {x}")
    g = entry.integrand
    f = lambda t: float(g(t))  # noqa: E731
    if entry.at_zero is not None and x < 1.0:
        head, err = _quad_pieces(f, [0.0, x], rtol)
        value = entry.at_zero() - head
        if err > rtol * abs(value) + 1e-300:
            raise ConvergenceError(f"{tag}: quadrature error {err:.2e} above tolerance", err / abs(value))
        return value
    edges = []
    lo = x
    while lo < 1.0:
        edges.append(lo)
        lo *= 4.0
    y_max = x + 40.0 + 5.0 * entry.growth
    edges.extend(np.arange(max(x, 1.0), y_max, 8.0).tolist())
    edges.append(y_max)
    value, err = _quad_pieces(f, edges, rtol)
    # remainder: g(y) ~ y^p e^{-y}  =>  int_{y_max}^inf ~ g(y_max) (1 + p/y_max)
    value += f(y_max) * (1.0 + entry.growth / y_max)
    if err > rtol * abs(value):
        raise ConvergenceError(f"{tag}: quadrature error {err:.2e} above tolerance", err / abs(value))
    return value


def _osc_arrays(osc):
    if osc is None:
        z = np.zeros(0)
        return z, z, z
    return (np.asarray(osc.C, dtype=float), np.asarray(osc.gamma, dtype=float),
            np.asarray(osc.delta, dtype=float))


def _a_of_x(osc, x):
    c, gam, dl = _osc_arrays(osc)
    return float(np.sum(c / (1.0 + gam * x**2 + dl * x)))


def appendix_multiplier(tag, x, osc=None):
    """Prefactor that turns the bare integral into the quantity its expansion describes.

    ``osc`` is any object exposing arrays ``C``, ``gamma``, ``delta`` (the
    scaled oscillator parameters); ``None`` means no core-electron terms.
    """
    x = float(x)
    if tag == "I1_3":
        return 1.0 if osc is None else (_a_of_x(osc, x) - 1.0) * x**2
    if tag == "I2_3":
        return 1.0
    if tag == "I3_3":
        return (_a_of_x(osc, x) + 2.0) * x**4
    if tag == "I4_3":
        return x**6
    if tag == "I1_4":
        return 1.0 if osc is None else _a_of_x(osc, x) * x**2
    if tag == "I4_4":
        return x**4
    raise DomainError(f"no expansion is defined for {tag!r}")


def appendix_product(tag, x, osc=None, rtol=1e-10):
    """Quadrature value of ``appendix_multiplier(tag, x, osc) * appendix_integral(tag, x)``."""
    return appendix_multiplier(tag, x, osc) * appendix_integral(tag, x, rtol=rtol)


EXPANSION_WINDOW = 0.5


def remainder_order(tag, with_oscillators=False):
    """Power of x of the first term dropped by :func:`appendix_expansion`."""
    if tag in ("I1_3", "I1_4"):
        return 5 if with_oscillators else 6
    if tag == "I4_4":
        return 6
    if tag in ("I2_3", "I3_3", "I4_3"):
        return 5
    raise DomainError(f"no expansion is defined for {tag!r}")


def appendix_expansion(tag, x, osc=None):
    """Closed-form small-x expansion of ``appendix_product(tag, x, osc)``.

    Valid for ``0 < x <= 0.5``; use :func:`appendix_product` beyond that.
    The dropped terms are of order ``x**remainder_order(tag, osc is not None)``
    (up to logarithms).
    """
    x = float(x)
    if not 0.0 < x <= EXPANSION_WINDOW:
        raise DomainError(f"expansion valid for 0 < x <= {EXPANSION_WINDOW}, got {x}")
    z3 = ZETA.zeta3
    c, gam, dl = _osc_arrays(osc)
    s_c = float(np.sum(c))
    s_cd = float(np.sum(c * dl))
    s_cd2 = float(np.sum(c * dl**2))
    s_cg = float(np.sum(c * gam))
    lnx = math.log(x)
    if tag == "I1_3":
        if osc is None:
            return 2 * z3 - x**2 / 2 + x**3 / 6 - x**4 / 48
        return (-2 * z3 * x**2 + x**4 / 2 + 2 * z3 * s_c * x**2 - 2 * z3 * s_cd * x**3
                - (s_c / 2 - 2 * z3 * s_cd2 + 2 * z3 * s_cg) * x**4)
    if tag == "I2_3":
        return 384 * z3 - 24 * ZETA.zeta5 - 16 * x**2 + x**4 / 4
    if tag == "I3_3":
        return -(s_c + 2) * x**4 * lnx + s_cd * x**5 * lnx
    if tag == "I4_3":
        return 4 * x**2 + x**4 / 2
    if tag == "I1_4":
        if osc is None:
            return 6 * z3 - x**2 / 2 + x**4 / 48
        return (6 * z3 * s_c * x**2 - 6 * z3 * s_cd * x**3
                - (s_c / 2 - 6 * z3 * s_cd2 + 6 * z3 * s_cg) * x**4)
    if tag == "I4_4":
        return x**4 - x**4 * lnx
    raise DomainError(f"no expansion is defined for {tag!r}")
