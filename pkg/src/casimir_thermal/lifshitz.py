"""Direct evaluation of the Lifshitz free energy between two metal plates.

With ``omega_c = c/(2a)``, ``zeta = xi/omega_c`` and ``tau = 2 pi T/T_eff``,

    F(a, T) = (hbar c tau / 32 pi^2 a^3) sum'_l G(tau l),
    G(zeta) = int_zeta^inf f(zeta, y) dy,
    f(zeta, y) = y ln(1 - r_TM^2 e^{-y}) + y ln(1 - r_TE^2 e^{-y}),

where the prime halves the ``l = 0`` term. The zero-temperature energy is the
same prefactor (without ``tau``) times ``int_0^inf G``, and the thermal
correction is ``F - E``.

Every quadrature uses fixed composite Gauss-Legendre rules whose panel edges
move continuously with ``zeta``. The discretisation error is therefore a
smooth function of temperature, which keeps finite-difference entropies
clean at the 1e-17 level.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .constants import C, HBAR, K_B
from .dielectric import plasma_frequency, scaled_response
from .errors import ConvergenceError, DomainError, MaxTermsExceeded, StepUnderflowError
from .reflection import Geometry, coefficients

Y_FLOOR = 1e-12
GEOMETRIC_RATIO = 3.0
GEOMETRIC_TOP = 2.0
T_MIN_ENTROPY = 1e-3


def effective_temperature(a):
    """``T_eff = hbar c/(2 a k_B)`` in kelvin."""
    if not a > 0:
        raise DomainError(f"separation must be positive, got {a}")
    return HBAR * C / (2 * a * K_B)


def matsubara_frequency(T, l):
    """``xi_l = 2 pi k_B T l/hbar`` in rad/s."""
    if T < 0 or l < 0:
        raise DomainError("need T >= 0 and l >= 0")
    return 2 * math.pi * K_B * T * l / HBAR


@dataclass(frozen=True)
class DimensionlessFrame:
    """Dimensionless variables at separation ``a`` and temperature ``T``.

    ``alpha = omega_c/omega_p`` is ``None`` for models without a plasma
    frequency (normal skin effect, perfect conductor).
    """

    alpha: float
    tau: float
    omega_c: float
    T_eff: float

    @classmethod
    def from_physical(cls, a, T, omega_p=None):
        if T < 0:
            raise DomainError(f"temperature must be >= 0, got {T}")
        t_eff = effective_temperature(a)
        omega_c = C / (2 * a)
        alpha = None if omega_p is None else omega_c / omega_p
        return cls(alpha=alpha, tau=2 * math.pi * T / t_eff, omega_c=omega_c, T_eff=t_eff)

    @classmethod
    def for_model(cls, model, a, T):
        return cls.from_physical(a, T, plasma_frequency(model))

    @property
    def a(self):
        return C / (2 * self.omega_c)

    @property
    def T(self):
        return self.tau * self.T_eff / (2 * math.pi)


@dataclass(frozen=True)
class EngineConfig:
    """Numerical settings of the engine.

    rel_tol : target relative accuracy of free energies.
    max_matsubara_terms : hard cap on the number of Matsubara terms.
    scheme : composite Gauss-Legendre rule, ``"gl<n>"`` with ``n`` nodes per panel.
    y_max_padding : length of the ``y - zeta`` range; ``None`` means
        ``40 + 10 log10(1/rel_tol)``.
    tail_factor : the Matsubara sum stops once the extrapolated tail is below
        ``rel_tol * tail_factor`` of the partial sum.
    threads : worker threads for independent chunks.
    chunk : Matsubara points per vectorised chunk.
    """

    rel_tol: float = 1e-9
    max_matsubara_terms: int = 400_000
    scheme: str = "gl24"
    y_max_padding: float = None
    tail_factor: float = 1e-6
    threads: int = 1
    chunk: int = 1024

    def __post_init__(self):
        if not 0 < self.rel_tol < 1e-2:
            raise DomainError(f"rel_tol must lie in (0, 1e-2), got {self.rel_tol}")
        if self.max_matsubara_terms < 1 or self.threads < 1 or self.chunk < 1:
            raise DomainError("term cap, thread count and chunk must be positive")
        _rule(self.scheme)

    @property
    def u_max(self):
        if self.y_max_padding is not None:
            return float(self.y_max_padding)
        return 40.0 + 10.0 * math.log10(1.0 / self.rel_tol)

    @property
    def nodes(self):
        return _rule(self.scheme)[0].size


@lru_cache(maxsize=None)
def _rule(scheme):
    if not (scheme.startswith("gl") and scheme[2:].isdigit()):
        raise DomainError(f"unknown quadrature scheme {scheme!r}")
    n = int(scheme[2:])
    if n < 4:
        raise DomainError("need at least 4 Gauss-Legendre nodes")
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


@dataclass(frozen=True)
class FreeEnergyResult:
    """Free energy per unit area in J/m^2 with its decomposition and diagnostics."""

    free_energy: float
    zero_t_energy: float
    thermal_correction: float
    terms_used: int
    tail_estimate: float
    achieved_tol: float
    frame: DimensionlessFrame = None


def prefactor(a):
    """``hbar c/(32 pi^2 a^3)`` in J/m^2."""
    return HBAR * C / (32 * math.pi**2 * a**3)


# ---------------------------------------------------------------------------
# integrand


def _log_terms(r, q, ey, emy):
    """``ln(1 - r^2 e^{-y})`` from ``r``, ``q = 1 - r``, ``e^{-y}`` and ``1 - e^{-y}``."""
    x = r * r * ey
    with np.errstate(divide="ignore", invalid="ignore"):
        near = np.log(emy + q * (2.0 - q) * ey)
        far = np.log1p(-x)
    return np.where(x < 0.5, far, near)


def _f_values(w, zeta, y, half_ratio):
    r_tm, q_tm, r_te, q_te = coefficients(w, zeta, y, half_ratio)
    ey = np.exp(-y)
    emy = -np.expm1(-y)
    return y * (_log_terms(r_tm, q_tm, ey, emy) + _log_terms(r_te, q_te, ey, emy))


def integrand(model, geometry, zeta, y):
    """``f(zeta, y) = y ln(1 - r_TM^2 e^{-y}) + y ln(1 - r_TE^2 e^{-y})`` (always <= 0)."""
    zeta = np.asarray(zeta, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(zeta < 0) or np.any(y < zeta) or np.any((y == 0) & (zeta == 0)):
        raise DomainError("need y >= zeta >= 0 and not y = zeta = 0")
    _, w = scaled_response(model, geometry.omega_c, zeta)
    out = _f_values(w, zeta, y, geometry.half_ratio)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# G(zeta) by composite Gauss-Legendre


def _tail_widths(u_max):
    widths, total, w = [], 0.0, 2.0
    while total < u_max:
        widths.append(w)
        total += w
        w = min(2 * w, 16.0)
    return np.array(widths)


def _panel_edges(zeta, u_max):
    """Panel edges (n, P+1) for each ``zeta``; zero-width panels are allowed."""
    start = np.maximum(zeta, Y_FLOOR)
    lo = float(start.min())
    n_geo = 0
    if lo < GEOMETRIC_TOP:
        n_geo = int(math.ceil(math.log(GEOMETRIC_TOP / lo) / math.log(GEOMETRIC_RATIO) - 1e-12))
    parts = []
    if n_geo:
        k = np.arange(n_geo + 1)
        geo = np.minimum(start[:, None] * GEOMETRIC_RATIO**k, GEOMETRIC_TOP)
        parts.append(np.maximum(geo, start[:, None]))
    base = np.maximum(start, GEOMETRIC_TOP)
    end = zeta + u_max
    cum = np.concatenate([[0.0], np.cumsum(_tail_widths(u_max))])
    tail = np.minimum(base[:, None] + cum, end[:, None])
    if parts:
        tail = tail[:, 1:]
    parts.append(tail)
    return np.concatenate(parts, axis=1)


def _g_chunk(model, geometry, zeta, config):
    x, wts = _rule(config.scheme)
    edges = _panel_edges(zeta, config.u_max)
    left, width = edges[:, :-1], np.diff(edges, axis=1)
    y = (left[:, :, None] + width[:, :, None] * x).reshape(zeta.size, -1)
    wy = (width[:, :, None] * wts).reshape(zeta.size, -1)
    _, w = scaled_response(model, geometry.omega_c, zeta)
    f = _f_values(w[:, None], zeta[:, None], y, geometry.half_ratio)
    return np.sum(f * wy, axis=1)


def g_values(model, geometry, zeta, config=EngineConfig()):
    """``G(zeta) = int_zeta^inf f(zeta, y) dy`` for an array of ``zeta >= 0``."""
    zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
    if np.any(zeta < 0):
        raise DomainError("zeta must be >= 0")
    order = np.argsort(zeta, kind="stable")
    zs = zeta[order]
    # split below and above the geometric range so large zeta carry no empty panels
    cut = np.searchsorted(zs, GEOMETRIC_TOP)
    pieces = []
    for part in (zs[:cut], zs[cut:]):
        for i in range(0, part.size, config.chunk):
            pieces.append(part[i : i + config.chunk])
    # zero frequency needs the full geometric ladder; keep it alone
    split = []
    for p in pieces:
        if p.size and p[0] == 0.0 and p.size > 1:
            split.extend([p[:1], p[1:]])
        else:
            split.append(p)
    if config.threads > 1 and len(split) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            vals = list(pool.map(lambda p: _g_chunk(model, geometry, p, config), split))
    else:
        vals = [_g_chunk(model, geometry, p, config) for p in split]
    out = np.empty_like(zeta)
    out[order] = np.concatenate(vals) if vals else np.empty(0)
    return out


# ---------------------------------------------------------------------------
# Matsubara sum and zero-temperature integral


@dataclass(frozen=True)
class MatsubaraSum:
    """Dimensionless ``tau * sum'_l G(tau l)`` with truncation diagnostics."""

    value: float
    terms: int
    tail: float


def matsubara_sum(model, geometry, tau, config=EngineConfig()):
    """``tau sum'_l G(tau l)``; stops on an exponentially extrapolated tail bound."""
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau}")
    block = int(min(max(math.ceil(4.0 / tau), 64), config.chunk))
    acc = []
    l0 = 0
    tail = math.inf
    target = config.rel_tol * config.tail_factor
    while True:
        if l0 >= config.max_matsubara_terms:
            s = abs(math.fsum(acc)) or 1.0
            raise MaxTermsExceeded(
                f"Matsubara sum not converged after {l0} terms", achieved_tol=tail / s
            )
        l = np.arange(l0, min(l0 + block, config.max_matsubara_terms))
        g = g_values(model, geometry, tau * l, config)
        if l0 == 0:
            g[0] *= 0.5
        acc.extend(g.tolist())
        l0 = int(l[-1]) + 1
        s = abs(math.fsum(acc))
        a1, a2 = abs(acc[-1]), abs(acc[-2]) if len(acc) > 1 else math.inf
        if a2 > 0 and a1 < a2:
            ratio = a1 / a2
            tail = a1 * ratio / (1.0 - ratio)
        else:
            tail = math.inf
        if s == 0.0 or tail <= target * s:
            break
    total = math.fsum(acc)
    return MatsubaraSum(value=tau * total, terms=l0, tail=tau * tail)


def _zeta_edges(zeta_max):
    n_geo = int(math.ceil(math.log(GEOMETRIC_TOP / Y_FLOOR) / math.log(GEOMETRIC_RATIO)))
    geo = GEOMETRIC_TOP / GEOMETRIC_RATIO ** np.arange(n_geo, -1, -1)
    geo[0] = Y_FLOOR
    upper = [3.0, 5.0, 9.0]
    while upper[-1] < zeta_max:
        upper.append(upper[-1] + 4.0)
    return np.concatenate([geo, upper])


def _energy_integral_rule(model, geometry, config, scheme):
    cfg = replace(config, scheme=scheme)
    x, wts = _rule(scheme)
    zeta_max = max(30.0, 0.5 * cfg.u_max)
    edges = _zeta_edges(zeta_max)
    left, width = edges[:-1], np.diff(edges)
    z = (left[:, None] + width[:, None] * x).ravel()
    wz = (width[:, None] * wts).ravel()
    g = g_values(model, geometry, z, cfg)
    # [0, Y_FLOOR] contributes about G(0) * Y_FLOOR
    return math.fsum((g * wz).tolist()) + g[0] * Y_FLOOR


@lru_cache(maxsize=64)
def energy_integral(model, geometry, config=EngineConfig()):
    """Dimensionless ``int_0^inf G(zeta) d zeta`` and an error estimate.

    The estimate is the disagreement with a rule of two thirds the order.
    """
    main = _energy_integral_rule(model, geometry, config, config.scheme)
    n = config.nodes
    check = _energy_integral_rule(model, geometry, config, f"gl{max(4, (2 * n) // 3)}")
    return main, abs(main - check)


# ---------------------------------------------------------------------------
# public operations


def zero_t_energy(model, geometry, config=EngineConfig()):
    """Casimir energy per unit area at zero temperature (J/m^2)."""
    value, err = energy_integral(model, geometry, config)
    if err > config.rel_tol * abs(value):
        raise ConvergenceError("zero-temperature energy not converged", achieved_tol=err / abs(value))
    return prefactor(geometry.a) * value


def free_energy(model, geometry, T, config=EngineConfig()):
    """Casimir free energy per unit area at temperature ``T`` (K)."""
    frame = DimensionlessFrame.for_model(model, geometry.a, T)
    e = zero_t_energy(model, geometry, config)
    if T == 0:
        return FreeEnergyResult(e, e, 0.0, 0, 0.0, 0.0, frame)
    ms = matsubara_sum(model, geometry, frame.tau, config)
    pref = prefactor(geometry.a)
    f = pref * ms.value
    achieved = ms.tail / abs(ms.value) if ms.value else 0.0
    if achieved > config.rel_tol:
        raise ConvergenceError("Matsubara sum tolerance not reached", achieved_tol=achieved)
    return FreeEnergyResult(
        free_energy=f,
        zero_t_energy=e,
        thermal_correction=f - e,
        terms_used=ms.terms,
        tail_estimate=pref * ms.tail,
        achieved_tol=achieved,
        frame=frame,
    )


def thermal_correction(model, geometry, T, config=EngineConfig()):
    """``Delta F = F - E`` (J/m^2)."""
    if T < 0:
        raise DomainError(f"temperature must be >= 0, got {T}")
    if T == 0:
        return 0.0
    return free_energy(model, geometry, T, config).thermal_correction


@dataclass(frozen=True)
class EntropyResult:
    """Entropy per unit area (J/(K m^2)) with the Richardson disagreement as error."""

    entropy: float
    error: float
    step: float


def _sum_energy(model, geometry, T, config):
    tau = 2 * math.pi * T / effective_temperature(geometry.a)
    return prefactor(geometry.a) * matsubara_sum(model, geometry, tau, config).value


def entropy(model, geometry, T, config=EngineConfig(), rel_step=2e-2, h_min=1e-6):
    """``S = -dF/dT`` by central differences with one Richardson step.

    Steps ``h = max(rel_step T, h_min)`` and ``h/2``; the zero-temperature
    energy drops out of the difference so only the Matsubara sum is formed.
    """
    if T < T_MIN_ENTROPY:
        raise StepUnderflowError(f"temperature {T} K is below the differencing floor {T_MIN_ENTROPY} K")
    h = max(rel_step * T, h_min)
    if h >= T:
        raise StepUnderflowError(f"step {h} K not smaller than T = {T} K")

    def central(step):
        fp = _sum_energy(model, geometry, T + step, config)
        fm = _sum_energy(model, geometry, T - step, config)
        return (fp - fm) / (2 * step)

    d1 = central(h)
    d2 = central(h / 2)
    d = (4 * d2 - d1) / 3
    return EntropyResult(entropy=-d, error=abs(d2 - d1) / 3, step=h)


__all__ = [
    "DimensionlessFrame",
    "EngineConfig",
    "EntropyResult",
    "FreeEnergyResult",
    "Geometry",
    "MatsubaraSum",
    "effective_temperature",
    "energy_integral",
    "entropy",
    "free_energy",
    "g_values",
    "integrand",
    "matsubara_frequency",
    "matsubara_sum",
    "prefactor",
    "thermal_correction",
    "zero_t_energy",
]
