"""Quick invariant checks, runnable without the test suite (``--seed-check``)."""

import math

import numpy as np

from .asymptotics import (PUBLISHED, PUBLISHED_REGROUPED, delta_f_core, delta_f_plasma,
                          free_energy_expansion, regroup)
from .constants import C, EV, HBAR
from .dielectric import Drude, GeneralizedPlasma, OscillatorSet, PerfectConductor, Plasma, eps_imag
from .lifshitz import DimensionlessFrame, EngineConfig, integrand, zero_t_energy
from .materials import load_material, parse_material, serialize
from .reflection import Geometry, reflect
from .relaxation import RelaxationScenario, surface_charge, total_field
from .specialfn import inc_gamma_neg, inc_gamma_zero

A_REF = 1e-6


def _dielectric():
    xi = np.geomspace(1e10, 1e18, 200)
    for m in (Drude(9 * EV, 0.035 * EV), Plasma(9 * EV), load_material("au_sample").model("gplasma")):
        e = eps_imag(m, xi)
        if not (np.all(e > 1) and np.all(np.diff(e) < 0)):
            return False
    empty = GeneralizedPlasma(9 * EV, OscillatorSet())
    return bool(np.allclose(eps_imag(empty, xi), eps_imag(Plasma(9 * EV), xi), rtol=1e-15, atol=0))


def _reflection():
    g = Geometry.semispace(A_REF)
    zeta, y = np.meshgrid(np.geomspace(1e-4, 5, 20), np.geomspace(1e-3, 50, 20))
    y = y + zeta
    for m in (Drude(9 * EV, 0.035 * EV), Plasma(9 * EV)):
        p = reflect(m, g, zeta, y)
        if not np.all((0 <= p.r_te) & (p.r_te <= p.r_tm) & (p.r_tm <= 1)):
            return False
    return reflect(Drude(9 * EV, 0.035 * EV), g, 0.0, 0.5).r_te == 0.0


def _lifshitz():
    g = Geometry.semispace(A_REF)
    e = zero_t_energy(PerfectConductor(), g, EngineConfig(rel_tol=1e-9))
    exact = -math.pi**2 * HBAR * C / (720 * A_REF**3)
    zeta = np.geomspace(1e-3, 10, 30)
    f = integrand(Plasma(9 * EV), g, zeta, zeta + 1.0)
    return abs(e / exact - 1) < 1e-8 and bool(np.all(f <= 0))


def _asymptotics():
    rg = regroup(PUBLISHED)
    if not all(math.isclose(getattr(rg, k), getattr(PUBLISHED_REGROUPED, k), rel_tol=1e-14)
               for k in ("x3", "x4", "q5", "s3", "s4")):
        return False
    osc = load_material("au_sample").oscillators
    fr = DimensionlessFrame.from_physical(2e-7, 50.0, 9 * EV)
    total = free_energy_expansion(fr, None, osc, e0=-1.0).total
    parts = -1.0 + delta_f_plasma(fr) + delta_f_core(fr, None, osc)
    return math.isclose(total, parts, rel_tol=1e-12)


def _specialfn():
    for n in range(1, 5):
        for x in (0.01, 0.3, 3.0):
            s = sum((-1) ** m * math.factorial(m) / x ** (m + 1) for m in range(n))
            ref = (-1) ** n / math.factorial(n) * (inc_gamma_zero(x) - math.exp(-x) * s)
            if not math.isclose(inc_gamma_neg(n, x), ref, rel_tol=1e-12):
                return False
    return True


def _relaxation():
    sc = RelaxationScenario(3.5e18 / (4 * math.pi), 1.0, np.linspace(0, 5e-18, 50))
    rho, ef = surface_charge(sc), total_field(sc)
    return bool(np.allclose(ef + 4 * math.pi * rho, 1.0, rtol=0, atol=1e-15)
                and np.all(np.diff(rho) > 0) and np.all(np.diff(ef) < 0))


def _materials():
    rec = load_material("au_sample")
    return parse_material(serialize(rec)) == rec


SUITES = {
    "dielectric": _dielectric,
    "reflection": _reflection,
    "lifshitz": _lifshitz,
    "asymptotics": _asymptotics,
    "specialfn": _specialfn,
    "relaxation": _relaxation,
    "materials": _materials,
}


def run(names):
    """Run the named suites; returns a list of ``(name, passed)``."""
    out = []
    for n in names:
        try:
            ok = bool(SUITES[n]())
        except Exception:  # a crashing invariant is a failing invariant
            ok = False
        out.append((n, ok))
    return out
