import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_thermal.errors import DomainError
from casimir_thermal.relaxation import RelaxationScenario, saturation_charge, surface_charge, total_field

RATE = 3.5e18


def scenario(t, rate=RATE, e=1.0):
    return RelaxationScenario(sigma0=rate / (4 * math.pi), E_field=e, t=t)


def rk4_charge(rate, e, t_end, h):
    # d rho/dt = sigma0 E_tot = rate/(4 pi) (E - 4 pi rho)
    n = int(round(t_end / h))
    rho = 0.0

    def f(r):
        return rate / (4 * math.pi) * (e - 4 * math.pi * r)

    for _ in range(n):
        k1 = f(rho)
        k2 = f(rho + 0.5 * h * k1)
        k3 = f(rho + 0.5 * h * k2)
        k4 = f(rho + h * k3)
        rho += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return rho


def test_anchor_value():
    sc = scenario(1e-18)
    assert surface_charge(sc) / saturation_charge(sc) == pytest.approx(0.9698, abs=1e-4)


def test_against_rk4():
    ref = rk4_charge(RATE, 1.0, 1e-18, 1e-21)
    assert surface_charge(scenario(1e-18)) == pytest.approx(ref, rel=1e-6)


def test_initial_and_limits():
    assert surface_charge(scenario(0.0)) == 0.0
    assert total_field(scenario(0.0)) == 1.0
    assert surface_charge(scenario(1.0)) == pytest.approx(1 / (4 * math.pi), rel=1e-15)


def test_small_time_precision():
    # expm1 keeps the linear regime exact
    t = 1e-30
    assert surface_charge(scenario(t)) == pytest.approx(RATE * t / (4 * math.pi), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e10, 1e20), st.floats(1e-3, 1e3), st.floats(0, 1e-8))
def test_field_conservation(rate, e, t):
    sc = scenario(t, rate, e)
    assert total_field(sc) + 4 * math.pi * surface_charge(sc) == pytest.approx(e, rel=1e-14)


def test_monotone():
    t = np.linspace(0, 3e-18, 200)
    sc = scenario(t)
    assert np.all(np.diff(surface_charge(sc)) > 0)
    assert np.all(np.diff(total_field(sc)) < 0)


def test_invalid():
    with pytest.raises(DomainError):
        RelaxationScenario(sigma0=0.0)
    with pytest.raises(DomainError):
        scenario(-1e-18)
