import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_thermal.constants import C, EV
from casimir_thermal.dielectric import Drude, GeneralizedPlasma, OscillatorSet, Plasma, PerfectConductor
from casimir_thermal.errors import DomainError
from casimir_thermal.lifshitz import DimensionlessFrame
from casimir_thermal.reflection import (Geometry, coefficients, coth_safe, reflect,
                                        slab_from_interface, thickness_factor)

from conftest import loglog_slope, plasma_for_alpha

A = 1e-6


def test_drude_zero_frequency_te_vanishes(au_drude):
    g = Geometry.semispace(A)
    for y in (1e-3, 0.5, 1.0, 10.0):
        p = reflect(au_drude, g, 0.0, y)
        assert p.r_te == 0.0 and p.r_tm == 1.0


def test_vacuum_gives_no_reflection():
    r_tm, q_tm, r_te, q_te = coefficients(0.0, np.array([0.1, 1.0]), np.array([0.5, 3.0]))
    assert np.all(r_tm == 0) and np.all(r_te == 0) and np.all(q_tm == 1) and np.all(q_te == 1)


def test_plasma_zero_frequency_te_closed_form():
    g = Geometry.semispace(A)
    m = plasma_for_alpha(A, 0.05)
    w = 1 / 0.05**2
    for y in (0.1, 1.0, 7.0):
        h = math.sqrt(y * y + w)
        exact = (h - y) / (h + y)
        assert reflect(m, g, 0.0, y).r_te == pytest.approx(exact, rel=1e-14)
        assert reflect(m, g, 1e-6, y).r_te == pytest.approx(exact, rel=1e-9)


def test_domain_errors(au_drude):
    g = Geometry.semispace(A)
    with pytest.raises(DomainError):
        reflect(au_drude, g, 1.0, 0.5)
    with pytest.raises(DomainError):
        reflect(au_drude, g, 0.0, 0.0)
    with pytest.raises(DomainError):
        Geometry(0.0)


def test_perfect_conductor():
    p = reflect(PerfectConductor(), Geometry.semispace(A), 0.3, 1.0)
    assert p.r_tm == 1.0 and p.r_te == 1.0


@settings(max_examples=60, deadline=None)
@given(st.floats(0, 20), st.floats(1e-6, 60), st.sampled_from(["drude", "plasma", "gplasma"]),
       st.floats(0.003, 0.2), st.one_of(st.just(math.inf), st.floats(1e-9, 1e-5)))
def test_ordering_of_coefficients(zeta, dy, kind, alpha, d):
    wp = C / (2 * A) / alpha
    m = {"drude": Drude(wp, 0.01 * wp), "plasma": Plasma(wp),
         "gplasma": GeneralizedPlasma(wp, OscillatorSet(((wp**2, 0.1 * wp, 0.5 * wp),)))}[kind]
    p = reflect(m, Geometry(A, d), zeta, zeta + dy)
    assert 0 <= p.r_te <= p.r_tm <= 1


def test_tm_continuity_at_zero_frequency():
    g = Geometry.semispace(A)
    m = plasma_for_alpha(A, 0.05)
    for y in (0.01, 0.3, 2.0, 20.0):
        assert reflect(m, g, 1e-8, y).r_tm == pytest.approx(reflect(m, g, 0.0, y).r_tm, abs=1e-5)


def test_drude_te_continuous_at_zero_frequency():
    # for gamma > 0 the Drude TE coefficient tends to 0 continuously as zeta -> 0+
    g = Geometry.semispace(A)
    m = Drude(C / (2 * A) / 0.05, 0.035 * EV)
    for y in (0.1, 0.5, 1.0):
        assert reflect(m, g, 0.0, y).r_te == 0.0
        assert reflect(m, g, 1e-8, y).r_te < 1e-3


def test_drude_te_gap_above_relaxation_scale():
    # once zeta exceeds gamma/omega_c the Drude TE coefficient is plasma-like
    g = Geometry.semispace(A)
    m = Drude(C / (2 * A) / 0.05, 0.035 * EV)
    for y in (0.5, 0.8, 1.0):
        assert reflect(m, g, y, y).r_te - reflect(m, g, 0.0, y).r_te > 0.5


def test_slab_identity():
    # two-interface sum equals the coth form
    rng = np.random.default_rng(7)
    for _ in range(50):
        zeta, y = rng.uniform(0.01, 5, 2)
        y += zeta
        w = rng.uniform(1, 3000)
        hr = rng.uniform(0.01, 0.5)
        h = math.sqrt(y * y + w)
        eps = 1 + w / zeta**2
        r_tm_semi = (eps * y - h) / (eps * y + h)
        r_te_semi = (h - y) / (h + y)
        r_tm, _, r_te, _ = coefficients(w, zeta, y, hr)
        assert r_tm == pytest.approx(slab_from_interface(r_tm_semi, hr * h), rel=1e-12)
        assert r_te == pytest.approx(slab_from_interface(r_te_semi, hr * h), rel=1e-12)


def test_complements_are_accurate():
    w, zeta, y = 1e6, 1e-3, np.array([1e-4, 1e-2, 1.0]) + 1e-3
    r_tm, q_tm, r_te, q_te = coefficients(w, zeta, y)
    assert np.allclose(r_tm + q_tm, 1, rtol=0, atol=4.5e-16)
    assert np.allclose(r_te + q_te, 1, rtol=0, atol=4.5e-16)


def test_coth_safe():
    z = np.array([1e-3, 0.5, 3.0, 349.0, 351.0, 1e5])
    expected = np.array([1 / math.tanh(v) if v < 350 else 1.0 for v in z])
    assert np.allclose(coth_safe(z), expected, rtol=1e-14)


def test_thickness_factor_examples():
    frame = DimensionlessFrame.from_physical(A, 300.0, C / (2 * A) / 0.01)
    thick = Geometry(A, 10 * A)
    assert thickness_factor(thick, frame, 0.5, 1.0, 3.0) == 1.0
    assert thickness_factor(Geometry.semispace(A), frame, 0.5, 1.0, 3.0) == 1.0
    frame1 = DimensionlessFrame.from_physical(A, 300.0, C / (2 * A) / 0.02)
    g1 = Geometry(A, A * 0.02)  # d/(a alpha) = 1
    direct = thickness_factor(g1, frame1, 0.0, 0.0, 0.0)
    assert direct == pytest.approx(1 / math.tanh(0.5), rel=1e-14)
    # the two-term form 1 + 2 e^{-x} misses 2 e^{-2x}/(1 - e^{-x})
    assert direct - (1 + 2 * math.exp(-1)) == pytest.approx(2 * math.exp(-2) / (1 - math.exp(-1)), rel=1e-12)


def test_finite_thickness_converges_exponentially():
    alpha = 0.02
    m = plasma_for_alpha(A, alpha)
    x = np.linspace(2, 10, 9)
    dev = []
    for xi in x:
        g = Geometry(A, xi * A * alpha)
        dev.append(abs(reflect(m, g, 0.3, 0.7).r_te - reflect(m, Geometry.semispace(A), 0.3, 0.7).r_te))
    rate = -np.polyfit(x, np.log(dev), 1)[0]
    assert rate == pytest.approx(1.0, rel=0.05)
