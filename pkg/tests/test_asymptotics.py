import math

import numpy as np
import pytest

from casimir_thermal.asymptotics import (PUBLISHED, PUBLISHED_REGROUPED, REDERIVED, delta_f_core,
                                         delta_f_plasma, entropy_expansion, expand_log_term, f34_difference,
                                         fit_odd_coefficients, fourth_order_function, free_energy_expansion,
                                         order_function_direct, regroup, third_order_function,
                                         thermal_from_difference)
from casimir_thermal.constants import C, EV
from casimir_thermal.dielectric import OscillatorSet
from casimir_thermal.errors import DomainError
from casimir_thermal.lifshitz import DimensionlessFrame, EngineConfig, effective_temperature, free_energy, prefactor
from casimir_thermal.reflection import Geometry, coefficients

from conftest import PI, ZETA3, ZETA5, plasma_for_alpha

A = 1e-6


def frame(alpha, tau, a=A):
    return DimensionlessFrame.from_physical(a, tau * effective_temperature(a) / (2 * PI), C / (2 * a) / alpha)


# closed forms of the alpha-expansion coefficients (computer algebra, frozen)
def ref_coefficients(pol, z, y, a):
    e = math.exp(y)
    if pol == "TE":
        return (y * (math.log(e - 1) - y), 4 * y**2 / (e - 1), -2 * y**3 / math.sinh(y / 2) ** 2,
                -2 * y**2 * (3 * a * z**2 * (e - 1) ** 2 - 15 * y**2 * e**2 - 18 * y**2 * e + y**2) / (3 * (e - 1) ** 3),
                8 * y**3 * e * (a * z**2 * (e - 1) ** 2 - y**2 * e**2 - 6 * y**2 * e - y**2) / (e - 1) ** 4)
    z2 = z * z
    c3 = 2 * z2 * (-a * y**2 * z2 * (e - 1) ** 2 + y**4 * (e - 1) ** 2 - 2 * y**2 * z2 * (e - 1) ** 2
                   + 6 * z2**2 * e**2 + 4 * z2**2 * e + 2 * z2**2 / 3) / (y**2 * (e - 1) ** 3)
    c4 = 8 * z2**2 * e * (a * y**2 * z2 * (e - 1) ** 2 - y**4 * (e - 1) ** 2 + 2 * y**2 * z2 * (e - 1) ** 2
                          - 2 * z2**2 * (e**2 + 2 * e + 1)) / (y**3 * (e - 1) ** 4)
    return (y * (math.log(e - 1) - y), 4 * z2 / (e - 1), -2 * z2**2 / (y * math.sinh(y / 2) ** 2), c3, c4)


@pytest.mark.parametrize("pol", ["TM", "TE"])
@pytest.mark.parametrize("z, y, a", [(0.1, 0.3, 0.0), (0.5, 2.0, 6.3), (1.5, 4.0, 1.0), (0.01, 7.0, 3.0)])
def test_log_expansion_coefficients(pol, z, y, a):
    got = expand_log_term(pol, z, y, a).coefficients
    assert got == pytest.approx(ref_coefficients(pol, z, y, a), rel=1e-11, abs=1e-300)


def test_te_first_order():
    y = np.linspace(0.1, 10, 30)
    assert np.allclose(expand_log_term("TE", 0.05, y).c1, 4 * y**2 / np.expm1(y), rtol=1e-14)


def test_no_core_term_is_default():
    z, y = np.meshgrid(np.linspace(0.1, 2, 5), np.linspace(2.1, 5, 5))
    for pol in ("TM", "TE"):
        for u, v in zip(expand_log_term(pol, z, y, 0.0).coefficients, expand_log_term(pol, z, y).coefficients):
            assert np.array_equal(u, v)


def test_expansion_domain():
    with pytest.raises(DomainError):
        expand_log_term("TX", 0.1, 1.0)
    with pytest.raises(DomainError):
        expand_log_term("TE", 0.1, 0.0)


def _residual_slope(a_of_zeta):
    alphas = np.geomspace(0.005, 0.05, 10)
    z, yd = np.meshgrid(np.linspace(0.05, 2, 10), np.linspace(0.05, 4, 10), indexing="ij")
    y = z + yd
    a = a_of_zeta(z)
    sup = []
    for al in alphas:
        r_tm, _, r_te, _ = coefficients(1 / al**2 + a * z * z, z, y)
        exact = y * np.log1p(-r_tm**2 * np.exp(-y)) + y * np.log1p(-r_te**2 * np.exp(-y))
        approx = expand_log_term("TM", z, y, a).evaluate(al) + expand_log_term("TE", z, y, a).evaluate(al)
        sup.append(np.max(np.abs(approx - exact)))
    return np.polyfit(np.log(alphas), np.log(sup), 1)[0]


def test_expansion_remainder_is_fifth_order(au):
    osc = au.oscillators.scaled(C / (2 * 200e-9))
    assert _residual_slope(lambda z: 0.0 * z) == pytest.approx(5.0, abs=0.3)
    assert _residual_slope(osc.a_term) == pytest.approx(5.0, abs=0.3)


@pytest.mark.parametrize("coeffs", [PUBLISHED, REDERIVED])
def test_regrouping_identity(coeffs, au):
    rng = np.random.default_rng(11)
    for _ in range(10):
        alpha, tau = rng.uniform(1e-3, 0.1), rng.uniform(1e-3, 0.1)
        a = rng.uniform(1e-7, 5e-6)
        fr = frame(alpha, tau, a)
        e0 = -1.3e-3
        parts = e0 + delta_f_plasma(fr, coefficients=coeffs) + delta_f_core(fr, oscillators=au.oscillators, coefficients=coeffs)
        total = free_energy_expansion(fr, oscillators=au.oscillators, e0=e0, coefficients=coeffs).total
        assert total == pytest.approx(parts, rel=1e-12)


def test_published_regrouped_constants():
    g = regroup(PUBLISHED)
    for k in ("x3", "x4", "q5", "s3", "s4"):
        assert getattr(g, k) == pytest.approx(getattr(PUBLISHED_REGROUPED, k), rel=1e-14)


@pytest.mark.parametrize("coeffs", [PUBLISHED, REDERIVED])
@pytest.mark.parametrize("tau", [1e-3, 1e-2, 0.1])
def test_entropy_is_minus_temperature_derivative(coeffs, tau, au):
    a, alpha = 2e-7, 0.05
    wp = C / (2 * a) / alpha
    T = tau * effective_temperature(a) / (2 * PI)

    def F(t):
        return free_energy_expansion(DimensionlessFrame.from_physical(a, t, wp), oscillators=au.oscillators,
                                     coefficients=coeffs).total

    h = 1e-3 * T
    d1 = (F(T + h) - F(T - h)) / (2 * h)
    d2 = (F(T + h / 2) - F(T - h / 2)) / h
    s_fd = -(4 * d2 - d1) / 3
    s = entropy_expansion(DimensionlessFrame.from_physical(a, T, wp), oscillators=au.oscillators, coefficients=coeffs)
    assert s == pytest.approx(s_fd, rel=1e-8)


def test_entropy_expansion_positive_and_vanishing(au):
    for alpha in (0.005, 0.05, 0.1):
        taus = np.geomspace(1e-4, 0.1, 30)
        s = [entropy_expansion(frame(alpha, t, 2e-7), oscillators=au.oscillators) for t in taus]
        assert all(v > 0 for v in s)
        assert s[0] < 1e-5 * s[-1]


def test_leading_entropy_coefficient():
    fr = frame(0.02, 1e-4)
    t = fr.tau / (2 * PI)
    lead = 3 * ZETA3 * 1.380649e-23 / (8 * PI * A**2) * t**2 * (1 + 4 * 0.02)
    assert entropy_expansion(fr) == pytest.approx(lead, rel=1e-4)


@pytest.mark.parametrize("coeffs", [PUBLISHED, REDERIVED])
def test_difference_integrates_to_core_terms(coeffs, au):
    fr = frame(0.05, 0.07, 2e-7)
    d3 = f34_difference(3, fr, au.oscillators, coefficients=coeffs)
    d4 = f34_difference(4, fr, au.oscillators, coefficients=coeffs)
    got = thermal_from_difference(d3, d4, fr)
    assert got == pytest.approx(delta_f_core(fr, oscillators=au.oscillators, coefficients=coeffs), rel=1e-13)
    with pytest.raises(DomainError):
        f34_difference(5, fr)


def test_no_damping_kills_tau4_core_terms():
    osc = OscillatorSet(((40 * EV**2, 0.0, 4 * EV), (150 * EV**2, 0.0, 8 * EV)))
    fr = frame(0.05, 0.05, 2e-7)
    for n in (3, 4):
        assert f34_difference(n, fr, osc).tau3 == 0.0
    full = free_energy_expansion(fr, oscillators=osc)
    bare = free_energy_expansion(fr)
    assert full.t4_term == bare.t4_term


def test_extrapolated_flag():
    assert not free_energy_expansion(frame(0.02, 0.3)).extrapolated
    assert free_energy_expansion(frame(0.02, 0.31)).extrapolated


def test_unknown_coefficient_set():
    with pytest.raises(DomainError):
        delta_f_plasma(frame(0.02, 0.1), coefficients="folklore")
    assert delta_f_plasma(frame(0.02, 0.1), coefficients="rederived") == delta_f_plasma(frame(0.02, 0.1), coefficients=REDERIVED)


@pytest.mark.parametrize("x", [0.03, 0.2, 1.0])
def test_order_functions_two_routes(x, au):
    osc = au.oscillators.scaled(C / (2 * 200e-9))
    assert third_order_function(x, osc) == pytest.approx(order_function_direct(3, x, osc), rel=1e-9)
    assert fourth_order_function(x, osc) == pytest.approx(order_function_direct(4, x, osc), rel=1e-9)


def test_consistent_kernels_reproduce_rederived_discontinuity(au):
    osc = au.oscillators.scaled(C / (2 * 200e-9))
    s_c, s_cd = osc.sum_c, osc.sum_c_delta
    w4 = 4 * PI**5 / (3 * ZETA5)
    c3, c4 = fit_odd_coefficients(3, osc)
    assert -2 * c3 == pytest.approx(240 * REDERIVED.k3a * s_cd, rel=0.01)
    assert PI * c4 == pytest.approx(w4 * REDERIVED.k3b * (s_c + 2), rel=0.02)
    # the published alpha^3 values are off by a factor two and a sign
    assert abs(-2 * c3 - 240 * PUBLISHED.k3a * s_cd) > 0.4 * abs(240 * PUBLISHED.k3a * s_cd)
    assert PI * c4 * (w4 * PUBLISHED.k3b * (s_c + 2)) < 0
    c3, c4 = fit_odd_coefficients(4, osc)
    assert -2 * c3 == pytest.approx(240 * REDERIVED.k4a * s_cd, rel=0.01)
    assert PI * c4 == pytest.approx(w4 * REDERIVED.k4b, rel=0.06)


def test_rederived_set_matches_direct_numerics():
    alpha, tau = 0.02, 0.05
    m = plasma_for_alpha(A, alpha)
    g = Geometry.semispace(A)
    fr = frame(alpha, tau)
    r = free_energy(m, g, fr.T, EngineConfig(rel_tol=1e-10))
    pub = abs(r.thermal_correction - delta_f_plasma(fr) - delta_f_core(fr))
    red = abs(r.thermal_correction - delta_f_plasma(fr, coefficients=REDERIVED)
              - delta_f_core(fr, coefficients=REDERIVED))
    df = abs(r.thermal_correction)
    assert pub == pytest.approx(1.914e-5 * df, rel=1e-3)
    assert red < 1e-8 * df
