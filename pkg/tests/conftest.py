import math

import pytest

from casimir_thermal.constants import C, EV
from casimir_thermal.dielectric import Drude, GeneralizedPlasma, Plasma
from casimir_thermal.materials import load_material
from casimir_thermal.reflection import Geometry


@pytest.fixture(scope="session")
def au():
    return load_material("au_sample")


@pytest.fixture(scope="session")
def au_gplasma(au):
    return au.model("gplasma")


@pytest.fixture(scope="session")
def au_drude():
    return Drude(9.0 * EV, 0.035 * EV)


def plasma_for_alpha(a, alpha):
    """Plasma model with omega_c/omega_p = alpha at separation a."""
    return Plasma(C / (2 * a) / alpha)


@pytest.fixture
def semi():
    return Geometry.semispace(1e-6)


def loglog_slope(x, y):
    import numpy as np

    return float(np.polyfit(np.log(x), np.log(np.abs(y)), 1)[0])


ZETA3 = 1.2020569031595942
ZETA5 = 1.0369277551433699
PI = math.pi


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
