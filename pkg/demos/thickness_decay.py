"""
Finite plate thickness
======================

A plate of thickness d differs from a semispace through
coth[(d/2a) sqrt(y^2 + 1/alpha^2 + ...)], which approaches 1 like
1 + 2 exp(-d/(a alpha)). The free energy inherits the same decay.
"""

import numpy as np

from casimir_thermal.constants import C
from casimir_thermal.dielectric import Plasma
from casimir_thermal.lifshitz import EngineConfig, free_energy
from casimir_thermal.reflection import Geometry

a, alpha, T = 1e-6, 0.02, 300.0
model = Plasma(C / (2 * a) / alpha)
cfg = EngineConfig(rel_tol=1e-9)
f_semi = free_energy(model, Geometry.semispace(a), T, cfg).free_energy
print(f"semispace F = {f_semi:.10e} J/m^2  (skin depth a*alpha = {a * alpha * 1e9:.1f} nm)")

xs = np.linspace(1, 10, 10)
dev = []
for x in xs:
    d = x * a * alpha
    f = free_energy(model, Geometry(a, d), T, cfg).free_energy
    dev.append(abs(f - f_semi))
    print(f"d = {d * 1e9:6.1f} nm  d/(a alpha) = {x:4.1f}  |F(d) - F(inf)|/|F| = {dev[-1] / abs(f_semi):.3e}")

rate = -np.polyfit(xs[1:], np.log(dev[1:]), 1)[0]
print(f"fitted decay rate {rate:.4f} (expected 1)")
