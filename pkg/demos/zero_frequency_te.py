"""
Transverse electric reflection near zero frequency
==================================================

At exactly zero frequency the Drude TE reflection coefficient vanishes,
while the plasma model keeps a finite value. For the Drude model the
approach is continuous: the coefficient rises over frequencies of order
gamma and is already plasma-like at the first Matsubara frequency at room
temperature.
"""

import numpy as np

from casimir_thermal.constants import C
from casimir_thermal.lifshitz import matsubara_frequency
from casimir_thermal.materials import load_material
from casimir_thermal.reflection import Geometry, reflect

au = load_material("au_sample")
alpha = 0.05
a = C / (2 * alpha * au.omega_p)
geom = Geometry.semispace(a)
drude, plasma = au.model("drude"), au.model("plasma")
y = 1.0

print(f"a = {a * 1e9:.0f} nm, gamma/omega_c = {au.gamma / geom.omega_c:.3f}, y = {y}")
zeta_1 = matsubara_frequency(300.0, 1) / geom.omega_c
for zeta in [0.0, 1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 1e-1, zeta_1]:
    rd = reflect(drude, geom, zeta, y).r_te
    rp = reflect(plasma, geom, zeta, y).r_te
    tag = "  <- first Matsubara frequency at 300 K" if zeta == zeta_1 else ""
    print(f"zeta = {zeta:9.3e}  drude r_TE = {rd:.6f}  plasma r_TE = {rp:.6f}{tag}")

# TM stays at one for both models at zero frequency
print("r_TM(0, y):", reflect(drude, geom, 0.0, y).r_tm, reflect(plasma, geom, 0.0, y).r_tm)
