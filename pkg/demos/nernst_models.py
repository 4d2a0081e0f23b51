"""
Casimir entropy at low temperature for three permittivity models
=================================================================

Gold plates 200 nm apart. The plasma-like models (free-electron plasma and
the oscillator-augmented plasma) give an entropy that vanishes like T^2.
The Drude model with a fixed relaxation parameter gives a negative entropy
in the same range.
"""

import math

import numpy as np

from casimir_thermal.asymptotics import entropy_expansion
from casimir_thermal.dielectric import Drude, Plasma
from casimir_thermal.lifshitz import DimensionlessFrame, EngineConfig, effective_temperature, entropy
from casimir_thermal.materials import load_material
from casimir_thermal.reflection import Geometry

au = load_material("au_sample")
a = 200e-9
geom = Geometry.semispace(a)
cfg = EngineConfig(rel_tol=1e-9)
t_eff = effective_temperature(a)
print(f"a = {a * 1e9:.0f} nm, T_eff = {t_eff:.1f} K")

models = {
    "plasma": Plasma(au.omega_p),
    "gplasma": au.model("gplasma"),
    "drude": Drude(au.omega_p, au.gamma),
}

# tau = 2 pi T / T_eff, so tau = 1e-3 is about 0.9 K here
taus = np.geomspace(1e-3, 1e-1, 5)
Ts = taus * t_eff / (2 * math.pi)

print(f"{'T (K)':>10} " + " ".join(f"{k:>14}" for k in models) + f" {'gplasma asym':>14}")
table = {k: [] for k in models}
for T in Ts:
    row = []
    for name, m in models.items():
        s = entropy(m, geom, T, cfg).entropy
        table[name].append(s)
        row.append(s)
    fr = DimensionlessFrame.for_model(models["gplasma"], a, T)
    s_asym = entropy_expansion(fr, oscillators=au.oscillators)
    print(f"{T:10.4g} " + " ".join(f"{v:14.5e}" for v in row) + f" {s_asym:14.5e}")

# log-log slope over the three coldest points
for name in ("plasma", "gplasma"):
    s = np.array(table[name][:3])
    p = np.polyfit(np.log(Ts[:3]), np.log(s), 1)[0]
    print(f"{name}: entropy exponent {p:.3f}")

# the Drude entropy is negative; with constant gamma it still shrinks as T drops
s = table["drude"]
print("drude: S(T) / S(T_max) =", " ".join(f"{v / s[-1]:.3f}" for v in s))
