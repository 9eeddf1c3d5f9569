"""Demo: collapse and revival of population-difference oscillations.

Starts the quadratic model's dynamics from the fully polarized Dicke
state at j = 100.  The unequal level spacing dephases the Rabi
oscillations (collapse) and rephases them at pi / a2 (revival) — here
with no approximation: evolution is exact spectral phase rotation.
"""

import math

import numpy as np

from exactspin import (
    HalfInt,
    ModelParams,
    envelope_metric,
    evolve_observable,
    revival_time,
    to_eigenbasis,
)

params = ModelParams.quadratic(1.0, 0.01, theta=1.5, phi=0.0)
j = HalfInt(200)

psi0 = np.zeros(201, dtype=complex)
psi0[-1] = 1.0  # Dicke |j, m=+j>
state = to_eigenbasis(params, j, psi0)

t_rev = revival_time(params)
print(f"predicted revival: pi/|a2| = {t_rev:.3f}")

times = np.linspace(0.0, 1.15 * t_rev, 4000)
series = evolve_observable(params, j, state, "Jz", times)
env = envelope_metric(series, window=4 * math.pi)

initial = env.values[0]
print(f"initial oscillation amplitude: {initial:.2f}")

# a coarse ASCII strip chart of the envelope
bins = 60
edges = np.linspace(times[0], times[-1], bins + 1)
print()
print("envelope of <Jz> (each column = max over a time bin):")
levels = " .:-=+*#%@"
row = []
for b in range(bins):
    mask = (times >= edges[b]) & (times < edges[b + 1])
    frac = float(np.max(env.values[mask])) / initial
    row.append(levels[min(int(frac * (len(levels) - 1) + 0.5), len(levels) - 1)])
print("".join(row))
ticks = [f"t={edges[0]:.0f}", f"t={edges[bins // 2]:.0f}", f"t={edges[-1]:.0f}"]
print(f"{ticks[0]:<{bins // 2}}{ticks[1]:<{bins // 2 - 6}}{ticks[2]}")

quiet = env.values[(times > 50) & (times < 250)]
revived = env.values[np.abs(times - t_rev) < 10.0]
print()
print(f"collapse floor (50 < t < 250): {np.min(quiet) / initial:.2e} of initial")
print(f"revival peak near t = {t_rev:.1f}: {np.max(revived) / initial:.3f} of initial")
