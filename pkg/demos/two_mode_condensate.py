"""Demo: the quadratic model as a two-mode condensate, with convention audits.

Maps the rotated model's parameters to the two-mode coupling constants
(detuning, Josephson exchange, elastic and inelastic collisions), then
measures how the printed two-mode expansion deviates from the rotated-
diagonal ground truth: every deviation is a fixed convention factor,
constant across theta.
"""

import numpy as np

from exactspin import (
    FockSector,
    ModelParams,
    brute_diagonalize,
    fock_hamiltonian,
    model_hamiltonian,
    rate_relation,
    two_mode_coefficients,
)
from exactspin.verify import run_diagnostic_sweeps

params = ModelParams.quadratic(1.0, 0.3, theta=1.1, phi=0.7)
n_atoms = 6
coeffs = two_mode_coefficients(params, n_atoms)

print(f"two-mode couplings for a1={params.coeffs[1]}, a2={params.coeffs[2]}, "
      f"theta={params.angles.theta}, N={n_atoms}:")
for name in ("offset", "detuning", "josephson", "elastic",
             "inelastic_single", "inelastic_pair"):
    print(f"  {name:>17} = {getattr(coeffs, name):+.6f}")

lhs, rhs = rate_relation(params)
print()
print(f"elastic-to-inelastic rate: (mu+Lambda)/U = {lhs:+.6f}, "
      f"printed closed form = {rhs:+.6f}, ratio = {lhs / rhs:.12f}")

sector = FockSector(n_atoms)
h_fock = fock_hamiltonian(coeffs, sector, "standard", phi=params.angles.phi)
h_model = model_hamiltonian(params, sector.j)
w_fock, _ = brute_diagonalize(h_fock)
w_model, _ = brute_diagonalize(h_model)
print()
print(f"printed two-mode build vs rotated diagonal on the N={n_atoms} sector:")
print(f"  sorted-eigenvalue gap: {np.max(np.abs(w_fock - w_model)):.4f} "
      "(structured, not noise)")

print()
print("measured convention factors over a 20-point theta sweep:")
for sweep in run_diagnostic_sweeps(twice_j=10):
    print(f"  {sweep.name:>44}: ratio {sweep.mean_ratio:.9g} "
          f"(variation {sweep.cv:.1e})")
