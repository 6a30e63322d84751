"""Fractional energy of circle-valued maps.

Samples a few maps on the grid, computes the energy by the spectral and the
double-integral routes and applies the fractional operators.
"""
import numpy as np

from halfharmonic import (double_integral_energy, frac_laplacian_half, from_function,
                          spectral_energy)

n = 512
for k in (1, 2, 5):
    u = from_function(lambda t: np.exp(1j * k * t), n)
    # e^{ik theta} has energy 2 pi |k|
    print(f"k={k}: spectral {spectral_energy(u):.6f}  double integral "
          f"{double_integral_energy(u):.6f}  2 pi k {2 * np.pi * k:.6f}")

# a non-minimal degree-one map costs more
u = from_function(lambda t: np.exp(1j * (t + 0.4 * np.sin(2 * t))), n)
print("perturbed identity:", spectral_energy(u))

# the half-Laplacian of e^{3i theta} is 3 e^{3i theta}
v = from_function(lambda t: np.exp(3j * t), n)
print("eigenvalue check:", np.max(np.abs(frac_laplacian_half(v).samples - 3 * v.samples)))
