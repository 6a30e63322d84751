"""Blaschke products and the g_lambda boundary data.

Blaschke traces minimize the energy in their degree class; g_lambda traces
are rescaled Moebius maps of degree one.
"""
import numpy as np

from halfharmonic import (BlaschkeParams, blaschke_trace, degree, g_lambda_trace,
                          random_blaschke, spectral_energy)

rng = np.random.default_rng(0)
for k in range(1, 5):
    u = blaschke_trace(random_blaschke(rng, k), 512)
    print(f"random Blaschke k={k}: E/2pi = {spectral_energy(u) / (2 * np.pi):.8f}, "
          f"degree {degree(u).rounded}")

p = BlaschkeParams(poles=(1j, 2j), conjugated=True)
print("conjugated two-pole product degree:", degree(blaschke_trace(p, 512)).rounded)

for lam in (0.25, 1.0, 4.0):
    g = g_lambda_trace(lam, 512)
    print(f"g_lambda lam={lam}: E/2pi = {spectral_energy(g) / (2 * np.pi):.6f}")
