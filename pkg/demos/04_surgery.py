"""Gluing maps along the upper half-circle and inserting a bubble.

Replacing the upper arc of ``u`` by ``v`` changes the degree by the degree of
the reflected glue.  A bubble removes one unit of degree at a cost below 2 pi.
"""
import numpy as np

from halfharmonic import (BlaschkeParams, BubbleParams, blaschke_trace, bubble_insert,
                          degree, degree_additivity_check, g_lambda_trace, match_endpoints,
                          spectral_energy)

u = g_lambda_trace(2.0, 512)
b = blaschke_trace(BlaschkeParams(poles=(0.3 + 1j, -0.5 + 2j)), 512)
v = match_endpoints(b, u)
print("deg(v & u), deg(u), deg(v # u) =", degree_additivity_check(v, u))

u = g_lambda_trace(1.0, 2048)
for eps in (0.2, 0.1, 0.05):
    w = bubble_insert(u, BubbleParams.at(u, 1536, eps))
    gap = spectral_energy(w) - spectral_energy(u) - 2 * np.pi
    print(f"eps={eps}: energy gap minus 2pi {gap:.4f}, degree {degree(w).rounded}")
