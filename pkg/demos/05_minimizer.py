"""Energy minimization in a degree class with the upper arc fixed.

With g_lambda data the degree-one minimizer is g_lambda itself.  The
degree-zero class has a critical point below 2 pi at lambda = 1.
"""
import numpy as np

from halfharmonic import (ArcConstraint, g_lambda_trace, minimize_in_class,
                          reflection_competitor, spectral_energy)

for lam in (0.5, 1.0, 2.0):
    c = ArcConstraint.g_lambda(lam, 512)
    r = minimize_in_class(c, 1)
    dist = np.max(np.abs(r.map.samples - g_lambda_trace(lam, 512).samples))
    print(f"lam={lam} k=1: E/2pi {r.energy / (2 * np.pi):.6f}, residual {r.residual:.1e}, "
          f"distance to g_lambda {dist:.1e}")

r = minimize_in_class(ArcConstraint.g_lambda(1.0, 512), 0)
print(f"lam=1 k=0: E/2pi {r.energy / (2 * np.pi):.4f} after {r.iterations} iterations")
print(f"reflection competitor E/2pi "
      f"{spectral_energy(reflection_competitor(1.0, 512)) / (2 * np.pi):.4f}")
