"""Three routes to the degree.

The Fourier sum, the Hilbert pairing and the Jacobian of the harmonic
extension agree on smooth maps.  Rough maps are flagged instead of rounded.
"""
import numpy as np

from halfharmonic import UnresolvedDegree, degree, from_function, from_samples, grid

u = from_function(lambda t: np.exp(1j * (-2 * t + 0.5 * np.cos(3 * t))), 512)
rep = degree(u)
print("fourier", rep.fourier, "hilbert", rep.hilbert, "jacobian", rep.jacobian)
print("rounded", rep.rounded, "spread", rep.spread())

# half a winding with a jump back at theta = 0 is not in the energy space
theta = grid(256)
jump = from_samples(np.exp(0.5j * theta), assert_circle=True)
try:
    degree(jump)
except UnresolvedDegree as err:
    print("unresolved:", err)
