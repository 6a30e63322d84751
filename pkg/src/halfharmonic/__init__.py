"""Spectral tools for half-harmonic maps from the circle into the circle."""

from .conformal import (BlaschkeParams, LambdaDatum, blaschke_circle, blaschke_line,
                        blaschke_trace, concentrating_trace, disk_automorphism, g_lambda,
                        g_lambda_circle, g_lambda_trace, inverse_stereo_north,
                        inverse_stereo_south, line_coordinate, phi_map,
                        precompose_automorphism, psi_map, random_blaschke, stereo_north,
                        stereo_south)
from .errors import (AdditivityError, FrameDegenerate, HalfHarmonicError, LengthError,
                     LiftFailure, ModulusCollapse, NonConvergence, NonUnitModulus,
                     PoleSingularity, QuadratureOverflow, ScaleError, UnresolvedDegree)
from .extension import (DegreeReport, DiskField, degree, dirichlet_energy, fourier_degree,
                        hilbert_pairing, jacobian_degree, lift_degree, poisson_extend)
from .minimizer import (ArcConstraint, MinimizeConfig, MinimizeResult, energy_gradient,
                        half_harmonic_residual, initial_guess, minimize_in_class,
                        reflection_competitor)
from .spectral import (CircleMap, EnergyReport, double_integral_energy, energy,
                       frac_laplacian_half, frac_laplacian_quarter, from_function,
                       from_samples, from_spectrum, grid, hilbert_transform,
                       smooth_average, spectral_energy)
from .surgery import (BubbleParams, MatchingCoefficients, bubble_insert,
                      degree_additivity_check, glue_reflect, glue_replace, match_endpoints,
                      matching_coefficients)

__version__ = "0.1.0"
