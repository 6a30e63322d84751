"""Exception types raised by the library."""


class HalfHarmonicError(Exception):
    """Base class for all library errors."""


class LengthError(HalfHarmonicError, ValueError):
    """Sample array has an unusable length."""


class NonUnitModulus(HalfHarmonicError, ValueError):
    """Samples declared circle-valued deviate from modulus one."""


class QuadratureOverflow(HalfHarmonicError, ArithmeticError):
    """A quadrature produced a non-finite value."""


class ModulusCollapse(HalfHarmonicError, ArithmeticError):
    """An averaged or stepped map came too close to the origin to renormalize."""


class PoleSingularity(HalfHarmonicError, ValueError):
    """Stereographic projection evaluated at its pole."""


class UnresolvedDegree(HalfHarmonicError, ArithmeticError):
    """Degree formulas disagree with the nearest integer by too much."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class FrameDegenerate(HalfHarmonicError, ValueError):
    """Tangential derivative too small to fix a local frame."""


class ScaleError(HalfHarmonicError, ValueError):
    """Bubble scale incompatible with the grid or the free region."""


class AdditivityError(HalfHarmonicError, AssertionError):
    """Degree additivity under gluing was violated."""


class LiftFailure(HalfHarmonicError, ValueError):
    """Boundary data cannot be continuously lifted on the grid."""


class NonConvergence(HalfHarmonicError, RuntimeError):
    """Descent stopped before reaching the residual tolerance."""
