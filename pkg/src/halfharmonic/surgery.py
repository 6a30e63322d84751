"""Cut-and-glue operations on half-arcs and bubble insertion.

The closed upper arc is ``0 <= theta <= pi``: nodes ``0 .. N/2`` of the grid.
A *partial map* on that arc is an array of ``N/2 + 1`` unit complex numbers,
or any circle map whose upper-arc samples are used.
"""

from dataclasses import dataclass

import numpy as np

from .conformal import inverse_stereo_north, inverse_stereo_south, phi_map, psi_map
from .errors import AdditivityError, FrameDegenerate, ScaleError
from .extension import degree, extend_at
from .spectral import CircleMap, frac_laplacian_half, from_samples, grid


def upper_arc_nodes(n):
    return np.arange(n // 2 + 1)


def _partial(v, n):
    if isinstance(v, CircleMap):
        if v.n_samples != n:
            raise ValueError("partial map and base map use different grids")
        return np.asarray(v.samples[: n // 2 + 1])
    v = np.asarray(v, dtype=complex)
    if v.size != n // 2 + 1:
        raise ValueError(f"partial map needs {n // 2 + 1} upper-arc values, got {v.size}")
    return v


def glue_replace(v, u):
    """``v & u``: ``v`` on the closed upper arc, ``u`` on the open lower arc."""
    n = u.n_samples
    out = np.array(u.samples)
    out[: n // 2 + 1] = _partial(v, n)
    return from_samples(out, assert_circle=u.on_circle)


def glue_reflect(v, u):
    """``v # u``: ``v`` on the upper arc, ``theta -> u(e^{-i theta})`` below."""
    n = u.n_samples
    out = np.empty(n, dtype=complex)
    out[: n // 2 + 1] = _partial(v, n)
    j = np.arange(n // 2 + 1, n)
    out[j] = u.samples[n - j]
    return from_samples(out, assert_circle=u.on_circle)


def match_endpoints(v, u, turns=0):
    """Multiply ``v`` on the upper arc by a linear phase ramp so it meets ``u``.

    The result agrees with ``u`` at ``theta = 0`` and ``theta = pi`` and winds
    ``turns`` extra times relative to ``v``; both glued maps are then continuous.
    """
    n = u.n_samples
    vals = np.array(_partial(v, n))
    theta = grid(n)[: n // 2 + 1]
    start = np.angle(u.samples[0] / vals[0])
    stop = np.angle(u.samples[n // 2] / vals[-1]) + 2.0 * np.pi * turns
    vals = vals * np.exp(1j * (start + (stop - start) * theta / np.pi))
    vals[0], vals[-1] = u.samples[0], u.samples[n // 2]
    return vals


def degree_additivity_check(v, u, methods=("fourier",)):
    """Return ``(deg(v&u), deg(u), deg(v#u))`` and check the first is the sum.

    Raises
    ------
    UnresolvedDegree
        If any of the three maps has no resolvable degree.
    AdditivityError
        If the rounded degrees are not additive.
    """
    d_glued = degree(glue_replace(v, u), methods).rounded
    d_u = degree(u, methods).rounded
    d_refl = degree(glue_reflect(v, u), methods).rounded
    if d_glued != d_u + d_refl:
        raise AdditivityError(f"deg(v&u)={d_glued} != deg(u)+deg(v#u)={d_u}+{d_refl}")
    return d_glued, d_u, d_refl


def energy_under_refinement(build, levels):
    """Spectral energy of ``build(n)`` for each ``n`` in ``levels``.

    A sequence that keeps growing signals a glued map outside the energy space.
    """
    from .spectral import spectral_energy

    return [spectral_energy(build(n)) for n in levels]


# ---------------------------------------------------------------------------
# bubble insertion

#: minimum number of grid nodes inside the insertion window
MIN_WINDOW_NODES = 16


@dataclass(frozen=True)
class BubbleParams:
    """Local data for inserting a concentrated circle at node ``x0``.

    The local line coordinate is ``x = tan((theta - theta0)/2)``, so ``x = 0``
    at the insertion node and ``|x| <= 2 eps`` is the modified window.  In the
    frame rotated so that ``u(x0) = -i`` and ``u'(x0) = (a, 0)`` with ``a > 0``:

    a : float
        tangential speed ``|u'(x0)|`` in the line coordinate
    b : float
        normal derivative of the harmonic extension at ``x0``
    mu : float
        ``max(a, b) / 2``; the bubble scale is ``mu * eps**2``
    orientation : int
        ``sign(u(x0) ^ u'(x0))``; the degree drops by this amount
    """

    x0: int
    eps: float
    a: float
    b: float
    orientation: int
    rotation: complex = -1j

    @property
    def mu(self):
        return max(self.a, self.b) / 2.0

    @property
    def lambda_scale(self):
        return self.mu * self.eps ** 2

    @classmethod
    def at(cls, u, x0, eps):
        """Read ``a``, ``b`` and the orientation off ``u`` at node ``x0``."""
        x0 = int(x0) % u.n_samples
        val = u.samples[x0]
        du = u.derivative().samples[x0]
        # dtheta/dx = 2 at x = 0
        rot = -1j / val
        tangent = rot * 2.0 * du
        a = abs(tangent.real)
        if a < 1e-6:
            raise FrameDegenerate(f"|u'(x0)| = {a:.2e} is too small for a frame")
        orientation = int(np.sign(np.imag(np.conj(val) * du)))
        # d_y u~ = -(-Delta)^{1/2} u, scaled by the same conformal factor
        normal = rot * (-2.0) * frac_laplacian_half(u).samples[x0]
        return cls(x0, float(eps), float(a), float(normal.imag), orientation, complex(rot))


def _window(n, params):
    theta = grid(n)
    t = (theta - theta[params.x0] + np.pi) % (2 * np.pi) - np.pi
    x = np.tan(t / 2.0)
    idx = np.nonzero(np.abs(x) <= 2.0 * params.eps)[0]
    return idx, x[idx]


def bubble_window(u, params):
    """Grid nodes modified by :func:`bubble_insert`."""
    return _window(u.n_samples, params)[0]


def _to_frame(w, params):
    w = params.rotation * np.asarray(w)
    return -np.conj(w) if params.orientation < 0 else w


def _from_frame(w, params):
    w = -np.conj(w) if params.orientation < 0 else np.asarray(w)
    return w / params.rotation


def _disk_point(theta0, zeta):
    # local half-plane coordinate -> disk, with x = tan((theta - theta0)/2) on the boundary
    return np.exp(1j * theta0) * (1.0 + 1j * zeta) / (1.0 - 1j * zeta)


def bubble_core(zeta, lam):
    """Anti-holomorphic rescaled bubble ``conj(Phi(zeta / lam))`` in the local frame.

    On the real axis this is ``Pi_-^{-1}(x / lam)``.
    """
    return np.conj(phi_map(np.asarray(zeta, dtype=complex) / lam))


@dataclass(frozen=True)
class MatchingCoefficients:
    """Layer coefficients ``A = A1 + i A2`` and ``B = B1 + i B2`` per polar angle.

    On the half-disk of radius ``2 eps`` around the insertion point the layer
    is ``Phi(A r + B)``; ``A``, ``B`` solve ``A eps + B = Psi(bubble)`` and
    ``2 eps A + B = Psi(extension of u)`` exactly at each angle.
    """

    angles: np.ndarray
    A1: np.ndarray
    A2: np.ndarray
    B1: np.ndarray
    B2: np.ndarray

    @property
    def A(self):
        return self.A1 + 1j * self.A2

    @property
    def B(self):
        return self.B1 + 1j * self.B2


def matching_coefficients(u, params, angles=(0.0, np.pi)):
    """Solve the two-point matching system at each polar angle in ``angles``.

    Angles ``0`` and ``pi`` lie on the boundary, where both data are real so
    that ``A2`` and ``B2`` vanish.
    """
    angles = np.asarray(angles, dtype=float)
    eps = params.eps
    theta0 = 2.0 * np.pi * params.x0 / u.n_samples
    outer_pts = _disk_point(theta0, 2.0 * eps * np.exp(1j * angles))
    outer = psi_map(_to_frame(extend_at(u, outer_pts), params))
    inner = psi_map(bubble_core(eps * np.exp(1j * angles), params.lambda_scale))
    boundary = np.isclose(np.sin(angles), 0.0, atol=1e-15)
    # on the real axis Psi maps the circle to the line; drop round-off imaginary parts
    outer = np.where(boundary, outer.real, outer)
    inner = np.where(boundary, inner.real, inner)
    A = (outer - inner) / eps
    B = 2.0 * inner - outer
    return MatchingCoefficients(angles, A.real, A.imag, B.real, B.imag)


def bubble_insert(u, params, free_mask=None):
    """Insert a concentrated circle of opposite orientation at ``params.x0``.

    Returns the trace of the comparison field: the rescaled anti-holomorphic
    bubble on ``|x| <= eps``, the layer ``Phi(A r + B)`` on ``eps < |x| <= 2 eps``
    with coefficients from :func:`matching_coefficients` at angles ``0`` and
    ``pi``, and ``u`` itself elsewhere (bit-identical).

    Raises
    ------
    ScaleError
        If the window is too wide, holds fewer than ``MIN_WINDOW_NODES`` nodes,
        or leaves the free region.
    """
    if not u.on_circle:
        raise ValueError("bubble insertion needs a circle-valued map")
    eps = params.eps
    if not 0.0 < eps < 0.5:
        raise ScaleError("eps must lie in (0, 0.5)")
    n = u.n_samples
    idx, x = _window(n, params)
    if idx.size < MIN_WINDOW_NODES:
        raise ScaleError(f"window holds {idx.size} nodes, need {MIN_WINDOW_NODES}")
    if free_mask is not None and not np.all(np.asarray(free_mask)[idx]):
        raise ScaleError("insertion window leaves the free region")

    coef = matching_coefficients(u, params)
    vals = np.empty(idx.size, dtype=complex)
    r = np.abs(x)
    core = r <= eps
    with np.errstate(divide="ignore"):
        vals[core] = inverse_stereo_south(x[core] / params.lambda_scale)
    side = np.where(x[~core] >= 0, 0, 1)
    vals[~core] = inverse_stereo_north(coef.A1[side] * r[~core] + coef.B1[side])

    out = np.array(u.samples)
    vals = _from_frame(vals, params)
    out[idx] = vals / np.abs(vals)
    return from_samples(out, assert_circle=True)
