"""Minimization of the energy under partial Dirichlet data in a homotopy class.

The unknowns are the samples on the free nodes.  The discrete energy is the
spectral sum ``sum |k| |a_k|^2`` of the samples; its gradient with respect to
the samples is ``(4 pi / N) L u`` where ``L`` is the grid half-Laplacian (the
Nyquist bin carries weight ``N/4`` so that ``L`` is exactly the Hessian of the
spectral sum).  Descent moves along the tangential part of ``-L u`` and
renormalizes every node to the circle.
"""

from dataclasses import dataclass, field

import numpy as np

from .conformal import g_lambda_circle
from .errors import LiftFailure, ModulusCollapse, NonConvergence
from .extension import fourier_degree
from .spectral import (MODULUS_FLOOR, CircleMap, from_samples, grid, spectral_energy,
                       unit_normalize)
from .surgery import glue_reflect


def _weights(n):
    w = np.abs(np.fft.fftfreq(n, 1.0 / n))
    w[n // 2] = n / 4.0
    return w


def discrete_energy(samples):
    """Spectral energy of raw samples (no validation)."""
    n = samples.size
    c = np.fft.fft(samples)
    return float(np.sum(_weights(n) * np.abs(c) ** 2) * (2.0 * np.pi) / n ** 2)


def half_laplacian_nodes(samples):
    """Node values of the grid half-Laplacian ``L u``."""
    n = samples.size
    return np.fft.ifft(_weights(n) * np.fft.fft(samples))


def energy_gradient(samples):
    """Gradient of :func:`discrete_energy` as ``d/dRe + i d/dIm`` per sample."""
    return (4.0 * np.pi / samples.size) * half_laplacian_nodes(samples)


@dataclass(frozen=True)
class ArcConstraint:
    """Prescribed values on the nodes of a closed arc.

    ``fixed`` is a boolean node mask and ``values`` the full-length array whose
    entries on fixed nodes are the prescribed unit complex numbers.
    """

    fixed: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        fixed = np.asarray(self.fixed, dtype=bool)
        vals = np.asarray(self.values, dtype=complex)
        if fixed.shape != vals.shape:
            raise ValueError("mask and values must have the same length")
        if fixed.sum() < 2 or (~fixed).sum() < 8:
            raise ValueError("need >= 2 fixed nodes and >= 8 free nodes")
        if np.max(np.abs(np.abs(vals[fixed]) - 1.0)) > 1e-9:
            raise ValueError("prescribed values must lie on the circle")
        fixed = fixed.copy()
        vals = vals.copy()
        vals[fixed] = unit_normalize(vals[fixed])
        fixed.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "fixed", fixed)
        object.__setattr__(self, "values", vals)

    @property
    def n(self):
        return self.fixed.size

    @property
    def free(self):
        return ~self.fixed

    @classmethod
    def on_arc(cls, func, n, start=0.0, stop=np.pi):
        """Fix the nodes of the closed arc from ``start`` to ``stop`` (ccw) to ``func(theta)``."""
        theta = grid(n)
        span = (stop - start) % (2 * np.pi)
        rel = (theta - start) % (2 * np.pi)
        tol = 1e-12
        fixed = (rel <= span + tol) | (rel >= 2 * np.pi - tol)
        vals = np.ones(n, dtype=complex)
        vals[fixed] = func(theta[fixed])
        return cls(fixed, vals)

    @classmethod
    def g_lambda(cls, lam, n):
        """``g_lambda`` prescribed on the closed upper arc (``|x| >= 1``)."""
        return cls.on_arc(lambda t: g_lambda_circle(t, lam), n)

    @classmethod
    def constant(cls, point, n):
        p = complex(point) / abs(point)
        return cls.on_arc(lambda t: np.full(t.shape, p), n)

    def satisfied_by(self, u):
        s = u.samples if isinstance(u, CircleMap) else np.asarray(u)
        return bool(np.array_equal(s[self.fixed], self.values[self.fixed]))

    def _arc_order(self):
        # fixed nodes in counter-clockwise order starting after a free node
        n = self.n
        fixed = self.fixed
        start = next(j for j in range(n) if fixed[j] and not fixed[j - 1])
        order = [(start + m) % n for m in range(n)]
        fixed_run = [j for j in order if fixed[j]]
        free_run = [j for j in order if not fixed[j]]
        if order.index(free_run[0]) != len(fixed_run):
            raise ValueError("fixed nodes must form a single arc")
        return fixed_run, free_run


def initial_guess(constraint, k):
    """A circle map matching ``constraint`` with degree exactly ``k``.

    The boundary phase is lifted along the fixed arc; across the free arc the
    phase runs linearly so that the total winding is ``2 pi k``.

    Raises
    ------
    LiftFailure
        If adjacent prescribed values differ in phase by more than ``pi/2``.
    """
    fixed_run, free_run = constraint._arc_order()
    vals = constraint.values
    steps = np.angle(vals[fixed_run[1:]] / vals[fixed_run[:-1]])
    if steps.size and np.max(np.abs(steps)) > np.pi / 2:
        raise LiftFailure("prescribed values jump by more than pi/2 between nodes")
    phase0 = np.angle(vals[fixed_run[0]])
    lifted = phase0 + np.concatenate([[0.0], np.cumsum(steps)])
    end, start_next = lifted[-1], phase0 + 2.0 * np.pi * k
    m = len(free_run)
    ramp = end + (start_next - end) * np.arange(1, m + 1) / (m + 1)
    out = np.array(vals)
    out[free_run] = np.exp(1j * ramp)
    return from_samples(out, assert_circle=True)


def half_harmonic_residual(u, constraint=None):
    """``max |<(-Delta)^{1/2} u, i u>|`` over free nodes (all nodes if no constraint)."""
    s = u.samples if isinstance(u, CircleMap) else np.asarray(u)
    tang = np.imag(np.conj(s) * half_laplacian_nodes(s))
    if constraint is not None:
        tang = tang[constraint.free]
    return float(np.max(np.abs(tang))) if tang.size else 0.0


@dataclass
class MinimizeConfig:
    max_iter: int = 20000
    step0: float = None
    tol_residual: float = 1e-4
    armijo: float = 1e-4
    backtrack: float = 0.5
    grow: float = 2.0
    monitor_every: int = 10


@dataclass
class MinimizeResult:
    map: CircleMap
    energy: float
    degree: int
    residual: float
    iterations: int
    class_jumps: list = field(default_factory=list)
    converged: bool = False
    energy_history: list = field(default_factory=list)
    monitor_log: list = field(default_factory=list)

    def raise_if_unconverged(self):
        if not self.converged:
            raise NonConvergence(
                f"residual {self.residual:.3e} after {self.iterations} iterations")


def minimize_in_class(constraint, k, cfg=None, start=None, record_history=False):
    """Projected gradient descent of the energy from a degree-``k`` start.

    Parameters
    ----------
    constraint : ArcConstraint
    k : int
        Target degree; used to build the initial map unless ``start`` is given.
    cfg : MinimizeConfig, optional
    start : CircleMap, optional
        Initial map; must satisfy the constraint.
    record_history : bool
        Keep every accepted energy in ``energy_history``.

    The class is maintained by initialization and monitoring: the rounded
    Fourier degree is checked every ``cfg.monitor_every`` iterations and every
    change is logged in ``class_jumps`` as ``(iteration, old, new)``.  Every
    check is also recorded in ``monitor_log`` as ``(iteration, energy, degree)``.
    """
    cfg = cfg or MinimizeConfig()
    n = constraint.n
    u = initial_guess(constraint, k) if start is None else start
    if not constraint.satisfied_by(u):
        raise ValueError("start map does not satisfy the constraint")
    x = np.array(u.samples)
    free = constraint.free
    step = cfg.step0 if cfg.step0 is not None else 0.1 / n
    weight = 4.0 * np.pi / n

    E = discrete_energy(x)
    deg = int(np.rint(fourier_degree(from_samples(x, assert_circle=True))))
    history = [E] if record_history else []
    jumps = []
    monitor = [(0, E, deg)]
    resid = np.inf
    it = 0
    for it in range(1, cfg.max_iter + 1):
        lap = half_laplacian_nodes(x)
        tang = np.imag(np.conj(x) * lap)
        tang[~free] = 0.0
        resid = float(np.max(np.abs(tang)))
        if resid < cfg.tol_residual:
            it -= 1
            break
        direction = 1j * x * tang
        slope = weight * np.sum(tang ** 2)
        while True:
            trial = x - step * direction
            mod = np.abs(trial)
            if np.min(mod[free]) < MODULUS_FLOOR:
                step *= cfg.backtrack
                if step < 1e-300:
                    raise ModulusCollapse("step size underflow during renormalization")
                continue
            trial[free] /= mod[free]
            trial[~free] = x[~free]
            E_trial = discrete_energy(trial)
            if E_trial <= E - cfg.armijo * step * slope:
                break
            step *= cfg.backtrack
            if step < 1e-300:
                break
        if step < 1e-300:
            break
        x, E = trial, E_trial
        step *= cfg.grow
        if record_history:
            history.append(E)
        if it % cfg.monitor_every == 0:
            new = int(np.rint(_deg_of(x)))
            if new != deg:
                jumps.append((it, deg, new))
                deg = new
            monitor.append((it, E, deg))
    else:
        lap = half_laplacian_nodes(x)
        tang = np.imag(np.conj(x) * lap)
        resid = float(np.max(np.abs(tang[free])))

    final = from_samples(x, assert_circle=True)
    new = int(np.rint(fourier_degree(final)))
    if new != deg:
        jumps.append((it, deg, new))
        deg = new
    energy = spectral_energy(final)
    if monitor[-1][0] != it:
        monitor.append((it, energy, deg))
    return MinimizeResult(final, energy, deg, resid, it, jumps,
                          resid < cfg.tol_residual, history, monitor)


def _deg_of(samples):
    n = samples.size
    c = np.fft.fft(samples)
    k = np.fft.fftfreq(n, 1.0 / n)
    k[n // 2] = 0.0
    return float(np.sum(k * np.abs(c) ** 2) / n ** 2)


def reflection_competitor(lam, n):
    """Trace of the reflected extension: ``g_lambda`` above, its mirror below.

    Degree zero and agrees with ``g_lambda`` on the closed upper arc.
    """
    g = from_samples(g_lambda_circle(grid(n), lam), assert_circle=True)
    return glue_reflect(g, g)
