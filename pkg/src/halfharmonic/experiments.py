"""Desk-scale experiments on half-harmonic maps.

Each ``run_*`` function returns a list of row dictionaries whose keys are the
CSV columns of the matching command-line subcommand.  Rows depend only on the
parameters and the seed, never on the worker count.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .conformal import (concentrating_trace, g_lambda_circle, g_lambda_trace,
                        inverse_stereo_north, line_coordinate, random_blaschke,
                        blaschke_trace)
from .extension import UNRESOLVED_THRESHOLD, degree
from .minimizer import ArcConstraint, MinimizeConfig, minimize_in_class
from .spectral import from_samples, grid, spectral_energy
from .surgery import BubbleParams, bubble_insert

TWO_PI = 2.0 * np.pi

COLUMNS = {
    "blaschke-energy": ("k", "energy", "degree", "deviation"),
    "bubble-sweep": ("eps", "E_before", "E_after", "gap_minus_2pi",
                     "degree_before", "degree_after"),
    "lambda-sweep": ("lambda", "E_class0", "E_class1", "residual0", "residual1"),
    "unattained-class": ("iteration", "energy", "degree"),
    "concentration-demo": ("lambda", "resolved_degree", "energy"),
    "pathological": ("level", "seminorm_full", "seminorm_cut"),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Shared settings; ``n`` must be a power of two and at least 64."""

    n: int = 512
    tol_residual: float = 1e-4
    max_iter: int = 20000
    seed: int = 0
    out: str = None
    workers: int = 1

    def __post_init__(self):
        n = int(self.n)
        if n < 64 or n & (n - 1):
            raise ValueError(f"n must be a power of two >= 64, got {self.n}")
        if not self.tol_residual > 0 or self.max_iter < 1 or self.workers < 1:
            raise ValueError("tol_residual, max_iter and workers must be positive")

    def minimize_config(self):
        return MinimizeConfig(max_iter=self.max_iter, tol_residual=self.tol_residual)


def _map(func, items, workers):
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


# ---------------------------------------------------------------------------
# seeded map corpus

def smooth_phase(rng, n, modes=4, amplitude=0.3):
    """Real trigonometric polynomial of low degree sampled on the grid."""
    theta = grid(n)
    k = np.arange(1, modes + 1)
    c = amplitude * (rng.normal(size=modes) + 1j * rng.normal(size=modes)) / k
    return np.real(np.exp(1j * np.multiply.outer(theta, k)) @ c)


def map_corpus(seed=0, count=200, n=512):
    """Seeded corpus of ``(family, degree, map)`` triples.

    Families: ``blaschke`` (degrees -3..3 without 0), ``moebius`` (grid-rotated
    ``g_lambda`` traces) and ``perturbed`` (a Blaschke trace of degree -2..2
    times ``e^{i phi}`` for a smooth nonzero phase ``phi``).  The first two are
    energy minimizers in their class; the third never is.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        family = ("blaschke", "moebius", "perturbed")[i % 3]
        if family == "blaschke":
            k = int(rng.integers(1, 4))
            conj = bool(rng.integers(0, 2))
            u = blaschke_trace(random_blaschke(rng, k, conjugated=conj), n)
            deg = -k if conj else k
        elif family == "moebius":
            lam = float(np.exp(rng.uniform(np.log(0.25), np.log(4.0))))
            u = g_lambda_trace(lam, n).rotate(int(rng.integers(0, n)))
            deg = 1
        else:
            deg = int(rng.integers(-2, 3))
            base = np.ones(n, dtype=complex)
            if deg:
                base = blaschke_trace(random_blaschke(rng, abs(deg), conjugated=deg < 0),
                                      n).samples
            u = from_samples(base * np.exp(1j * smooth_phase(rng, n)), assert_circle=True)
        out.append((family, deg, u))
    return out


# ---------------------------------------------------------------------------
# Blaschke rigidity

def run_blaschke_energy(k_max, cfg=ExperimentConfig(), conjugated=False):
    """Energy of seeded random Blaschke traces for ``k = 1 .. k_max``.

    ``deviation`` is the relative gap ``(E - 2 pi |k|) / (2 pi |k|)``.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for k in range(1, k_max + 1):
        u = blaschke_trace(random_blaschke(rng, k, conjugated=conjugated), cfg.n)
        e = spectral_energy(u)
        d = degree(u, strict=False).rounded
        rows.append({"k": k, "energy": e, "degree": d,
                     "deviation": (e - TWO_PI * k) / (TWO_PI * k)})
    return rows


# ---------------------------------------------------------------------------
# bubble insertion

def south_node(n):
    return 3 * n // 4


def run_bubble_sweep(lam=1.0, eps_list=(0.2, 0.1, 0.05), cfg=ExperimentConfig(n=2048)):
    """Insert a bubble into the ``g_lambda`` trace at the south-pole node."""
    u = g_lambda_trace(lam, cfg.n)
    e_before = spectral_energy(u)
    d_before = degree(u).rounded
    rows = []
    for eps in eps_list:
        v = bubble_insert(u, BubbleParams.at(u, south_node(cfg.n), eps))
        e_after = spectral_energy(v)
        rows.append({"eps": eps, "E_before": e_before, "E_after": e_after,
                     "gap_minus_2pi": e_after - e_before - TWO_PI,
                     "degree_before": d_before, "degree_after": degree(v).rounded})
    return rows


def gap_slope(rows):
    """Least-squares slope of ``gap_minus_2pi`` against ``eps**2`` (with intercept)."""
    x = np.array([r["eps"] for r in rows]) ** 2
    y = np.array([r["gap_minus_2pi"] for r in rows])
    return float(np.polyfit(x, y, 1)[0])


# ---------------------------------------------------------------------------
# lambda sweep

def default_lambda_grid():
    return np.geomspace(0.25, 8.0, 30)


def _sweep_point(args):
    lam, cfg = args
    c = ArcConstraint.g_lambda(lam, cfg.n)
    r0 = minimize_in_class(c, 0, cfg.minimize_config())
    r1 = minimize_in_class(c, 1, cfg.minimize_config())
    return {"lambda": float(lam), "E_class0": r0.energy, "E_class1": r1.energy,
            "residual0": r0.residual, "residual1": r1.residual}


def run_lambda_sweep(lambda_grid=None, cfg=ExperimentConfig()):
    """Minimize in classes 0 and 1 for each ``lambda``; rows sorted by ``lambda``."""
    lams = sorted(float(x) for x in (default_lambda_grid() if lambda_grid is None
                                     else lambda_grid))
    if not lams or lams[0] <= 0:
        raise ValueError("lambda grid must be non-empty and positive")
    return _map(_sweep_point, [(lam, cfg) for lam in lams], cfg.workers)


def unconverged_rows(rows, tol, keys=("residual0", "residual1")):
    """Rows whose residual columns did not reach ``tol``."""
    return [r for r in rows if any(not r[k] < tol for k in keys)]


def crossing_estimate(rows, level=TWO_PI):
    """Observed ``lambda`` where ``E_class0`` first exceeds ``level``.

    Linear interpolation in ``log lambda`` between the bracketing rows.  This
    is an estimate from a finite grid, not an exact threshold; ``None`` when
    the sweep never crosses.
    """
    lam = np.array([r["lambda"] for r in rows])
    e = np.array([r["E_class0"] for r in rows])
    above = np.nonzero(e > level)[0]
    if above.size == 0:
        return None
    i = above[0]
    if i == 0:
        return float(lam[0])
    t = (level - e[i - 1]) / (e[i] - e[i - 1])
    return float(np.exp(np.log(lam[i - 1]) + t * (np.log(lam[i]) - np.log(lam[i - 1]))))


# ---------------------------------------------------------------------------
# classes k > 1

def _bump(t):
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
    return out


def bubble_points(k):
    """``k - 1`` evenly spaced line points in ``(-1, 1)``."""
    return [-1.0 + 2.0 * j / k for j in range(1, k)]


def clockwise_perturbation(lam, n, points, rho):
    """``g_lambda`` with a clockwise-turning bump of width ``rho`` at each point.

    In the line coordinate the projected map ``x / lam`` gains
    ``rho * eta((x - x_j) / rho)`` with ``eta(t) = -(2/lam) t bump(t)``, so the
    map turns clockwise at each ``x_j``.
    """
    theta = grid(n)
    vals = g_lambda_circle(theta, lam)
    lower = theta > np.pi
    x = line_coordinate(theta[lower])
    y = x / lam
    for p in points:
        t = (x - p) / rho
        y = y - (2.0 / lam) * rho * t * _bump(t)
    vals[lower] = inverse_stereo_north(y)
    return from_samples(vals, assert_circle=True)


def _node_of_line_point(p, n):
    theta = (2.0 * (np.arctan(p) - np.pi / 4.0)) % TWO_PI
    return int(np.rint(theta / TWO_PI * n)) % n


@dataclass
class UnattainedReport:
    """Multi-bubble competitor and the descent started from it."""

    lam: float
    k: int
    perturbed_energy: float
    competitor_energy: float
    competitor_degree: int
    final_energy: float
    final_degree: int
    class_jumps: list
    rows: list = field(default_factory=list)
    converged: bool = False


def multi_bubble_competitor(lam, k, n, rho=0.05, eps=0.05):
    """Return ``(perturbed, competitor)`` for class ``k >= 2``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    v = clockwise_perturbation(lam, n, bubble_points(k), rho)
    w = v
    for p in bubble_points(k):
        w = bubble_insert(w, BubbleParams.at(w, _node_of_line_point(p, n), eps))
    return v, w


def run_unattained_class(lam=1.0, k=2, cfg=ExperimentConfig(n=2048), rho=0.05, eps=0.05):
    """Build the degree-``k`` competitor and descend from it."""
    v, w = multi_bubble_competitor(lam, k, cfg.n, rho, eps)
    res = minimize_in_class(ArcConstraint.g_lambda(lam, cfg.n), k, cfg.minimize_config(),
                            start=w)
    rows = [{"iteration": i, "energy": e, "degree": d} for i, e, d in res.monitor_log]
    return UnattainedReport(lam, k, spectral_energy(v), spectral_energy(w),
                            degree(w).rounded, res.energy, res.degree, res.class_jumps,
                            rows, res.converged)


# ---------------------------------------------------------------------------
# concentration

def default_concentration_lambdas():
    return np.geomspace(1.0, 1e-4, 9)


def run_concentration_demo(lambda_seq=None, cfg=ExperimentConfig()):
    """Moebius traces of shrinking scale at a fixed resolution.

    The concentration point sits halfway between two grid nodes so that no
    sample lands on the spike.  ``resolved_degree`` is NaN when the three
    degree formulas do not resolve an integer.
    """
    lams = default_concentration_lambdas() if lambda_seq is None else lambda_seq
    lams = [float(x) for x in lams]
    if any(x <= 0 for x in lams) or any(b >= a for a, b in zip(lams, lams[1:])):
        raise ValueError("lambda sequence must be positive and strictly decreasing")
    n = cfg.n
    center = 1.5 * np.pi + np.pi / n
    rows = []
    for lam in lams:
        u = from_samples(concentrating_trace(grid(n), lam, center), assert_circle=True)
        rep = degree(u, strict=False)
        deg = rep.rounded if rep.max_residual < UNRESOLVED_THRESHOLD else float("nan")
        rows.append({"lambda": lam, "resolved_degree": deg, "energy": spectral_energy(u)})
    return rows


def transition_drop(rows):
    """Energy of the last degree-1 row minus the energy of the final row.

    ``None`` unless the sequence resolves degree 1 first and degree 0 last.
    """
    ones = [r for r in rows if r["resolved_degree"] == 1]
    if not ones or rows[-1]["resolved_degree"] != 0:
        return None
    return ones[-1]["energy"] - rows[-1]["energy"]


# ---------------------------------------------------------------------------
# pathological profiles

def _smooth_step(t):
    f = lambda s: np.where(s > 0, np.exp(-1.0 / np.maximum(s, 1e-300)), 0.0)
    return f(t) / (f(t) + f(1.0 - t))


def profile(name, x):
    """Singular profile on the line, cut off smoothly between 1/4 and 1/2.

    ``sqrt_log``: ``1/sqrt(log 1/|x|)``;  ``loglog``: ``log log 1/|x|``.  Both
    take the value 0 at ``x = 0`` and for ``|x| >= 1/2``.
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    out = np.zeros_like(x)
    m = (ax > 0) & (ax < 0.5)
    if name == "sqrt_log":
        out[m] = 1.0 / np.sqrt(np.log(1.0 / ax[m]))
    elif name == "loglog":
        out[m] = np.log(np.log(1.0 / ax[m]))
    else:
        raise ValueError(f"unknown profile {name!r}")
    return out * (1.0 - _smooth_step((ax - 0.25) / 0.25))


def pathological_maps(name, n):
    """``(u, w)``: ``e^{i f o Pi_-}`` and its copy set to 1 on the right half-circle.

    Samples are taken half a cell off the grid so that no node sits on the
    singular point ``i``; the energy is rotation invariant.
    """
    theta = grid(n) + np.pi / n
    x = np.cos(theta) / (1.0 + np.sin(theta))
    u = np.exp(1j * profile(name, x))
    w = np.where(np.cos(theta) > 0, 1.0 + 0j, u)
    return from_samples(u, assert_circle=True), from_samples(w, assert_circle=True)


def run_pathological(name="sqrt_log", levels=(11, 12, 13, 14), cfg=ExperimentConfig()):
    """Squared seminorms (energies) of the full and cut maps on ``2**level`` nodes."""
    levels = [int(x) for x in levels]
    if any(b != a + 1 for a, b in zip(levels, levels[1:])) or levels[0] < 6:
        raise ValueError("levels must be consecutive integers >= 6")
    rows = []
    for lev in levels:
        u, w = pathological_maps(name, 2 ** lev)
        rows.append({"level": lev, "seminorm_full": spectral_energy(u),
                     "seminorm_cut": spectral_energy(w)})
    return rows


def relative_increments(values):
    v = np.asarray(values, dtype=float)
    return np.abs(np.diff(v)) / np.abs(v[:-1])


def is_cauchy_within(values, rel=0.05):
    """Every successive relative change is below ``rel``."""
    return bool(np.all(relative_increments(values) < rel))


def has_log_divergence(levels, values, slack=0.9):
    """Strictly increasing, with ``level * increment`` not decaying.

    Increments of order ``1/level`` have a divergent sum, which separates
    ``log log N`` growth from a convergent sequence whose increments decay
    faster.
    """
    lev = np.asarray(levels, dtype=float)
    d = np.diff(np.asarray(values, dtype=float))
    if np.any(d <= 0):
        return False
    scaled = lev[1:] * d
    return bool(np.all(scaled[1:] >= slack * scaled[:-1]))


__all__ = [
    "COLUMNS", "ExperimentConfig", "run_blaschke_energy", "run_bubble_sweep", "gap_slope",
    "run_lambda_sweep", "crossing_estimate", "unconverged_rows", "default_lambda_grid",
    "run_unattained_class", "multi_bubble_competitor", "clockwise_perturbation",
    "UnattainedReport", "run_concentration_demo", "transition_drop",
    "default_concentration_lambdas", "run_pathological", "pathological_maps", "profile",
    "map_corpus", "smooth_phase", "is_cauchy_within", "has_log_divergence", "relative_increments", "south_node",
]
