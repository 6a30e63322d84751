"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible with ``pytest -s`` or
``-rA``) and enforces its runtime limit.
"""
import time

import numpy as np
import pytest

from halfharmonic import experiments as ex
from halfharmonic.conformal import blaschke_trace, g_lambda_trace, random_blaschke
from halfharmonic.errors import UnresolvedDegree
from halfharmonic.extension import degree
from halfharmonic.minimizer import (ArcConstraint, discrete_energy, energy_gradient,
                                    minimize_in_class, reflection_competitor)
from halfharmonic.spectral import spectral_energy
from halfharmonic.surgery import degree_additivity_check, match_endpoints

from oracles import fd_directional

TWO_PI = 2 * np.pi


@pytest.fixture
def verdict(capsys):
    def report(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        return ok
    return report


@pytest.fixture(scope="module")
def corpus():
    t0 = time.perf_counter()
    maps = ex.map_corpus(seed=0, count=200, n=512)
    reports = [degree(u, strict=False) for _, _, u in maps]
    return maps, reports, time.perf_counter() - t0


def test_01_degree_consistency(corpus, verdict):
    maps, reports, elapsed = corpus
    spread = max(r.spread() for r in reports)
    same = all({round(v) for v in r.values().values()} == {r.rounded} for r in reports)
    labels = all(r.rounded == d for (_, d, _), r in zip(maps, reports))
    ok = spread < 0.01 and same and labels and elapsed < 30
    verdict("1 degree consistency", ok,
            f"max spread {spread:.2e}, 200 maps in {elapsed:.1f} s")
    assert ok


def test_02_energy_rigidity(corpus, verdict):
    t0 = time.perf_counter()
    rows = ex.run_blaschke_energy(5, ex.ExperimentConfig(n=512))
    worst = max(abs(r["deviation"]) for r in rows)
    maps, _, _ = corpus
    excess = min(spectral_energy(u) - TWO_PI * abs(d)
                 for fam, d, u in maps if fam == "perturbed")
    elapsed = time.perf_counter() - t0
    ok = worst < 0.01 and excess > 0.02 and elapsed < 10
    verdict("2 energy rigidity", ok,
            f"max rel dev {worst:.2e}, min non-Blaschke excess {excess:.3f}, {elapsed:.1f} s")
    assert ok


def test_03_degree_bound(corpus, verdict):
    maps, reports, _ = corpus
    bad = sum(abs(r.rounded) > spectral_energy(u) / TWO_PI + 1e-6
              for (_, _, u), r in zip(maps, reports))
    verdict("3 degree bound", bad == 0, f"{bad} violations over {len(maps)} maps")
    assert bad == 0


def test_04_bubble_estimate(verdict):
    t0 = time.perf_counter()
    rows = ex.run_bubble_sweep(1.0, (0.2, 0.1, 0.05), ex.ExperimentConfig(n=2048))
    elapsed = time.perf_counter() - t0
    slope = ex.gap_slope(rows)
    bound = -0.7 * (1 - np.log(2)) * 4
    ok = (all(r["gap_minus_2pi"] < 0 for r in rows)
          and all(r["degree_after"] == r["degree_before"] - 1 for r in rows)
          and slope <= bound and elapsed < 120)
    gaps = ", ".join(f"{r['gap_minus_2pi']:.3f}" for r in rows)
    verdict("4 bubble estimate", ok,
            f"gaps [{gaps}], slope {slope:.2f} <= {bound:.3f}, {elapsed:.1f} s")
    assert ok


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_05_minimizer_correctness(lam, verdict):
    t0 = time.perf_counter()
    r = minimize_in_class(ArcConstraint.g_lambda(lam, 512), 1)
    elapsed = time.perf_counter() - t0
    dist = np.max(np.abs(r.map.samples - g_lambda_trace(lam, 512).samples))
    rel = abs(r.energy - TWO_PI) / TWO_PI
    ok = rel < 0.01 and r.residual < 1e-4 and dist < 0.02 and elapsed < 180
    verdict(f"5 minimizer lambda={lam}", ok,
            f"rel err {rel:.1e}, residual {r.residual:.1e}, sup dist {dist:.1e}, {elapsed:.2f} s")
    assert ok


def test_06_second_critical_point(verdict):
    t0 = time.perf_counter()
    r = minimize_in_class(ArcConstraint.g_lambda(1.0, 512), 0)
    comp = spectral_energy(reflection_competitor(1.0, 512))
    elapsed = time.perf_counter() - t0
    ok = (r.energy < TWO_PI - 0.05 and r.residual < 1e-4 and r.degree == 0
          and comp < TWO_PI and elapsed < 180)
    verdict("6 second critical point", ok,
            f"E0/2pi {r.energy / TWO_PI:.4f}, residual {r.residual:.1e}, "
            f"competitor/2pi {comp / TWO_PI:.4f}, {elapsed:.2f} s")
    assert ok


def test_07_crossing_estimate(verdict):
    rows = ex.run_lambda_sweep(None, ex.ExperimentConfig(n=512))
    lam_hat = ex.crossing_estimate(rows)
    flagged = ex.unconverged_rows(rows, 1e-4)
    ok = lam_hat is not None and lam_hat > 1 and not flagged
    verdict("7 crossing estimate", ok, f"estimated crossing {lam_hat:.3f}")
    assert ok


def test_08_sharp_gap(verdict):
    rows = ex.run_concentration_demo()
    drop = ex.transition_drop(rows)
    degs = [r["resolved_degree"] for r in rows]
    ok = drop is not None and abs(drop - TWO_PI) < 0.5 and degs[0] == 1 and degs[-1] == 0
    verdict("8 sharp gap", ok, f"energy drop {drop:.3f} vs 2pi {TWO_PI:.3f}")
    assert ok


def test_09_surgery_additivity(verdict):
    rng = np.random.default_rng(2024)
    bad = checked = 0
    for _ in range(100):
        u = blaschke_trace(random_blaschke(rng, int(rng.integers(1, 4)),
                                           conjugated=bool(rng.integers(0, 2))), 512)
        b = blaschke_trace(random_blaschke(rng, int(rng.integers(1, 4)),
                                           conjugated=bool(rng.integers(0, 2))), 512)
        v = match_endpoints(b, u, turns=int(rng.integers(-1, 2)))
        try:
            d, du, dr = degree_additivity_check(v, u)
        except UnresolvedDegree:
            continue
        checked += 1
        bad += d != du + dr
    ok = bad == 0 and checked == 100
    verdict("9 surgery additivity", ok, f"{bad} violations over {checked} pairs")
    assert ok


def test_10_gradient_check(verdict):
    rng = np.random.default_rng(10)
    x = np.exp(1j * rng.uniform(0, TWO_PI, 256))
    g = energy_gradient(x)
    worst = 0.0
    for _ in range(100):
        d = rng.normal(size=256) + 1j * rng.normal(size=256)
        analytic = np.sum(np.real(np.conj(g) * d))
        numeric = fd_directional(discrete_energy, x, d, h=1e-5)
        worst = max(worst, abs(analytic - numeric) / abs(numeric))
    ok = worst < 1e-6
    verdict("10 gradient check", ok, f"max rel err {worst:.1e} over 100 directions")
    assert ok


def test_11_pathological_profiles(verdict):
    levels = (11, 12, 13, 14)
    sq = ex.run_pathological("sqrt_log", levels)
    ll = ex.run_pathological("loglog", levels)
    full_sq = [r["seminorm_full"] for r in sq]
    full_ll = [r["seminorm_full"] for r in ll]
    cut = [r["seminorm_cut"] for r in sq]
    ok = (ex.is_cauchy_within(full_sq) and ex.is_cauchy_within(full_ll)
          and ex.has_log_divergence(levels, cut))
    verdict("11 pathological profiles", ok,
            f"full sqrt_log {full_sq[-1]:.4f}, full loglog {full_ll[-1]:.4f}, "
            f"cut {', '.join(f'{c:.4f}' for c in cut)}")
    assert ok
