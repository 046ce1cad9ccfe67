"""Acceptance suite.

One test per acceptance criterion, each at its stated tolerance, printing a
PASS line (visible with ``pytest -s`` or on failure).  Runtime limits are
asserted where the criterion states one.
"""

import time

import numpy as np
import pytest

from blaschke.dynamics import (
    Verdict,
    cardioid_outside,
    classify,
    classify_formula,
    cubic_deltas,
    denjoy_wolff,
    fixed_point_polynomial,
    q_polynomial,
    quadratic_deltas,
)
from blaschke.hypcalc import divided_difference, h1, h2, inflection_point_cubic, inflection_scan
from blaschke.hypgeo import DiskAutomorphism
from blaschke.poly import roots, schur_cohn
from blaschke.products import (
    CubicParameters,
    FiniteBlaschkeProduct,
    QuadraticParameter,
    from_cubic_parameters,
    from_quadratic_parameter,
)
from blaschke.raster import render_slice, render_unicritical


def uniform_disk(rng, n, rmax=1.0):
    r = rmax * np.sqrt(rng.uniform(0, 1, n))
    th = rng.uniform(0, 2 * np.pi, n)
    return r * np.exp(1j * th)


def random_product(rng, d, rmax=0.95):
    return FiniteBlaschkeProduct(
        uniform_disk(rng, d, rmax), np.exp(1j * rng.uniform(0, 2 * np.pi))
    )


def _report(n, label, started):
    print(f"ACCEPTANCE {n} [{label}]: PASS ({time.monotonic() - started:.1f} s)")


def test_criterion_01_degree_two_cardioid():
    started = time.monotonic()
    rng = np.random.default_rng(2024_01)
    us = uniform_disk(rng, 10_000)
    hyperbolic_samples = []
    for u in us:
        d2 = float(quadratic_deltas(u)[1])
        if abs(d2) > 1e-9:
            assert (d2 > 0) == cardioid_outside(u), f"cardioid sign mismatch at u={u}"
        if abs(d2) > 1e-6:
            formula = classify_formula(QuadraticParameter(u))
            oracle = denjoy_wolff(from_quadratic_parameter(u))
            assert formula.verdict is oracle.verdict, (
                f"route disagreement at u={u}: {formula.verdict} vs {oracle.verdict}"
            )
            if oracle.verdict is Verdict.HYPERBOLIC:
                hyperbolic_samples.append(u)
    elapsed = time.monotonic() - started
    assert elapsed < 30.0, f"criterion 1 runtime {elapsed:.1f} s exceeds 30 s"
    # stash for criterion 10
    test_criterion_01_degree_two_cardioid.hyperbolic = hyperbolic_samples
    _report(1, "degree-2 cardioid", started)


def test_criterion_02_cusp_identity():
    started = time.monotonic()
    u = -1.0 / 3.0
    report = schur_cohn(
        q_polynomial(fixed_point_polynomial(from_quadratic_parameter(u)), formal_degree=3)
    )
    assert abs(report.deltas[0]) < 1e-12
    assert abs(report.deltas[1]) < 1e-12
    B = from_quadratic_parameter(u)
    oracle = denjoy_wolff(B)
    assert abs(oracle.dw_point - 1.0) < 1e-6
    assert abs(B.derivative(1.0) - 1.0) < 1e-10
    assert abs(oracle.multiplier - 1.0) < 1e-10
    _report(2, "cusp identity", started)


def test_criterion_03_midpoint_theorem():
    started = time.monotonic()
    rng = np.random.default_rng(2024_03)
    products = [random_product(rng, 3, rmax=0.95) for _ in range(1000)]
    for B in products:
        m, residual = inflection_point_cubic(B)
        assert residual < 1e-8, f"|H2(midpoint)| = {residual:.3e}"
    for B in products[:100]:
        hits = inflection_scan(B, grid_step=0.01)
        assert len(hits) == 1, f"scan found {len(hits)} zeros"
    elapsed = time.monotonic() - started
    assert elapsed < 600.0, f"criterion 3 runtime {elapsed:.1f} s exceeds 10 min"
    _report(3, "inflection midpoint + uniqueness", started)


def test_criterion_04_delta3_equals_discriminant():
    started = time.monotonic()
    rng = np.random.default_rng(2024_04)
    for _ in range(10_000):
        r, s = uniform_disk(rng, 2)
        p = fixed_point_polynomial(from_cubic_parameters(CubicParameters(r, s)))
        report = schur_cohn(q_polynomial(p, formal_degree=4))
        if report.degenerate or len(report.deltas) < 3:
            continue
        closed = float(cubic_deltas(r, s)[2])
        assert abs(report.deltas[2] - closed) <= 1e-9 * (1.0 + abs(closed))
    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"criterion 4 runtime {elapsed:.1f} s exceeds 1 min"
    _report(4, "delta3 == discriminant", started)


def test_criterion_05_real_slice_law():
    started = time.monotonic()
    hyperbolic_samples = []
    for r in np.arange(0.05, 0.951, 0.05):
        p = fixed_point_polynomial(from_cubic_parameters(CubicParameters(r, 0.0)))
        report = schur_cohn(q_polynomial(p, formal_degree=4))
        law = 64 * (4 * r**2 - 1) ** 3 * (16 * r**2 - 1)
        assert len(report.deltas) == 3
        assert abs(report.deltas[2] - law) <= 1e-9 * (1.0 + abs(law))
    for r in (0.1, 0.2, 0.4):
        res = denjoy_wolff(from_cubic_parameters(CubicParameters(r, 0.0)))
        assert res.verdict is Verdict.ELLIPTIC, f"r={r}"
    for r in (0.6, 0.7, 0.9):
        res = denjoy_wolff(from_cubic_parameters(CubicParameters(r, 0.0)))
        assert res.verdict is Verdict.HYPERBOLIC, f"r={r}"
        hyperbolic_samples.append(r)
        if r == 0.7:
            assert abs(res.multiplier - 9.0 / 17.0) <= 1e-9
    test_criterion_05_real_slice_law.hyperbolic = hyperbolic_samples
    _report(5, "s = 0 real-axis law", started)


def test_criterion_06_discriminant_gap():
    started = time.monotonic()
    res = classify(CubicParameters(0.1, 0.0))
    assert res.verdict is Verdict.ELLIPTIC
    assert res.discrepancy is not None
    assert "suggests hyperbolic" in res.discrepancy
    assert res.p_value > 0
    assert res.deltas[0] < 0
    rng = np.random.default_rng(2024_06)
    for s in uniform_disk(rng, 5):
        oracle = denjoy_wolff(from_cubic_parameters(CubicParameters(0.0, s)))
        assert oracle.verdict is Verdict.ELLIPTIC
        formula = classify_formula(CubicParameters(0.0, s))
        assert formula.degenerate
        assert formula.verdict is Verdict.INDETERMINATE
        combined = classify(CubicParameters(0.0, s))
        assert combined.verdict is Verdict.ELLIPTIC
    _report(6, "discriminant gap surfaced", started)


def test_criterion_07_divided_difference_calculus():
    started = time.monotonic()
    rng = np.random.default_rng(2024_07)
    zetas = np.exp(2j * np.pi * np.arange(64) / 64)
    for _ in range(200):
        d = int(rng.integers(2, 6))
        B = random_product(rng, d, rmax=0.9)
        w = uniform_disk(rng, 1, 0.8)[0]
        for zeta in zetas:
            assert abs(abs(divided_difference(B, w, 1, zeta)) - 1.0) < 1e-8
    for _ in range(100):
        B = random_product(rng, int(rng.integers(2, 5)), rmax=0.9)
        psi = DiskAutomorphism(
            np.exp(1j * rng.uniform(0, 2 * np.pi)), uniform_disk(rng, 1, 0.9)[0]
        )
        phi = DiskAutomorphism(
            np.exp(1j * rng.uniform(0, 2 * np.pi)), uniform_disk(rng, 1, 0.9)[0]
        )
        comp = B.compose_with_automorphisms(post=psi, pre=phi)
        z = uniform_disk(rng, 1, 0.85)[0]
        assert abs(abs(h1(comp, z)) - abs(h1(B, phi(z)))) < 1e-9
        assert abs(abs(h2(comp, z)) - abs(h2(B, phi(z)))) < 1e-9
    _report(7, "divided-difference calculus", started)


def test_criterion_08_normal_form_round_trip():
    started = time.monotonic()
    rng = np.random.default_rng(2024_08)
    for _ in range(500):
        B = random_product(rng, 3, rmax=0.95)
        params, auto, residual = B.normal_form_cubic()
        assert residual < 1e-8, f"residual {residual:.3e}"
        rebuilt = from_cubic_parameters(params).conjugate(auto.inverse())
        for z in uniform_disk(rng, 50, 0.95):
            assert abs(rebuilt.evaluate(z) - B.evaluate(z)) < 1e-8
    _report(8, "normal-form round trip", started)


def test_criterion_09_slice_renders():
    started = time.monotonic()

    t0 = time.monotonic()
    grid0 = render_slice(0.0, resolution=512)
    t_render = time.monotonic() - t0
    assert t_render < 60.0, f"s=0 render took {t_render:.1f} s"
    inner = np.abs(grid0.values) < abs(1 + 0.0) / 4.0
    assert not np.any(grid0.verdict_formula[inner] == "H")

    for s in (0.6, -0.8):
        t0 = time.monotonic()
        grid = render_slice(s, resolution=512)
        t_render = time.monotonic() - t0
        assert t_render < 60.0, f"s={s} render took {t_render:.1f} s"
        codes = grid.verdict_formula
        assert np.array_equal(codes, codes[::-1]), f"s={s} grid not r -> -r symmetric"

    uni = render_unicritical(3, resolution=96)
    codes = uni.verdict_oracle
    assert np.array_equal(codes, codes[::-1]), "unicritical d=3 grid not pi-symmetric"
    _report(9, "slice renders", started)


def test_criterion_10_root_location_soundness():
    started = time.monotonic()
    hyperbolic_u = getattr(test_criterion_01_degree_two_cardioid, "hyperbolic", None)
    if hyperbolic_u is None:
        rng = np.random.default_rng(2024_01)
        us = uniform_disk(rng, 10_000)
        hyperbolic_u = []
        for u in us:
            d1, d2 = (float(x) for x in quadratic_deltas(u)[:2])
            if min(d1, d2) > 1e-6:
                if denjoy_wolff(from_quadratic_parameter(u)).verdict is Verdict.HYPERBOLIC:
                    hyperbolic_u.append(u)
    checked = 0
    for u in hyperbolic_u:
        d1, d2 = (float(x) for x in quadratic_deltas(u)[:2])
        if min(d1, d2) <= 1e-6:
            continue
        p = fixed_point_polynomial(from_quadratic_parameter(u))
        for z in roots(q_polynomial(p, formal_degree=3)):
            assert abs(z) > 1.0 + 1e-8, f"u={u}: root {z} not outside"
        checked += 1
    hyperbolic_r = getattr(test_criterion_05_real_slice_law, "hyperbolic", [0.6, 0.7, 0.9])
    for r in hyperbolic_r:
        d = [float(x) for x in cubic_deltas(r, 0.0)[:3]]
        if min(d) <= 1e-6:
            continue
        p = fixed_point_polynomial(from_cubic_parameters(CubicParameters(r, 0.0)))
        for z in roots(q_polynomial(p, formal_degree=4)):
            assert abs(z) > 1.0 + 1e-8, f"r={r}: root {z} not outside"
        checked += 1
    assert checked > 100
    _report(10, "hyperbolic root location", started)
