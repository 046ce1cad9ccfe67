"""Tests for hyperbolic divided differences, derivatives, and inflection points."""

import numpy as np
import pytest

from blaschke.hypgeo import DiskAutomorphism, hyperbolic_midpoint
from blaschke.hypcalc import (
    divided_difference,
    h1,
    h2,
    inflection_point_cubic,
    inflection_scan,
)
from blaschke.products import FiniteBlaschkeProduct, from_cubic_parameters


def rand_disk(rng, n, rmax=0.95):
    r = rmax * np.sqrt(rng.uniform(0, 1, n))
    th = rng.uniform(0, 2 * np.pi, n)
    return r * np.exp(1j * th)


def rand_product(rng, d, rmax=0.95):
    return FiniteBlaschkeProduct(
        rand_disk(rng, d, rmax), np.exp(1j * rng.uniform(0, 2 * np.pi))
    )


def rand_automorphism(rng, rmax=0.9):
    return DiskAutomorphism(
        np.exp(1j * rng.uniform(0, 2 * np.pi)), rand_disk(rng, 1, rmax)[0]
    )


def offset_point(w, t):
    """Point at pseudo-hyperbolic distance t from w along the +1 direction."""
    return (w + t) / (1 + w.conjugate() * t)


class TestFirstDerivative:
    def test_vanishes_at_critical_points(self):
        rng = np.random.default_rng(51)
        for _ in range(20):
            B = rand_product(rng, 3)
            for c in B.critical_points():
                assert abs(h1(B, c)) < 1e-10

    def test_frozen_value(self):
        B = FiniteBlaschkeProduct([0, 0], 1.0)  # z^2
        assert h1(B, 0.5) == pytest.approx(0.8, abs=1e-13)

    def test_automorphism_has_unit_modulus(self):
        rng = np.random.default_rng(52)
        for _ in range(20):
            B = FiniteBlaschkeProduct(
                rand_disk(rng, 1), np.exp(1j * rng.uniform(0, 2 * np.pi))
            )
            z = rand_disk(rng, 1, 0.9)[0]
            assert abs(h1(B, z)) == pytest.approx(1.0, abs=1e-12)

    def test_contraction_bound(self):
        rng = np.random.default_rng(53)
        for _ in range(50):
            B = rand_product(rng, int(rng.integers(2, 5)))
            z = rand_disk(rng, 1, 0.9)[0]
            assert abs(h1(B, z)) < 1.0


class TestSecondDerivative:
    def test_monomial_inflects_at_origin(self):
        B = FiniteBlaschkeProduct([0, 0, 0], 1.0)
        assert abs(h2(B, 0)) < 1e-15

    def test_normal_form_inflects_at_origin(self):
        rng = np.random.default_rng(54)
        for _ in range(20):
            r, s = rand_disk(rng, 2, 0.9)
            B = from_cubic_parameters(r, s)
            assert abs(h2(B, 0)) < 1e-12

    def test_degree_two_has_unit_modulus(self):
        # the second difference of a degree-2 product is a unimodular constant
        rng = np.random.default_rng(55)
        for _ in range(20):
            B = rand_product(rng, 2, rmax=0.85)
            z = rand_disk(rng, 1, 0.8)[0]
            assert abs(h2(B, z)) == pytest.approx(1.0, abs=1e-9)

    def test_rejects_automorphisms(self):
        B = FiniteBlaschkeProduct([0.2], 1.0)
        with pytest.raises(ValueError):
            h2(B, 0.1)

    def test_matches_divided_difference_limit(self):
        rng = np.random.default_rng(56)
        for _ in range(5):
            B = rand_product(rng, 3)
            w = rand_disk(rng, 1, 0.6)[0]
            closed = h2(B, w)
            errs = []
            for t in (1e-3, 1e-4):
                approx = divided_difference(B, w, 2, offset_point(w, t))
                errs.append(abs(approx - closed))
            # linear trend toward the closed form
            assert errs[1] < 0.5 * errs[0]
            assert errs[1] < 1e-3


class TestDividedDifferences:
    def test_monomial_first_difference(self):
        B = FiniteBlaschkeProduct([0, 0], 1.0)  # [z^2, 0]/[z, 0] = z
        for z in (0.3, -0.2 + 0.4j, 0.8j):
            assert divided_difference(B, 0.0, 1, z) == pytest.approx(z, abs=1e-13)

    def test_automorphism_difference_is_unimodular(self):
        rng = np.random.default_rng(57)
        B = FiniteBlaschkeProduct([0.3 - 0.1j], np.exp(0.4j))
        for _ in range(20):
            z, w = rand_disk(rng, 2, 0.9)
            assert abs(divided_difference(B, w, 1, z)) == pytest.approx(1.0, abs=1e-12)

    def test_degree_reduction_boundary_modulus(self):
        rng = np.random.default_rng(58)
        zetas = np.exp(2j * np.pi * np.arange(64) / 64)
        for _ in range(30):
            B = rand_product(rng, int(rng.integers(2, 6)))
            w = rand_disk(rng, 1, 0.8)[0]
            for zeta in zetas:
                assert abs(abs(divided_difference(B, w, 1, zeta)) - 1.0) < 1e-8

    def test_degree_reduction_interior_contraction(self):
        rng = np.random.default_rng(59)
        for _ in range(50):
            B = rand_product(rng, int(rng.integers(2, 6)))
            w, z = rand_disk(rng, 2, 0.9)
            assert abs(divided_difference(B, w, 1, z)) < 1.0 + 1e-12

    def test_near_diagonal_uses_anchor(self):
        rng = np.random.default_rng(60)
        B = rand_product(rng, 3)
        w = rand_disk(rng, 1, 0.5)[0]
        z = offset_point(w, 1e-9)
        assert divided_difference(B, w, 1, z) == pytest.approx(h1(B, w), abs=1e-8)

    def test_order_validation(self):
        B = FiniteBlaschkeProduct([0, 0], 1.0)
        with pytest.raises(ValueError):
            divided_difference(B, 0.0, 3, 0.5)
        with pytest.raises(ValueError):
            divided_difference(B, 0.0, 0, 0.5)

    def test_higher_order_runs(self):
        rng = np.random.default_rng(61)
        B = rand_product(rng, 4)
        w, z = rand_disk(rng, 2, 0.7)
        out = divided_difference(B, w, 4, z)
        assert np.isfinite(out.real) and np.isfinite(out.imag)


class TestConformalInvariance:
    def test_moduli_invariant_under_pre_post_composition(self):
        rng = np.random.default_rng(62)
        for _ in range(100):
            B = rand_product(rng, int(rng.integers(2, 5)))
            psi = rand_automorphism(rng)
            phi = rand_automorphism(rng)
            comp = B.compose_with_automorphisms(post=psi, pre=phi)
            z = rand_disk(rng, 1, 0.85)[0]
            assert abs(abs(h1(comp, z)) - abs(h1(B, phi(z)))) < 1e-9
            assert abs(abs(h2(comp, z)) - abs(h2(B, phi(z)))) < 1e-9


class TestInflection:
    def test_monomial(self):
        B = FiniteBlaschkeProduct([0, 0, 0], 1.0)
        m, residual = inflection_point_cubic(B)
        assert m == 0
        assert residual < 1e-15

    def test_part_a_form_inflects_at_origin(self):
        from blaschke.poly import ComplexPolynomial

        num = ComplexPolynomial([0.4 - 0.25j, -0.36, -0.36 * (0.4 - 0.25j), 1.0])
        B = FiniteBlaschkeProduct.from_monic_numerator(num, np.exp(0.3j))
        m, residual = inflection_point_cubic(B)
        assert abs(m) < 1e-10
        assert residual < 1e-10

    def test_midpoint_residual_random(self):
        rng = np.random.default_rng(63)
        for _ in range(200):
            B = rand_product(rng, 3)
            _, residual = inflection_point_cubic(B)
            assert residual < 1e-8

    def test_conformal_covariance(self):
        rng = np.random.default_rng(64)
        for _ in range(30):
            B = rand_product(rng, 3)
            a = rand_automorphism(rng)
            m, _ = inflection_point_cubic(B)
            mc, _ = inflection_point_cubic(B.conjugate(a))
            assert abs(mc - a.inverse()(m)) < 1e-8

    def test_scan_monomial(self):
        B = FiniteBlaschkeProduct([0, 0, 0], 1.0)
        hits = inflection_scan(B, grid_step=0.05)
        assert len(hits) == 1
        z, val = hits[0]
        assert abs(z) < 1e-8
        assert val < 1e-10

    def test_scan_uniqueness_random_cubics(self):
        rng = np.random.default_rng(65)
        for _ in range(10):
            B = rand_product(rng, 3)
            hits = inflection_scan(B, grid_step=0.02)
            assert len(hits) == 1
            m, _ = inflection_point_cubic(B)
            assert abs(hits[0][0] - m) < 1e-6

    def test_scan_degree_two_finds_critical_point(self):
        B = FiniteBlaschkeProduct([0, 0], 1.0)
        hits = inflection_scan(B, grid_step=0.05)
        assert len(hits) == 1
        assert abs(hits[0][0]) < 1e-8

    def test_scan_degree_four_monomial_reports_origin(self):
        B = FiniteBlaschkeProduct([0, 0, 0, 0], 1.0)
        hits = inflection_scan(B, grid_step=0.05)
        assert any(abs(z) < 1e-8 for z, _ in hits)

    def test_scan_validates_step(self):
        B = FiniteBlaschkeProduct([0, 0, 0], 1.0)
        with pytest.raises(ValueError):
            inflection_scan(B, grid_step=0.2)
