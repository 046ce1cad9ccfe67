"""Hyperbolic divided differences and hyperbolic derivatives.

The first and second hyperbolic derivatives of a Blaschke product vanish at
its critical points and hyperbolic inflection points respectively.  For a
cubic product the single inflection point is the hyperbolic midpoint of the
two critical points; ``inflection_scan`` audits that numerically and supports
exploratory scans in higher degree.
"""

from __future__ import annotations

import numpy as np

from . import tolerances
from .hypgeo import hyperbolic_midpoint, mobius_quotient
from .products import FiniteBlaschkeProduct

__all__ = [
    "h1",
    "h2",
    "divided_difference",
    "inflection_point_cubic",
    "inflection_scan",
]


def _jets(B: FiniteBlaschkeProduct, zs: np.ndarray):
    """Value, first and second derivative of the rational form on an array."""
    nd = list(reversed(B.numerator.coeffs))
    dd = list(reversed(B.denominator.coeffs))
    n1 = np.polyder(np.asarray(nd))
    d1 = np.polyder(np.asarray(dd))
    n2 = np.polyder(n1)
    d2 = np.polyder(d1)
    N = np.polyval(nd, zs)
    D = np.polyval(dd, zs)
    N1 = np.polyval(n1, zs)
    D1 = np.polyval(d1, zs)
    N2 = np.polyval(n2, zs)
    D2 = np.polyval(d2, zs)
    mu = B.mu
    val = mu * N / D
    w = N1 * D - N * D1
    der = mu * w / D**2
    der2 = mu * ((N2 * D - N * D2) * D - 2.0 * w * D1) / D**3
    return val, der, der2


def _h_arrays(B: FiniteBlaschkeProduct, zs: np.ndarray):
    """First and second hyperbolic derivatives on an array of disk points."""
    val, der, der2 = _jets(B, zs)
    om_z = 1.0 - np.abs(zs) ** 2
    om_b = 1.0 - np.abs(val) ** 2
    hv1 = der * om_z / om_b
    term = (
        der2 * om_z**2 / om_b
        - 2.0 * np.conj(zs) * der * om_z / om_b
        + 2.0 * np.conj(val) * der**2 * om_z**2 / om_b**2
    )
    hv2 = term / (2.0 * (1.0 - np.abs(hv1) ** 2))
    return hv1, hv2


def h1(B: FiniteBlaschkeProduct, z) -> complex:
    """First hyperbolic derivative B'(z) (1 - |z|^2) / (1 - |B(z)|^2).

    Vanishes exactly at the critical points; has modulus one everywhere for
    a disk automorphism and modulus below one otherwise.
    """
    zv = complex(z)
    val = B.rational_value(zv)
    return B.derivative(zv) * (1.0 - abs(zv) ** 2) / (1.0 - abs(val) ** 2)


def h2(B: FiniteBlaschkeProduct, z) -> complex:
    """Second hyperbolic derivative; zeros are the hyperbolic inflection points.

    Requires degree >= 2 (for an automorphism |h1| = 1 and the formula is
    undefined).
    """
    if B.degree < 2:
        raise ValueError("second hyperbolic derivative requires degree >= 2")
    out = _h_arrays(B, np.asarray(complex(z)))[1]
    return complex(out)


def divided_difference(B: FiniteBlaschkeProduct, w, n: int, z) -> complex:
    """n-th hyperbolic divided difference of B with base point w, at z.

    The first difference is [B(z), B(w)] / [z, w]; higher orders recurse with
    the diagonal anchor value supplied by the closed-form hyperbolic
    derivatives.  When z is within pseudo-hyperbolic distance
    ``tolerances.NEAR_DIAGONAL`` of w the quotient is replaced by its limit
    value (the removable singularity on the diagonal).
    """
    if not 1 <= n <= B.degree:
        raise ValueError(f"order must lie in 1..{B.degree}")
    wv = complex(w)

    def anchor(k: int) -> complex:
        if k == 0:
            return B.evaluate(wv)
        if k == 1:
            return h1(B, wv)
        if k == 2:
            return h2(B, wv)
        # No closed form beyond order two: extrapolate linearly to the
        # diagonal from two nearby evaluations.
        t = 1e-5
        zp = (wv + t) / (1.0 + wv.conjugate() * t)
        zp2 = (wv + 2 * t) / (1.0 + wv.conjugate() * 2 * t)
        return 2.0 * dd(k, zp) - dd(k, zp2)

    def dd(k: int, x: complex) -> complex:
        if k == 0:
            return B.evaluate(x)
        q = mobius_quotient(x, wv)
        if abs(q) < tolerances.NEAR_DIAGONAL:
            return anchor(k)
        return mobius_quotient(dd(k - 1, x), anchor(k - 1)) / q

    return dd(n, complex(z))


def inflection_point_cubic(B: FiniteBlaschkeProduct):
    """Hyperbolic inflection point of a cubic product and its |h2| residual.

    Returns (m, residual) with m the hyperbolic midpoint of the two critical
    points; the residual is |h2(B, m)| and is small for well-conditioned B.
    """
    if B.degree != 3:
        raise ValueError("inflection point computation requires degree 3")
    c1, c2 = B.critical_points()
    m = hyperbolic_midpoint(c1, c2).value
    return m, abs(h2(B, m))


def inflection_scan(B: FiniteBlaschkeProduct, grid_step: float = 0.02):
    """Locate zeros of the second hyperbolic derivative by grid search.

    Local minima of |h2| over a grid covering |z| <= 0.999 are refined by a
    damped Newton iteration on (Re h2, Im h2) as a map of the real plane
    (h2 involves conjugates, so complex Newton does not apply); refined
    points with |h2| < 1e-6 are returned as (point, |h2|) pairs.  For a
    degree-2 product the scan targets |h1| instead and finds the critical
    point.
    """
    if B.degree < 2:
        raise ValueError("scan requires degree >= 2")
    if not 0.0 < grid_step <= 0.05:
        raise ValueError("grid step must lie in (0, 0.05]")
    index = 0 if B.degree == 2 else 1

    def target_array(zs):
        return _h_arrays(B, zs)[index]

    def target(zc: complex) -> complex:
        return complex(target_array(np.asarray(zc)))

    n = int(np.ceil(2.0 * 0.999 / grid_step)) + 1
    axis = np.linspace(-0.999, 0.999, n)
    grid = axis[None, :] + 1j * axis[:, None]
    mask = np.abs(grid) <= 0.999
    vals = np.full(grid.shape, np.inf)
    vals[mask] = np.abs(target_array(grid[mask]))

    padded = np.pad(vals, 1, constant_values=np.inf)
    neighbors = np.stack(
        [
            padded[1 + di : 1 + di + n, 1 + dj : 1 + dj + n]
            for di in (-1, 0, 1)
            for dj in (-1, 0, 1)
            if (di, dj) != (0, 0)
        ]
    )
    minima = mask & (vals <= neighbors.min(axis=0)) & np.isfinite(vals)
    candidates = grid[minima]

    found: list[complex] = []
    for z0 in candidates:
        z = _newton_refine(target, complex(z0))
        if z is None or abs(z) > 0.999:
            continue
        residual = abs(target(z))
        if residual >= 1e-6:
            continue
        if all(abs(z - other) > 1e-6 for other in found):
            found.append(z)
    found.sort(key=lambda p: (p.real, p.imag))
    return [(z, abs(target(z))) for z in found]


def _newton_refine(target, z0: complex, max_iter: int = 60):
    """Damped Newton on R^2 -> R^2 with a central finite-difference Jacobian."""
    step = 1e-6
    z = z0
    fz = target(z)
    for _ in range(max_iter):
        if abs(fz) < 1e-13:
            return z
        fx = (target(z + step) - target(z - step)) / (2 * step)
        fy = (target(z + 1j * step) - target(z - 1j * step)) / (2 * step)
        # Jacobian of (Re f, Im f) with respect to (x, y).
        j11, j21 = fx.real, fx.imag
        j12, j22 = fy.real, fy.imag
        det = j11 * j22 - j12 * j21
        if det == 0 or not np.isfinite(det):
            return z
        dx = (-fz.real * j22 + fz.imag * j12) / det
        dy = (-j11 * fz.imag + j21 * fz.real) / det
        moved = False
        damping = 1.0
        for _ in range(20):
            cand = z + damping * complex(dx, dy)
            if abs(cand) <= 0.9995:
                fc = target(cand)
                if abs(fc) < abs(fz):
                    z, fz = cand, fc
                    moved = True
                    break
            damping *= 0.5
        if not moved:
            return z
    return z
