"""Dynamical classification of Blaschke products.

Two independent routes decide whether a product is elliptic, parabolic, or
hyperbolic:

* the formula route builds the self-inversive fixed-point polynomial p,
  forms q as the reciprocal of p', and runs the iterated Schur transforms;
  the map is hyperbolic exactly when every delta is strictly positive;
* the orbit oracle locates the fixed points directly, identifies the
  attracting one, and classifies by its position and multiplier.

``classify`` runs both and reconciles them, surfacing any disagreement and
any gap between the cubic closed-form discriminant and the full delta
criterion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import tolerances
from .poly import ComplexPolynomial, RootFindingError, reciprocal, roots, schur_cohn
from .products import (
    CubicParameters,
    FiniteBlaschkeProduct,
    NormalFormError,
    QuadraticParameter,
    from_cubic_parameters,
    from_quadratic_parameter,
)

__all__ = [
    "Verdict",
    "ClassificationResult",
    "fixed_point_polynomial",
    "q_polynomial",
    "cubic_deltas",
    "quadratic_deltas",
    "p_discriminant",
    "cardioid_outside",
    "classify_formula",
    "denjoy_wolff",
    "classify",
]


class Verdict(str, enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ClassificationResult:
    """Outcome of a classification query.

    ``deltas`` and ``p_value`` come from the formula route (``p_value`` only
    for degree 3); ``dw_point`` and ``multiplier`` from the orbit oracle.
    ``route`` records which routes produced the verdict and ``discrepancy``
    holds a human-readable note whenever the routes, or the closed-form
    discriminant, disagree with the verdict.
    """

    verdict: Verdict
    deltas: tuple[float, ...] = ()
    p_value: float | None = None
    dw_point: complex | None = None
    multiplier: float | None = None
    route: str = "formula"
    discrepancy: str | None = None
    degenerate: bool = False


# -- fixed-point polynomial and the q pipeline -------------------------------


def fixed_point_polynomial(B: FiniteBlaschkeProduct) -> ComplexPolynomial:
    """Self-inversive polynomial whose roots are the fixed points of B.

    Clearing denominators in B(z) = z gives mu*num(z) - z*den(z); the overall
    sign alternates with the degree so that the quadratic and cubic parameter
    families produce the conventional coefficient patterns
    (conj(u) z^3 + z^2 - z - u and conj(r) z^4 - (1+s) z^3 + ...).
    """
    d = B.degree
    nc = list(B.numerator.coeffs) + [0j] * (d + 1 - len(B.numerator.coeffs))
    dc = list(B.denominator.coeffs) + [0j] * (d + 1 - len(B.denominator.coeffs))
    sign = -1.0 if d % 2 else 1.0
    out = [sign * B.mu * nc[0]]
    for k in range(1, d + 2):
        nk = B.mu * nc[k] if k <= d else 0j
        out.append(sign * (nk - dc[k - 1]))
    return ComplexPolynomial(out)


def q_polynomial(p: ComplexPolynomial, formal_degree: int | None = None) -> ComplexPolynomial:
    """Reciprocal of the derivative of p.

    ``formal_degree`` is the intended degree of p (the Blaschke degree plus
    one); when p has dropped degree, e.g. for a product fixing the origin,
    the padding keeps the reversal aligned so the lost fixed point shows up
    as a root of q at the origin and flags the Schur pipeline as degenerate.
    """
    if p.degree < 2 and (formal_degree is None or formal_degree < 2):
        raise ValueError("q polynomial requires degree >= 2")
    deriv = p.derivative()
    degree = None if formal_degree is None else formal_degree - 1
    return reciprocal(deriv, degree=degree)


def _fixed_point_coeffs_cubic(r: complex, s: complex) -> ComplexPolynomial:
    return ComplexPolynomial(
        [-r, (1 + s).conjugate(), s * r - (s * r).conjugate(), -(1 + s), r.conjugate()]
    )


def _fixed_point_coeffs_quadratic(u: complex) -> ComplexPolynomial:
    return ComplexPolynomial([-u, -1.0, 1.0, u.conjugate()])


# -- closed-form delta sequences ---------------------------------------------


def cubic_deltas(r, s):
    """Closed-form Schur-Cohn deltas of the cubic family, numpy-compatible.

    Returns (d1, d2, d3, s1, s2, s3) where the s_k are the natural magnitude
    scales |a_0|^2 + |a_d|^2 of the successive transforms, used for sign
    bands.  d3 is the classification discriminant of the family.
    """
    r = np.asarray(r)
    s = np.asarray(s)
    one_s = 1.0 + s
    sr = s * r
    skew = np.conj(sr) - sr
    t_r = 16.0 * np.abs(r) ** 2
    t_s = np.abs(one_s) ** 2
    d1 = t_r - t_s
    s1 = t_r + t_s
    c2 = 8.0 * np.conj(r) * skew + 3.0 * one_s**2
    d2 = d1**2 - np.abs(c2) ** 2
    s2 = d1**2 + np.abs(c2) ** 2
    ell = (t_s - t_r) * (2.0 * one_s * (-skew) + 12.0 * np.conj(r) * np.conj(one_s)) + c2 * (
        2.0 * np.conj(one_s) * skew + 12.0 * r * one_s
    )
    d3 = d2**2 - np.abs(ell) ** 2
    s3 = d2**2 + np.abs(ell) ** 2
    return d1, d2, d3, s1, s2, s3


def quadratic_deltas(u):
    """Closed-form deltas (d1, d2) with scales (s1, s2) for the quadratic family."""
    u = np.asarray(u)
    d1 = 9.0 * np.abs(u) ** 2 - 1.0
    s1 = 9.0 * np.abs(u) ** 2 + 1.0
    c1 = 2.0 + 6.0 * np.conj(u)
    d2 = d1**2 - np.abs(c1) ** 2
    s2 = d1**2 + np.abs(c1) ** 2
    return d1, d2, s1, s2


def p_discriminant(params, s=None) -> float:
    """Closed-form discriminant of the cubic family.

    Positive, zero, and negative values correspond to the hyperbolic,
    parabolic, and elliptic claims of the closed form; it equals the third
    Schur-Cohn delta of the q pipeline.  Note that a positive value alone
    does not imply hyperbolicity when an earlier delta is negative; see
    ``classify`` which surfaces such gaps.
    """
    if s is not None:
        params = CubicParameters(params, s)
    d3 = cubic_deltas(params.r, params.s)[2]
    return float(d3)


def cardioid_outside(u) -> bool:
    """Strict version of the quadratic hyperbolicity region: u outside the
    cardioid with cusp at -1/3."""
    x, y = complex(u).real, complex(u).imag
    t = x + 1.0 / 3.0
    lhs = (t * t + y * y - (2.0 / 3.0) * t) ** 2
    rhs = (4.0 / 9.0) * (t * t + y * y)
    return lhs > rhs


# -- formula route ------------------------------------------------------------


def _verdict_from_deltas(deltas, scales, degenerate, band_tol):
    if degenerate:
        return Verdict.INDETERMINATE
    bands = [band_tol * max(s, 1.0e-300) for s in scales]
    if all(d > b for d, b in zip(deltas, bands)):
        return Verdict.HYPERBOLIC
    if all(d >= -b for d, b in zip(deltas, bands)):
        return Verdict.PARABOLIC
    return Verdict.ELLIPTIC


def _coerce_target(target):
    """Normalize input to (kind, params, B-or-None)."""
    if isinstance(target, CubicParameters):
        return "cubic", target, None
    if isinstance(target, QuadraticParameter):
        return "quadratic", target, None
    if isinstance(target, FiniteBlaschkeProduct):
        return "product", None, target
    raise TypeError(f"cannot classify {type(target).__name__}")


def classify_formula(target, tol_parabolic: float | None = None) -> ClassificationResult:
    """Schur-Cohn classification.

    Accepts a FiniteBlaschkeProduct or normal-form parameters.  Hyperbolic
    requires every delta strictly positive (beyond the sign band); a least
    delta inside the band with the rest nonnegative is parabolic; otherwise
    elliptic.  A degenerate Schur pipeline yields an indeterminate verdict.
    For degree 3 the closed-form discriminant is reported alongside.
    """
    band = tolerances.PARABOLIC_DELTA_BAND if tol_parabolic is None else tol_parabolic
    kind, params, B = _coerce_target(target)
    p_value = None
    if kind == "cubic":
        p = _fixed_point_coeffs_cubic(params.r, params.s)
        formal = 4
        p_value = p_discriminant(params)
    elif kind == "quadratic":
        p = _fixed_point_coeffs_quadratic(params.u)
        formal = 3
    else:
        p = fixed_point_polynomial(B)
        formal = B.degree + 1
        if B.degree == 3:
            try:
                nf_params, _, _ = B.normal_form_cubic()
                p_value = p_discriminant(nf_params)
            except (NormalFormError, ArithmeticError, RootFindingError):
                p_value = None
    q = q_polynomial(p, formal_degree=formal)
    report = schur_cohn(q)
    verdict = _verdict_from_deltas(report.deltas, report.scales, report.degenerate, band)
    note = None
    if report.degenerate:
        note = f"schur pipeline degenerate: {report.reason}"
    return ClassificationResult(
        verdict=verdict,
        deltas=report.deltas,
        p_value=p_value,
        route="formula",
        discrepancy=note,
        degenerate=report.degenerate,
    )


# -- orbit oracle --------------------------------------------------------------


def _refine_fixed_point(B: FiniteBlaschkeProduct, z: complex, max_iter: int = 60) -> complex:
    """Newton iteration on B(z) - z for a well-separated fixed point."""
    for _ in range(max_iter):
        g = B.rational_value(z) - z
        gp = B.derivative(z) - 1.0
        if gp == 0:
            break
        step = g / gp
        z = z - step
        if abs(step) < 1e-13 * (1.0 + abs(z)):
            break
    return z


def _cluster_groups(points: list[complex], threshold: float) -> list[list[complex]]:
    remaining = list(points)
    groups: list[list[complex]] = []
    while remaining:
        group = [remaining.pop(0)]
        changed = True
        while changed:
            changed = False
            for q in remaining[:]:
                if any(abs(q - c) <= threshold for c in group):
                    group.append(q)
                    remaining.remove(q)
                    changed = True
        groups.append(group)
    return groups


def _refine_multiple_root(p: ComplexPolynomial, centroid: complex, m: int, spread: float) -> complex:
    """Polish an m-fold root cluster of p.

    An m-fold root is a simple root of the (m-1)-st derivative, where Newton
    converges quadratically; the centroid is already within the cluster
    spread, so a walk escaping that neighbourhood means the derivative root
    belongs to something else and the centroid is kept.
    """
    q = p
    for _ in range(m - 1):
        q = q.derivative()
    if q.degree < 1:
        return centroid
    dq = q.derivative()
    z = centroid
    for _ in range(30):
        dv = dq(z)
        if dv == 0:
            break
        step = q(z) / dv
        z = z - step
        if abs(step) < 1e-14 * (1.0 + abs(z)):
            break
    if abs(z - centroid) > max(10.0 * spread, 1e-3):
        return centroid
    return z


def _orbit_fallback(B: FiniteBlaschkeProduct, band: float):
    """Iterate from the origin and classify by the limit behaviour."""
    z = 0j
    boundary_run = 0
    for _ in range(1_000_000):
        z_next = B.evaluate(z)
        if abs(z_next - z) < 1e-13:
            if abs(z_next) >= 1.0 - 1e-6:
                # settled onto the circle: classify by the multiplier there
                zeta = z_next / abs(z_next)
                lam = B.derivative(zeta)
                verdict = (
                    Verdict.PARABOLIC if abs(lam.real - 1.0) <= band else Verdict.HYPERBOLIC
                )
                return ClassificationResult(
                    verdict=verdict,
                    dw_point=zeta,
                    multiplier=lam.real,
                    route="oracle",
                )
            lam = abs(B.derivative(z_next))
            return ClassificationResult(
                verdict=Verdict.ELLIPTIC,
                dw_point=z_next,
                multiplier=lam,
                route="oracle",
            )
        if 1.0 - abs(z_next) < 1e-10:
            boundary_run += 1
            if boundary_run >= 1_000:
                zeta = z_next / abs(z_next)
                lam = B.derivative(zeta)
                verdict = (
                    Verdict.PARABOLIC if abs(lam.real - 1.0) <= band else Verdict.HYPERBOLIC
                )
                return ClassificationResult(
                    verdict=verdict,
                    dw_point=zeta,
                    multiplier=lam.real,
                    route="oracle",
                )
        else:
            boundary_run = 0
        z = z_next
    return ClassificationResult(
        verdict=Verdict.INDETERMINATE,
        route="oracle",
        discrepancy="orbit iteration did not settle within the step budget",
    )


def denjoy_wolff(B: FiniteBlaschkeProduct, tol_parabolic: float | None = None) -> ClassificationResult:
    """Locate the attracting fixed point directly and classify by it.

    Roots of the fixed-point polynomial near the closed disk are polished by
    Newton iteration on B(z) - z (multiple roots smear under plain root
    finding), then split at |z| < 1 - 1e-6 into interior and boundary fixed
    points.  An interior fixed point is the attractor (elliptic).  Otherwise
    the boundary fixed point with the smallest derivative is the attractor;
    its multiplier is real and decides parabolic versus hyperbolic.  When the
    split is ambiguous the orbit iteration from the origin is used instead.
    """
    if B.degree < 2:
        raise ValueError("classification requires degree >= 2")
    band = tolerances.PARABOLIC_MULTIPLIER_BAND if tol_parabolic is None else tol_parabolic

    p = fixed_point_polynomial(B)
    try:
        fixed = roots(p)
    except RootFindingError:
        return _orbit_fallback(B, band)

    # A multiple fixed point (parabolic tangency) smears its computed roots
    # over a radius far above machine precision.  Group nearby roots first:
    # the centroid of a smeared group cancels the leading perturbation, while
    # isolated roots are polished by Newton iteration on B(z) - z.
    near = [z for z in fixed if abs(z) <= 1.0 + 1e-4]
    refined: list[complex] = []
    for group in _cluster_groups(near, 1e-4):
        if len(group) == 1:
            zr = _refine_fixed_point(B, group[0])
        else:
            centroid = sum(group) / len(group)
            spread = max(abs(g - centroid) for g in group)
            zr = _refine_multiple_root(p, centroid, len(group), spread)
        if all(abs(zr - other) > 1e-8 for other in refined):
            refined.append(zr)

    interior = [z for z in refined if abs(z) < 1.0 - 1e-6]
    boundary = [z for z in refined if abs(abs(z) - 1.0) <= 1e-6]

    if len(interior) == 1:
        w0 = interior[0]
        lam = abs(B.derivative(w0))
        if lam < 1.0:
            return ClassificationResult(
                verdict=Verdict.ELLIPTIC, dw_point=w0, multiplier=lam, route="oracle"
            )
        return _orbit_fallback(B, band)
    if len(interior) > 1:
        return _orbit_fallback(B, band)

    candidates = []
    for z in boundary:
        zeta = z / abs(z)
        lam = B.derivative(zeta)
        # boundary fixed-point multipliers are real; check relative to their
        # size (repelling partners can be numerically enormous)
        if abs(lam.imag) > 1e-6 * max(1.0, abs(lam)):
            return _orbit_fallback(B, band)
        candidates.append((zeta, lam.real))
    if not candidates:
        return _orbit_fallback(B, band)
    zeta, lam = min(candidates, key=lambda c: c[1])
    if lam > 1.0 + 1e-8:
        return _orbit_fallback(B, band)
    verdict = Verdict.PARABOLIC if abs(lam - 1.0) <= band else Verdict.HYPERBOLIC
    return ClassificationResult(
        verdict=verdict, dw_point=zeta, multiplier=lam, route="oracle"
    )


# -- reconciliation -------------------------------------------------------------


def _as_product(target) -> FiniteBlaschkeProduct:
    kind, params, B = _coerce_target(target)
    if kind == "cubic":
        return from_cubic_parameters(params)
    if kind == "quadratic":
        return from_quadratic_parameter(params)
    return B


def _p_claim(p_value: float, band: float) -> Verdict:
    if abs(p_value) <= band:
        return Verdict.PARABOLIC
    return Verdict.HYPERBOLIC if p_value > 0 else Verdict.ELLIPTIC


def classify(target, tol_parabolic: float | None = None) -> ClassificationResult:
    """Run both classification routes and reconcile them.

    Agreement gives route "both".  On disagreement the oracle verdict wins;
    a hard elliptic-versus-hyperbolic conflict is recorded in the
    discrepancy, as is every case where the sign of the cubic closed-form
    discriminant suggests a different verdict than the one returned (the
    closed form alone overstates hyperbolicity wherever an earlier delta is
    negative).
    """
    formula = classify_formula(target, tol_parabolic=tol_parabolic)
    oracle = denjoy_wolff(_as_product(target))

    notes = []
    if formula.discrepancy:
        notes.append(formula.discrepancy)

    if oracle.verdict is Verdict.INDETERMINATE:
        verdict = formula.verdict
        route = "formula"
        if oracle.discrepancy:
            notes.append(oracle.discrepancy)
    elif formula.verdict is Verdict.INDETERMINATE:
        verdict = oracle.verdict
        route = "oracle"
    elif formula.verdict is oracle.verdict:
        verdict = oracle.verdict
        route = "both"
    else:
        verdict = oracle.verdict
        route = "oracle"
        involved = {formula.verdict, oracle.verdict}
        if Verdict.PARABOLIC not in involved:
            notes.append(
                f"formula verdict {formula.verdict.value} vs oracle verdict "
                f"{oracle.verdict.value}; deltas={list(formula.deltas)}"
                + (f", P={formula.p_value:.6g}" if formula.p_value is not None else "")
            )

    if formula.p_value is not None and verdict is not Verdict.INDETERMINATE:
        band = tolerances.PARABOLIC_DELTA_BAND if tol_parabolic is None else tol_parabolic
        scale = 1.0 + abs(formula.p_value)
        claim = _p_claim(formula.p_value, band * scale)
        if claim is not verdict:
            delta_note = (
                f" (delta1={formula.deltas[0]:.6g})" if formula.deltas else ""
            )
            notes.append(
                f"discriminant P={formula.p_value:.6g} suggests {claim.value} "
                f"but verdict is {verdict.value}{delta_note}"
            )

    return ClassificationResult(
        verdict=verdict,
        deltas=formula.deltas,
        p_value=formula.p_value,
        dw_point=oracle.dw_point,
        multiplier=oracle.multiplier,
        route=route,
        discrepancy="; ".join(notes) if notes else None,
        degenerate=formula.degenerate,
    )
