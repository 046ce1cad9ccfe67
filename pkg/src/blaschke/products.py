"""Finite Blaschke products.

A degree-d Blaschke product is held in dual form: its zeros together with a
unimodular factor, and the rational form numerator/denominator where the
denominator is the reciprocal polynomial of the (monic) numerator.  The two
representations are kept consistent by construction.

Beyond evaluation and derivatives this module provides critical points,
composition with disk automorphisms, conjugation, and reduction of quadratic
and cubic products to their one- and two-parameter normal forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import tolerances
from .hypgeo import DiskAutomorphism, DiskPoint, UnitModulus, hyperbolic_midpoint
from .poly import ComplexPolynomial, reciprocal, roots

__all__ = [
    "FiniteBlaschkeProduct",
    "CubicParameters",
    "QuadraticParameter",
    "NormalFormError",
    "from_cubic_parameters",
    "from_quadratic_parameter",
    "unicritical_product",
]


class NormalFormError(RuntimeError):
    """Normal-form reduction failed its residual check.

    The best candidate found is attached for diagnosis.
    """

    def __init__(self, message, candidate=None, residual=None):
        super().__init__(message)
        self.candidate = candidate
        self.residual = residual


@dataclass(frozen=True)
class CubicParameters:
    """Parameter pair (r, s) of the cubic normal form.

    The induced map is (z^3 - s r z^2 - conj(s) z + r) over its reciprocal;
    (r, s) and (-r, s) induce conjugate maps.
    """

    r: complex
    s: complex

    def __post_init__(self):
        r, s = complex(self.r), complex(self.s)
        if abs(r) >= 1.0 or abs(s) >= 1.0:
            raise ValueError("cubic parameters must lie in the open unit disk")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    def canonical(self) -> "CubicParameters":
        """Representative of {(r, s), (-r, s)} with arg(r) in [0, pi)."""
        return CubicParameters(_canonical_r(self.r), self.s)


@dataclass(frozen=True)
class QuadraticParameter:
    """Parameter u of the quadratic normal form (z^2 - u)/(1 - conj(u) z^2)."""

    u: complex

    def __post_init__(self):
        u = complex(self.u)
        if abs(u) >= 1.0:
            raise ValueError("quadratic parameter must lie in the open unit disk")
        object.__setattr__(self, "u", u)


def _is_canonical_r(r: complex) -> bool:
    """True when arg(r) lies in [0, pi), with a real-axis tie-break."""
    if r == 0:
        return True
    if abs(r.imag) <= 1e-12 * abs(r):
        return r.real >= 0
    return r.imag > 0


def _canonical_r(r: complex) -> complex:
    return r if _is_canonical_r(r) else -r


def _as_complex(z) -> complex:
    if isinstance(z, (DiskPoint, UnitModulus)):
        return z.value
    return complex(z)


class FiniteBlaschkeProduct:
    """Disk self-map mu * prod_i (z - w_i) / (1 - conj(w_i) z)."""

    __slots__ = ("zeros", "mu", "numerator", "denominator")

    def __init__(self, zeros, mu=1.0, _numerator: ComplexPolynomial | None = None):
        ws = [_as_complex(w) for w in zeros]
        if not ws:
            raise ValueError("a Blaschke product needs at least one zero")
        for w in ws:
            if abs(w) >= 1.0:
                raise ValueError(f"zero {w} is not inside the unit disk")
        m = _as_complex(mu)
        if abs(abs(m) - 1.0) > tolerances.UNIT_MODULUS_TOL:
            raise ValueError(f"factor {m} is not unimodular")
        object.__setattr__(self, "zeros", tuple(ws))
        object.__setattr__(self, "mu", m / abs(m))
        # When exact coefficients are known (parameter families, conjugation)
        # keep them rather than reassembling from root-found zeros.
        num = _numerator if _numerator is not None else ComplexPolynomial.from_roots(ws)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", reciprocal(num))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteBlaschkeProduct is immutable")

    @classmethod
    def from_monic_numerator(cls, num: ComplexPolynomial, mu=1.0) -> "FiniteBlaschkeProduct":
        """Build from a monic numerator whose roots all lie in the disk."""
        if abs(num.leading - 1.0) > 1e-9:
            raise ValueError("numerator must be monic")
        return cls(roots(num), mu, _numerator=num)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, z) -> complex:
        """Value at z, |z| <= 1 (small boundary overshoot tolerated)."""
        zv = _as_complex(z)
        if abs(zv) > 1.0 + 1e-9:
            raise ValueError(f"|z| = {abs(zv)} exceeds the closed unit disk")
        acc = self.mu
        for w in self.zeros:
            acc *= (zv - w) / (1.0 - w.conjugate() * zv)
        return acc

    def __call__(self, z) -> complex:
        return self.evaluate(z)

    def rational_value(self, z) -> complex:
        """Value via the numerator/denominator representation."""
        zv = _as_complex(z)
        return self.mu * self.numerator(zv) / self.denominator(zv)

    def derivative(self, z) -> complex:
        zv = _as_complex(z)
        n, d = self.numerator, self.denominator
        nv, dv = n(zv), d(zv)
        n1, d1 = n.derivative()(zv), d.derivative()(zv)
        return self.mu * (n1 * dv - nv * d1) / (dv * dv)

    def second_derivative(self, z) -> complex:
        zv = _as_complex(z)
        n, d = self.numerator, self.denominator
        n1p, d1p = n.derivative(), d.derivative()
        nv, dv = n(zv), d(zv)
        n1, d1 = n1p(zv), d1p(zv)
        n2, d2 = n1p.derivative()(zv), d1p.derivative()(zv)
        w = n1 * dv - nv * d1
        w1 = n2 * dv - nv * d2
        return self.mu * (w1 * dv - 2.0 * w * d1) / (dv * dv * dv)

    def boundary_derivative_modulus(self, zeta) -> float:
        """|B'| on the unit circle: sum of (1 - |w|^2)/|zeta - w|^2."""
        zv = _as_complex(zeta)
        if abs(abs(zv) - 1.0) > tolerances.BOUNDARY_TOL:
            raise ValueError("point is not on the unit circle")
        return sum((1.0 - abs(w) ** 2) / abs(zv - w) ** 2 for w in self.zeros)

    # -- critical points ----------------------------------------------------

    def derivative_numerator(self) -> ComplexPolynomial:
        """Polynomial whose disk roots are the critical points of B."""
        n, d = self.numerator, self.denominator
        return n.derivative() * d - n * d.derivative()

    def critical_points(self) -> list[complex]:
        """The d - 1 critical points in the disk, with multiplicity."""
        if self.degree < 2:
            raise ValueError("critical points require degree >= 2")
        w = self.derivative_numerator()
        inside = [z for z in roots(w) if abs(z) < 1.0]
        if len(inside) != self.degree - 1:
            raise ArithmeticError(
                f"expected {self.degree - 1} interior critical points, "
                f"found {len(inside)}"
            )
        return inside

    # -- composition with automorphisms -------------------------------------

    def compose_with_automorphisms(
        self,
        post: DiskAutomorphism | None = None,
        pre: DiskAutomorphism | None = None,
    ) -> "FiniteBlaschkeProduct":
        """Return post o B o pre as a Blaschke product of the same degree.

        The composition is carried out on coefficients: the rational form is
        substituted with the degree-1 rational maps and denominators are
        cleared.  The result is renormalized so its denominator is again the
        reciprocal of its monic numerator, any leftover unimodular constant
        being folded into mu.
        """
        d = self.degree
        ncoef = list(self.numerator.coeffs) + [0j] * (d + 1 - len(self.numerator.coeffs))
        dcoef = list(self.denominator.coeffs) + [0j] * (d + 1 - len(self.denominator.coeffs))
        if pre is not None:
            a, b, c, e = pre.matrix()
            ncoef = _substitute_mobius(ncoef, a, b, c, e)
            dcoef = _substitute_mobius(dcoef, a, b, c, e)
        ncoef = [self.mu * c for c in ncoef]
        if post is not None:
            eta = post.rotation.value
            cc = post.center.value
            new_n = [eta * (nk - cc * dk) for nk, dk in zip(ncoef, dcoef)]
            new_d = [dk - cc.conjugate() * nk for nk, dk in zip(ncoef, dcoef)]
            ncoef, dcoef = new_n, new_d
        lam = ncoef[-1]
        if lam == 0:
            raise ArithmeticError("composition degenerated: leading coefficient vanished")
        monic = ComplexPolynomial([c / lam for c in ncoef])
        rec = reciprocal(monic, degree=d)
        rc = list(rec.coeffs) + [0j] * (d + 1 - len(rec.coeffs))
        k = max(range(d + 1), key=lambda i: abs(rc[i]))
        kappa = dcoef[k] / rc[k]
        mismatch = max(abs(dc - kappa * r) for dc, r in zip(dcoef, rc))
        scale = max(abs(c) for c in dcoef)
        if mismatch > 1e-6 * max(scale, 1e-30):
            raise ArithmeticError(
                f"composition result is not a Blaschke product (mismatch {mismatch:.3e})"
            )
        mu_new = lam / kappa
        return FiniteBlaschkeProduct(roots(monic), mu_new / abs(mu_new), _numerator=monic)

    def conjugate(self, auto: DiskAutomorphism) -> "FiniteBlaschkeProduct":
        """Return A^-1 o B o A; critical points map by A^-1."""
        return self.compose_with_automorphisms(post=auto.inverse(), pre=auto)

    # -- normal forms --------------------------------------------------------

    def normal_form_quadratic(self):
        """Reduce a degree-2 product to (z^2 - u)/(1 - conj(u) z^2).

        Returns (QuadraticParameter, A, residual) where conjugating by A
        produces the normal form up to the stated residual.  The conjugating
        automorphism sends the critical point (the hyperbolic midpoint of the
        zeros) to the origin.
        """
        if self.degree != 2:
            raise ValueError("quadratic normal form requires degree 2")
        crit = self.critical_points()[0]
        a1 = DiskAutomorphism.centering(crit).inverse()
        b1 = self.conjugate(a1)
        theta = -cmath.phase(b1.mu)
        a2 = DiskAutomorphism.rotation_by(theta)
        a_total = a1.compose(a2)
        b2 = self.conjugate(a_total)
        coeffs = list(b2.numerator.coeffs) + [0j] * (3 - len(b2.numerator.coeffs))
        u = -coeffs[0]
        ideal = [-u, 0j, 1.0 + 0j]
        residual = max(
            max(abs(c - i) for c, i in zip(coeffs, ideal)),
            abs(b2.mu - 1.0),
        )
        params = QuadraticParameter(u)
        if residual > tolerances.RESIDUAL_TOL:
            raise NormalFormError(
                f"quadratic normal form residual {residual:.3e} above tolerance",
                candidate=(params, a_total),
                residual=residual,
            )
        return params, a_total, residual

    def normal_form_cubic(self):
        """Reduce a degree-3 product to the two-parameter normal form.

        The steps follow the constructive reduction: move the hyperbolic
        midpoint of the two critical points to the origin (the critical
        points then sit at +-eps e^{i alpha}), rotate them onto the real
        axis, and absorb the remaining unimodular factor with a final
        rotation.  The rotation branch has two choices differing by pi which
        flip r to -r; both are formed and the canonical representative
        (arg(r) in [0, pi)) is returned.

        Returns (CubicParameters, A, residual) with conjugate(self, A) equal
        to the normal form coefficient-wise up to the residual.
        """
        if self.degree != 3:
            raise ValueError("cubic normal form requires degree 3")
        c1, c2 = self.critical_points()
        m = hyperbolic_midpoint(c1, c2).value
        a1 = DiskAutomorphism.centering(m).inverse()
        b1 = self.conjugate(a1)
        crits = b1.critical_points()
        anchor = max(crits, key=abs)
        alpha = cmath.phase(anchor) if abs(anchor) > 1e-9 else 0.0
        a2 = DiskAutomorphism.rotation_by(alpha)
        b2 = self.conjugate(a1.compose(a2))
        phi = cmath.phase(b2.mu)

        candidates = []
        for theta in (-phi / 2.0, -phi / 2.0 + math.pi):
            a3 = DiskAutomorphism.rotation_by(theta)
            a_total = a1.compose(a2).compose(a3)
            b3 = self.conjugate(a_total)
            out = list(b3.numerator.coeffs) + [0j] * (4 - len(b3.numerator.coeffs))
            r_out = out[0]
            s_out = -out[1].conjugate()
            ideal = [r_out, -s_out.conjugate(), -s_out * r_out, 1.0 + 0j]
            residual = max(
                max(abs(c - i) for c, i in zip(out, ideal)),
                abs(b3.mu - 1.0),
            )
            candidates.append((r_out, s_out, a_total, residual))
        canonical = [c for c in candidates if _is_canonical_r(c[0])]
        r_out, s_out, a_total, residual = (
            canonical[0] if canonical else min(candidates, key=lambda c: c[-1])
        )
        params = CubicParameters(r_out, s_out)
        if residual > tolerances.RESIDUAL_TOL:
            raise NormalFormError(
                f"cubic normal form residual {residual:.3e} above tolerance",
                candidate=(params, a_total),
                residual=residual,
            )
        return params, a_total, residual

    # -- serialization -------------------------------------------------------

    def to_record(self) -> str:
        """Plain-text record: degree, zeros as re/im pairs, mu as re/im."""
        lines = [f"blaschke {self.degree}"]
        for w in self.zeros:
            lines.append(f"zero {w.real:.17g} {w.imag:.17g}")
        lines.append(f"mu {self.mu.real:.17g} {self.mu.imag:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_record(cls, text: str) -> "FiniteBlaschkeProduct":
        zeros = []
        mu = None
        degree = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "blaschke":
                degree = int(parts[1])
            elif parts[0] == "zero":
                zeros.append(complex(float(parts[1]), float(parts[2])))
            elif parts[0] == "mu":
                mu = complex(float(parts[1]), float(parts[2]))
            else:
                raise ValueError(f"unrecognized record line: {line!r}")
        if mu is None or degree is None:
            raise ValueError("record is missing a 'blaschke' or 'mu' line")
        if len(zeros) != degree:
            raise ValueError(f"record declares degree {degree} but lists {len(zeros)} zeros")
        return cls(zeros, mu)

    def __repr__(self):
        return f"FiniteBlaschkeProduct(zeros={list(self.zeros)!r}, mu={self.mu!r})"


def _substitute_mobius(asc, a, b, c, e):
    """Coefficients of sum_k asc[k] (a z + b)^k (c z + e)^(d - k), d = len - 1."""
    d = len(asc) - 1
    pow1 = [[1.0 + 0j]]
    pow2 = [[1.0 + 0j]]
    for _ in range(d):
        pow1.append(_mul_linear(pow1[-1], b, a))
        pow2.append(_mul_linear(pow2[-1], e, c))
    out = [0j] * (d + 1)
    for k in range(d + 1):
        ck = asc[k]
        if ck == 0:
            continue
        term = _convolve(pow1[k], pow2[d - k])
        for i, t in enumerate(term):
            out[i] += ck * t
    return out


def _mul_linear(coeffs, c0, c1):
    out = [0j] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] += c * c0
        out[i + 1] += c * c1
    return out


def _convolve(a, b):
    out = [0j] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def from_cubic_parameters(params, s=None) -> FiniteBlaschkeProduct:
    """Blaschke product of the cubic normal form for parameters (r, s)."""
    if s is not None:
        params = CubicParameters(params, s)
    elif not isinstance(params, CubicParameters):
        raise TypeError("expected CubicParameters or (r, s)")
    r, sv = params.r, params.s
    num = ComplexPolynomial([r, -sv.conjugate(), -sv * r, 1.0])
    return FiniteBlaschkeProduct.from_monic_numerator(num, 1.0)


def from_quadratic_parameter(params) -> FiniteBlaschkeProduct:
    """Blaschke product (z^2 - u)/(1 - conj(u) z^2)."""
    if not isinstance(params, QuadraticParameter):
        params = QuadraticParameter(params)
    num = ComplexPolynomial([-params.u, 0j, 1.0])
    return FiniteBlaschkeProduct.from_monic_numerator(num, 1.0)


def unicritical_product(w, d: int) -> FiniteBlaschkeProduct:
    """((z - w)/(1 - conj(w) z))^d, the degree-d map with one critical point."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    return FiniteBlaschkeProduct([w] * d, 1.0)
