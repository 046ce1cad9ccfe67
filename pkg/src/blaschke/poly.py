"""Complex polynomial algebra, reciprocal/self-inversive structure, the Schur
transform with its delta sequence, and a simultaneous-iteration root finder.

Coefficients are stored in ascending order: ``coeffs[k]`` multiplies ``z**k``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from . import tolerances
from .hypgeo import UnitModulus

__all__ = [
    "ComplexPolynomial",
    "SchurReport",
    "RootFindingError",
    "reciprocal",
    "self_inversive_factor",
    "schur_transform",
    "schur_cohn",
    "roots",
]

# Golden angle in radians; used for deterministic starting points.
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
_START_PHASE = 0.5


class ComplexPolynomial:
    """Immutable complex polynomial with trimmed leading coefficients.

    Near-zero leading coefficients (relative to the largest coefficient
    magnitude) are dropped so the stored degree reflects the true degree.
    The zero polynomial is represented as ``(0j,)``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [complex(c) for c in coeffs]
        if not cs:
            cs = [0j]
        m = max(abs(c) for c in cs)
        if m == 0.0:
            cs = [0j]
        else:
            while len(cs) > 1 and abs(cs[-1]) <= tolerances.COEFF_TRIM * m:
                cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexPolynomial is immutable")

    @classmethod
    def from_roots(cls, root_list) -> "ComplexPolynomial":
        """Monic polynomial with the given roots."""
        cs = [1.0 + 0j]
        for r in root_list:
            rv = complex(r)
            nxt = [0j] * (len(cs) + 1)
            for i, c in enumerate(cs):
                nxt[i] += -rv * c
                nxt[i + 1] += c
            cs = nxt
        return cls(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def leading(self) -> complex:
        return self.coeffs[-1]

    @property
    def constant(self) -> complex:
        return self.coeffs[0]

    def max_abs(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "ComplexPolynomial":
        if self.degree == 0:
            return ComplexPolynomial([0j])
        return ComplexPolynomial(
            [k * c for k, c in enumerate(self.coeffs)][1:]
        )

    def __add__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return ComplexPolynomial(
            [
                (a[i] if i < len(a) else 0j) + (b[i] if i < len(b) else 0j)
                for i in range(n)
            ]
        )

    def __sub__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        return self + other.scale(-1.0)

    def __mul__(self, other: "ComplexPolynomial") -> "ComplexPolynomial":
        a, b = self.coeffs, other.coeffs
        out = [0j] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return ComplexPolynomial(out)

    def scale(self, factor: complex) -> "ComplexPolynomial":
        return ComplexPolynomial([factor * c for c in self.coeffs])

    def shift_up(self, k: int = 1) -> "ComplexPolynomial":
        """Multiply by z**k."""
        return ComplexPolynomial([0j] * k + list(self.coeffs))

    def __repr__(self):
        return f"ComplexPolynomial({list(self.coeffs)!r})"


def reciprocal(p: ComplexPolynomial, degree: int | None = None) -> ComplexPolynomial:
    """Reciprocal polynomial: coefficients conjugated and reversed.

    ``degree`` overrides the formal degree of ``p``; missing high-order
    coefficients count as zeros, so the reversal picks up a corresponding
    power of z.  Roots map to their reflections 1/conj(w) across the unit
    circle, with roots "at infinity" of the padded polynomial landing at 0.
    """
    d = p.degree if degree is None else degree
    if d < p.degree:
        raise ValueError("formal degree below actual degree")
    padded = list(p.coeffs) + [0j] * (d - p.degree)
    return ComplexPolynomial([c.conjugate() for c in reversed(padded)])


def self_inversive_factor(p: ComplexPolynomial) -> UnitModulus | None:
    """Unimodular mu with p* = mu p, or None when no such factor exists.

    The match is required coefficient-wise to 1e-10 relative accuracy.
    """
    if p.is_zero:
        return None
    star = reciprocal(p)
    if star.degree != p.degree:
        return None
    num = sum(s * c.conjugate() for s, c in zip(star.coeffs, p.coeffs))
    den = sum(abs(c) ** 2 for c in p.coeffs)
    mu = num / den
    scale = p.max_abs()
    err = max(abs(s - mu * c) for s, c in zip(star.coeffs, p.coeffs))
    if err > 1e-10 * scale or abs(abs(mu) - 1.0) > 1e-10:
        return None
    return UnitModulus(mu)


def schur_transform(p: ComplexPolynomial) -> ComplexPolynomial:
    """One step of the Schur transform.

    Tp(z) = conj(p(0)) p(z) - conj(p*(0)) p*(z); coefficient k equals
    conj(a_0) a_k - a_d conj(a_{d-k}) for k = 0 .. d-1.
    """
    d = p.degree
    if d < 1:
        raise ValueError("Schur transform requires degree >= 1")
    a = p.coeffs
    a0c = a[0].conjugate()
    ad = a[d]
    return ComplexPolynomial([a0c * a[k] - ad * a[d - k].conjugate() for k in range(d)])


@dataclass(frozen=True)
class SchurReport:
    """Delta sequence of iterated Schur transforms.

    ``deltas[k-1]`` is the constant term of the k-th transform.  When a
    transform collapses (vanishes identically, or its degree drops by more
    than one so later transforms are undefined) the ``degenerate`` flag is
    set; in the collapsed-to-constant case the delta list is shorter than
    the input degree.  ``scales`` holds |a_0|^2 + |a_d|^2 of the polynomial
    each delta was computed from, a natural magnitude for sign bands.
    """

    deltas: tuple[float, ...]
    degenerate: bool
    scales: tuple[float, ...] = field(default=())
    reason: str | None = None


def schur_cohn(p: ComplexPolynomial) -> SchurReport:
    """Iterated Schur transforms: all roots of p lie outside the closed unit
    disk if and only if every delta is strictly positive.

    Self-inversive inputs make the first transform vanish identically; the
    report is then flagged degenerate with the remaining deltas set to zero.
    """
    d = p.degree
    if d < 1 or p.is_zero:
        raise ValueError("Schur-Cohn requires a nonzero polynomial of degree >= 1")
    deltas: list[float] = []
    scales: list[float] = []
    degenerate = False
    reason = None
    current = p
    for k in range(1, d + 1):
        if current.is_zero:
            # A vanished transform: remaining deltas are identically zero.
            deltas.append(0.0)
            scales.append(0.0)
            if not degenerate:
                degenerate = True
                reason = f"transform {k - 1} vanished identically"
            continue
        if current.degree == 0:
            degenerate = True
            reason = f"transform {k - 1} collapsed to a constant"
            break
        a = current.coeffs
        scales.append(abs(a[0]) ** 2 + abs(a[-1]) ** 2)
        nxt = schur_transform(current)
        # conj(a0) a0 - ad conj(ad) has exactly zero imaginary part.
        deltas.append(nxt.constant.real)
        if not nxt.is_zero and nxt.degree < current.degree - 1 and k < d:
            degenerate = True
            reason = f"transform {k} degree collapsed"
        current = nxt
    return SchurReport(tuple(deltas), degenerate, tuple(scales), reason)


class RootFindingError(RuntimeError):
    """Raised when the simultaneous iteration fails to converge.

    Carries the best iterate and its normalized residual.
    """

    def __init__(self, message, best, residual):
        super().__init__(message)
        self.best = best
        self.residual = residual


def _cluster(points: list[complex], threshold: float) -> list[complex]:
    """Group points within ``threshold`` of each other; each cluster is
    replaced by its centroid, repeated with the cluster's multiplicity."""
    remaining = list(points)
    out: list[complex] = []
    while remaining:
        seed = remaining.pop(0)
        cluster = [seed]
        changed = True
        while changed:
            changed = False
            for q in remaining[:]:
                if any(abs(q - c) <= threshold for c in cluster):
                    cluster.append(q)
                    remaining.remove(q)
                    changed = True
        centroid = sum(cluster) / len(cluster)
        out.extend([centroid] * len(cluster))
    return out


def roots(p: ComplexPolynomial, max_iter: int = 500) -> list[complex]:
    """All roots of p, with multiplicity, via Aberth-Ehrlich iteration.

    Starting points sit on a circle of radius 1 + |a_0/a_d|^(1/d) with
    golden-angle spacing and a fixed phase, so results are deterministic.
    Roots closer than ``tolerances.ROOT_CLUSTER`` are merged into a multiple
    root at their centroid.  Raises RootFindingError when the normalized
    residual stays above 1e-10 after ``max_iter`` sweeps.
    """
    if p.is_zero:
        raise ValueError("root finding requires a nonzero polynomial")
    if p.degree < 1:
        raise ValueError("root finding requires degree >= 1")

    # Exact zero low-order coefficients give roots at the origin.
    coeffs = list(p.coeffs)
    zero_count = 0
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
        zero_count += 1
    origin_roots = [0j] * zero_count
    if len(coeffs) == 1:
        return origin_roots

    q = ComplexPolynomial(coeffs)
    n = q.degree
    dq = q.derivative()

    radius = 1.0 + abs(q.constant / q.leading) ** (1.0 / n)
    zs = [
        radius * cmath.exp(1j * (_START_PHASE + k * _GOLDEN_ANGLE))
        for k in range(n)
    ]

    def normalized_residual(pts):
        m = q.max_abs()
        return max(abs(q(z)) / (m * max(1.0, abs(z)) ** n) for z in pts)

    converged = False
    for _ in range(max_iter):
        max_step = 0.0
        for i in range(n):
            zi = zs[i]
            pv = q(zi)
            if pv == 0:
                continue
            dv = dq(zi)
            if dv == 0:
                zs[i] = zi * (1.0 + 1e-8) + 1e-12
                max_step = math.inf
                continue
            newton = pv / dv
            s = 0j
            for j in range(n):
                if j != i:
                    diff = zi - zs[j]
                    if diff == 0:
                        diff = 1e-14
                    s += 1.0 / diff
            denom = 1.0 - newton * s
            step = newton if denom == 0 else newton / denom
            zs[i] = zi - step
            max_step = max(max_step, abs(step) / (1.0 + abs(zs[i])))
        if max_step < 1e-15:
            converged = True
            break

    # Newton polish for well-separated roots.  Members of a close cluster are
    # left alone: polishing them individually distorts the symmetric error
    # pattern around a multiple root that downstream centroiding relies on.
    for i in range(n):
        if n > 1 and min(abs(zs[i] - zs[j]) for j in range(n) if j != i) < 1e-5:
            continue
        z = zs[i]
        for _ in range(3):
            dv = dq(z)
            if dv == 0:
                break
            z = z - q(z) / dv
        if abs(q(z)) <= abs(q(zs[i])):
            zs[i] = z

    residual = normalized_residual(zs)
    if residual >= 1e-10 and not converged:
        raise RootFindingError(
            f"root finder did not converge (residual {residual:.3e})",
            best=sorted(zs, key=lambda z: (z.real, z.imag)),
            residual=residual,
        )
    if residual >= 1e-10:
        raise RootFindingError(
            f"converged iterate has residual {residual:.3e} above tolerance",
            best=sorted(zs, key=lambda z: (z.real, z.imag)),
            residual=residual,
        )

    merged = _cluster(zs, tolerances.ROOT_CLUSTER)
    merged.extend(origin_roots)
    merged.sort(key=lambda z: (z.real, z.imag))
    return merged
