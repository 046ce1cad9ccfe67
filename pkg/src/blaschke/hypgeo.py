"""Hyperbolic geometry of the unit disk.

Points of the open disk, unimodular constants, disk automorphisms, the
pseudo-hyperbolic and hyperbolic distances, and the closed-form hyperbolic
midpoint.  All types are immutable values and all operations are pure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import tolerances

__all__ = [
    "DiskPoint",
    "UnitModulus",
    "DiskAutomorphism",
    "pseudo_hyperbolic",
    "mobius_quotient",
    "hyperbolic_distance",
    "hyperbolic_midpoint",
]


def _value(z) -> complex:
    """Unwrap a DiskPoint/UnitModulus to a plain complex number."""
    if isinstance(z, (DiskPoint, UnitModulus)):
        return z.value
    return complex(z)


@dataclass(frozen=True)
class DiskPoint:
    """A complex number strictly inside the unit disk."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if abs(v) >= 1.0:
            raise ValueError(f"point {v} is not in the open unit disk")
        object.__setattr__(self, "value", v)

    def __complex__(self) -> complex:
        return self.value


@dataclass(frozen=True)
class UnitModulus:
    """A complex number of modulus one.

    Construction accepts values within ``tolerances.UNIT_MODULUS_TOL`` of the
    unit circle and renormalizes them to modulus one.
    """

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        m = abs(v)
        if abs(m - 1.0) > tolerances.UNIT_MODULUS_TOL:
            raise ValueError(f"{v} is not unimodular (|value| = {m})")
        object.__setattr__(self, "value", v / m)

    def __complex__(self) -> complex:
        return self.value


def mobius_quotient(z, w) -> complex:
    """Signed pseudo-hyperbolic quotient (z - w) / (1 - conj(w) z)."""
    zv, wv = _value(z), _value(w)
    return (zv - wv) / (1.0 - wv.conjugate() * zv)


def pseudo_hyperbolic(z, w) -> float:
    """Pseudo-hyperbolic distance, the modulus of the Mobius quotient."""
    return abs(mobius_quotient(z, w))


def hyperbolic_distance(z, w) -> float:
    """Poincare distance log((1 + d) / (1 - d)) with d pseudo-hyperbolic."""
    d = pseudo_hyperbolic(z, w)
    return math.log((1.0 + d) / (1.0 - d))


def hyperbolic_midpoint(z, w) -> DiskPoint:
    """Point on the geodesic through z and w equidistant from both.

    Degenerate cases: coincident inputs return z, and antipodal inputs
    (z = -w, where the closed form is 0/0) return the origin.  Both are the
    analytic limits of the generic formula.
    """
    zv, wv = _value(z), _value(w)
    if pseudo_hyperbolic(zv, wv) < 1e-14:
        return DiskPoint(zv)
    if zv == -wv:
        return DiskPoint(0j)
    prod = zv * wv
    radicand = (
        (1.0 - abs(zv) ** 2)
        * (1.0 - abs(wv) ** 2)
        * abs(1.0 - wv.conjugate() * zv) ** 2
    )
    numer = abs(prod) ** 2 - 1.0 + math.sqrt(max(radicand, 0.0))
    denom = prod.conjugate() * (zv + wv) - (zv.conjugate() + wv.conjugate())
    if abs(denom) < 1e-14:
        return DiskPoint(0j)
    return DiskPoint(numer / denom)


@dataclass(frozen=True)
class DiskAutomorphism:
    """Disk automorphism A(z) = rotation * (z - center) / (1 - conj(center) z)."""

    rotation: UnitModulus
    center: DiskPoint

    def __post_init__(self):
        if not isinstance(self.rotation, UnitModulus):
            object.__setattr__(self, "rotation", UnitModulus(self.rotation))
        if not isinstance(self.center, DiskPoint):
            object.__setattr__(self, "center", DiskPoint(self.center))

    @classmethod
    def identity(cls) -> "DiskAutomorphism":
        return cls(UnitModulus(1.0), DiskPoint(0j))

    @classmethod
    def centering(cls, point) -> "DiskAutomorphism":
        """The automorphism z -> (z - point) / (1 - conj(point) z)."""
        return cls(UnitModulus(1.0), DiskPoint(_value(point)))

    @classmethod
    def rotation_by(cls, angle: float) -> "DiskAutomorphism":
        return cls(UnitModulus(cmath.exp(1j * angle)), DiskPoint(0j))

    def apply(self, z) -> DiskPoint:
        return DiskPoint(self.apply_complex(_value(z)))

    def apply_complex(self, z: complex) -> complex:
        """Evaluate at any point where the formula is defined (incl. boundary)."""
        eta = self.rotation.value
        c = self.center.value
        return eta * (z - c) / (1.0 - c.conjugate() * z)

    def __call__(self, z) -> complex:
        return self.apply_complex(_value(z))

    def matrix(self) -> tuple[complex, complex, complex, complex]:
        """Mobius matrix (a, b, c, d) with A(z) = (a z + b) / (c z + d)."""
        eta = self.rotation.value
        c = self.center.value
        return (eta, -eta * c, -c.conjugate(), 1.0 + 0j)

    def inverse(self) -> "DiskAutomorphism":
        eta = self.rotation.value
        c = self.center.value
        return DiskAutomorphism(UnitModulus(eta.conjugate()), DiskPoint(-eta * c))

    def compose(self, other: "DiskAutomorphism") -> "DiskAutomorphism":
        """Return self o other as a DiskAutomorphism."""
        a1, b1, c1, d1 = self.matrix()
        a2, b2, c2, d2 = other.matrix()
        a = a1 * a2 + b1 * c2
        b = a1 * b2 + b1 * d2
        c = c1 * a2 + d1 * c2
        d = c1 * b2 + d1 * d2
        # The product matrix is proportional to [[eta, -eta w], [-conj(w), 1]];
        # normalize by the bottom-right entry.
        eta = a / d
        center = -b / a if a != 0 else 0j
        return DiskAutomorphism(UnitModulus(eta), DiskPoint(center))
