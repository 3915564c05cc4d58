"""Flat geometry of a maximal cusp cross-section.

A cusp cross-section torus is the quotient of C by a rank-2 lattice of
translations.  This module reduces such a lattice to a canonical basis,
and computes the quantities the trace bounds consume: the waist size
(shortest translation length), the torus area, and the flat-torus diameter
(covering radius of the lattice).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .mobius import _as_finite_complex

TAU_NUM = 1e-9

# Relative area threshold below which a lattice is considered degenerate.
_TAU_AREA = 1e-12

_MAX_REDUCTION_STEPS = 10000    # in practice two or three suffice

# Validation slack for ReducedBasis invariants (relative).
_SLACK = 1e-9

# Window (relative to ell) in which Re(z) counts as a strip-boundary tie.
_TIE_TOL = 1e-12


def max_waist_for_cusp_volume(vc: float) -> float:
    """Largest waist size a maximal cusp of volume vc can have: sqrt(4*vc/sqrt(3)).

    Inverts the area bound 2*vc >= (sqrt(3)/2) * ell^2 for the reduced torus.
    """
    vc = float(vc)
    if not (vc > 0 and math.isfinite(vc)):
        raise ValueError(f"cusp volume must be positive, got {vc}")
    return math.sqrt(4 * vc / math.sqrt(3))


@dataclass(frozen=True)
class ReducedBasis:
    """Canonical lattice basis: shortest vector rotated onto the positive
    real axis (length ell), second generator z in the strip
    |Re(z)| <= ell/2 with |z| >= ell and Im(z) > 0."""

    ell: float
    z: complex
    area: float

    def __post_init__(self):
        object.__setattr__(self, "ell", float(self.ell))
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "area", float(self.area))
        ell, z, area = self.ell, self.z, self.area
        if not (ell > 0 and math.isfinite(ell)):
            raise ValueError(f"ell must be positive, got {ell}")
        slack = _SLACK * ell
        if abs(z) < ell - slack:
            raise ValueError(f"second generator shorter than ell: |{z}| < {ell}")
        if abs(z.real) > ell / 2 + slack:
            raise ValueError(f"Re(z) = {z.real} outside [-ell/2, ell/2]")
        if z.imag < (math.sqrt(3) / 2) * ell - slack:
            raise ValueError(f"Im(z) = {z.imag} below (sqrt(3)/2)*ell")
        if abs(area - ell * z.imag) > _SLACK * area:
            raise ValueError("area inconsistent with ell * Im(z)")

    def as_lattice(self) -> "CuspLattice":
        return CuspLattice(complex(self.ell, 0.0), self.z)


@dataclass(frozen=True)
class CuspLattice:
    """Rank-2 translation lattice of C spanned by t1 and t2."""

    t1: complex
    t2: complex

    def __post_init__(self):
        object.__setattr__(self, "t1", _as_finite_complex(self.t1, "t1"))
        object.__setattr__(self, "t2", _as_finite_complex(self.t2, "t2"))
        scale = max(abs(self.t1), abs(self.t2))
        if self.area <= _TAU_AREA * scale * scale:
            raise ValueError("degenerate lattice: generators are (nearly) dependent")

    @property
    def area(self) -> float:
        return abs((self.t1.conjugate() * self.t2).imag)

    @property
    def cusp_volume(self) -> float:
        """Volume of the cusp whose boundary torus this lattice tiles (area/2)."""
        return self.area / 2

    def reduce(self) -> ReducedBasis:
        """Gauss-Lagrange reduction to the canonical basis.

        Ties on the strip boundary |Re(z)| = ell/2 are resolved toward
        positive real part, and z is negated if needed so Im(z) > 0.
        """
        u, v = self.t1, self.t2
        if abs(u) > abs(v):
            u, v = v, u
        for _ in range(_MAX_REDUCTION_STEPS):
            m = round((u.conjugate() * v).real / (abs(u) ** 2))
            v = v - m * u
            if abs(v) < abs(u):
                u, v = v, u
            else:
                break
        else:
            raise RuntimeError("lattice reduction failed to terminate")

        ell = abs(u)
        z = v * (ell / u)
        z -= round(z.real / ell) * ell
        if z.imag < 0:
            z = -z
        if z.real <= -ell / 2 + _TIE_TOL * ell:
            z += ell
        return ReducedBasis(ell=ell, z=z, area=ell * z.imag)

    def waist_size(self) -> float:
        """Length of a shortest nonzero lattice translation."""
        return self.reduce().ell

    def torus_diameter(self) -> float:
        """Covering radius of the lattice (diameter of the quotient torus).

        Equals the circumradius of the Voronoi cell.  With an obtuse
        superbasis (u, v, -u-v) both Delaunay triangles have side lengths
        |u|, |v|, |u+v| and are non-obtuse, so the covering radius is their
        common circumradius |u|*|v|*|u+v| / (2 * lattice area).
        """
        rb = self.reduce()
        u = complex(rb.ell, 0.0)
        v = rb.z if rb.z.real <= 0.0 else -rb.z
        w = u + v
        return abs(u) * abs(v) * abs(w) / (2.0 * rb.area)
