"""Orientation-preserving isometries of hyperbolic 3-space.

Elements are 2x2 complex matrices of determinant 1 considered up to global
sign.  Classification follows the usual trace conventions: elliptic for real
trace in (-2, 2), parabolic for real trace equal to +/-2, loxodromic
otherwise.  The translation length of a loxodromic element is the real part
of the complex length 2*arccosh(trace/2), taken on the principal branch and
forced nonnegative.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

# Working tolerances on doubles.  Determinant deviation triggers
# renormalization; classification treats traces within TAU_CLASS of the
# real axis (resp. of +/-2) as real (resp. parabolic).
TAU_DET = 1e-12
TAU_CLASS = 1e-9

# Relative threshold below which the denominator of the fractional-linear
# action is treated as an exact pole.
_POLE_TOL = 1e-14


class _Infinity:
    """The point at infinity of the Riemann sphere, as an explicit value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


class NonLoxodromicError(ValueError):
    """Translation length requested for an element that is not loxodromic."""


class ElementClass(Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


def _as_finite_complex(value, name: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"entry {name} must be finite, got {z!r}")
    return z


@dataclass(frozen=True, eq=False)
class IsometricSphere:
    """Euclidean hemisphere on which a matrix acts as a Euclidean isometry."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_finite_complex(self.center, "center"))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be a positive finite real, got {self.radius}")


@dataclass(frozen=True, eq=False)
class MoebiusElement:
    """A matrix (a b; c d), normalized to determinant 1, modulo global sign.

    All predicates and derived quantities are invariant under negating all
    four entries at once.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        entries = [_as_finite_complex(getattr(self, name), name) for name in "abcd"]
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if det == 0:
            raise ValueError("matrix is singular")
        if abs(det - 1) > TAU_DET:
            root = cmath.sqrt(det)
            entries = [z / root for z in entries]
        for name, z in zip("abcd", entries):
            object.__setattr__(self, name, z)

    @classmethod
    def identity(cls) -> "MoebiusElement":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_trace(cls, trace) -> "MoebiusElement":
        """Diagonal representative diag(lam, 1/lam) with lam + 1/lam = trace.

        The eigenvalue is one root of the characteristic quadratic; traces
        +/-2 therefore yield +/-identity, not a parabolic.
        """
        t = _as_finite_complex(trace, "trace")
        lam = (t + cmath.sqrt(t * t - 4)) / 2
        if lam == 0:
            lam = (t - cmath.sqrt(t * t - 4)) / 2
        return cls(lam, 0, 0, 1 / lam)

    def _entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, MoebiusElement):
            return NotImplemented
        mine = self._entries()
        theirs = other._entries()
        return mine == theirs or mine == tuple(-z for z in theirs)

    def isclose(self, other: "MoebiusElement", tol: float = TAU_CLASS) -> bool:
        """Entrywise closeness up to global sign."""
        mine = self._entries()
        theirs = other._entries()
        return max(abs(x - y) for x, y in zip(mine, theirs)) <= tol or max(
            abs(x + y) for x, y in zip(mine, theirs)
        ) <= tol

    def __repr__(self):
        return f"MoebiusElement({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    @property
    def trace(self) -> complex:
        """Trace a + d of the stored sign representative."""
        return self.a + self.d

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "MoebiusElement":
        return MoebiusElement(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "MoebiusElement") -> "MoebiusElement":
        if not isinstance(other, MoebiusElement):
            return NotImplemented
        return MoebiusElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def _is_identity_up_to_sign(self, tol: float) -> bool:
        for sign in (1, -1):
            if (
                abs(self.a - sign) <= tol
                and abs(self.b) <= tol
                and abs(self.c) <= tol
                and abs(self.d - sign) <= tol
            ):
                return True
        return False

    def classify(self, tol: float = TAU_CLASS) -> ElementClass:
        """Conjugacy type from the trace, up to sign.

        Traces within `tol` of the real axis are treated as real, and real
        traces within `tol` of +/-2 as parabolic.  Exact-arithmetic callers
        should classify with exact predicates instead of this.
        """
        if self._is_identity_up_to_sign(tol):
            return ElementClass.IDENTITY
        t = self.trace
        if abs(t.imag) <= tol:
            if abs(abs(t.real) - 2) <= tol:
                return ElementClass.PARABOLIC
            if abs(t.real) < 2:
                return ElementClass.ELLIPTIC
            return ElementClass.LOXODROMIC
        return ElementClass.LOXODROMIC

    def translation_length(self, tol: float = TAU_CLASS) -> float:
        """Distance the element moves points on its axis.

        Computed as |Re(2*arccosh(trace/2))| on the principal branch, which
        equals 2*log|lam| for the eigenvalue with |lam| >= 1.  Raises
        NonLoxodromicError for any other conjugacy type: the quantity is not
        defined for parabolics and would be 0 for elliptics, so callers that
        want 0 must check the class first.
        """
        kind = self.classify(tol)
        if kind is not ElementClass.LOXODROMIC:
            raise NonLoxodromicError(f"element is {kind.value}, not loxodromic")
        return abs((2 * cmath.acosh(self.trace / 2)).real)

    def isometric_sphere(self) -> IsometricSphere:
        """Sphere with center -d/c and radius 1/|c|; undefined when c = 0."""
        if self.c == 0:
            raise ValueError("element fixes infinity (c = 0); no isometric sphere")
        return IsometricSphere(-self.d / self.c, 1 / abs(self.c))

    def apply(self, point):
        """Fractional-linear action on C union {INFINITY}."""
        if point is INFINITY:
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        p = _as_finite_complex(point, "point")
        den = self.c * p + self.d
        scale = abs(self.c) * abs(p) + abs(self.d)
        if den == 0 or abs(den) <= _POLE_TOL * scale:
            return INFINITY
        return (self.a * p + self.b) / den
