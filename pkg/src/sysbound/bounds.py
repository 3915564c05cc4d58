"""Closed-form trace and length bounds for systoles, with frozen constants.

Two headline quantities are assembled here.  For a non-compact finite-volume
hyperbolic 3-manifold of volume V the systole length is at most
``cusped_systole_bound(V)``; for a hyperbolic link complement inside a closed
manifold of volume V it is at most ``link_systole_bound(V)``.  The remaining
functions are the individual trace bounds those results are built from, all
total over their stated domains with explicit ValueError domain guards (never
a silent NaN).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .cusp import max_waist_for_cusp_volume

__all__ = [
    "IDEAL_TETRAHEDRON_VOLUME",
    "CUSP_DENSITY_BOUND",
    "ADAMS_REID_LENGTH",
    "CUSP_VOLUME_THRESHOLD",
    "MIN_CUSP_VOLUME_AT_WAIST_2PI",
    "lobachevsky",
    "adams_reid_trace_bound",
    "adams_reid_length_bound",
    "loxodromic_length_bound",
    "torus_diameter_trace_bound",
    "shifted_parabolic_trace_bound",
    "min_trace_bound",
    "cusp_volume_trace_bound",
    "cusped_systole_bound",
    "link_systole_bound",
    "fkp_min_slope_bound",
    "drilled_trace_bound",
    "filling_slope_trace_bound",
    "crossing_volume",
    "BoundProfile",
]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


_bernoulli_cache: list[Fraction] = [Fraction(1)]


def _bernoulli(m: int) -> Fraction:
    # B_1 = -1/2 convention; computed by the defining recurrence.
    while len(_bernoulli_cache) <= m:
        k = len(_bernoulli_cache)
        acc = Fraction(0)
        for j in range(k):
            acc += math.comb(k + 1, j) * _bernoulli_cache[j]
        _bernoulli_cache.append(-acc / (k + 1))
    return _bernoulli_cache[m]


def lobachevsky(theta: float, terms: int = 30) -> float:
    """Lobachevsky function  -integral_0^theta log|2 sin t| dt  for 0 < theta < pi.

    Evaluated by the classical series
    theta*(1 - log(2*theta)) + sum_n zeta(2n)/(n*(2n+1)) * theta^(2n+1)/pi^(2n),
    with zeta(2n)/pi^(2n) supplied exactly through Bernoulli numbers.
    Convergence is geometric in (theta/pi)^2.
    """
    theta = float(theta)
    _require(0 < theta < math.pi, f"theta must lie in (0, pi), got {theta}")
    total = theta * (1 - math.log(2 * theta))
    theta_sq = theta * theta
    power = theta_sq
    for n in range(1, terms + 1):
        # zeta(2n) / pi^(2n) = (-1)^(n+1) * B_(2n) * 2^(2n-1) / (2n)!
        coeff = (-1) ** (n + 1) * _bernoulli(2 * n) * (2 ** (2 * n - 1)) / Fraction(math.factorial(2 * n))
        total += float(coeff) * power * theta / (n * (2 * n + 1))
        power *= theta_sq
    return total


# Volume of the regular ideal tetrahedron, 3 * lobachevsky(pi/3).  Frozen at
# double precision; scripts/compute_constants.py reproduces it to 30 digits.
IDEAL_TETRAHEDRON_VOLUME = 1.0149416064096537

# Upper bound sqrt(3)/(2 V0) for the cusp density of a hyperbolic 3-manifold
# (Meyerhoff, via Boroczky's horoball packing bound), about 0.853.
CUSP_DENSITY_BOUND = math.sqrt(3.0) / (2.0 * IDEAL_TETRAHEDRON_VOLUME)

# Smallest cusp volume for which the cusp-volume trace bound dominates the
# shifted-parabolic bound: 8/(3*sqrt(3)), about 1.5396.
CUSP_VOLUME_THRESHOLD = 8.0 / (3.0 * math.sqrt(3.0))

# Smallest volume of a maximal cusp whose waist size is at least 2*pi:
# (sqrt(3)/4) * (2*pi)^2, about 17.0946.
MIN_CUSP_VOLUME_AT_WAIST_2PI = math.sqrt(3.0) * math.pi**2


def adams_reid_trace_bound(w: float) -> float:
    """Adams-Reid bound sqrt(w^4 + 4) on the minimal loxodromic trace modulus
    of a cusped group with a slope of length w > 2."""
    w = float(w)
    _require(w > 2, f"slope length must exceed 2, got {w}")
    return math.sqrt(w**4 + 4)


def adams_reid_length_bound(w: float) -> float:
    """Adams-Reid systole bound Re(2*arccosh((2 + w^2 i)/2)) for a slope of
    length w > 2 (the exact translation length of the worst-case trace)."""
    w = float(w)
    _require(w > 2, f"slope length must exceed 2, got {w}")
    return abs((2 * cmath.acosh(complex(2, w * w) / 2)).real)


def loxodromic_length_bound(r: float) -> float:
    """log(r^2 + 4): translation-length bound for trace modulus at most r."""
    r = float(r)
    _require(r >= 0, f"trace modulus bound must be nonnegative, got {r}")
    return math.log(r * r + 4)


def torus_diameter_trace_bound(ell: float, vc: float) -> float:
    """sqrt(ell^2/4 + vc^2/ell^2): trace bound via the diameter of a cusp
    torus of waist ell and area 2*vc (half-diagonal of the extremal
    rectangle)."""
    ell, vc = float(ell), float(vc)
    _require(ell > 0, f"waist size must be positive, got {ell}")
    _require(vc > 0, f"cusp volume must be positive, got {vc}")
    return math.sqrt(ell * ell / 4 + vc * vc / (ell * ell))


def shifted_parabolic_trace_bound(ell: float) -> float:
    """sqrt(ell^2 + 4): trace bound for a trace-2 parabolic composed with the
    minimal cusp translation of length ell."""
    ell = float(ell)
    _require(ell >= 0, f"translation length must be nonnegative, got {ell}")
    return math.sqrt(ell * ell + 4)


def min_trace_bound(ell: float, vc: float) -> float:
    """Pointwise best of the torus-diameter and Adams-Reid trace bounds."""
    return min(torus_diameter_trace_bound(ell, vc), adams_reid_trace_bound(ell))


def cusp_volume_trace_bound(vc: float, enforce_domain: bool = True) -> float:
    """sqrt(2*vc^(4/3) + 4): trace bound depending only on the cusp volume.

    Dominates min_trace_bound over the whole waist interval once
    vc >= CUSP_VOLUME_THRESHOLD.  Pass enforce_domain=False to evaluate the
    bare formula below the threshold (used by probe-mode certification).
    """
    vc = float(vc)
    _require(vc > 0, f"cusp volume must be positive, got {vc}")
    if enforce_domain:
        _require(
            vc >= CUSP_VOLUME_THRESHOLD,
            f"cusp volume {vc} below threshold {CUSP_VOLUME_THRESHOLD}",
        )
    return math.sqrt(2 * vc ** (4 / 3) + 4)


def cusped_systole_bound(v: float) -> float:
    """Systole bound max(ADAMS_REID_LENGTH, log(2*(C0*v)^(4/3) + 8)) for a
    non-compact finite-volume hyperbolic 3-manifold of volume v."""
    v = float(v)
    _require(v > 0, f"volume must be positive, got {v}")
    vc = CUSP_DENSITY_BOUND * v
    return max(ADAMS_REID_LENGTH, math.log(2 * vc ** (4 / 3) + 8))


def link_systole_bound(v: float) -> float:
    """Systole bound log((sqrt(2)*(C0*v)^(2/3) + 4*pi^2)^2 + 8) for a
    hyperbolic link complement in a closed manifold of volume v (v = 0
    encodes a non-hyperbolic closed manifold)."""
    v = float(v)
    _require(v >= 0, f"volume must be nonnegative, got {v}")
    vc = CUSP_DENSITY_BOUND * v
    return math.log((math.sqrt(2) * vc ** (2 / 3) + 4 * math.pi**2) ** 2 + 8)


def fkp_min_slope_bound(v: float, x: float) -> float:
    """2*pi / sqrt(1 - (v/x)^(2/3)): bound on the shortest filling slope when
    filling a complement of volume x yields a closed manifold of volume v
    (inverted Futer-Kalfagianni-Purcell volume inequality)."""
    v, x = float(v), float(x)
    _require(v > 0, f"closed volume must be positive, got {v}")
    _require(x > v, f"complement volume {x} must exceed closed volume {v}")
    denom = 1 - (v / x) ** (2 / 3)
    if denom <= 0:
        return math.inf
    return 2 * math.pi / math.sqrt(denom)


def drilled_trace_bound(x: float) -> float:
    """Trace bound sqrt(2*(C0*x)^(4/3) + 4) as a function of the drilled
    manifold's volume x (increasing in x)."""
    x = float(x)
    _require(x > 0, f"volume must be positive, got {x}")
    return cusp_volume_trace_bound(CUSP_DENSITY_BOUND * x, enforce_domain=False)


def filling_slope_trace_bound(x: float, v: float) -> float:
    """Trace bound sqrt(16*pi^4/(1 - (v/x)^(2/3))^2 + 4) via the filling-slope
    length (decreasing in x on (v, infinity))."""
    v, x = float(v), float(x)
    _require(v >= 0, f"closed volume must be nonnegative, got {v}")
    _require(x > v, f"complement volume {x} must exceed closed volume {v}")
    denom = 1 - (v / x) ** (2 / 3)
    if denom <= 0:
        return math.inf
    return math.sqrt(16 * math.pi**4 / denom**2 + 4)


def crossing_volume(v: float) -> float:
    """Unique complement volume where the drilled and filling-slope trace
    bounds agree: (v^(2/3) + 4*pi^2/(sqrt(2)*C0^(2/3)))^(3/2)."""
    v = float(v)
    _require(v >= 0, f"volume must be nonnegative, got {v}")
    return (v ** (2 / 3) + 4 * math.pi**2 / (math.sqrt(2) * CUSP_DENSITY_BOUND ** (2 / 3))) ** 1.5


# Exact translation length of the worst-case Adams-Reid trace 2 + (2*pi)^2 i,
# the universal systole bound for slopes of length 2*pi.
ADAMS_REID_LENGTH = adams_reid_length_bound(2 * math.pi)


@dataclass(frozen=True)
class BoundProfile:
    """A closed-manifold volume with every derived bound quantity."""

    volume: float
    cusp_volume: float
    max_waist: float
    cusped_bound: float
    link_bound: float
    crossing: float

    @classmethod
    def from_volume(cls, v: float) -> "BoundProfile":
        v = float(v)
        _require(v >= 0, f"volume must be nonnegative, got {v}")
        vc = CUSP_DENSITY_BOUND * v
        max_waist = max_waist_for_cusp_volume(vc) if vc > 0 else 0.0
        cusped = max(ADAMS_REID_LENGTH, math.log(2 * vc ** (4 / 3) + 8))
        return cls(
            volume=v,
            cusp_volume=vc,
            max_waist=max_waist,
            cusped_bound=cusped,
            link_bound=link_systole_bound(v),
            crossing=crossing_volume(v),
        )
