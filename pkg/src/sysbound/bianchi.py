"""Exact arithmetic in imaginary quadratic orders Z[sqrt(-d)] and the
congruence-subgroup census of PSL2 over them.

Everything here is integer-exact: elements a + b*sqrt(-d) carry arbitrary-
precision coordinates, matrices are checked against the determinant
identity exactly, and classification of enumerated group elements uses
exact trace predicates rather than floating-point tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .mobius import ElementClass

# Covolume of the quotient of hyperbolic 3-space by PSL2 of Z[sqrt(-2)],
# via Humbert's formula |disc|^(3/2) * zeta_K(2) / (4*pi^2) with disc = -8.
# Frozen at double precision; scripts/compute_constants.py gives 30 digits.
PSL2_O2_COVOLUME = 1.0038410033411982

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin, valid far beyond any norm used here.
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    s, t = n - 1, 0
    while s % 2 == 0:
        s //= 2
        t += 1
    for a in _MR_WITNESSES:
        x = pow(a, s, n)
        if x in (1, n - 1):
            continue
        for _ in range(t - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _is_squarefree(n: int) -> bool:
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def _check_d(d: int) -> int:
    if not isinstance(d, int) or isinstance(d, bool):
        raise TypeError(f"d must be an int, got {d!r}")
    if d < 1 or not _is_squarefree(d):
        raise ValueError(f"d must be a positive squarefree integer, got {d}")
    return d


@dataclass(frozen=True)
class QuadInt:
    """The element a + b*sqrt(-d) of Z[sqrt(-d)], with exact integers."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        for name in ("a", "b"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be an int, got {value!r}")
        _check_d(self.d)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{self.b:+}√-{self.d}"

    def _coerce(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return QuadInt(other, 0, self.d)
        if isinstance(other, QuadInt):
            if other.d != self.d:
                raise ValueError(f"mixed rings: sqrt(-{self.d}) vs sqrt(-{other.d})")
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadInt(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadInt(self.a - other.a, self.b - other.b, self.d)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadInt(
            self.a * other.a - self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative int, got {n!r}")
        result = QuadInt(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @property
    def norm(self) -> int:
        return self.a * self.a + self.d * self.b * self.b

    @property
    def modulus(self) -> float:
        return math.sqrt(self.norm)

    def conjugate(self) -> "QuadInt":
        return QuadInt(self.a, -self.b, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_complex(self) -> complex:
        return complex(self.a, self.b * math.sqrt(self.d))

    def try_divide(self, other: "QuadInt") -> "QuadInt | None":
        """Exact quotient self/other in the ring, or None if not divisible."""
        other = self._coerce(other)
        if other is None or other.is_zero():
            raise ValueError("division by zero or incompatible element")
        num = self * other.conjugate()
        n = other.norm
        if num.a % n or num.b % n:
            return None
        return QuadInt(num.a // n, num.b // n, self.d)


def split_prime(p: int, d: int) -> QuadInt | None:
    """An element of norm p in Z[sqrt(-d)], or None when p has no such
    representation (the prime does not split or ramify this way).

    The canonical solution has the smallest a >= 0 and b > 0.
    """
    _check_d(d)
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    for a in range(math.isqrt(p) + 1):
        rest = p - a * a
        if rest <= 0 or rest % d:
            continue
        b = math.isqrt(rest // d)
        if d * b * b == rest:
            return QuadInt(a, b, d)
    return None


@dataclass(frozen=True)
class CongruenceLevel:
    """Principal ideal (pi^n) defining the congruence subgroup at that level."""

    pi: QuadInt
    n: int

    def __post_init__(self):
        if not isinstance(self.pi, QuadInt):
            raise TypeError("pi must be a QuadInt")
        if self.pi.is_zero():
            raise ValueError("pi must be nonzero")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive int, got {self.n!r}")

    @property
    def level(self) -> QuadInt:
        return self.pi**self.n

    @property
    def norm(self) -> int:
        return self.pi.norm**self.n

    @property
    def modulus(self) -> float:
        return self.pi.norm ** (self.n / 2)


def newman_index(level: CongruenceLevel) -> int:
    """Index of the principal congruence subgroup at pi^n in PSL2 of the
    ring, by Newman's formula (N(pi)^(3n)/2) * (1 - 1/N(pi)^2).

    Only valid as printed for an odd prime norm; anything else is refused
    rather than extrapolated.
    """
    q = level.pi.norm
    if q % 2 == 0 or not _is_prime(q):
        raise ValueError(f"index formula requires an odd prime norm, got N(pi) = {q}")
    value = Fraction(q ** (3 * level.n), 2) * (1 - Fraction(1, q * q))
    if value.denominator != 1:
        raise ValueError("index formula did not produce an integer")
    return int(value)


def level_volume(level: CongruenceLevel, base_covolume: float) -> float:
    """Volume of the congruence cover: base orbifold covolume times index."""
    base_covolume = float(base_covolume)
    if not base_covolume > 0:
        raise ValueError(f"base covolume must be positive, got {base_covolume}")
    return base_covolume * newman_index(level)


def min_loxodromic_trace_lower_bound(level: CongruenceLevel) -> int:
    """Lower bound N(pi)^n - 2 on the trace modulus of any loxodromic element
    of the congruence subgroup.

    Traces have the form s*pi^(2n) + 2 with s in (pi^n) nonzero for a
    loxodromic, so |trace| >= |pi^(2n)| - 2 by the triangle inequality.
    """
    return max(0, level.pi.norm**level.n - 2)


@dataclass(frozen=True)
class QuadMatrix:
    """2x2 matrix over Z[sqrt(-d)], entries sharing one ring."""

    m11: QuadInt
    m12: QuadInt
    m21: QuadInt
    m22: QuadInt

    def __post_init__(self):
        entries = self.entries()
        if not all(isinstance(e, QuadInt) for e in entries):
            raise TypeError("matrix entries must be QuadInt")
        if len({e.d for e in entries}) != 1:
            raise ValueError("matrix entries must share one ring")

    def entries(self) -> tuple[QuadInt, QuadInt, QuadInt, QuadInt]:
        return (self.m11, self.m12, self.m21, self.m22)

    @property
    def d(self) -> int:
        return self.m11.d

    def det(self) -> QuadInt:
        return self.m11 * self.m22 - self.m12 * self.m21

    def trace(self) -> QuadInt:
        return self.m11 + self.m22

    def is_identity_up_to_sign(self) -> bool:
        one = QuadInt(1, 0, self.d)
        for sign in (one, -one):
            if (
                self.m11 == sign
                and self.m22 == sign
                and self.m12.is_zero()
                and self.m21.is_zero()
            ):
                return True
        return False

    def classify_exact(self) -> ElementClass:
        """Conjugacy type from the exact trace (determinant must be 1)."""
        if self.is_identity_up_to_sign():
            return ElementClass.IDENTITY
        t = self.trace()
        if t.b == 0:
            if abs(t.a) < 2:
                return ElementClass.ELLIPTIC
            if abs(t.a) == 2:
                return ElementClass.PARABOLIC
        return ElementClass.LOXODROMIC


def _canonical_sign_key(coords: tuple[int, ...]) -> tuple[int, ...]:
    # Identify a matrix with its negative: flip so the first nonzero entry
    # has positive a-coordinate (or a = 0 and positive b).
    for a, b in zip(coords[0::2], coords[1::2]):
        if a != 0 or b != 0:
            if a < 0 or (a == 0 and b < 0):
                return tuple(-x for x in coords)
            return coords
    return coords


def enumerate_congruence_elements(level: CongruenceLevel, height: int) -> list[QuadMatrix]:
    """All matrices (a*pi^n + 1, b*pi^n; c*pi^n, d*pi^n + 1) of determinant 1
    whose parameter coordinates lie in [-height, height]^8, deduplicated up
    to global sign.

    The determinant condition forces b*c = a*d + (a+d)/pi^n exactly, so the
    search enumerates (a, d) pairs whose trace part is divisible by pi^n and
    factors the resulting product over the box.  Representatives are kept in
    the congruence form (diagonal = 1 mod pi^n) so the exact trace
    s*pi^(2n) + 2 stays recoverable; the sign-canonical coordinate tuple is
    used only as the deduplication key.
    """
    if not isinstance(height, int) or height < 0:
        raise ValueError(f"height must be a nonnegative int, got {height!r}")
    d = level.pi.d
    w = level.level
    w1, w2, nw = w.a, w.b, w.norm
    rng = range(-height, height + 1)
    found: dict[tuple[int, ...], tuple[int, ...]] = {}

    def emit(aa, ab, ba, bb, ca, cb, da, db):
        m11 = (aa * w1 - d * ab * w2 + 1, aa * w2 + ab * w1)
        m12 = (ba * w1 - d * bb * w2, ba * w2 + bb * w1)
        m21 = (ca * w1 - d * cb * w2, ca * w2 + cb * w1)
        m22 = (da * w1 - d * db * w2 + 1, da * w2 + db * w1)
        det_a = m11[0] * m22[0] - d * m11[1] * m22[1] - (m12[0] * m21[0] - d * m12[1] * m21[1])
        det_b = m11[0] * m22[1] + m11[1] * m22[0] - (m12[0] * m21[1] + m12[1] * m21[0])
        if det_a != 1 or det_b != 0:
            raise RuntimeError("enumerated matrix failed the exact determinant check")
        coords = (*m11, *m12, *m21, *m22)
        found.setdefault(_canonical_sign_key(coords), coords)

    for aa in rng:
        for ab in rng:
            for da in rng:
                for db in rng:
                    s1, s2 = aa + da, ab + db
                    n1 = s1 * w1 + d * s2 * w2
                    if n1 % nw:
                        continue
                    n2 = s2 * w1 - s1 * w2
                    if n2 % nw:
                        continue
                    p1 = aa * da - d * ab * db + n1 // nw
                    p2 = aa * db + ab * da + n2 // nw
                    if p1 == 0 and p2 == 0:
                        for ca in rng:
                            for cb in rng:
                                emit(aa, ab, 0, 0, ca, cb, da, db)
                    for ba in rng:
                        for bb in rng:
                            if ba == 0 and bb == 0:
                                continue
                            nb = ba * ba + d * bb * bb
                            q1 = p1 * ba + d * p2 * bb
                            if q1 % nb:
                                continue
                            q2 = p2 * ba - p1 * bb
                            if q2 % nb:
                                continue
                            ca, cb = q1 // nb, q2 // nb
                            if -height <= ca <= height and -height <= cb <= height:
                                emit(aa, ab, ba, bb, ca, cb, da, db)

    matrices = []
    for coords in sorted(found.values()):
        q = [QuadInt(coords[i], coords[i + 1], d) for i in range(0, 8, 2)]
        matrices.append(QuadMatrix(*q))
    return matrices


@dataclass(frozen=True)
class GrowthRow:
    """One census row: congruence level n with volume and systole data."""

    n: int
    index: int
    volume: float
    level_norm: int
    trace_lb: int
    systole_lb: float
    ratio: float


def systole_growth_table(
    pi: QuadInt, n_max: int, base_covolume: float
) -> list[GrowthRow]:
    """Census of the congruence tower: per level n, the index, cover volume,
    trace lower bound N(pi)^n - 2, the systole lower bound
    log(max(1, N(pi)^n - 2)^2 / 4), and its ratio to log(volume)."""
    if not isinstance(n_max, int) or n_max < 1:
        raise ValueError(f"n_max must be a positive int, got {n_max!r}")
    rows = []
    for n in range(1, n_max + 1):
        level = CongruenceLevel(pi, n)
        index = newman_index(level)
        volume = level_volume(level, base_covolume)
        trace_lb = min_loxodromic_trace_lower_bound(level)
        systole_lb = math.log(max(1, trace_lb) ** 2 / 4)
        rows.append(
            GrowthRow(
                n=n,
                index=index,
                volume=volume,
                level_norm=level.norm,
                trace_lb=trace_lb,
                systole_lb=systole_lb,
                ratio=systole_lb / math.log(volume),
            )
        )
    return rows


def elements_of_bounded_modulus(d: int, bound: float) -> list[QuadInt]:
    """All nonzero x in Z[sqrt(-d)] with |x| <= bound, sorted by norm then
    lexicographically by coordinates."""
    _check_d(d)
    bound = float(bound)
    if bound < 1:
        raise ValueError(f"bound must be at least 1, got {bound}")
    b2 = bound * bound
    amax = int(math.floor(bound))
    bmax = int(math.floor(bound / math.sqrt(d))) + 1
    out = []
    for a in range(-amax, amax + 1):
        for b in range(-bmax, bmax + 1):
            norm = a * a + d * b * b
            if 0 < norm <= b2:
                out.append(QuadInt(a, b, d))
    out.sort(key=lambda x: (x.norm, x.a, x.b))
    return out
