import math

import hypothesis.strategies as st
import mpmath as mp
import numpy as np
import pytest
from hypothesis import given

from sysbound.bianchi import (
    PSL2_O2_COVOLUME,
    CongruenceLevel,
    QuadInt,
    QuadMatrix,
    elements_of_bounded_modulus,
    enumerate_congruence_elements,
    level_volume,
    min_loxodromic_trace_lower_bound,
    newman_index,
    split_prime,
    systole_growth_table,
)
from sysbound.mobius import ElementClass

ints = st.integers(-50, 50)


def q2(a, b):
    return QuadInt(a, b, 2)


PI = q2(3, 1)


# ---------------------------------------------------------------------------
# ring arithmetic
# ---------------------------------------------------------------------------

def test_norm_examples():
    assert PI.norm == 11
    assert q2(0, 0).norm == 0
    square = PI * PI
    assert square == q2(7, 6)
    assert square.norm == 121


def test_str():
    assert str(PI) == "3+1√-2"
    assert str(q2(5, 0)) == "5"
    assert str(q2(0, -2)) == "0-2√-2"


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        QuadInt(1, 1, 4)  # not squarefree
    with pytest.raises(ValueError):
        QuadInt(1, 1, 0)
    with pytest.raises(TypeError):
        QuadInt(1.5, 0, 2)
    with pytest.raises(ValueError):
        q2(1, 0) + QuadInt(1, 0, 3)


@given(ints, ints, ints, ints, ints, ints)
def test_ring_axioms(a1, b1, a2, b2, a3, b3):
    x, y, z = q2(a1, b1), q2(a2, b2), q2(a3, b3)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + y == y + x
    assert x * (y - z) == x * y - x * z


def test_norm_multiplicative_bulk():
    rng = np.random.default_rng(31)
    for _ in range(10000):
        a1, b1, a2, b2 = (int(v) for v in rng.integers(-1000, 1001, 4))
        x, y = q2(a1, b1), q2(a2, b2)
        assert (x * y).norm == x.norm * y.norm


def test_powers_are_exact():
    assert PI**0 == q2(1, 0)
    assert PI**2 == PI * PI
    assert (PI**7).norm == 11**7


def test_try_divide():
    assert (PI * PI).try_divide(PI) == PI
    assert q2(1, 0).try_divide(PI) is None
    with pytest.raises(ValueError):
        PI.try_divide(q2(0, 0))


# ---------------------------------------------------------------------------
# prime splitting
# ---------------------------------------------------------------------------

def test_split_eleven():
    result = split_prime(11, 2)
    assert result == PI
    assert result.norm == 11
    assert result * result.conjugate() == q2(11, 0)


def test_split_two_is_ramified():
    assert split_prime(2, 2) == q2(0, 1)


def test_split_five_fails():
    assert split_prime(5, 2) is None


def test_split_rejects_composite():
    with pytest.raises(ValueError):
        split_prime(4, 2)


def test_split_canonical_choice():
    # smallest nonnegative a with positive b
    result = split_prime(3, 2)
    assert result == q2(1, 1)


# ---------------------------------------------------------------------------
# congruence levels, index, volume
# ---------------------------------------------------------------------------

def test_level_properties():
    level = CongruenceLevel(PI, 2)
    assert level.level == PI * PI
    assert level.norm == 121
    assert level.modulus == pytest.approx(11.0)


def test_newman_index_values():
    assert newman_index(CongruenceLevel(PI, 1)) == 660
    assert newman_index(CongruenceLevel(PI, 2)) == 878460
    assert newman_index(CongruenceLevel(PI, 2)) == 11**3 * 660


def test_newman_index_ratio_exact():
    previous = newman_index(CongruenceLevel(PI, 1))
    for n in range(2, 13):
        current = newman_index(CongruenceLevel(PI, n))
        assert current == previous * 1331
        previous = current


def test_newman_index_gates():
    with pytest.raises(ValueError):
        newman_index(CongruenceLevel(q2(0, 1), 1))  # even norm 2
    with pytest.raises(ValueError):
        newman_index(CongruenceLevel(q2(3, 0), 1))  # norm 9, not prime


def test_level_volume():
    assert level_volume(CongruenceLevel(PI, 1), 1.5) == pytest.approx(990.0)
    v1 = level_volume(CongruenceLevel(PI, 1), PSL2_O2_COVOLUME)
    v2 = level_volume(CongruenceLevel(PI, 2), PSL2_O2_COVOLUME)
    assert v2 / v1 == pytest.approx(1331, rel=1e-12)
    with pytest.raises(ValueError):
        level_volume(CongruenceLevel(PI, 1), 0)


def test_covolume_matches_humbert_formula():
    # |disc|^(3/2) * zeta_K(2) / (4 pi^2) for Q(sqrt(-2)), disc = -8, with
    # zeta_K(2) = zeta(2) * L(2, chi_(-8)) via Hurwitz zeta values
    mp.mp.dps = 30
    l_value = (
        mp.zeta(2, mp.mpf(1) / 8)
        + mp.zeta(2, mp.mpf(3) / 8)
        - mp.zeta(2, mp.mpf(5) / 8)
        - mp.zeta(2, mp.mpf(7) / 8)
    ) / 64
    oracle = mp.mpf(8) ** mp.mpf(1.5) * mp.zeta(2) * l_value / (4 * mp.pi**2)
    assert PSL2_O2_COVOLUME == pytest.approx(float(oracle), abs=1e-14)


def test_trace_lower_bound():
    assert min_loxodromic_trace_lower_bound(CongruenceLevel(PI, 1)) == 9
    assert min_loxodromic_trace_lower_bound(CongruenceLevel(PI, 2)) == 119
    # a candidate trace with s = -1: |-(7 + 6 sqrt(-2)) + 2| = sqrt(97) >= 9
    trace = q2(-1, 0) * (PI * PI) + q2(2, 0)
    assert trace == q2(-5, -6)
    assert trace.norm == 97
    assert trace.norm >= 9 * 9


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def test_enumeration_contains_identity():
    mats = enumerate_congruence_elements(CongruenceLevel(PI, 1), 0)
    assert len(mats) == 1
    assert mats[0].is_identity_up_to_sign()


def test_enumeration_exact_properties():
    level = CongruenceLevel(PI, 1)
    mats = enumerate_congruence_elements(level, 2)
    assert len(mats) > 1
    one = q2(1, 0)
    two = q2(2, 0)
    pi_n = level.level
    pi_2n = pi_n * pi_n
    lb = min_loxodromic_trace_lower_bound(level)
    seen_loxodromic = False
    for m in mats:
        assert m.det() == one
        # parameters are recoverable from the congruence form
        a = (m.m11 - one).try_divide(pi_n)
        b = m.m12.try_divide(pi_n)
        c = m.m21.try_divide(pi_n)
        d = (m.m22 - one).try_divide(pi_n)
        assert None not in (a, b, c, d)
        # determinant identity: a + d = (bc - ad) * pi^n
        assert a + d == (b * c - a * d) * pi_n
        # trace lies in 2 + (pi^(2n))
        assert (m.trace() - two).try_divide(pi_2n) is not None
        kind = m.classify_exact()
        if kind is ElementClass.PARABOLIC:
            assert m.trace() == two or m.trace() == -two
        if kind is ElementClass.LOXODROMIC:
            seen_loxodromic = True
            assert m.trace().norm >= lb * lb
    assert seen_loxodromic


def test_enumeration_no_elliptics_at_level_eleven():
    mats = enumerate_congruence_elements(CongruenceLevel(PI, 1), 2)
    assert all(m.classify_exact() is not ElementClass.ELLIPTIC for m in mats)


def test_enumeration_deduplicates_sign_pairs():
    # ramified generator: pi^n divides 2, so the box can contain both a
    # matrix and its negative; they must be identified
    level = CongruenceLevel(q2(0, 1), 2)
    mats = enumerate_congruence_elements(level, 2)
    coords = {tuple((e.a, e.b) for e in m.entries()) for m in mats}
    for m in mats:
        negated = tuple((-e.a, -e.b) for e in m.entries())
        assert negated not in coords or negated == tuple((e.a, e.b) for e in m.entries())


def test_enumeration_deterministic():
    level = CongruenceLevel(PI, 1)
    assert enumerate_congruence_elements(level, 2) == enumerate_congruence_elements(level, 2)


def test_enumeration_rejects_bad_height():
    with pytest.raises(ValueError):
        enumerate_congruence_elements(CongruenceLevel(PI, 1), -1)


# ---------------------------------------------------------------------------
# growth table
# ---------------------------------------------------------------------------

def test_growth_table_first_row():
    rows = systole_growth_table(PI, 3, PSL2_O2_COVOLUME)
    first = rows[0]
    assert first.n == 1
    assert first.index == 660
    assert first.level_norm == 11
    assert first.trace_lb == 9
    assert first.systole_lb == pytest.approx(math.log(81 / 4), rel=1e-12)
    assert first.systole_lb == pytest.approx(3.008, abs=1e-3)


def test_growth_table_ratio_converges_to_two_thirds():
    rows = systole_growth_table(PI, 12, PSL2_O2_COVOLUME)
    deviations = [abs(r.ratio - 2 / 3) for r in rows]
    assert all(b < a for a, b in zip(deviations, deviations[1:]))
    assert deviations[9] < 0.05  # n = 10
    assert 0.60 < rows[9].ratio < 2 / 3


def test_growth_table_asymptotic_slopes():
    rows = systole_growth_table(PI, 12, PSL2_O2_COVOLUME)
    log_v = [math.log(r.volume) for r in rows]
    for a, b in zip(log_v, log_v[1:]):
        assert b - a == pytest.approx(3 * math.log(11), rel=1e-12)
    length_steps = [b.systole_lb - a.systole_lb for a, b in zip(rows, rows[1:])]
    assert length_steps[-1] == pytest.approx(2 * math.log(11), rel=1e-6)
    with pytest.raises(ValueError):
        systole_growth_table(PI, 0, 1.0)


# ---------------------------------------------------------------------------
# bounded-modulus enumeration
# ---------------------------------------------------------------------------

def test_bounded_modulus_unit_ball():
    assert elements_of_bounded_modulus(2, 1) == [q2(-1, 0), q2(1, 0)]


def test_bounded_modulus_radius_two():
    elements = elements_of_bounded_modulus(2, 2)
    assert len(elements) == 10
    assert sorted({x.norm for x in elements}) == [1, 2, 3, 4]
    assert all(0 < x.norm <= 4 for x in elements)


def test_bounded_modulus_monotone_and_finite():
    counts = [len(elements_of_bounded_modulus(2, b)) for b in (1, 1.5, 2, 3, 5, 8)]
    assert counts == sorted(counts)
    with pytest.raises(ValueError):
        elements_of_bounded_modulus(2, 0.5)


def test_quad_matrix_validation():
    with pytest.raises(ValueError):
        QuadMatrix(q2(1, 0), q2(0, 0), q2(0, 0), QuadInt(1, 0, 3))
