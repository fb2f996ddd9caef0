from decimal import Decimal
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapstat.base import INT64_MAX, ConvergentOverflow, InsufficientConvergents
from gapstat.continued_fractions import (
    GOLDEN_MEAN,
    SQRT2,
    CFExpansion,
    PreciseReal,
    approximation_error,
    as_precise_real,
    cf_expand,
    convergent_bounds_hold,
    convergents,
    golden_intermediate_window,
    named_constant,
    ostrowski_expand,
    ostrowski_expand_many,
    ostrowski_valid,
    torus_norm,
)

# --- Group 1: enclosures and coercion ---


def test_from_float_encloses_the_decimal_it_rounds():
    value = PreciseReal.from_float(0.1)
    assert value.lower <= Fraction(1, 10) <= value.upper
    assert value.midpoint == Fraction(0.1)


def test_decimal_strings_cover_half_a_unit_in_the_last_digit():
    value = as_precise_real("0.4142")
    assert (value.lower, value.upper) == (Fraction(41415, 100000), Fraction(41425, 100000))
    assert value.midpoint == Fraction(4142, 10000)
    assert value.label() == "0.4142"
    assert as_precise_real("3").radius == 0
    assert as_precise_real("2/7").midpoint == Fraction(2, 7)
    assert as_precise_real("2/7").radius == 0


def test_long_decimal_expands_past_its_rational_neighbours():
    cf = cf_expand("0.41421356237309504880168872420969807856967")
    assert not cf.terminated
    assert cf.digits[:12] == (0,) + (2,) * 11


def test_mpmath_constants_are_accepted():
    assert cf_expand(mpmath.pi, max_terms=4).digits == (3, 7, 15, 1)
    assert as_precise_real(mpmath.pi).label() == "pi"
    assert cf_expand(mpmath.e, max_terms=8).digits == (2, 1, 2, 1, 1, 4, 1, 1)


def test_named_constants_resolve():
    assert as_precise_real("phi") is GOLDEN_MEAN
    assert named_constant("sqrt2") is SQRT2
    assert abs(float(GOLDEN_MEAN) - (1 + 5**0.5) / 2) < 1e-15
    with pytest.raises(ValueError, match="Unknown constant"):
        named_constant("e")


def test_as_precise_real_other_types():
    assert as_precise_real(3).midpoint == 3
    assert as_precise_real(Decimal("0.25")).midpoint == Fraction(1, 4)
    assert as_precise_real(np.int64(2)).midpoint == 2
    with pytest.raises(TypeError):
        as_precise_real(True)
    with pytest.raises(ValueError, match="neither a decimal"):
        as_precise_real("pi-ish")


def test_torus_norm():
    assert torus_norm(0.75) == 0.25
    assert torus_norm(Fraction(7, 4)) == Fraction(1, 4)
    assert torus_norm(-0.25) == 0.25
    np.testing.assert_allclose(
        torus_norm(np.array([0.1, 0.9, 2.0])), [0.1, 0.1, 0.0], atol=1e-15
    )


# --- Group 2: expansion ---


def test_golden_mean_has_all_ones(golden_cf):
    assert golden_cf.digits[:40] == (1,) * 40
    assert golden_cf.denominators[:8] == (1, 1, 2, 3, 5, 8, 13, 21)


def test_sqrt2_digits(sqrt2_cf):
    assert sqrt2_cf.digits[:10] == (1,) + (2,) * 9


def test_rationals_terminate():
    half = cf_expand(0.5)
    assert half.digits == (0, 2)
    assert half.terminated
    assert cf_expand(17.0).digits == (17,)
    pi_ish = cf_expand(Fraction(355, 113))
    assert pi_ish.digits == (3, 7, 16)
    assert pi_ish.convergents[-1] == (355, 113)


def test_negative_numbers_floor_the_first_digit():
    cf = cf_expand(Fraction(-1, 2))
    assert cf.digits == (-1, 2)


def test_float_expansion_stops_when_the_digit_is_undetermined():
    cf = cf_expand(2**0.5)
    assert not cf.terminated
    # Only as many digits as half an ulp determines
    assert 15 <= len(cf) <= 30
    assert cf.digits[:12] == (1,) + (2,) * 11


def test_max_terms_and_tolerance():
    assert len(cf_expand(GOLDEN_MEAN, max_terms=5)) == 5
    cf = cf_expand(GOLDEN_MEAN, tolerance=1e-6)
    p, q = cf.convergents[-1]
    assert abs(Fraction(p, q) - GOLDEN_MEAN.midpoint) <= Fraction(1e-6)
    with pytest.raises(ValueError, match="max_terms"):
        cf_expand(GOLDEN_MEAN, max_terms=0)


def test_expansion_stays_in_64_bit_range():
    cf = cf_expand(GOLDEN_MEAN, max_terms=500)
    assert max(cf.denominators) <= INT64_MAX


def test_recurrence_overflow_names_the_last_safe_index():
    with pytest.raises(ConvergentOverflow) as info:
        CFExpansion.from_digits([0, 2**62, 4])
    assert info.value.index == 2
    assert info.value.last_safe_index == 1


def test_convergents_recomputes_pairs(golden_cf):
    assert convergents(golden_cf)[:4] == [(1, 1), (2, 1), (3, 2), (5, 3)]


# --- Group 3: approximation quality ---


def test_approximation_error_seed_value(golden_cf):
    assert approximation_error(golden_cf, -1) == 1
    assert approximation_error(golden_cf, 0) == abs(GOLDEN_MEAN.midpoint - 1)


@pytest.mark.parametrize("n", range(30))
def test_convergent_bounds_hold(golden_cf, sqrt2_cf, n):
    assert convergent_bounds_hold(golden_cf, n)
    assert convergent_bounds_hold(sqrt2_cf, n)


def test_golden_window_inside_for_n_at_least_one(golden_cf):
    for n in range(1, 29):
        value = golden_intermediate_window(golden_cf, n)
        assert Fraction(1, 2) < value < 2
    # n = 0 falls outside: the statement needs n >= 1
    assert golden_intermediate_window(golden_cf, 0) < Fraction(1, 2)


# --- Group 4: Ostrowski numeration ---


def test_ostrowski_of_100_with_golden_mean(golden_cf):
    digits = ostrowski_expand(100, golden_cf)
    assert digits.value() == 100
    assert digits.top_index == 10
    assert [n for n, b in enumerate(digits.digits) if b] == [3, 5, 10]


def test_ostrowski_all_n_valid(golden_cf, sqrt2_cf):
    Ns = np.arange(1, 5001)
    for cf in (golden_cf, sqrt2_cf):
        digits = ostrowski_expand_many(Ns, cf)
        assert ostrowski_valid(digits, Ns, cf).all()


def test_ostrowski_valid_rejects_broken_digits(sqrt2_cf):
    # q = 1, 2, 5, 12: 7 = 5 + 2 is valid; 7 = 1 + 3*2 reconstructs but b_1 > a_2
    good = ostrowski_expand_many([7], sqrt2_cf)
    assert ostrowski_valid(good, [7], sqrt2_cf).all()
    bad = np.zeros_like(good)
    bad[0, 0], bad[0, 1] = 1, 3
    assert not ostrowski_valid(bad, [7], sqrt2_cf).any()


def test_ostrowski_needs_enough_convergents():
    cf = CFExpansion.from_digits([0, 2, 3])
    with pytest.raises(InsufficientConvergents, match="expand cf further"):
        ostrowski_expand(10, cf)


@settings(max_examples=200, deadline=None)
@given(N=st.integers(min_value=1, max_value=10**9))
def test_ostrowski_reconstructs_any_n(N):
    cf = cf_expand(GOLDEN_MEAN)
    digits = ostrowski_expand(N, cf)
    assert digits.value() == N
    assert ostrowski_valid(np.array([digits.digits]), [N], cf).all()
