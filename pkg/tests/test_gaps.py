import math

import numpy as np
import pytest
from conftest import _equispaced
from hypothesis import given, settings
from hypothesis import strategies as st

from gapstat.base import DuplicatePointsWarning, PointSet, SequenceSpec, ThreeGapMismatch
from gapstat.config import NGrid
from gapstat.continued_fractions import GOLDEN_MEAN, SQRT2
from gapstat.gaps import (
    ALPHA_INTERMEDIATE,
    ALPHA_SMALL,
    GapSpectrum,
    check_obstructions,
    circle_gaps,
    classify_gaps,
    classify_spectra,
    gap_spectrum,
    group_gaps,
    kronecker_gap_bounds,
    three_gap_predict,
)
from gapstat.generators import generate

# --- Group 1: measured spectrum ---


def test_equispaced_points_have_one_gap():
    spectrum = gap_spectrum(_equispaced(10))
    assert spectrum.K == 1
    assert spectrum.multiplicities == (10,)
    assert spectrum.lengths[0] == pytest.approx(0.1)


def test_single_point_has_a_full_circle_gap():
    spectrum = gap_spectrum(PointSet.from_array([0.5]))
    assert spectrum.gaps == [(1.0, 1)]


def test_wrap_gap_is_counted():
    spectrum = gap_spectrum(PointSet.from_array([0.1, 0.3]))
    assert spectrum.gaps == [(pytest.approx(0.2), 1), (pytest.approx(0.8), 1)]
    assert math.isclose(spectrum.total_length(), 1.0)


def test_coincident_points_warn():
    with pytest.warns(DuplicatePointsWarning, match="coincident"):
        spectrum = gap_spectrum(PointSet.from_array([0.1, 0.1, 0.5]))
    assert spectrum.has_duplicates
    assert spectrum.lengths[0] == 0.0
    assert spectrum.positive_lengths == pytest.approx((0.4, 0.6))


def test_gap_spectrum_needs_one_dimension(random_points):
    with pytest.raises(ValueError, match="d = 1"):
        gap_spectrum(random_points(10, d=2))


@settings(max_examples=50, deadline=None)
@given(
    N=st.integers(min_value=2, max_value=500),
    shift=st.floats(min_value=0.0, max_value=0.999, allow_nan=False),
)
def test_rotation_does_not_change_the_spectrum(N, shift):
    ps = generate(SequenceSpec.kronecker(GOLDEN_MEAN), N)
    before = gap_spectrum(ps)
    after = gap_spectrum(ps.rotated(shift))
    assert after.multiplicities == before.multiplicities
    np.testing.assert_allclose(after.lengths, before.lengths, atol=1e-12)


def test_close_values_do_not_chain_into_one_class():
    tolerance = 1e-9
    gaps = np.array([0.1, 0.1 + 6e-10, 0.1 + 1.2e-9, 0.1 + 1.8e-9, 0.3])
    lengths, counts, labels, has_zero_class = group_gaps(gaps, tolerance)
    assert counts.tolist() == [2, 2, 1]
    assert labels.tolist() == [0, 0, 1, 1, 2]
    assert not has_zero_class
    assert lengths[0] == pytest.approx(0.1 + 3e-10, abs=1e-15)


def _class_widths(gaps, labels, K):
    low = np.full(K, np.inf)
    high = np.full(K, -np.inf)
    np.minimum.at(low, labels, gaps)
    np.maximum.at(high, labels, gaps)
    return high - low


@pytest.mark.filterwarnings("ignore::gapstat.base.DuplicatePointsWarning")
def test_dense_random_spectrum_keeps_its_totals():
    N = 100_000
    ps = generate(SequenceSpec.random_uniform(0), N)
    spectrum = gap_spectrum(ps)
    assert sum(spectrum.multiplicities) == N
    assert spectrum.total_length() == pytest.approx(1.0, abs=10 * N * np.finfo(float).eps)
    # About N^2 * tolerance gaps are that short; nothing close to N
    if spectrum.has_duplicates:
        assert spectrum.multiplicities[0] < 100
    gaps = circle_gaps(np.sort(ps.coordinates))
    _, _, labels, _ = group_gaps(gaps, spectrum.grouping_tolerance)
    widths = _class_widths(gaps, labels, spectrum.K)
    assert np.all(widths <= spectrum.grouping_tolerance * (1 + 1e-9))


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    N=st.integers(min_value=1, max_value=5000),
)
@pytest.mark.filterwarnings("ignore::gapstat.base.DuplicatePointsWarning")
def test_random_spectra_account_for_every_gap(seed, N):
    spectrum = gap_spectrum(generate(SequenceSpec.random_uniform(seed), N))
    assert sum(spectrum.multiplicities) == N
    assert spectrum.total_length() == pytest.approx(1.0, abs=10 * N * np.finfo(float).eps)


# --- Group 2: three gap prediction ---


def test_n_equal_one():
    prediction = three_gap_predict(None, 1)
    assert (prediction.L1, prediction.L2, prediction.L3) == (0.0, 1.0, 1.0)
    assert (prediction.N1, prediction.N2, prediction.N3) == (0, 1, 0)
    assert prediction.spectrum_pairs() == [(1.0, 1)]


def test_prediction_matches_measurement_for_golden_mean(golden_cf):
    # validate=True raises on any disagreement
    for N in range(2, 400):
        prediction = three_gap_predict(golden_cf, N)
        assert prediction.N1 + prediction.N2 + prediction.N3 == N
        total = sum(length * n for length, n in prediction.spectrum_pairs())
        assert total == pytest.approx(1.0, abs=1e-12)


def test_prediction_matches_measurement_for_sqrt2(sqrt2_cf):
    for N in (2, 3, 7, 12, 29, 70, 100, 169, 1000, 4321):
        three_gap_predict(sqrt2_cf, N)


def test_denominators_give_two_gaps(golden_cf):
    for N in (2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233):
        prediction = three_gap_predict(golden_cf, N)
        assert prediction.N1 == 0
        assert len(prediction.spectrum_pairs()) == 2


def test_literal_prediction_is_available(golden_cf):
    prediction = three_gap_predict(golden_cf, 100, literal=True, validate=False)
    assert prediction.literal
    assert prediction.top_index == 10
    assert prediction.N1 == 100 - golden_cf.q(10)


def test_mismatch_carries_both_predictions(golden_cf):
    # A negative tolerance can never match
    with pytest.raises(ThreeGapMismatch, match="disagrees") as info:
        three_gap_predict(golden_cf, 50, tolerance=-1.0)
    assert not info.value.predicted.literal
    assert info.value.literal.literal
    assert info.value.empirical.N == 50


def test_n_must_be_positive(golden_cf):
    with pytest.raises(ValueError, match="at least 1"):
        three_gap_predict(golden_cf, 0)


# --- Group 3: gap classification and obstructions ---


def test_golden_mean_at_exponent_one_is_intermediate():
    Ns = [N for N in NGrid.parse("fib:11000").values if N >= 100]
    classification = classify_gaps(SequenceSpec.kronecker(GOLDEN_MEAN), 1.0, Ns)
    assert classification.matching == "rank"
    assert classification.labels() == [ALPHA_INTERMEDIATE, ALPHA_INTERMEDIATE]


def test_golden_mean_obstructions():
    Ns = [N for N in NGrid.parse("fib:1000000").values if N >= 100]
    golden = SequenceSpec.kronecker(GOLDEN_MEAN)
    indicated = check_obstructions(golden, 1.0, Ns[:8])
    assert indicated.status == "indicated"
    assert indicated.obstruction_1 is True
    smaller = check_obstructions(golden, 0.8, Ns)
    assert smaller.classification.labels() == [ALPHA_SMALL, ALPHA_SMALL]
    assert smaller.status == "not_indicated"
    assert smaller.obstruction_2 is False


def test_random_points_are_inconclusive():
    report = check_obstructions(SequenceSpec.random_uniform(0), 1.0, [200, 400, 800, 1600])
    assert report.status == "inconclusive"
    assert report.obstruction_1 is None
    assert "not a finite-gap sequence" in report.classification.reason


def test_classification_input_checks():
    spectra = [GapSpectrum(N, (0.5 / N, 1.5 / N), (N // 2, N // 2), 1e-9) for N in (10, 20, 40)]
    with pytest.raises(ValueError, match="at least 4"):
        classify_spectra(spectra, 1.0)
    spectra.append(GapSpectrum(30, (0.01,), (30,), 1e-9))
    with pytest.raises(ValueError, match="strictly increasing"):
        classify_spectra(spectra, 1.0)
    with pytest.raises(ValueError, match=r"\(0, 1\]"):
        classify_spectra(spectra, 1.5)


def test_shrinking_gap_is_small():
    # One length decaying like N^-2 at exponent 1
    spectra = [GapSpectrum(N, (1.0 / N**2,), (N,), 1e-9) for N in (10, 100, 1000, 10_000)]
    assert classify_spectra(spectra, 1.0).labels() == [ALPHA_SMALL]


# --- Group 4: Kronecker gap window ---


@pytest.mark.parametrize("z,R", [(GOLDEN_MEAN, 1), (SQRT2, 2)])
def test_bounded_quotients_keep_gaps_in_window(z, R):
    ps = generate(SequenceSpec.kronecker(z), 3000)
    for N in (2, 10, 99, 1000, 3000):
        window = kronecker_gap_bounds(gap_spectrum(ps.head(N)), R)
        assert window.holds
        assert window.lower == pytest.approx(1 / ((R + 2) ** 2 * N))


def test_gap_window_arguments():
    spectrum = gap_spectrum(_equispaced(4))
    with pytest.raises(ValueError, match="R must be"):
        kronecker_gap_bounds(spectrum, 0)
