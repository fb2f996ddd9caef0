"""Circle gaps of one-dimensional point sets.

Covers the measured gap spectrum, the closed-form three gap prediction for
Kronecker sequences, the small/intermediate/large classification of gap
families along a list of N values, and the two obstructions to converging
number variance that follow from it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from .base import (
    DEFAULT_GROUPING_TOLERANCE,
    DEFAULT_MAX_GAP_LENGTHS,
    DuplicatePointsWarning,
    PointSet,
    SequenceSpec,
    ThreeGapMismatch,
)
from .continued_fractions import (
    CFExpansion,
    OstrowskiDigits,
    approximation_error,
    ostrowski_expand,
)
from .generators import generate

ALPHA_SMALL = "alpha_small"
ALPHA_INTERMEDIATE = "alpha_intermediate"
ALPHA_LARGE = "alpha_large"
UNDETERMINED = "undetermined"

DEFAULT_THREE_GAP_TOLERANCE = 1e-12

# Trichotomy heuristic: a trend must move by this factor, ending beyond the
# limit; an intermediate trajectory stays inside a band this wide.
_TREND_FACTOR = 2.0
_SMALL_LIMIT = 0.1
_LARGE_LIMIT = 10.0
_BAND_RATIO = 8.0


@dataclass(frozen=True)
class GapSpectrum:
    """Distinct circle-gap lengths of N points with their multiplicities."""

    N: int
    lengths: tuple[float, ...]
    multiplicities: tuple[int, ...]
    grouping_tolerance: float
    # lengths[0] is the zero class: gaps no longer than the tolerance
    has_duplicates: bool = False

    @property
    def K(self) -> int:
        return len(self.lengths)

    @property
    def gaps(self) -> list[tuple[float, int]]:
        return list(zip(self.lengths, self.multiplicities))

    @property
    def positive_lengths(self) -> tuple[float, ...]:
        # The zero class (coincident points) is always first
        return self.lengths[1:] if self.has_duplicates else self.lengths

    def total_length(self) -> float:
        return math.fsum(n * length for length, n in self.gaps)


def circle_gaps(sorted_xs: np.ndarray) -> np.ndarray:
    """Gaps between neighbours, the last one wrapping from x*_N to x*_1 + 1."""
    wrap = (sorted_xs[0] + 1.0) - sorted_xs[-1]
    return np.append(np.diff(sorted_xs), wrap)


def group_gaps(gaps: np.ndarray, tolerance: float):
    """Group gap values into classes no wider than ``tolerance``.

    Gaps of at most ``tolerance`` form the zero class (coincident points).
    Every other class starts at its smallest member and takes the following
    values up to ``tolerance`` above it. A class is reported at the mean of
    its members, so ``sum(counts * lengths)`` is the sum of the gaps.

    Returns (lengths, multiplicities, labels, has_zero_class) where
    ``labels[i]`` is the class index of ``gaps[i]``.
    """
    order = np.argsort(gaps, kind="stable")
    ordered = gaps[order]
    zero = int(np.searchsorted(ordered, tolerance, side="right"))
    # Runs with no step above the tolerance; only runs wider than it split
    breaks = np.flatnonzero(np.diff(ordered[zero:]) > tolerance) + zero + 1
    run_starts = np.concatenate(([zero], breaks)) if zero < ordered.size else breaks
    run_ends = np.append(breaks, ordered.size)[: run_starts.size]
    wide = ordered[run_ends - 1] - ordered[run_starts] > tolerance
    pieces = [np.array([0] if zero else [], dtype=np.int64), run_starts[~wide]]
    for start, end in zip(run_starts[wide], run_ends[wide]):
        while start < end:
            pieces.append(np.array([start], dtype=np.int64))
            limit = ordered[start] + tolerance
            start = min(int(np.searchsorted(ordered, limit, side="right")), end)
    starts = np.sort(np.concatenate(pieces)).astype(np.int64)
    counts = np.diff(np.append(starts, ordered.size))
    lengths = np.add.reduceat(ordered, starts) / counts
    labels = np.empty(gaps.size, dtype=np.int64)
    labels[order] = np.repeat(np.arange(starts.size), counts)
    return lengths, counts, labels, zero > 0


def gap_spectrum(
    ps: PointSet, grouping_tolerance: float = DEFAULT_GROUPING_TOLERANCE
) -> GapSpectrum:
    """Group the N circle gaps of a one-dimensional point set.

    A single point has one gap of length 1. Coincident points produce a
    zero-length class and a ``DuplicatePointsWarning``.
    """
    if ps.d != 1:
        raise ValueError(f"gap_spectrum requires d = 1, got d = {ps.d}")
    if grouping_tolerance < 0:
        raise ValueError("grouping_tolerance must be non-negative")
    gaps = circle_gaps(np.sort(ps.coordinates))
    lengths, counts, _, has_zero_class = group_gaps(gaps, grouping_tolerance)
    if has_zero_class:
        warnings.warn(
            f"{int(counts[0])} gaps of length <= {grouping_tolerance} "
            "(coincident points)",
            DuplicatePointsWarning,
            stacklevel=2,
        )
    return GapSpectrum(
        ps.N,
        tuple(float(length) for length in lengths),
        tuple(int(count) for count in counts),
        grouping_tolerance,
        has_zero_class,
    )


@dataclass(frozen=True)
class ThreeGapPrediction:
    N: int
    L1: float
    L2: float
    L3: float
    N1: int
    N2: int
    N3: int
    ostrowski: Optional[OstrowskiDigits]
    # The index n with q_n <= N < q_{n+1}
    top_index: int
    literal: bool = False

    def spectrum_pairs(self) -> list[tuple[float, int]]:
        """(length, multiplicity) for the lengths that actually occur."""
        pairs = [
            (self.L1, self.N1),
            (self.L2, self.N2),
            (self.L3, self.N3),
        ]
        return sorted((length, n) for length, n in pairs if n > 0)


def _reconciled(cf: CFExpansion, N: int, n: int, digits) -> ThreeGapPrediction:
    delta_n = approximation_error(cf, n)
    delta_prev = approximation_error(cf, n - 1)
    q_n, q_prev = cf.q(n), cf.q(n - 1)
    c = (N - 1 - q_prev) // q_n
    L1 = float(delta_n)
    L2 = float(delta_prev - c * delta_n)
    return ThreeGapPrediction(
        N,
        L1,
        L2,
        L1 + L2,
        N - q_n,
        N - c * q_n - q_prev,
        (c + 1) * q_n + q_prev - N,
        digits,
        n,
    )


def _literal(cf: CFExpansion, N: int, n: int, digits: OstrowskiDigits) -> ThreeGapPrediction:
    """The length and multiplicity formulas exactly as usually stated."""
    b = digits.digit
    delta_n = approximation_error(cf, n)
    delta_prev = approximation_error(cf, n - 1)
    L1 = float(delta_n)
    L2 = float(delta_prev - (b(n) - 1) * delta_n - min(b(n - 1), 1) * delta_n)
    N1 = N - cf.q(n)
    N2 = (b(n - 1) - 1) * cf.q(n - 1) + sum(b(j) * cf.q(j) for j in range(n - 1))
    return ThreeGapPrediction(
        N, L1, L2, L1 + L2, N1, N2, N - N1 - N2, digits, n, literal=True
    )


def prediction_matches(
    prediction: ThreeGapPrediction, spectrum: GapSpectrum, tolerance: float
) -> bool:
    predicted = prediction.spectrum_pairs()
    if len(predicted) != spectrum.K:
        return False
    return all(
        abs(length - measured) <= tolerance and n == count
        for (length, n), (measured, count) in zip(predicted, spectrum.gaps)
    )


def three_gap_predict(
    cf: CFExpansion,
    N: int,
    *,
    literal: bool = False,
    validate: bool = True,
    tolerance: float = DEFAULT_THREE_GAP_TOLERANCE,
) -> ThreeGapPrediction:
    """Predict the gap lengths and multiplicities of {n z}, n = 1..N.

    With n the top Ostrowski index of N, ``c = (N - 1 - q_{n-1}) // q_n`` and
    ``d_k = |q_k z - p_k|``::

        L1 = d_n                       N1 = N - q_n
        L2 = d_{n-1} - c d_n           N2 = N - c q_n - q_{n-1}
        L3 = L1 + L2                   N3 = (c + 1) q_n + q_{n-1} - N

    ``literal=True`` returns the digit-based formulas instead. With
    ``validate`` the prediction is compared against the measured spectrum
    and a ``ThreeGapMismatch`` carrying both versions is raised on
    disagreement.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if N == 1:
        return ThreeGapPrediction(1, 0.0, 1.0, 1.0, 0, 1, 0, None, 0)

    digits = ostrowski_expand(N, cf)
    n = digits.top_index
    reconciled = _reconciled(cf, N, n, digits)
    stated = _literal(cf, N, n, digits)
    prediction = stated if literal else reconciled
    if validate:
        spec = SequenceSpec.kronecker(cf.value, warn_near_rational=False)
        empirical = gap_spectrum(generate(spec, N))
        if not prediction_matches(prediction, empirical, tolerance):
            raise ThreeGapMismatch(
                f"Three gap prediction for N={N} disagrees with the measured "
                f"spectrum: predicted {prediction.spectrum_pairs()}, "
                f"measured {empirical.gaps}",
                predicted=reconciled,
                literal=stated,
                empirical=empirical,
            )
    return prediction


@dataclass(frozen=True)
class GapFamily:
    """One gap length followed across the N values."""

    index: int
    lengths: tuple[float, ...]
    # N_i^alpha * L
    trajectory: tuple[float, ...]
    # N_i * L
    scaled: tuple[float, ...]
    label: str

    @property
    def k_min(self) -> float:
        return min(self.trajectory) if self.trajectory else math.nan

    @property
    def k_max(self) -> float:
        return max(self.trajectory) if self.trajectory else math.nan


@dataclass(frozen=True)
class GapClassification:
    alpha: float
    N_list: tuple[int, ...]
    families: tuple[GapFamily, ...]
    # "rank", "continuation" or "none"
    matching: str
    reason: str = ""

    def labels(self) -> list[str]:
        return [family.label for family in self.families]


def _decreases_to(values: Sequence[float], limit: float) -> bool:
    first, last = values[0], values[-1]
    return last > 0 and first / last >= _TREND_FACTOR and last < limit


def _label(trajectory: Sequence[float]) -> str:
    values = np.asarray(trajectory, dtype=np.float64)
    if values.size == 0 or not np.all(np.isfinite(values)) or np.any(values <= 0):
        return UNDETERMINED
    if _decreases_to(values, _SMALL_LIMIT):
        return ALPHA_SMALL
    if values[-1] / values[0] >= _TREND_FACTOR and values[-1] > _LARGE_LIMIT:
        return ALPHA_LARGE
    if values.max() / values.min() <= _BAND_RATIO:
        return ALPHA_INTERMEDIATE
    return UNDETERMINED


def _match_by_continuation(positive, Ns, alpha):
    """Follow each first-spectrum length to the nearest trajectory value.

    Returns a list of length lists; a family whose nearest continuation is
    shared with another family is cut short (None) and ends up undetermined.
    """
    families: list[Optional[list[float]]] = [[length] for length in positive[0]]
    for lengths, N in zip(positive[1:], Ns[1:]):
        if not lengths:
            return [None] * len(families)
        candidates = np.log(np.asarray(lengths) * N**alpha)
        choices = {}
        for j, family in enumerate(families):
            if family is None:
                continue
            previous = math.log(family[-1] * Ns[len(family) - 1] ** alpha)
            choices[j] = int(np.argmin(np.abs(candidates - previous)))
        taken = list(choices.values())
        for j, choice in choices.items():
            if taken.count(choice) > 1:
                families[j] = None
            else:
                families[j].append(lengths[choice])
    return families


def classify_spectra(spectra: Sequence[GapSpectrum], alpha: float) -> GapClassification:
    """Label gap families of precomputed spectra (increasing N).

    Families are matched by rank when every spectrum has the same number of
    lengths, otherwise by nearest trajectory continuation. A spectrum whose
    number of lengths is unbounded in practice (above the finite-gap limit,
    or at least doubling over the list) yields no families.
    """
    if len(spectra) < 4:
        raise ValueError("N_list needs at least 4 entries")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must be in (0, 1]")
    Ns = [spectrum.N for spectrum in spectra]
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("N_list must be strictly increasing")

    positive = [list(spectrum.positive_lengths) for spectrum in spectra]
    Ks = [len(lengths) for lengths in positive]
    if max(Ks) > DEFAULT_MAX_GAP_LENGTHS or (Ks[-1] >= 2 * Ks[0] and Ks[-1] > 3):
        return GapClassification(
            alpha,
            tuple(Ns),
            (),
            "none",
            f"number of gap lengths grows from {Ks[0]} to {Ks[-1]}; "
            "not a finite-gap sequence",
        )

    if len(set(Ks)) == 1:
        matching = "rank"
        matched = [[lengths[j] for lengths in positive] for j in range(Ks[0])]
    else:
        matching = "continuation"
        matched = _match_by_continuation(positive, Ns, alpha)

    families = []
    for j, lengths in enumerate(matched):
        if lengths is None or len(lengths) != len(Ns):
            families.append(GapFamily(j, (), (), (), UNDETERMINED))
            continue
        trajectory = tuple(N**alpha * length for N, length in zip(Ns, lengths))
        scaled = tuple(N * length for N, length in zip(Ns, lengths))
        families.append(
            GapFamily(j, tuple(lengths), trajectory, scaled, _label(trajectory))
        )
    return GapClassification(alpha, tuple(Ns), tuple(families), matching)


def classify_gaps(
    spec: SequenceSpec,
    alpha: float,
    N_list: Sequence[int],
    grouping_tolerance: float = DEFAULT_GROUPING_TOLERANCE,
) -> GapClassification:
    if spec.dimension != 1:
        raise ValueError("gap classification requires d = 1")
    if len(N_list) < 4:
        raise ValueError("N_list needs at least 4 entries")
    if min(N_list) < 2:
        raise ValueError("every N must be at least 2")
    ps = generate(spec, max(N_list))
    spectra = [gap_spectrum(ps.head(N), grouping_tolerance) for N in N_list]
    classification = classify_spectra(spectra, alpha)
    logger.debug(
        "classified {} gap families of {} by {}",
        len(classification.families),
        spec.kind,
        classification.matching,
    )
    return classification


@dataclass(frozen=True)
class ObstructionReport:
    alpha: float
    # None when the classification is inconclusive
    obstruction_1: Optional[bool]
    obstruction_2: Optional[bool]
    # "indicated", "not_indicated" or "inconclusive"
    status: str
    classification: GapClassification


def _obstructions(classification: GapClassification) -> ObstructionReport:
    families = classification.families
    alpha = classification.alpha
    if not families or any(family.label == UNDETERMINED for family in families):
        return ObstructionReport(alpha, None, None, "inconclusive", classification)
    first = any(family.label == ALPHA_INTERMEDIATE for family in families)
    small = [family for family in families if family.label == ALPHA_SMALL]
    second = bool(small) and _decreases_to(small[-1].scaled, _SMALL_LIMIT)
    status = "indicated" if first or second else "not_indicated"
    return ObstructionReport(alpha, first, second, status, classification)


def check_obstructions(
    spec: SequenceSpec,
    alpha: float,
    N_list: Sequence[int],
    grouping_tolerance: float = DEFAULT_GROUPING_TOLERANCE,
) -> ObstructionReport:
    """Obstruction 1: some family is intermediate. Obstruction 2: the largest
    small family still has ``N * L -> 0``."""
    return _obstructions(classify_gaps(spec, alpha, N_list, grouping_tolerance))


def obstructions_from_spectra(
    spectra: Sequence[GapSpectrum], alpha: float
) -> ObstructionReport:
    return _obstructions(classify_spectra(spectra, alpha))


@dataclass(frozen=True)
class KroneckerGapWindow:
    lower: float
    upper: float
    smallest: float
    largest: float

    @property
    def holds(self) -> bool:
        return self.lower < self.smallest and self.largest < self.upper


def kronecker_gap_bounds(spectrum: GapSpectrum, R: int) -> KroneckerGapWindow:
    """Every gap of a Kronecker sequence whose partial quotients are at most R
    lies strictly between ``1/((R+2)^2 N)`` and ``(R+2)^2 / N``."""
    if R < 1:
        raise ValueError("R must be at least 1")
    lengths = spectrum.positive_lengths
    if not lengths:
        raise ValueError("spectrum has no positive gap lengths")
    factor = Fraction((R + 2) ** 2)
    return KroneckerGapWindow(
        float(1 / (factor * spectrum.N)),
        float(factor / spectrum.N),
        min(lengths),
        max(lengths),
    )
