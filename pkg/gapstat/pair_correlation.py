"""Pair counting on the torus under the max norm and the statistics built on it.

The distance between two points is the largest coordinate-wise torus
distance ``min(|a - b|, 1 - |a - b|)``. Counts are of ordered pairs
``(l, m)`` with ``l != m``. A distance within ``TIE_TOLERANCE`` of the
radius is treated as lying on it, so lattices such as ``k / 10`` whose
differences round a few ulps off ``1 / 10`` count the same way as exact
ties. With that rule the fast paths agree with a direct double loop over
every pair.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import linregress

from .base import PointSet, SaturatedStatisticWarning, SequenceSpec
from .generators import generate

# alpha may equal 1/d up to rounding of the caller's literal
_ALPHA_SLACK = 1e-12

# Coordinates live in [0, 1), so differences carry at most a few ulps of 1
TIE_TOLERANCE = 4 * float(np.finfo(np.float64).eps)

# (rows x radii) cells examined per block of the one-dimensional sweep
_SWEEP_CELLS = 1 << 22


def _radius(s: float, N: int, alpha: float) -> float:
    return s / N**alpha


def _check_radius(radius: float) -> None:
    if not math.isfinite(radius) or radius < 0:
        raise ValueError(f"radius must be finite and non-negative, got {radius}")


def _limits(radii: np.ndarray, strict: bool) -> np.ndarray:
    """Thresholds ``t`` such that a distance counts exactly when ``d < t``."""
    if strict:
        return radii - TIE_TOLERANCE
    # d <= r + tol is d < nextafter(r + tol)
    return np.nextafter(radii + TIE_TOLERANCE, np.inf)


def _prefix_ends(xs: np.ndarray, rows: np.ndarray, limits: np.ndarray) -> np.ndarray:
    """For each row i and limit, the first j > i with ``xs[j] - xs[i] >= limit`` (or N)."""
    N = xs.size
    shape = (rows.size, limits.size)
    base = np.broadcast_to(xs[rows][:, None], shape)
    lim = np.broadcast_to(limits, shape)
    low = np.broadcast_to((rows + 1)[:, None], shape)
    ends = np.maximum(np.searchsorted(xs, base + lim, side="left"), low)
    # The guess uses a rounded sum; walk to the exact boundary.
    while True:
        move = ends < N
        move[move] = xs[ends[move]] - base[move] < lim[move]
        if not move.any():
            break
        ends[move] += 1
    while True:
        move = ends > low
        move[move] = xs[ends[move] - 1] - base[move] >= lim[move]
        if not move.any():
            break
        ends[move] -= 1
    return ends


def _suffix_starts(xs: np.ndarray, rows: np.ndarray, limits: np.ndarray) -> np.ndarray:
    """For each row i and limit, the first j > i with ``1 - (xs[j] - xs[i]) < limit`` (or N)."""
    N = xs.size
    shape = (rows.size, limits.size)
    base = np.broadcast_to(xs[rows][:, None], shape)
    lim = np.broadcast_to(limits, shape)
    low = np.broadcast_to((rows + 1)[:, None], shape)
    starts = np.maximum(np.searchsorted(xs, base + (1.0 - lim), side="left"), low)
    while True:
        move = starts > low
        move[move] = 1.0 - (xs[starts[move] - 1] - base[move]) < lim[move]
        if not move.any():
            break
        starts[move] -= 1
    while True:
        move = starts < N
        move[move] = 1.0 - (xs[starts[move]] - base[move]) >= lim[move]
        if not move.any():
            break
        starts[move] += 1
    return starts


def _count_sorted_1d(xs: np.ndarray, limits: np.ndarray) -> np.ndarray:
    """Unordered pairs i < j of a sorted array closer than each limit, in one sweep."""
    N = xs.size
    totals = np.zeros(limits.size, dtype=np.int64)
    if N < 2 or limits.size == 0:
        return totals
    block = max(1, _SWEEP_CELLS // limits.size)
    for first in range(0, N, block):
        rows = np.arange(first, min(first + block, N))
        ends = _prefix_ends(xs, rows, limits)
        starts = _suffix_starts(xs, rows, limits)
        near = ends - rows[:, None] - 1
        wrapped = N - starts
        overlap = np.maximum(ends - starts, 0)
        totals += np.sum(near + wrapped - overlap, axis=0, dtype=np.int64)
    return totals


def pair_counts(ps: PointSet, radii, strict: bool = False) -> np.ndarray:
    """Ordered pair counts for several radii at once."""
    radii = np.atleast_1d(np.asarray(radii, dtype=np.float64))
    for radius in radii:
        _check_radius(float(radius))
    if ps.N < 2:
        return np.zeros(radii.size, dtype=np.int64)
    limits = _limits(radii, strict)
    if ps.d == 1:
        return 2 * _count_sorted_1d(np.sort(ps.coordinates), limits)
    # count_neighbors counts d <= r
    effective = np.nextafter(np.maximum(limits, 0.0), -np.inf)
    tree = cKDTree(ps.points, boxsize=1.0)
    counts = np.atleast_1d(tree.count_neighbors(tree, np.maximum(effective, 0.0), p=np.inf))
    counts = counts.astype(np.int64) - ps.N
    counts[limits <= 0] = 0
    return counts


def pair_count(ps: PointSet, radius: float, strict: bool = False) -> int:
    """Ordered pairs (l, m), l != m, at distance <= radius (< radius if strict)."""
    return int(pair_counts(ps, [radius], strict)[0])


@dataclass(frozen=True)
class PairCorrelationPoint:
    N: int
    s: float
    alpha: float
    dimension: int
    raw_count: int
    ball_volume: float
    value: float
    strict: bool = False
    # The ball covers the whole torus in every coordinate
    saturated: bool = False

    @property
    def radius(self) -> float:
        return _radius(self.s, self.N, self.alpha)


def _check_alpha(alpha: float, d: int) -> None:
    if not 0 < alpha <= 1 / d + _ALPHA_SLACK:
        raise ValueError(f"alpha must be in (0, 1/d] = (0, {1 / d:.6g}], got {alpha}")


def pair_correlation(
    ps: PointSet, s: float, alpha: float, strict: bool = False
) -> PairCorrelationPoint:
    """``raw_count / (N^2 * vol)``, vol being the clipped max-norm ball at s N^-alpha."""
    if s <= 0:
        raise ValueError("s must be greater than zero")
    _check_alpha(alpha, ps.d)
    radius = _radius(s, ps.N, alpha)
    saturated = 2 * radius >= 1
    if saturated:
        warnings.warn(
            f"s N^-alpha = {radius:.6g} >= 1/2: the ball covers the torus and "
            "the statistic saturates",
            SaturatedStatisticWarning,
            stacklevel=2,
        )
    volume = min(2 * radius, 1.0) ** ps.d
    raw = pair_count(ps, radius, strict)
    return PairCorrelationPoint(
        ps.N,
        s,
        alpha,
        ps.d,
        raw,
        volume,
        raw / (ps.N**2 * volume),
        strict,
        saturated,
    )


def classical_pair_correlation(ps: PointSet, s: float) -> float:
    """``#{pairs within s/N} / N``, which tends to 2s for Poissonian pair correlations."""
    if ps.d != 1:
        raise ValueError("the classical statistic is one-dimensional")
    if s <= 0:
        raise ValueError("s must be greater than zero")
    return pair_count(ps, s / ps.N) / ps.N


@dataclass(frozen=True)
class ConvergenceFit:
    """Least-squares fit of log|value - 1| against log N for one s."""

    s: float
    slope: Optional[float]
    intercept: Optional[float]
    r_squared: Optional[float]
    first_deviation: float
    last_deviation: float

    @property
    def halved(self) -> bool:
        return self.last_deviation <= self.first_deviation / 2


@dataclass(frozen=True)
class NumberVarianceCurve:
    alpha: float
    rows: tuple[PairCorrelationPoint, ...]
    fits: tuple[ConvergenceFit, ...]

    def rows_for(self, s: float) -> list[PairCorrelationPoint]:
        return [row for row in self.rows if row.s == s]


def _fit(s: float, rows: Sequence[PairCorrelationPoint]) -> ConvergenceFit:
    deviations = [abs(row.value - 1) for row in rows]
    usable = [(row.N, dev) for row, dev in zip(rows, deviations) if dev > 0]
    slope = intercept = r_squared = None
    if len({N for N, _ in usable}) >= 2:
        result = linregress(
            [math.log(N) for N, _ in usable], [math.log(dev) for _, dev in usable]
        )
        slope, intercept = float(result.slope), float(result.intercept)
        r_squared = float(result.rvalue**2)
    return ConvergenceFit(s, slope, intercept, r_squared, deviations[0], deviations[-1])


def _check_N_list(N_list: Sequence[int]) -> list[int]:
    N_list = [int(N) for N in N_list]
    if not N_list:
        raise ValueError("N_list must not be empty")
    if min(N_list) < 1:
        raise ValueError("every N must be at least 1")
    if any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ValueError("N_list must be strictly increasing")
    return N_list


def number_variance_curve(
    spec: SequenceSpec,
    alpha: float,
    s_values: Sequence[float],
    N_list: Sequence[int],
    strict: bool = False,
) -> NumberVarianceCurve:
    """Pair correlations over an (N, s) grid with a convergence fit per s.

    All N share one generated prefix, so row N uses the first N points.
    """
    N_list = _check_N_list(N_list)
    if not s_values:
        raise ValueError("s_values must not be empty")
    _check_alpha(alpha, spec.dimension)
    ps = generate(spec, N_list[-1])
    rows = tuple(
        pair_correlation(ps.head(N), s, alpha, strict) for N in N_list for s in s_values
    )
    fits = tuple(_fit(s, [row for row in rows if row.s == s]) for s in s_values)
    return NumberVarianceCurve(alpha, rows, fits)


@dataclass(frozen=True)
class AlphaTrend:
    s: float
    N_list: tuple[int, ...]
    # (alpha, N, |value - 1|)
    rows: tuple[tuple[float, int, float], ...]
    # Larger alpha gives a larger deviation at the largest N
    monotone_at_largest_n: bool


def alpha_trend(
    spec: SequenceSpec,
    alphas: Sequence[float],
    s: float,
    N_list: Sequence[int],
    strict: bool = False,
) -> AlphaTrend:
    """|F^alpha(s) - 1| for several exponents; reported, not asserted."""
    N_list = _check_N_list(N_list)
    alphas = sorted(alphas)
    if not alphas:
        raise ValueError("alphas must not be empty")
    for alpha in alphas:
        _check_alpha(alpha, spec.dimension)
    ps = generate(spec, N_list[-1])
    rows = tuple(
        (alpha, N, abs(pair_correlation(ps.head(N), s, alpha, strict).value - 1))
        for alpha in alphas
        for N in N_list
    )
    final = [deviation for _, N, deviation in rows if N == N_list[-1]]
    monotone = all(a <= b for a, b in zip(final, final[1:]))
    return AlphaTrend(s, tuple(N_list), rows, monotone)


@dataclass(frozen=True)
class DeviationStatistic:
    K: int
    N: int
    alpha: float
    value: float
    # |count_s / 2s - N^(2 - alpha)| for s = 1..K
    terms: tuple[float, ...]
    counts: tuple[int, ...]


def deviation_statistic(ps: PointSet, K: int, alpha: float) -> DeviationStatistic:
    """``F(K, N) = max_{s <= K} |#{pairs closer than s/N^alpha} / 2s - N^(2-alpha)|``.

    Pairs are counted with a strict inequality. A single point has no pairs
    and ``F = 1`` for any K.
    """
    if ps.d != 1:
        raise ValueError("deviation_statistic requires d = 1")
    if K < 1:
        raise ValueError("K must be at least 1")
    if ps.N > 1 and K > ps.N / 2:
        raise ValueError(f"K={K} exceeds N/2 = {ps.N / 2}")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must be in (0, 1]")
    s = np.arange(1, K + 1)
    radii = s / ps.N**alpha
    counts = pair_counts(ps, radii, strict=True)
    target = ps.N ** (2 - alpha)
    terms = np.abs(counts / (2 * s) - target)
    return DeviationStatistic(
        K,
        ps.N,
        alpha,
        float(terms.max()),
        tuple(float(term) for term in terms),
        tuple(int(count) for count in counts),
    )
