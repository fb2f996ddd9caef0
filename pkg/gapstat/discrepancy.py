"""Star and extreme discrepancy, plus the gap-based and pair-correlation-based bounds.

One-dimensional values are exact closed forms over the sorted points. In
two and three dimensions the supremum over boxes ``[0, b)`` is taken over
the grid of point coordinates (plus 1), which is exact but costs
``O(N^d)``; beyond the budget a random-box probe gives a lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from .base import (
    DEFAULT_GROUPING_TOLERANCE,
    DEFAULT_MAX_GAP_LENGTHS,
    DEFAULT_MD_GRID_CELLS,
    DEFAULT_MD_MAX_POINTS,
    DEFAULT_SEED,
    ComputationBudgetExceeded,
    NonFiniteGapSpectrum,
    PointSet,
)
from .gaps import circle_gaps, group_gaps
from .pair_correlation import deviation_statistic

EXACT_1D = "exact_1d"
GRID_MD = "grid_md"

# Below this N a pc-bound violation may be an N_0 effect
PC_BOUND_ASYMPTOTIC_N = 10_000

_WINDOW_SLACK = 1e-12


@dataclass(frozen=True)
class Box:
    """The anchored box ``[0, upper)``, or ``[0, upper]`` when ``closed``."""

    upper: tuple[float, ...]
    closed: bool

    def describe(self) -> str:
        bracket = "]" if self.closed else ")"
        inner = ", ".join(repr(value) for value in self.upper)
        return f"[0, ({inner}){bracket}"


@dataclass(frozen=True)
class DiscrepancyReport:
    N: int
    star: float
    # Only computed for d = 1
    extreme: Optional[float]
    method: str
    witness: Box


def _sorted_1d(ps: PointSet) -> np.ndarray:
    if ps.d != 1:
        raise ValueError(f"requires d = 1, got d = {ps.d}")
    if ps.N < 1:
        raise ValueError("need at least one point")
    return np.sort(ps.coordinates)


def _star_from_sorted(xs: np.ndarray) -> tuple[float, Box]:
    N = xs.size
    n = np.arange(1, N + 1)
    centered = xs - (2 * n - 1) / (2 * N)
    k = int(np.argmax(np.abs(centered)))
    star = 1 / (2 * N) + abs(float(centered[k]))
    # x*_k too large: [0, x*_k) holds too few points; too small: [0, x*_k] too many
    return star, Box((float(xs[k]),), closed=bool(centered[k] < 0))


def star_discrepancy_1d(ps: PointSet) -> DiscrepancyReport:
    """``D* = 1/(2N) + max_n |x*_n - (2n - 1)/(2N)|`` over the sorted points."""
    xs = _sorted_1d(ps)
    star, witness = _star_from_sorted(xs)
    return DiscrepancyReport(
        xs.size, star, _extreme_from_sorted(xs), EXACT_1D, witness
    )


def _extreme_from_sorted(xs: np.ndarray) -> float:
    N = xs.size
    offsets = np.arange(1, N + 1) / N - xs
    return 1 / N + float(offsets.max()) - float(offsets.min())


def extreme_discrepancy_1d(ps: PointSet) -> float:
    """``D = 1/N + max_n (n/N - x*_n) - min_n (n/N - x*_n)``.

    The supremum runs over all intervals ``[a, b)`` in [0, 1), so a single
    point gives 1 (a vanishing interval around it).
    """
    return _extreme_from_sorted(_sorted_1d(ps))


def _md_budget(N: int, d: int, max_points: int, max_cells: int) -> None:
    cells = (N + 2) ** d
    if N <= max_points and cells <= max_cells:
        return
    suggested = min(max_points, int(math.floor(max_cells ** (1 / d))) - 2)
    raise ComputationBudgetExceeded(
        f"exact star discrepancy of N={N} points in d={d} needs about "
        f"{cells:.3g} grid cells (budget {max_cells:.3g}, N <= {max_points}); "
        "use random_box_lower_bound for a lower bound",
        suggested_n=max(suggested, 1),
    )


def star_discrepancy_md(
    ps: PointSet,
    *,
    max_points: int = DEFAULT_MD_MAX_POINTS,
    max_cells: int = DEFAULT_MD_GRID_CELLS,
) -> DiscrepancyReport:
    """Exact star discrepancy for d <= 3 over the critical grid.

    Each upper corner coordinate ranges over the distinct point coordinates
    and 1. At a grid corner the open box undercounts by the points on its
    upper faces and the closed box counts them, so both are evaluated.
    """
    N, d = ps.N, ps.d
    if d > 3:
        raise ValueError("exact star discrepancy supports d <= 3")
    if N < 1:
        raise ValueError("need at least one point")
    _md_budget(N, d, max_points, max_cells)

    grids = [np.append(np.unique(ps.points[:, k]), 1.0) for k in range(d)]
    # x == grids[k][rank]; a point counts towards corner g when rank < g
    ranks = tuple(
        np.searchsorted(grid, ps.points[:, k], side="left") + 1
        for k, grid in enumerate(grids)
    )
    counts = np.zeros(tuple(grid.size + 1 for grid in grids), dtype=np.int32)
    np.add.at(counts, ranks, 1)
    for axis in range(d):
        counts = np.cumsum(counts, axis=axis, dtype=np.int32)

    rest_volume = reduce(np.multiply.outer, grids[1:]) if d > 1 else np.ones(())
    open_inner = tuple(slice(0, grid.size) for grid in grids[1:])
    closed_inner = tuple(slice(1, grid.size + 1) for grid in grids[1:])

    best, witness = -math.inf, None
    for g, corner in enumerate(grids[0]):
        volume = corner * rest_volume
        open_excess = volume - counts[g][open_inner] / N
        closed_excess = counts[g + 1][closed_inner] / N - volume
        for excess, closed in ((open_excess, False), (closed_excess, True)):
            excess = np.atleast_1d(excess)
            index = np.unravel_index(int(np.argmax(excess)), excess.shape)
            value = float(excess[index])
            if value > best:
                upper = (float(corner),) + tuple(
                    float(grid[i]) for grid, i in zip(grids[1:], index)
                )
                best, witness = value, Box(upper, closed)

    extreme = _extreme_from_sorted(np.sort(ps.points[:, 0])) if d == 1 else None
    logger.debug("exact star discrepancy of {} points in d={}: {}", N, d, best)
    return DiscrepancyReport(N, best, extreme, GRID_MD, witness)


@dataclass(frozen=True)
class LowerBoundProbe:
    """``max |A([0, b)) / N - vol|`` over random corners; never above D*."""

    value: float
    trials: int
    seed: int
    witness: Box


def random_box_lower_bound(
    ps: PointSet, trials: int = 10_000, seed: int = DEFAULT_SEED, chunk: int = 512
) -> LowerBoundProbe:
    if trials < 1:
        raise ValueError("trials must be greater than zero")
    rng = np.random.default_rng(seed)
    corners = rng.random((trials, ps.d))
    best, witness = -1.0, None
    for start in range(0, trials, chunk):
        block = corners[start : start + chunk]
        inside = np.all(ps.points[None, :, :] < block[:, None, :], axis=2)
        deviation = np.abs(inside.sum(axis=1) / ps.N - np.prod(block, axis=1))
        k = int(np.argmax(deviation))
        if deviation[k] > best:
            best = float(deviation[k])
            witness = Box(tuple(float(c) for c in block[k]), closed=False)
    return LowerBoundProbe(best, trials, seed, witness)


def star_discrepancy_prefixes(ps: PointSet, n_values: Sequence[int]) -> np.ndarray:
    """Exact ``D*_N`` of the first N points for every N in ``n_values``."""
    xs = ps.coordinates
    order = np.argsort(xs, kind="stable")
    ordered = xs[order]
    values = np.empty(len(n_values), dtype=np.float64)
    for i, N in enumerate(n_values):
        if not 1 <= N <= ps.N:
            raise ValueError(f"N must be between 1 and {ps.N}, got {N}")
        values[i] = _star_from_sorted(ordered[order < N])[0]
    return values


@dataclass(frozen=True)
class VdcCountingCheck:
    N: int
    base: int
    # Smallest e with N <= b^e - 1
    e: int
    deviation: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.deviation <= self.bound


def vdc_counting_deviation(ps: PointSet, base: int) -> VdcCountingCheck:
    """``max_k |N x_k - #{n : x_n < x_k}|`` against ``e (b - 1)/2 + 1``."""
    if base < 2:
        raise ValueError("base must be at least 2")
    xs = _sorted_1d(ps)
    N = xs.size
    below = np.searchsorted(xs, xs, side="left")
    deviation = float(np.max(np.abs(N * xs - below)))
    e = 1
    while base**e - 1 < N:
        e += 1
    return VdcCountingCheck(N, base, e, deviation, e * (base - 1) / 2 + 1)


@dataclass(frozen=True)
class GapBoundReport:
    N: int
    K: int
    lengths: tuple[float, ...]
    multiplicities: tuple[int, ...]
    R: float
    epsilon: float
    bound: float
    measured_star: float

    @property
    def satisfied(self) -> bool:
        return self.measured_star <= self.bound

    @property
    def implied_log_constant(self) -> float:
        """epsilon / log N, bounded for van der Corput sequences."""
        return self.epsilon / math.log(self.N) if self.N > 1 else math.nan


def gap_based_bound(
    ps: PointSet, grouping_tolerance: float = DEFAULT_GROUPING_TOLERANCE
) -> GapBoundReport:
    """``D* <= (R + 3)/N + eps * sum(L_k)`` for finite-gap point sets.

    ``n_k(j)`` counts gaps of class k among the j - 1 gaps between x*_1 and
    x*_j and is compared with ``(N_k / N) j``; ``R = N L_K - 2``.
    """
    xs = _sorted_1d(ps)
    N = xs.size
    lengths, counts, labels, _ = group_gaps(circle_gaps(xs), grouping_tolerance)
    K = lengths.size
    if K > DEFAULT_MAX_GAP_LENGTHS:
        raise NonFiniteGapSpectrum(K)

    running = np.zeros((N, K), dtype=np.int64)
    running[1:] = np.cumsum(np.eye(K, dtype=np.int64)[labels[: N - 1]], axis=0)
    expected = np.outer(np.arange(1, N + 1), counts / N)
    epsilon = float(np.max(np.abs(running - expected)))
    R = N * float(lengths[-1]) - 2
    bound = (R + 3) / N + epsilon * float(np.sum(lengths))
    star, _ = _star_from_sorted(xs)
    return GapBoundReport(
        N,
        K,
        tuple(float(length) for length in lengths),
        tuple(int(count) for count in counts),
        R,
        epsilon,
        bound,
        star,
    )


@dataclass(frozen=True)
class PCBoundReport:
    N: int
    alpha: float
    K: int
    F_value: float
    bound: float
    # N^alpha * D*
    measured: float
    star: float

    @property
    def satisfied(self) -> bool:
        return self.measured <= self.bound

    @property
    def scaled_star(self) -> float:
        return self.N * self.star

    @property
    def below_n0_candidate(self) -> bool:
        """A violation small enough in N to be blamed on the unknown N_0."""
        return not self.satisfied and self.N < PC_BOUND_ASYMPTOTIC_N


def _pc_window(N: int, alpha: float) -> float:
    return N ** (2 * alpha / 5)


def minimum_n_for_pc_bound(alpha: float) -> int:
    """Smallest N with ``floor(N^(2 alpha/5))^2 <= N/2``."""
    if not 0 < alpha <= 1:
        raise ValueError("alpha must be in (0, 1]")
    N = 2
    while math.floor(_pc_window(N, alpha) * (1 + _WINDOW_SLACK)) ** 2 > N / 2:
        N += 1
    return N


def pc_based_bound(ps: PointSet, alpha: float, K: Optional[int] = None) -> PCBoundReport:
    """``N^alpha D* <= 5 max(N^(1 - alpha/5), sqrt(N^alpha F(K^2, N)))``.

    K defaults to ``floor(N^(2 alpha/5))``, the top of the allowed window
    ``[N^(2 alpha/5)/2, N^(2 alpha/5)]``.
    """
    xs = _sorted_1d(ps)
    N = xs.size
    if not 0 < alpha <= 1:
        raise ValueError("alpha must be in (0, 1]")
    window = _pc_window(N, alpha)
    if K is None:
        K = math.floor(window * (1 + _WINDOW_SLACK))
    if not window / 2 * (1 - _WINDOW_SLACK) <= K <= window * (1 + _WINDOW_SLACK):
        raise ValueError(
            f"K={K} is outside [{window / 2:.6g}, {window:.6g}] for N={N}, alpha={alpha}"
        )
    if K < 1 or K * K > N / 2:
        raise ComputationBudgetExceeded(
            f"K^2 = {K * K} exceeds N/2 = {N / 2} for alpha={alpha}",
            suggested_n=minimum_n_for_pc_bound(alpha),
        )
    F = deviation_statistic(ps, K * K, alpha).value
    bound = 5 * max(N ** (1 - alpha / 5), math.sqrt(N**alpha * F))
    star, _ = _star_from_sorted(xs)
    return PCBoundReport(N, alpha, K, F, bound, N**alpha * star, star)
