import itertools
from fractions import Fraction

import numpy as np
import pytest

from gapstat.base import PointSet
from gapstat.pair_correlation import TIE_TOLERANCE


def _equispaced(N, shift=0.0):
    """The lattice (k + shift) / N, k = 0..N-1, each point rounded once from the exact value."""
    shift = Fraction(shift)
    return PointSet.from_array([float((k + shift) / N) for k in range(N)])


def _naive_pair_count(points, radius, strict=False):
    """Ordered pairs l != m within ``radius`` under the torus max norm, by direct loop."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    N = points.shape[0]
    count = 0
    for l in range(N):
        for m in range(N):
            if l == m:
                continue
            distance = 0.0
            for a, b in zip(points[l], points[m]):
                d = abs(a - b)
                distance = max(distance, min(d, 1.0 - d))
            # Within TIE_TOLERANCE of the radius counts as on it
            if strict:
                inside = distance < radius - TIE_TOLERANCE
            else:
                inside = distance <= radius + TIE_TOLERANCE
            count += int(inside)
    return count


def _brute_force_star_1d(xs):
    """sup |A([0, b)) / N - b| over critical b: the points themselves and 1."""
    xs = np.asarray(xs, dtype=np.float64)
    N = xs.size
    best = 0.0
    for b in list(xs) + [1.0]:
        open_count = np.count_nonzero(xs < b)
        closed_count = np.count_nonzero(xs <= b)
        best = max(best, b - open_count / N, closed_count / N - b)
    return best


def _brute_force_extreme_1d(xs):
    """sup |A([a, b)) / N - (b - a)| over all intervals in [0, 1).

    Overcounting peaks on closed intervals [x_i, x_j]; undercounting on open
    gaps (a, b) with a, b among 0, the points and 1.
    """
    xs = np.sort(np.asarray(xs, dtype=np.float64))
    N = xs.size
    best = 0.0
    for i in range(N):
        for j in range(i, N):
            inside = np.count_nonzero((xs >= xs[i]) & (xs <= xs[j]))
            best = max(best, inside / N - (xs[j] - xs[i]))
    ends = [0.0] + list(xs) + [1.0]
    for a, b in itertools.combinations(ends, 2):
        if b <= a:
            continue
        inside = np.count_nonzero((xs > a) & (xs < b))
        best = max(best, (b - a) - inside / N)
    return best


def _brute_force_star_md(points):
    """Star discrepancy of a small d-dimensional set by checking every grid corner."""
    points = np.asarray(points, dtype=np.float64)
    N, d = points.shape
    axes = [sorted(set(points[:, k]) | {1.0}) for k in range(d)]
    best = 0.0
    for corner in itertools.product(*axes):
        corner = np.array(corner)
        volume = float(np.prod(corner))
        open_count = np.count_nonzero(np.all(points < corner, axis=1))
        closed_count = np.count_nonzero(np.all(points <= corner, axis=1))
        best = max(best, volume - open_count / N, closed_count / N - volume)
    return best


@pytest.fixture
def random_points():
    """Factory for reproducible uniform point sets."""

    def make(N, d=1, seed=0):
        rng = np.random.default_rng(seed)
        return PointSet(rng.random((N, d)))

    return make


@pytest.fixture
def golden_cf():
    from gapstat.continued_fractions import GOLDEN_MEAN, cf_expand

    return cf_expand(GOLDEN_MEAN)


@pytest.fixture
def sqrt2_cf():
    from gapstat.continued_fractions import SQRT2, cf_expand

    return cf_expand(SQRT2)


@pytest.fixture
def clean_plugins():
    """Unregister any plugin a test registers on the global manager."""
    from gapstat.plugins import pm

    registered = []
    yield registered
    for plugin in registered:
        pm.unregister(plugin)
