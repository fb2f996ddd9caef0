from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from typing_extensions import Self

# Numerical defaults shared by the library, the suites and the CLI so the
# documented and enforced limits cannot drift.
DEFAULT_GROUPING_TOLERANCE = 1e-9
DEFAULT_CF_TERMS = 64
DEFAULT_PRECISION_LIMIT = 1e-9
DEFAULT_MAX_GAP_LENGTHS = 64
DEFAULT_MD_MAX_POINTS = 3000
DEFAULT_MD_GRID_CELLS = 12_000_000
DEFAULT_THREADS = 1
DEFAULT_SEED = 0

INT64_MAX = 2**63 - 1


class GapstatWarning(UserWarning):
    """Base category for numerical conditions a caller should know about."""


class NearRationalWarning(GapstatWarning):
    """A Kronecker parameter is rational, or nearly so, at working precision."""


class SaturatedStatisticWarning(GapstatWarning):
    """The pair-correlation ball covers the whole torus in some coordinate."""


class DuplicatePointsWarning(GapstatWarning):
    """Some circle gaps are zero within the grouping tolerance."""


class PrecisionBudgetExceeded(ValueError):
    """Generated coordinates would lose more absolute precision than allowed."""

    def __init__(self, message: str, *, N: int, error: float, limit: float):
        super().__init__(message)
        self.N = N
        self.error = error
        self.limit = limit

    @classmethod
    def for_count(cls, N: int, error: float, limit: float) -> Self:
        return cls(
            f"N={N} would lose up to {error:.3g} absolute precision "
            f"(limit {limit:.3g}); enable extended precision or use a smaller N",
            N=N,
            error=error,
            limit=limit,
        )


class ConvergentOverflow(OverflowError):
    """A convergent denominator left the signed 64-bit range."""

    def __init__(self, index: int, last_safe_index: int):
        super().__init__(
            f"q_{index} exceeds {INT64_MAX}; last safe index is {last_safe_index}"
        )
        self.index = index
        self.last_safe_index = last_safe_index


class InsufficientConvergents(ValueError):
    """The expansion is too short to represent N; expand cf further."""

    def __init__(self, N: int, largest_denominator: int):
        super().__init__(
            f"Largest stored denominator {largest_denominator} does not exceed "
            f"N={N}: expand cf further"
        )
        self.N = N
        self.largest_denominator = largest_denominator


class ComputationBudgetExceeded(ValueError):
    """An exact computation was refused; ``suggested_n`` fits the budget."""

    def __init__(self, reason: str, *, suggested_n: int):
        super().__init__(f"{reason} (suggested N: {suggested_n})")
        self.reason = reason
        self.suggested_n = suggested_n


class NonFiniteGapSpectrum(ValueError):
    """The point set has too many distinct gap lengths to be finite-gap."""

    def __init__(self, K: int, limit: int = DEFAULT_MAX_GAP_LENGTHS):
        super().__init__(
            f"{K} distinct gap lengths exceed the limit of {limit}; "
            "the input does not look like a finite-gap sequence"
        )
        self.K = K
        self.limit = limit


class ThreeGapMismatch(ArithmeticError):
    """The closed-form three gap prediction disagrees with the measured spectrum.

    Carries the reconciled prediction, the formula-as-stated prediction and
    the empirical spectrum so the disagreement can be inspected directly.
    """

    def __init__(self, message: str, *, predicted, literal, empirical):
        super().__init__(message)
        self.predicted = predicted
        self.literal = literal
        self.empirical = empirical


class UnknownSequenceKind(ValueError):
    def __init__(self, kind: str, available):
        super().__init__(
            f"Unknown sequence kind '{kind}'. Available: {sorted(available)}"
        )
        self.kind = kind


@dataclass(frozen=True)
class SequenceSpec:
    """Which sequence to generate.

    ``parameters`` is kind-specific: ``z`` (a tuple of ``PreciseReal``) for
    Kronecker sequences, ``base`` and ``include_zero`` for van der Corput,
    ``seed`` for the uniform baseline.
    """

    kind: str
    dimension: int = 1
    parameters: dict = field(default_factory=dict, hash=False, compare=True)

    @classmethod
    def kronecker(
        cls,
        *z,
        extended_precision: bool = False,
        warn_near_rational: bool = True,
    ) -> Self:
        from .continued_fractions import as_precise_real

        values = tuple(as_precise_real(value) for value in z)
        parameters = {"z": values, "extended_precision": extended_precision}
        if not warn_near_rational:
            parameters["warn_near_rational"] = False
        return cls("kronecker", len(values), parameters)

    @classmethod
    def van_der_corput(cls, base: int = 2, *, include_zero: bool = False) -> Self:
        return cls("van_der_corput", 1, {"base": base, "include_zero": include_zero})

    @classmethod
    def random_uniform(cls, seed: int = DEFAULT_SEED, dimension: int = 1) -> Self:
        return cls("random_uniform", dimension, {"seed": seed})

    def canonical(self) -> str:
        """The CLI spelling of this spec; parsing it yields an equal spec."""
        from .generators import sequence_kinds

        return sequence_kinds()[self.kind].canonical(self)


@dataclass
class PointSet:
    """N points in [0, 1)^d, stored as an ``(N, d)`` float64 array."""

    points: np.ndarray
    spec: Optional[SequenceSpec] = None
    ordered: bool = False

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2 or points.shape[1] < 1:
            raise ValueError("points must be an (N, d) array")
        if points.size and (
            not np.all(np.isfinite(points))
            or points.min() < 0.0
            or points.max() >= 1.0
        ):
            raise ValueError("every coordinate must lie in [0, 1)")
        self.points = points

    @classmethod
    def from_array(cls, values, spec: Optional[SequenceSpec] = None) -> Self:
        return cls(np.array(values, dtype=np.float64), spec)

    @property
    def N(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])

    @property
    def coordinates(self) -> np.ndarray:
        """The points of a one-dimensional set as a flat array."""
        if self.d != 1:
            raise ValueError(f"coordinates requires d = 1, got d = {self.d}")
        return self.points[:, 0]

    def head(self, n: int) -> "PointSet":
        """The first ``n`` points, in generation order."""
        if self.ordered:
            raise ValueError("head() of a sorted point set is not a prefix")
        if not 1 <= n <= self.N:
            raise ValueError(f"n must be between 1 and {self.N}")
        return PointSet(self.points[:n], self.spec)

    def rotated(self, shift) -> "PointSet":
        shifted = np.mod(self.points + np.asarray(shift, dtype=np.float64), 1.0)
        # x + c can round up to exactly 1.0
        shifted[shifted >= 1.0] = 0.0
        return PointSet(shifted)


class SequenceGenerator(ABC):
    """Abstract base for sequence kinds.

    Instances are configured once from a ``SequenceSpec`` and then produce
    points for any index range, so a long sequence can be generated in
    pieces. Index ``n`` yields the same point however the range is split.
    """

    @property
    @abstractmethod
    def kind(self) -> str:
        """Unique identifier, e.g. 'kronecker'."""
        ...

    # Prefixes accepted by parse_sequence_spec, e.g. ("vdc",)
    aliases: tuple[str, ...] = ()

    @abstractmethod
    def configure(self, spec: SequenceSpec) -> None:
        """Validate ``spec`` and prepare for generation."""
        ...

    @abstractmethod
    def points(self, start: int, stop: int) -> np.ndarray:
        """Return the points with indices ``start <= n < stop`` as a (count, d) array."""
        ...

    def precision_error(self, N: int) -> float:
        """Upper bound on the absolute error of any coordinate among the first N."""
        return 0.0

    @classmethod
    def parse(cls, body: str) -> SequenceSpec:
        """Build a spec from the text after ``<kind>:``."""
        raise NotImplementedError(f"{cls.__name__} has no text form")

    @classmethod
    def canonical(cls, spec: SequenceSpec) -> str:
        raise NotImplementedError(f"{cls.__name__} has no text form")
