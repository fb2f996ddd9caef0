"""Continued fractions, convergents and Ostrowski numeration.

Real inputs are handled as exact rational enclosures (``PreciseReal``) so a
partial quotient is only emitted once every number in the enclosure agrees
on it: digits beyond the available precision are dropped, never invented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Optional

import mpmath
import numpy as np
from typing_extensions import Self

from .base import (
    DEFAULT_CF_TERMS,
    INT64_MAX,
    ConvergentOverflow,
    InsufficientConvergents,
)

_CONSTANT_DIGITS = 60


@dataclass(frozen=True)
class PreciseReal:
    """A real number known to lie in ``[lower, upper]``."""

    lower: Fraction
    upper: Fraction
    name: str = ""

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower must not exceed upper")

    @classmethod
    def exact(cls, value, name: str = "") -> Self:
        value = Fraction(value)
        return cls(value, value, name)

    @classmethod
    def from_float(cls, value: float, name: str = "") -> Self:
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"x must be finite, got {value}")
        center = Fraction(value)
        radius = Fraction(math.ulp(value)) / 2
        return cls(center - radius, center + radius, name)

    @classmethod
    def from_mpf(cls, value, name: str = "", digits: Optional[int] = None) -> Self:
        """Enclose an mpmath number computed at ``digits`` significant digits."""
        digits = digits or mpmath.mp.dps
        if not mpmath.isfinite(value):
            raise ValueError(f"x must be finite, got {value}")
        center = Fraction(mpmath.nstr(value, digits, strip_zeros=False))
        radius = abs(center) * Fraction(1, 10 ** (digits - 2))
        return cls(center - radius, center + radius, name)

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    @property
    def radius(self) -> Fraction:
        return (self.upper - self.lower) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def label(self) -> str:
        return self.name or repr(float(self))


def _high_precision(name: str, compute) -> PreciseReal:
    with mpmath.workdps(_CONSTANT_DIGITS):
        return PreciseReal.from_mpf(compute(), name=name)


GOLDEN_MEAN = _high_precision("phi", lambda: (1 + mpmath.sqrt(5)) / 2)
SQRT2 = _high_precision("sqrt2", lambda: mpmath.sqrt(2))
SQRT3 = _high_precision("sqrt3", lambda: mpmath.sqrt(3))

NAMED_CONSTANTS = {
    constant.name: constant for constant in (GOLDEN_MEAN, SQRT2, SQRT3)
}


def named_constant(name: str) -> PreciseReal:
    try:
        return NAMED_CONSTANTS[name]
    except KeyError:
        raise ValueError(
            f"Unknown constant '{name}'. Available: {sorted(NAMED_CONSTANTS)}"
        ) from None


def as_precise_real(x) -> PreciseReal:
    """Coerce floats, ints, Fractions, Decimals, mpmath numbers and strings.

    Strings are a named constant, a fraction ``p/q`` (exact) or a decimal
    literal, which stands for every value that rounds to it: ``"0.4142"`` is
    ``[0.41415, 0.41425]``. Integer literals are exact.
    """
    if isinstance(x, PreciseReal):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not real numbers here")
    if isinstance(x, (int, np.integer)):
        return PreciseReal.exact(int(x))
    if isinstance(x, Fraction):
        return PreciseReal.exact(x)
    if isinstance(x, Decimal):
        if not x.is_finite():
            raise ValueError(f"x must be finite, got {x}")
        return PreciseReal.exact(Fraction(x))
    if isinstance(x, (float, np.floating)):
        return PreciseReal.from_float(float(x))
    if isinstance(x, mpmath.mpf):
        return PreciseReal.from_mpf(x)
    if isinstance(x, type(mpmath.pi)):
        # Lazily evaluated constants such as mpmath.pi and mpmath.e
        with mpmath.workdps(_CONSTANT_DIGITS):
            return PreciseReal.from_mpf(+x, name=getattr(x, "name", ""))
    if isinstance(x, str):
        text = x.strip()
        if text in NAMED_CONSTANTS:
            return NAMED_CONSTANTS[text]
        try:
            value = Fraction(text)
        except ValueError:
            raise ValueError(
                f"'{text}' is neither a decimal number nor one of "
                f"{sorted(NAMED_CONSTANTS)}"
            ) from None
        if "/" not in text:
            exponent = Decimal(text).as_tuple().exponent
            if exponent < 0:
                radius = Fraction(1, 2 * 10**-exponent)
                return PreciseReal(value - radius, value + radius, name=text)
        return PreciseReal.exact(value, name=text)
    raise TypeError(f"Cannot interpret {type(x).__name__} as a real number")


def torus_norm(x):
    """Distance from ``x`` to the nearest integer.

    Works on floats, Fractions and numpy arrays; the result has the input's
    type.
    """
    if isinstance(x, np.ndarray):
        if not np.all(np.isfinite(x)):
            raise ValueError("x must be finite")
        frac = x - np.floor(x)
        return np.minimum(frac, 1.0 - frac)
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x}")
    frac = x - math.floor(x)
    return min(frac, 1 - frac)


def _recurrence(digits: Iterable[int]) -> list[tuple[int, int]]:
    pairs = []
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for index, a in enumerate(digits):
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        if q > INT64_MAX or abs(p) > INT64_MAX:
            raise ConvergentOverflow(index, index - 1)
        pairs.append((p, q))
    return pairs


@dataclass(frozen=True)
class CFExpansion:
    """Partial quotients ``a_0..a_m`` of a real number and their convergents."""

    value: PreciseReal
    digits: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    # True when the number is exactly p_m / q_m
    terminated: bool = False

    @classmethod
    def from_digits(cls, digits: Iterable[int]) -> Self:
        digits = tuple(int(a) for a in digits)
        if not digits:
            raise ValueError("at least one digit is required")
        if any(a < 1 for a in digits[1:]):
            raise ValueError("partial quotients after a_0 must be positive")
        pairs = tuple(_recurrence(digits))
        p, q = pairs[-1]
        return cls(PreciseReal.exact(Fraction(p, q)), digits, pairs, terminated=True)

    @property
    def m(self) -> int:
        return len(self.digits) - 1

    @property
    def denominators(self) -> tuple[int, ...]:
        return tuple(q for _, q in self.convergents)

    def p(self, n: int) -> int:
        if n == -1:
            return 1
        if n == -2:
            return 0
        return self.convergents[n][0]

    def q(self, n: int) -> int:
        if n == -1:
            return 0
        if n == -2:
            return 1
        return self.convergents[n][1]

    def __len__(self) -> int:
        return len(self.digits)


def cf_expand(
    x, max_terms: int = DEFAULT_CF_TERMS, tolerance: float = 0.0
) -> CFExpansion:
    """Expand ``x`` into a continued fraction.

    Stops after ``max_terms`` digits, once ``|x - p/q| <= tolerance``, when
    the number is exactly rational, when the enclosure of ``x`` no longer
    determines the next digit, or before ``q`` would leave the 64-bit range.
    """
    value = as_precise_real(x)
    if max_terms < 1:
        raise ValueError("max_terms must be at least 1")
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    tolerance = Fraction(tolerance)
    target = value.midpoint

    lower, upper, center = value.lower, value.upper, target
    digits: list[int] = []
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    terminated = False
    while len(digits) < max_terms:
        a = math.floor(center)
        determined = math.floor(lower) == math.floor(upper)
        # An undetermined digit is still exact when the midpoint ends here.
        if not determined and center != a and digits:
            break
        p_next, q_next = a * p + p_prev, a * q + q_prev
        if q_next > INT64_MAX or abs(p_next) > INT64_MAX:
            break
        digits.append(a)
        p_prev, p = p, p_next
        q_prev, q = q, q_next
        rest = center - a
        if rest == 0:
            terminated = True
            break
        if abs(target - Fraction(p, q)) <= tolerance:
            break
        lower_rest, upper_rest = lower - a, upper - a
        if lower_rest <= 0 or not determined:
            break
        lower, upper, center = 1 / upper_rest, 1 / lower_rest, 1 / rest

    return CFExpansion(value, tuple(digits), tuple(_recurrence(digits)), terminated)


def convergents(cf: CFExpansion) -> list[tuple[int, int]]:
    """Recompute ``(p_n, q_n)`` from the digits, checking the 64-bit range."""
    if not cf.digits:
        raise ValueError("cf must have at least one digit")
    return _recurrence(cf.digits)


def approximation_error(cf: CFExpansion, n: int) -> Fraction:
    """Exact ``|q_n z - p_n|`` at the midpoint of z; ``n = -1`` gives 1."""
    if not -1 <= n <= cf.m:
        raise IndexError(f"n must be between -1 and {cf.m}")
    return abs(cf.q(n) * cf.value.midpoint - cf.p(n))


def convergent_bounds_hold(cf: CFExpansion, n: int) -> bool:
    """Check ``1/(q_{n+1}+q_n) <= |q_n z - p_n| <= 1/q_{n+1}``."""
    if not 0 <= n < cf.m:
        raise IndexError(f"n must be between 0 and {cf.m - 1}")
    error = approximation_error(cf, n)
    q_n, q_next = cf.q(n), cf.q(n + 1)
    return Fraction(1, q_next + q_n) <= error <= Fraction(1, q_next)


def golden_intermediate_window(cf: CFExpansion, n: int) -> Fraction:
    """``q_{n+1} * (||q_n z|| + ||q_{n-1} z||)``, computed exactly.

    For the golden mean this lies strictly between 1/2 and 2 for n >= 1,
    which makes the largest gap at N = q_{n+1} intermediate for exponent 1.
    """
    if not 0 <= n < cf.m:
        raise IndexError(f"n must be between 0 and {cf.m - 1}")
    z = cf.value.midpoint
    return cf.q(n + 1) * (torus_norm(cf.q(n) * z) + torus_norm(cf.q(n - 1) * z))


@dataclass(frozen=True)
class OstrowskiDigits:
    """``N = sum(digits[n] * denominators[n])``; ``digits[n]`` multiplies q_n."""

    N: int
    digits: tuple[int, ...]
    denominators: tuple[int, ...]

    @property
    def top_index(self) -> int:
        """Largest n with a non-zero digit."""
        return max(n for n, b in enumerate(self.digits) if b)

    def digit(self, n: int) -> int:
        if 0 <= n < len(self.digits):
            return self.digits[n]
        return 0

    def value(self) -> int:
        return sum(b * q for b, q in zip(self.digits, self.denominators))


def _ostrowski_top(cf: CFExpansion, largest_N: int) -> int:
    denominators = cf.denominators
    if denominators[-1] <= largest_N:
        raise InsufficientConvergents(largest_N, denominators[-1])
    return max(n for n, q in enumerate(denominators) if q <= largest_N)


def ostrowski_expand_many(Ns, cf: CFExpansion) -> np.ndarray:
    """Greedy Ostrowski digits for every N in ``Ns``, one row per N."""
    Ns = np.asarray(Ns, dtype=np.int64)
    if Ns.ndim != 1 or Ns.size == 0:
        raise ValueError("Ns must be a non-empty one-dimensional array")
    if Ns.min() < 1:
        raise ValueError("N must be at least 1")
    top = _ostrowski_top(cf, int(Ns.max()))
    denominators = np.array(cf.denominators[: top + 1], dtype=np.int64)
    digits = np.zeros((Ns.size, top + 1), dtype=np.int64)
    remainder = Ns.copy()
    for n in range(top, -1, -1):
        digits[:, n] = remainder // denominators[n]
        remainder -= digits[:, n] * denominators[n]
    return digits


def ostrowski_expand(N: int, cf: CFExpansion) -> OstrowskiDigits:
    if N < 1:
        raise ValueError("N must be at least 1")
    row = ostrowski_expand_many([N], cf)[0]
    return OstrowskiDigits(
        int(N), tuple(int(b) for b in row), cf.denominators[: row.size]
    )


def ostrowski_valid(digits: np.ndarray, Ns, cf: CFExpansion) -> np.ndarray:
    """Row-wise check of reconstruction and the digit constraints.

    The constraints are ``b_0 <= a_1 - 1``, ``b_n <= a_{n+1}`` and
    ``b_n = a_{n+1}`` implies ``b_{n-1} = 0``.
    """
    digits = np.atleast_2d(np.asarray(digits, dtype=np.int64))
    Ns = np.asarray(Ns, dtype=np.int64)
    width = digits.shape[1]
    if len(cf.digits) < width + 1:
        raise InsufficientConvergents(int(Ns.max()), cf.denominators[-1])
    denominators = np.array(cf.denominators[:width], dtype=np.int64)
    limits = np.array(cf.digits[1 : width + 1], dtype=np.int64)
    limits[0] -= 1

    valid = digits @ denominators == Ns
    valid &= np.all((digits >= 0) & (digits <= limits), axis=1)
    if width > 1:
        saturated = digits[:, 1:] == limits[1:]
        valid &= ~np.any(saturated & (digits[:, :-1] != 0), axis=1)
    return valid
