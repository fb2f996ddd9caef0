from __future__ import annotations

import dataclasses
import math
import warnings
from fractions import Fraction
from typing import Optional

import numpy as np
from loguru import logger

from .base import (
    DEFAULT_PRECISION_LIMIT,
    NearRationalWarning,
    PointSet,
    PrecisionBudgetExceeded,
    SequenceGenerator,
    SequenceSpec,
    UnknownSequenceKind,
)
from .continued_fractions import NAMED_CONSTANTS, PreciseReal, as_precise_real, cf_expand
from .plugins import pm

# Largest denominator treated as "small" when looking for a rational z
_NEAR_RATIONAL_DENOMINATOR = 10**6
_NEAR_RATIONAL_QUOTIENT = 10**6


def _parse_options(body: str, allowed: tuple[str, ...], kind: str) -> dict[str, str]:
    options = {}
    for item in filter(None, (part.strip() for part in body.split(","))):
        key, sep, value = item.partition("=")
        if not sep or key not in allowed:
            raise ValueError(
                f"Bad {kind} option '{item}'. Expected key=value with key in {list(allowed)}"
            )
        options[key] = value
    return options


def _integer_option(options: dict, key: str, default: Optional[int], kind: str) -> int:
    if key not in options:
        if default is None:
            raise ValueError(f"{kind} requires {key}=<int>")
        return default
    try:
        return int(options[key])
    except ValueError:
        raise ValueError(f"{kind} option {key} must be an integer") from None


def _fixed_point(value: Fraction, bits: int) -> int:
    """round({value} * 2**bits) reduced mod 2**bits."""
    fractional = value - math.floor(value)
    return round(fractional * 2**bits) % 2**bits


def _warn_if_near_rational(value: PreciseReal) -> None:
    cf = cf_expand(value, max_terms=24)
    midpoint = value.midpoint
    nearest = midpoint.limit_denominator(_NEAR_RATIONAL_DENOMINATOR)
    if (
        cf.terminated
        or any(a > _NEAR_RATIONAL_QUOTIENT for a in cf.digits[1:])
        or abs(midpoint - nearest) <= 2 * value.radius
    ):
        warnings.warn(
            f"z = {value.label()} is rational or nearly rational at working "
            f"precision (partial quotients {list(cf.digits[:8])})",
            NearRationalWarning,
            stacklevel=4,
        )


class KroneckerSequence(SequenceGenerator):
    """The rotation ``x_n = {n z}`` in fixed point.

    Each {z_i} is rounded once to a 64-bit (128-bit in extended mode) binary
    fraction F; point n is ``n * F mod 2**bits`` truncated to 53 bits. There
    is no accumulated drift: the error is at most ``N * 2**-(bits+1)`` from
    rounding z plus one unit in the last place.
    """

    kind = "kronecker"
    aliases = ("kronecker",)

    def configure(self, spec: SequenceSpec) -> None:
        z = tuple(as_precise_real(value) for value in spec.parameters.get("z", ()))
        if not z:
            raise ValueError("kronecker needs at least one z, e.g. kronecker:phi")
        if len(z) != spec.dimension:
            raise ValueError(
                f"kronecker dimension {spec.dimension} does not match {len(z)} values of z"
            )
        self.z = z
        self.bits = 128 if spec.parameters.get("extended_precision") else 64
        self.steps = tuple(_fixed_point(value.midpoint, self.bits) for value in z)
        if spec.parameters.get("warn_near_rational", True):
            for value in z:
                _warn_if_near_rational(value)

    def precision_error(self, N: int) -> float:
        return N * 2.0 ** -(self.bits + 1) + 2.0**-53

    def points(self, start: int, stop: int) -> np.ndarray:
        if start < 0 or stop < start:
            raise ValueError("need 0 <= start <= stop")
        columns = []
        for step in self.steps:
            if self.bits == 64:
                n = np.arange(start, stop, dtype=np.uint64)
                top = (n * np.uint64(step)) >> np.uint64(11)
            else:
                modulus = 2**128
                top = np.array(
                    [((k * step) % modulus) >> 75 for k in range(start, stop)],
                    dtype=np.uint64,
                )
            columns.append(top.astype(np.float64) * 2.0**-53)
        return np.column_stack(columns)

    @classmethod
    def parse(cls, body: str) -> SequenceSpec:
        text = body.strip()
        if text.startswith("z="):
            text = text[2:]
        if not text:
            raise ValueError("kronecker needs z, e.g. kronecker:phi or kronecker:z=0.4142")
        return SequenceSpec.kronecker(*(item.strip() for item in text.split(",")))

    @classmethod
    def canonical(cls, spec: SequenceSpec) -> str:
        z = spec.parameters["z"]
        if all(value.name in NAMED_CONSTANTS for value in z):
            return "kronecker:" + ",".join(value.name for value in z)
        return "kronecker:z=" + ",".join(value.label() for value in z)


class VanDerCorputSequence(SequenceGenerator):
    """Base-b radical inverse ``g_b(n)``.

    The digit-reversed integer is built exactly and divided once by
    ``b**e``, so every point is the correctly rounded value of k / b**e.
    """

    kind = "van_der_corput"
    aliases = ("vdc",)

    def configure(self, spec: SequenceSpec) -> None:
        if spec.dimension != 1:
            raise ValueError("van der Corput sequences are one-dimensional")
        base = spec.parameters.get("base", 2)
        if isinstance(base, bool) or not isinstance(base, int) or base < 2:
            raise ValueError(f"base must be an integer >= 2, got {base!r}")
        self.base = base
        self.include_zero = bool(spec.parameters.get("include_zero", False))

    def _indices(self, start: int, stop: int) -> range:
        # With the zeroth element prepended, point n is g_b(n - 1).
        offset = 1 if self.include_zero else 0
        if start - offset < 0 or stop < start:
            raise ValueError("index range starts before the first point")
        return range(start - offset, stop - offset)

    def points(self, start: int, stop: int) -> np.ndarray:
        indices = self._indices(start, stop)
        if not indices:
            return np.zeros((0, 1))
        base = self.base
        digit_count = 1
        while base**digit_count <= indices[-1]:
            digit_count += 1
        scale = base**digit_count
        if scale > 2**53:
            return np.array(
                [[float(self._exact(r, digit_count))] for r in indices]
            )
        remaining = np.arange(indices.start, indices.stop, dtype=np.int64)
        numerators = np.zeros_like(remaining)
        for _ in range(digit_count):
            numerators = numerators * base + remaining % base
            remaining //= base
        return (numerators.astype(np.float64) / float(scale)).reshape(-1, 1)

    def _exact(self, r: int, digit_count: int) -> Fraction:
        numerator = 0
        for _ in range(digit_count):
            r, digit = divmod(r, self.base)
            numerator = numerator * self.base + digit
        return Fraction(numerator, self.base**digit_count)

    @classmethod
    def parse(cls, body: str) -> SequenceSpec:
        options = _parse_options(body, ("b", "zero"), "vdc")
        base = _integer_option(options, "b", None, "vdc")
        include_zero = bool(_integer_option(options, "zero", 0, "vdc"))
        return SequenceSpec.van_der_corput(base, include_zero=include_zero)

    @classmethod
    def canonical(cls, spec: SequenceSpec) -> str:
        text = f"vdc:b={spec.parameters.get('base', 2)}"
        if spec.parameters.get("include_zero"):
            text += ",zero=1"
        return text


class RandomUniformSequence(SequenceGenerator):
    """i.i.d. uniform points from numpy's PCG64.

    Each double consumes one 64-bit draw, so index ranges are reached by
    advancing the bit generator and any split reproduces the same points.
    """

    kind = "random_uniform"
    aliases = ("random",)

    def configure(self, spec: SequenceSpec) -> None:
        seed = spec.parameters.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
            raise ValueError(f"seed must be an integer in [0, 2**64), got {seed!r}")
        if spec.dimension < 1:
            raise ValueError("dimension must be at least 1")
        self.seed = seed
        self.dimension = spec.dimension

    def points(self, start: int, stop: int) -> np.ndarray:
        if start < 1 or stop < start:
            raise ValueError("random_uniform indices start at 1")
        bit_generator = np.random.PCG64(self.seed)
        bit_generator.advance((start - 1) * self.dimension)
        return np.random.Generator(bit_generator).random((stop - start, self.dimension))

    @classmethod
    def parse(cls, body: str) -> SequenceSpec:
        options = _parse_options(body, ("seed", "d"), "random")
        seed = _integer_option(options, "seed", None, "random")
        dimension = _integer_option(options, "d", 1, "random")
        return SequenceSpec.random_uniform(seed, dimension)

    @classmethod
    def canonical(cls, spec: SequenceSpec) -> str:
        text = f"random:seed={spec.parameters.get('seed', 0)}"
        if spec.dimension > 1:
            text += f",d={spec.dimension}"
        return text


# Built-in sequence kinds (always available, no plugin needed)
BUILT_IN_SEQUENCE_KINDS = {
    cls.kind: cls
    for cls in (KroneckerSequence, VanDerCorputSequence, RandomUniformSequence)
}


def sequence_kinds() -> dict[str, type[SequenceGenerator]]:
    """Built-in kinds merged with those registered by plugins."""
    kinds = dict(BUILT_IN_SEQUENCE_KINDS)
    for registered in pm.hook.register_sequence_kinds():
        for cls in registered or ():
            if cls.kind in BUILT_IN_SEQUENCE_KINDS:
                raise ValueError(
                    f"Plugin sequence kind '{cls.kind}' shadows a built-in kind"
                )
            kinds[cls.kind] = cls
    return kinds


def generator_for(spec: SequenceSpec) -> SequenceGenerator:
    kinds = sequence_kinds()
    if spec.kind not in kinds:
        raise UnknownSequenceKind(spec.kind, kinds)
    generator = kinds[spec.kind]()
    generator.configure(spec)
    return generator


def parse_sequence_spec(text: str) -> SequenceSpec:
    """Parse ``kronecker:phi``, ``vdc:b=2``, ``random:seed=7`` and plugin kinds."""
    prefix, _, body = text.strip().partition(":")
    kinds = sequence_kinds()
    for cls in kinds.values():
        if prefix == cls.kind or prefix in cls.aliases:
            return cls.parse(body)
    names = sorted({alias for cls in kinds.values() for alias in cls.aliases})
    raise UnknownSequenceKind(prefix, names)


def with_flags(
    spec: SequenceSpec,
    *,
    extended_precision: bool = False,
    include_zero: bool = False,
) -> SequenceSpec:
    """Apply CLI flags that only some kinds understand."""
    parameters = dict(spec.parameters)
    if spec.kind == "kronecker" and extended_precision:
        parameters["extended_precision"] = True
    if spec.kind == "van_der_corput" and include_zero:
        parameters["include_zero"] = True
    return dataclasses.replace(spec, parameters=parameters)


def generate(
    spec: SequenceSpec,
    N: int,
    *,
    chunk_size: Optional[int] = None,
    precision_limit: float = DEFAULT_PRECISION_LIMIT,
) -> PointSet:
    """The first N points (indices 1..N) of ``spec``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    generator = generator_for(spec)
    error = generator.precision_error(N)
    if error > precision_limit:
        raise PrecisionBudgetExceeded.for_count(N, error, precision_limit)
    if chunk_size is None:
        points = generator.points(1, N + 1)
    else:
        if chunk_size < 1:
            raise ValueError("chunk_size must be greater than zero")
        points = np.concatenate(
            [
                generator.points(start, min(start + chunk_size, N + 1))
                for start in range(1, N + 1, chunk_size)
            ]
        )
    logger.debug("generated {} points of {}", N, spec.kind)
    return PointSet(points, spec)


def sort_ascending(ps: PointSet) -> PointSet:
    if ps.d != 1:
        raise ValueError(f"sort_ascending requires d = 1, got d = {ps.d}")
    return PointSet(np.sort(ps.coordinates).reshape(-1, 1), ps.spec, ordered=True)
