"""Experiment configuration: N grids, defaults and the JSON config file."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from typing_extensions import Self

from .base import DEFAULT_GROUPING_TOLERANCE, DEFAULT_SEED, DEFAULT_THREADS
from .generators import parse_sequence_spec

THREADS_ENVIRONMENT_VARIABLE = "GAPSTAT_THREADS"

DEFAULT_SEQUENCE = "kronecker:phi"
DEFAULT_N = "1000"
DEFAULT_ALPHA = 1.0
DEFAULT_S = (1.0,)
DEFAULT_FORMAT = "csv"

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class NGrid:
    """A list of N values together with the text it was written as.

    Accepted forms: ``1000``, ``100,200,400``, ``a:b:k`` (k geometrically
    spaced integers from a to b, rounded and de-duplicated) and ``fib:max``
    (Fibonacci numbers from 2 up to max).
    """

    values: tuple[int, ...]
    text: str

    @classmethod
    def parse(cls, text) -> Self:
        if isinstance(text, int) and not isinstance(text, bool):
            text = str(text)
        if isinstance(text, (list, tuple)):
            text = ",".join(str(value) for value in text)
        if not isinstance(text, str):
            raise ValueError(f"N grid must be a string, got {text!r}")
        text = text.strip()
        try:
            if text.startswith("fib:"):
                return cls._fibonacci(int(text[4:]))
            if ":" in text:
                a, b, k = (int(part) for part in text.split(":"))
                return cls._geometric(a, b, k)
            values = tuple(int(part) for part in text.split(","))
        except ValueError as ex:
            raise ValueError(
                f"Bad N grid '{text}'. Use 1000, 100,200,400, a:b:k or fib:max ({ex})"
            ) from None
        if not values or min(values) < 1:
            raise ValueError("every N must be at least 1")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError(f"N grid '{text}' must be strictly increasing")
        return cls(values, ",".join(str(value) for value in values))

    @classmethod
    def _geometric(cls, a: int, b: int, k: int) -> Self:
        if a < 1 or b < a:
            raise ValueError(f"need 1 <= a <= b, got a={a}, b={b}")
        if k < 1 or (k == 1 and a != b):
            raise ValueError(f"k must be at least 2 unless a == b, got {k}")
        if k == 1:
            return cls((a,), f"{a}:{b}:{k}")
        ratio = math.log(b / a) / (k - 1)
        values = sorted({a, b} | {round(a * math.exp(ratio * i)) for i in range(1, k - 1)})
        return cls(tuple(values), f"{a}:{b}:{k}")

    @classmethod
    def _fibonacci(cls, largest: int) -> Self:
        if largest < 2:
            raise ValueError(f"fib:max needs max >= 2, got {largest}")
        values, a, b = [], 2, 3
        while a <= largest:
            values.append(a)
            a, b = b, a + b
        return cls(tuple(values), f"fib:{largest}")

    def __str__(self) -> str:
        return self.text


def parse_s_values(value) -> tuple[float, ...]:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        items = [value]
    elif isinstance(value, str):
        items = [part for part in value.split(",") if part.strip()]
    else:
        items = list(value)
    try:
        s_values = tuple(float(item) for item in items)
    except (TypeError, ValueError):
        raise ValueError(f"Bad s grid {value!r}; expected numbers such as 0.5,1,2") from None
    if not s_values or min(s_values) <= 0:
        raise ValueError("s must be greater than zero")
    return s_values


def _positive_number(config, key, default, converter):
    value = converter(config.get(key, default))
    if value <= 0:
        raise ValueError(f"{key} must be greater than zero")
    return value


def _flag(config, key) -> bool:
    value = config.get(key, False)
    if isinstance(value, str):
        value = value.lower() not in {"0", "false", "no", "off", ""}
    return bool(value)


@dataclass(frozen=True)
class ExperimentConfig:
    seq: str = DEFAULT_SEQUENCE
    n: NGrid = field(default_factory=lambda: NGrid.parse(DEFAULT_N))
    alpha: float = DEFAULT_ALPHA
    s: tuple[float, ...] = DEFAULT_S
    output: Optional[str] = None
    format: str = DEFAULT_FORMAT
    seed: int = DEFAULT_SEED
    threads: int = DEFAULT_THREADS
    grouping_tolerance: float = DEFAULT_GROUPING_TOLERANCE
    strict: bool = False
    include_zero: bool = False
    extended_precision: bool = False

    def to_dict(self) -> dict:
        return {
            "seq": self.seq,
            "n": self.n.text,
            "alpha": self.alpha,
            "s": list(self.s),
            "output": self.output,
            "format": self.format,
            "seed": self.seed,
            "threads": self.threads,
            "grouping_tolerance": self.grouping_tolerance,
            "strict": self.strict,
            "include_zero": self.include_zero,
            "extended_precision": self.extended_precision,
        }

    def canonical(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


CONFIG_KEYS = tuple(ExperimentConfig().to_dict())


def experiment_config_from_dict(config: dict) -> ExperimentConfig:
    unknown = sorted(set(config) - set(CONFIG_KEYS))
    if unknown:
        raise ValueError(f"Unknown config keys {unknown}. Allowed: {list(CONFIG_KEYS)}")
    seq = parse_sequence_spec(str(config.get("seq", DEFAULT_SEQUENCE))).canonical()
    alpha = _positive_number(config, "alpha", DEFAULT_ALPHA, float)
    if alpha > 1:
        raise ValueError("alpha must be at most 1")
    format = str(config.get("format", DEFAULT_FORMAT)).lower()
    if format not in FORMATS:
        raise ValueError(f"format must be one of {list(FORMATS)}, got '{format}'")
    seed = int(config.get("seed", DEFAULT_SEED))
    if seed < 0:
        raise ValueError("seed must be non-negative")
    tolerance = float(config.get("grouping_tolerance", DEFAULT_GROUPING_TOLERANCE))
    if tolerance < 0:
        raise ValueError("grouping_tolerance must be non-negative")
    output = config.get("output")
    return ExperimentConfig(
        seq=seq,
        n=NGrid.parse(config.get("n", DEFAULT_N)),
        alpha=alpha,
        s=parse_s_values(config.get("s", DEFAULT_S)),
        output=None if output is None else str(output),
        format=format,
        seed=seed,
        threads=_positive_number(config, "threads", DEFAULT_THREADS, int),
        grouping_tolerance=tolerance,
        strict=_flag(config, "strict"),
        include_zero=_flag(config, "include_zero"),
        extended_precision=_flag(config, "extended_precision"),
    )


def load_config_file(path) -> dict:
    """Read a JSON config file; keys mirror the long flag names."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as ex:
        raise ValueError(f"Config file {path} is not valid JSON: {ex}") from None
    if not isinstance(data, dict):
        raise ValueError(f"Config file {path} must contain a JSON object")
    return {key.replace("-", "_"): value for key, value in data.items()}


def resolve_config(
    file_values: Optional[dict] = None,
    flags: Optional[dict] = None,
    environ=None,
) -> ExperimentConfig:
    """Defaults, then the config file, then GAPSTAT_THREADS, then flags.

    Flags set to None count as not given.
    """
    environ = os.environ if environ is None else environ
    merged = dict(file_values or {})
    if environ.get(THREADS_ENVIRONMENT_VARIABLE):
        merged["threads"] = environ[THREADS_ENVIRONMENT_VARIABLE]
    merged.update({key: value for key, value in (flags or {}).items() if value is not None})
    return experiment_config_from_dict(merged)
