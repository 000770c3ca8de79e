"""Domain value types for component-library activeness scenarios.

Canonical units everywhere inside the package: bits, nanoseconds and
bits per nanosecond (bpns). Unit conversion happens only when reading or
writing scenario documents.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .errors import InvalidCountError, InvalidInputError, InvalidRateError, InvalidRatioError


def _check_count(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidCountError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise InvalidCountError(f"{name} must be >= 1, got {value}")


def _check_real(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidInputError(f"{name} must be a number, got {value!r}")
    if math.isnan(value):
        raise InvalidInputError(f"{name} must not be NaN")


def _check_rate(value, name):
    _check_real(value, name)
    if not value > 0 or math.isinf(value):
        raise InvalidRateError(f"{name} must be a finite rate > 0, got {value!r}")


def _check_duration(value, name):
    _check_real(value, name)
    if value < 0 or math.isinf(value):
        raise InvalidInputError(f"{name} must be a finite duration >= 0, got {value!r}")


class Organization(str, enum.Enum):
    SORTED_SEQUENTIAL_LIST = "sorted_sequential_list"
    BALANCED_BINARY_TREE = "balanced_binary_tree"
    UNSORTED_SEQUENTIAL_LIST = "unsorted_sequential_list"

    @property
    def is_binary(self) -> bool:
        return self is not Organization.UNSORTED_SEQUENTIAL_LIST


@dataclass(frozen=True)
class Component:
    name: str
    lines: int
    chars_per_line: int
    bits_per_char: int

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise InvalidInputError("name must be a non-empty component identifier")
        _check_count(self.lines, "lines")
        _check_count(self.chars_per_line, "chars_per_line")
        _check_count(self.bits_per_char, "bits_per_char")

    @property
    def bit_size(self) -> int:
        return self.lines * self.chars_per_line * self.bits_per_char


@dataclass(frozen=True)
class Command:
    text: str
    bits_per_char: int = 8

    def __post_init__(self):
        if not isinstance(self.text, str) or not self.text:
            raise InvalidInputError("text must be a non-empty command string")
        _check_count(self.bits_per_char, "bits_per_char")

    @property
    def bit_size(self) -> int:
        return len(self.text) * self.bits_per_char


def component_bits(c: Component) -> int:
    return c.bit_size


def command_bits(c: Command) -> int:
    return c.bit_size


@dataclass(frozen=True)
class HardwareProfile:
    """One machine: I/O bus rate (bpns), cache hit ratio and cache/memory latencies (ns)."""

    bus_rate: float
    hit_ratio: float
    cache_time: float
    memory_time: float

    def __post_init__(self):
        _check_rate(self.bus_rate, "bus_rate")
        _check_real(self.hit_ratio, "hit_ratio")
        if not 0 <= self.hit_ratio <= 1:
            raise InvalidRatioError(f"hit_ratio must lie in [0, 1], got {self.hit_ratio!r}")
        _check_duration(self.cache_time, "cache_time")
        _check_duration(self.memory_time, "memory_time")


# Network rate distributions. ``nominal`` is the rate used for a
# deterministic evaluation; ``sample`` draws from a numpy Generator.

@dataclass(frozen=True)
class FixedRate:
    rate: float
    kind = "fixed"

    def __post_init__(self):
        _check_rate(self.rate, "rate")

    @property
    def nominal(self) -> float:
        return self.rate

    def sample(self, rng) -> float:
        return self.rate


@dataclass(frozen=True)
class UniformRate:
    low: float
    high: float
    kind = "uniform"

    def __post_init__(self):
        _check_rate(self.low, "low")
        _check_rate(self.high, "high")
        if self.low > self.high:
            raise InvalidInputError(f"uniform low {self.low} exceeds high {self.high}")

    @property
    def nominal(self) -> float:
        return 0.5 * (self.low + self.high)

    def sample(self, rng) -> float:
        return float(rng.uniform(self.low, self.high))


MAX_RESAMPLE_ATTEMPTS = 10**6


@dataclass(frozen=True)
class NormalRate:
    """Normal distribution truncated to strictly positive rates."""

    mean: float
    stddev: float
    kind = "normal"

    def __post_init__(self):
        _check_rate(self.mean, "mean")
        _check_duration(self.stddev, "stddev")

    @property
    def nominal(self) -> float:
        return self.mean

    def sample(self, rng) -> float:
        for _ in range(MAX_RESAMPLE_ATTEMPTS):
            x = float(rng.normal(self.mean, self.stddev))
            if x > 0:
                return x
        raise InvalidRateError(
            f"no positive sample from normal({self.mean}, {self.stddev}) "
            f"after {MAX_RESAMPLE_ATTEMPTS} attempts")


RateSpec = Union[FixedRate, UniformRate, NormalRate]


@dataclass(frozen=True)
class NetworkProfile:
    data_rate: RateSpec

    def __post_init__(self):
        if not isinstance(self.data_rate, (FixedRate, UniformRate, NormalRate)):
            raise InvalidInputError(f"unsupported data_rate {self.data_rate!r}")

    @classmethod
    def fixed(cls, rate: float) -> "NetworkProfile":
        return cls(FixedRate(rate))

    @property
    def is_stochastic(self) -> bool:
        return not isinstance(self.data_rate, FixedRate)


@dataclass(frozen=True)
class LocalEnvironment:
    client: HardwareProfile

    variant = "local"


@dataclass(frozen=True)
class RemoteEnvironment:
    client: HardwareProfile
    server: HardwareProfile
    network: NetworkProfile

    variant = "remote"


Environment = Union[LocalEnvironment, RemoteEnvironment]


@dataclass(frozen=True)
class DooclDescriptor:
    organization: Organization
    component_count: int
    iteration_time: float
    sublibrary_count: int
    available: bool = True

    def __post_init__(self):
        if not isinstance(self.organization, Organization):
            object.__setattr__(self, "organization", Organization(self.organization))
        _check_count(self.component_count, "component_count")
        _check_count(self.sublibrary_count, "sublibrary_count")
        _check_real(self.iteration_time, "iteration_time")
        if not self.iteration_time > 0 or math.isinf(self.iteration_time):
            raise InvalidInputError(f"iteration_time must be > 0, got {self.iteration_time!r}")
        if not isinstance(self.available, bool):
            raise InvalidInputError(f"available must be a boolean, got {self.available!r}")


@dataclass(frozen=True)
class Scenario:
    doocl: DooclDescriptor
    environment: Environment
    command: Command
    component: Component
    explicit_ts_override: Optional[float] = None

    def __post_init__(self):
        if self.explicit_ts_override is not None:
            _check_duration(self.explicit_ts_override, "explicit_ts_override")


@dataclass(frozen=True)
class DcaqResult:
    dcaq: float
    access_time_seconds: float
    access_time_breakdown: Tuple[Tuple[str, float], ...]
    ts_nanoseconds: float
    availability: int
    sublibrary_count: int
    classification: Tuple[str, str]
    # audit trail for the search term
    search_iterations: Optional[int] = None
    ts_computed_nanoseconds: Optional[float] = None
    ts_overridden: bool = False
    network_rate: Optional[float] = None

    @property
    def access_time_ns(self) -> float:
        total = 0.0
        for _, ns in self.access_time_breakdown:
            total += ns
        return total
