"""DCAQ assembly, ranking and qualitative classification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .access_time import AccessTimeBreakdown, local_access_time, remote_access_time
from .errors import EmptyInputError, InvalidCountError, InvalidInputError
from .model import DcaqResult, LocalEnvironment, RemoteEnvironment, Scenario
from .organizedness import organizedness_time


@dataclass(frozen=True)
class ClassificationThresholds:
    high_min: float = 1000.0
    average_min: float = 100.0

    def __post_init__(self):
        if not self.high_min > self.average_min > 0:
            raise InvalidInputError(
                f"thresholds need high_min > average_min > 0, got "
                f"{self.high_min} / {self.average_min}")


DEFAULT_THRESHOLDS = ClassificationThresholds()


def dcaq(availability: int, ts_ns: float, access_time_s: float, n_s: int) -> float:
    """(A_c * T_s) / (T * n_s).

    T_s enters as its numeric value in nanoseconds while T is in seconds.
    The mixed units are intentional: the index is only meaningful under
    that convention, so results stay comparable with published values.
    """
    if availability not in (0, 1):
        raise InvalidInputError(f"availability must be 0 or 1, got {availability!r}")
    if not access_time_s > 0 or math.isinf(access_time_s):
        raise InvalidInputError(f"access time must be a finite value > 0, got {access_time_s!r}")
    if isinstance(n_s, bool) or not isinstance(n_s, int) or n_s < 1:
        raise InvalidInputError(f"sublibrary count must be an integer >= 1, got {n_s!r}")
    if not ts_ns >= 0:
        raise InvalidInputError(f"search time must be >= 0, got {ts_ns!r}")
    if availability == 0:
        return 0.0
    return (availability * ts_ns) / (access_time_s * n_s)


def sublibrary_count(machine_types: int, os_types: int) -> int:
    """One sublibrary per (machine type, operating system type) pair."""
    for name, v in (("machine_types", machine_types), ("os_types", os_types)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise InvalidCountError(f"{name} must be an integer >= 1, got {v!r}")
    return machine_types * os_types


def classify(dcaq_value: float, thresholds: ClassificationThresholds = DEFAULT_THRESHOLDS) -> Tuple[str, str]:
    if dcaq_value >= thresholds.high_min:
        return ("good", "high")
    if dcaq_value >= thresholds.average_min:
        return ("average", "low")
    return ("poor", "low")


def access_breakdown(scenario: Scenario, network_rate: Optional[float] = None) -> AccessTimeBreakdown:
    env = scenario.environment
    if isinstance(env, LocalEnvironment):
        if network_rate is not None:
            raise InvalidInputError("a network rate sample was given for a local environment")
        return local_access_time(scenario.command, scenario.component, env.client)
    if isinstance(env, RemoteEnvironment):
        rate = env.network.data_rate.nominal if network_rate is None else network_rate
        return remote_access_time(scenario.command, scenario.component, env.client, env.server, rate)
    raise InvalidInputError(f"unknown environment {env!r}")


def evaluate(scenario: Scenario, thresholds: ClassificationThresholds = DEFAULT_THRESHOLDS,
             network_rate_sample: Optional[float] = None) -> DcaqResult:
    """Run the full metric pipeline on one scenario.

    Remote scenarios use ``network_rate_sample`` when given, otherwise the
    nominal rate of the network profile (the mean for a distribution).
    """
    doocl = scenario.doocl
    cost = organizedness_time(doocl.organization, doocl.component_count, doocl.iteration_time)
    overridden = scenario.explicit_ts_override is not None
    ts_ns = scenario.explicit_ts_override if overridden else cost.ts_ns

    breakdown = access_breakdown(scenario, network_rate_sample)
    seconds = breakdown.total_seconds
    availability = 1 if doocl.available else 0
    value = dcaq(availability, ts_ns, seconds, doocl.sublibrary_count)

    rate = None
    if isinstance(scenario.environment, RemoteEnvironment):
        rate = scenario.environment.network.data_rate.nominal if network_rate_sample is None else network_rate_sample

    return DcaqResult(
        dcaq=value,
        access_time_seconds=seconds,
        access_time_breakdown=breakdown.stages,
        ts_nanoseconds=ts_ns,
        availability=availability,
        sublibrary_count=doocl.sublibrary_count,
        classification=classify(value, thresholds),
        search_iterations=cost.iterations,
        ts_computed_nanoseconds=cost.ts_ns,
        ts_overridden=overridden,
        network_rate=rate,
    )


def rank(results: Sequence[Tuple[str, DcaqResult]]) -> List[Tuple[str, DcaqResult]]:
    """Highest DCAQ first; ties go to the faster access time, then the label."""
    if not results:
        raise EmptyInputError("nothing to rank")
    return sorted(results, key=lambda item: (-item[1].dcaq, item[1].access_time_seconds, item[0]))
