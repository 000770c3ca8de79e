"""Search cost of a component library (the organizedness term T_s)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCountError, InvalidInputError
from .model import Organization


@dataclass(frozen=True)
class SearchCost:
    iterations: int
    iteration_time_ns: float
    ts_ns: float


def search_iterations(organization, component_count: int) -> int:
    """Worst-case search steps over ``component_count`` components.

    Binary organizations halve the candidate range per step, giving
    ``max(1, ceil(log2 N))``; an unsorted list is scanned end to end.
    """
    organization = Organization(organization)
    if isinstance(component_count, bool) or not isinstance(component_count, int):
        raise InvalidCountError(f"component count must be an integer, got {component_count!r}")
    if component_count < 1:
        raise InvalidCountError(f"component count must be >= 1, got {component_count}")
    if organization.is_binary:
        # (N - 1).bit_length() == ceil(log2 N) exactly, no float log
        return max(1, (component_count - 1).bit_length())
    return component_count


def organizedness_time(organization, component_count: int, iteration_time: float) -> SearchCost:
    if not iteration_time > 0:
        raise InvalidInputError(f"iteration time must be > 0, got {iteration_time!r}")
    n = search_iterations(organization, component_count)
    return SearchCost(iterations=n, iteration_time_ns=iteration_time, ts_ns=n * iteration_time)
