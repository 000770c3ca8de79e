"""Agreement suites between the analytic model and the empirical oracle."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import List

import numpy as np

from . import organizedness
from .access_time import local_access_time, remote_access_time
from .model import (Command, Component, HardwareProfile, LocalEnvironment, NetworkProfile,
                    DooclDescriptor, Organization, RemoteEnvironment, Scenario)
from .simulator import build_library, replay_transfer, worst_case_probes

DEFAULT_MAX_N = 1024
DEFAULT_TOLERANCE = 1e-9
DEFAULT_REPLAY_CASES = 10_000
LINEAR_MAX_N = 128  # exhaustive linear scans are quadratic


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures


def search_count_suite(organization, max_n: int, seed: int = 0) -> SuiteResult:
    organization = Organization(organization)
    result = SuiteResult(f"search-count/{organization.value}")
    for n in range(1, max_n + 1):
        lib = build_library(organization, n, seed + n)
        measured = worst_case_probes(lib)
        expected = organizedness.search_iterations(organization, n)
        result.checked += 1
        if measured != expected:
            result.failures.append(f"N={n}: empirical {measured} != analytic {expected}")
    return result


def random_scenario(rng) -> Scenario:
    def hw():
        return HardwareProfile(
            bus_rate=float(rng.uniform(1e-3, 10.0)),
            hit_ratio=float(rng.uniform(0.0, 1.0)),
            cache_time=float(rng.uniform(0.0, 50.0)),
            memory_time=float(rng.uniform(0.0, 500.0)),
        )

    letters = string.ascii_lowercase
    text = "".join(letters[int(i)] for i in rng.integers(0, 26, size=int(rng.integers(1, 40))))
    command = Command(text, int(rng.integers(1, 17)))
    component = Component("c", int(rng.integers(1, 2000)), int(rng.integers(1, 200)), int(rng.integers(1, 17)))
    doocl = DooclDescriptor(Organization.SORTED_SEQUENTIAL_LIST, int(rng.integers(1, 10_000)),
                            float(rng.uniform(0.01, 5.0)), int(rng.integers(1, 200)))
    if rng.random() < 0.5:
        env = LocalEnvironment(hw())
    else:
        env = RemoteEnvironment(hw(), hw(), NetworkProfile.fixed(float(rng.uniform(1e-4, 10.0))))
    return Scenario(doocl, env, command, component)


def analytic_total(scenario: Scenario) -> float:
    env = scenario.environment
    if isinstance(env, LocalEnvironment):
        return local_access_time(scenario.command, scenario.component, env.client).total_ns
    return remote_access_time(scenario.command, scenario.component, env.client, env.server,
                              env.network.data_rate.nominal).total_ns


def replay_suite(cases: int, tolerance: float, seed: int = 0) -> SuiteResult:
    result = SuiteResult("replay-vs-analytic")
    rng = np.random.Generator(np.random.PCG64(seed))
    for i in range(cases):
        scenario = random_scenario(rng)
        analytic = analytic_total(scenario)
        replayed = replay_transfer(scenario)
        result.checked += 1
        err = abs(replayed - analytic) / analytic
        if not err <= tolerance:
            result.failures.append(f"case {i}: replay {replayed!r} vs analytic {analytic!r} (rel err {err:.3g})")
    return result


def run_validation(max_n: int = DEFAULT_MAX_N, tolerance: float = DEFAULT_TOLERANCE,
                   replay_cases: int = DEFAULT_REPLAY_CASES, seed: int = 0) -> List[SuiteResult]:
    return [
        search_count_suite(Organization.SORTED_SEQUENTIAL_LIST, max_n, seed),
        search_count_suite(Organization.BALANCED_BINARY_TREE, max_n, seed),
        search_count_suite(Organization.UNSORTED_SEQUENTIAL_LIST, min(max_n, LINEAR_MAX_N), seed),
        replay_suite(replay_cases, tolerance, seed),
    ]
