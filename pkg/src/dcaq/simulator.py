"""Empirical oracle for the analytic model.

Three independent checks live here:

* real searches over synthetic libraries, counting probes;
* a stepwise replay of the retrieval pipeline in exact rational arithmetic;
* Monte Carlo sampling of the network rate to measure the spread of the
  metric.

Nothing in this module calls into ``access_time`` or ``organizedness``;
agreement with them is evidence, not a tautology.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np

from .errors import DegenerateDistributionWarning, InvalidCountError, InvalidInputError, InvalidRateError
from .model import LocalEnvironment, Organization, RemoteEnvironment, Scenario

GENERATOR_NAME = "numpy.PCG64/SeedSequence"
_SEED_LIMIT = 2**64


def _rng(seed, *spawn_key):
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < _SEED_LIMIT:
        raise InvalidInputError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=spawn_key)))


# --- synthetic libraries -------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    key: str


@dataclass(frozen=True)
class Branch:
    """Routing node: keys >= ``separator`` live in the right subtree."""

    separator: str
    left: "Node"
    right: "Node"


Node = Union[Leaf, Branch]


def _build_tree(keys, lo, hi):
    if hi - lo == 1:
        return Leaf(keys[lo])
    mid = (lo + hi + 1) // 2  # left half takes the larger share
    return Branch(keys[mid], _build_tree(keys, lo, mid), _build_tree(keys, mid, hi))


def _depth(node):
    if isinstance(node, Leaf):
        return 0
    return 1 + max(_depth(node.left), _depth(node.right))


@dataclass(frozen=True)
class SyntheticLibrary:
    organization: Organization
    keys: Tuple[str, ...]
    size: int
    root: Optional[Node] = None

    @property
    def height(self) -> Optional[int]:
        """Routing levels on the longest root-to-leaf path (at least 1)."""
        if self.root is None:
            return None
        return max(1, _depth(self.root))


def build_library(organization, n: int, seed: int) -> SyntheticLibrary:
    """Deterministic library of ``n`` unique component identifiers."""
    organization = Organization(organization)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidCountError(f"library size must be an integer >= 1, got {n!r}")
    rng = _rng(seed)
    space = max(2**32, 4 * n)
    ids = rng.choice(space, size=n, replace=False)
    keys = [f"comp-{int(i):010x}" for i in ids]
    if organization is Organization.UNSORTED_SEQUENTIAL_LIST:
        keys = [keys[int(i)] for i in rng.permutation(n)]
        return SyntheticLibrary(organization, tuple(keys), n)
    keys.sort()
    root = _build_tree(keys, 0, n) if organization is Organization.BALANCED_BINARY_TREE else None
    return SyntheticLibrary(organization, tuple(keys), n, root)


def _array_search(keys, key):
    # Deferred-equality binary search: narrow to one candidate using only
    # ordering comparisons, then test that candidate for equality.
    lo, hi = 0, len(keys) - 1
    steps = 0
    while lo < hi:
        mid = (lo + hi) // 2
        steps += 1
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return keys[lo] == key, steps


def _tree_search(root, key):
    node, steps = root, 0
    while isinstance(node, Branch):
        steps += 1
        node = node.right if key >= node.separator else node.left
    return node.key == key, steps


def empirical_search(lib: SyntheticLibrary, key: str) -> Tuple[bool, int]:
    """Search ``lib`` for ``key``; returns (found, probes).

    For binary organizations probes are the comparisons that narrow the
    candidate set down to one key. A library of one key still costs a
    single probe. Linear scans count one probe per key inspected.
    """
    org = lib.organization
    if org is Organization.UNSORTED_SEQUENTIAL_LIST:
        for probes, k in enumerate(lib.keys, start=1):
            if k == key:
                return True, probes
        return False, lib.size
    if org is Organization.BALANCED_BINARY_TREE:
        found, steps = _tree_search(lib.root, key)
    else:
        found, steps = _array_search(lib.keys, key)
    return found, max(1, steps)


def worst_case_probes(lib: SyntheticLibrary) -> int:
    worst = 0
    for key in lib.keys:
        found, probes = empirical_search(lib, key)
        if not found:
            raise AssertionError(f"present key {key} not found in {lib.organization.value} library")
        worst = max(worst, probes)
    return worst


# --- pipeline replay -----------------------------------------------------

def _exact(x):
    return Fraction(x)


def _hop(clock, bits, rate, label):
    if not rate > 0:
        raise InvalidRateError(f"{label}: rate must be > 0, got {rate!r}")
    return clock + Fraction(bits) / _exact(rate)


def _memory_search(clock, hw):
    # expected lookup cost written as cache time plus the miss penalty
    miss = 1 - _exact(hw.hit_ratio)
    return clock + _exact(hw.cache_time) + miss * _exact(hw.memory_time)


def replay_transfer(scenario: Scenario, rate_sample: Optional[float] = None) -> float:
    """Walk the request and the component through each hop; return the arrival time in ns.

    The clock is kept as an exact fraction and rounded once at the end.
    """
    env = scenario.environment
    cmd_bits = len(scenario.command.text) * scenario.command.bits_per_char
    comp = scenario.component
    comp_bits = comp.lines * comp.chars_per_line * comp.bits_per_char
    clock = Fraction(0)

    if isinstance(env, LocalEnvironment):
        clock = _hop(clock, cmd_bits, env.client.bus_rate, "client bus (command)")
        clock = _memory_search(clock, env.client)
        clock = _hop(clock, comp_bits, env.client.bus_rate, "client bus (component)")
        return float(clock)

    if not isinstance(env, RemoteEnvironment):
        raise InvalidInputError(f"unknown environment {env!r}")
    net = env.network.data_rate.nominal if rate_sample is None else rate_sample
    route = [
        (cmd_bits, env.client.bus_rate, "client bus (command)"),
        (cmd_bits, net, "network (command)"),
        None,  # server memory search
        (comp_bits, env.server.bus_rate, "server bus (component)"),
        (comp_bits, net, "network (component)"),
        (comp_bits, env.client.bus_rate, "client bus (component)"),
    ]
    for hop in route:
        if hop is None:
            clock = _memory_search(clock, env.server)
        else:
            clock = _hop(clock, *hop)
    return float(clock)


# --- Monte Carlo -------------------------------------------------------

@dataclass(frozen=True)
class McSummary:
    trials: int
    mean: float
    stddev: float
    min: float
    max: float
    quantiles: Tuple[float, float, float]
    seed: int
    generator: str = GENERATOR_NAME
    rate_min: float = 0.0
    rate_max: float = 0.0


def trial_rng(seed: int, trial: int):
    return _rng(seed, trial)


def sample_rates(scenario: Scenario, trials: int, seed: int) -> np.ndarray:
    env = scenario.environment
    if not isinstance(env, RemoteEnvironment):
        raise InvalidInputError("Monte Carlo sampling needs a remote environment with a network profile")
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise InvalidCountError(f"trials must be an integer >= 1, got {trials!r}")
    spec = env.network.data_rate
    if not env.network.is_stochastic and trials > 1:
        warnings.warn(f"network rate is fixed at {spec.rate} bpns; all {trials} trials are identical",
                      DegenerateDistributionWarning, stacklevel=3)
    return np.array([spec.sample(trial_rng(seed, i)) for i in range(trials)], dtype=float)


def _dcaq_at(scenario, rate):
    # Local import keeps the oracle's replay path free of the analytic engine;
    # only the final quotient is shared.
    from .core import evaluate
    return evaluate(scenario, network_rate_sample=rate).dcaq


def sample_dcaq(scenario: Scenario, trials: int, seed: int):
    """Per-trial (rates, dcaq values), in trial order."""
    rates = sample_rates(scenario, trials, seed)
    values = np.array([_dcaq_at(scenario, float(r)) for r in rates], dtype=float)
    return rates, values


def summarize(values: np.ndarray, rates: np.ndarray, seed: int) -> McSummary:
    p5, p50, p95 = (float(q) for q in np.percentile(values, [5, 50, 95]))
    lo, hi = float(np.min(values)), float(np.max(values))
    if lo == hi:
        # summation rounding would otherwise leave a spurious nonzero spread
        mean, stddev = lo, 0.0
    else:
        mean, stddev = float(np.mean(values)), float(np.std(values))
    return McSummary(
        trials=int(values.size),
        mean=mean,
        stddev=stddev,
        min=lo,
        max=hi,
        quantiles=(p5, p50, p95),
        seed=seed,
        rate_min=float(np.min(rates)),
        rate_max=float(np.max(rates)),
    )


def monte_carlo_dcaq(scenario: Scenario, trials: int, seed: int) -> McSummary:
    rates, values = sample_dcaq(scenario, trials, seed)
    return summarize(values, rates, seed)
