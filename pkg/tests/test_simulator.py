import warnings

import numpy as np
import pytest

from dcaq import simulator
from dcaq.core import evaluate
from dcaq.errors import DegenerateDistributionWarning, InvalidCountError, InvalidInputError
from dcaq.model import NetworkProfile, NormalRate, Organization
from dcaq.organizedness import search_iterations
from dcaq.simulator import (build_library, empirical_search, monte_carlo_dcaq, replay_transfer, sample_dcaq,
                            worst_case_probes)
from dcaq.validation import analytic_total, random_scenario, replay_suite, run_validation

from conftest import make_ill2

SORTED, TREE, LINEAR = (Organization.SORTED_SEQUENTIAL_LIST, Organization.BALANCED_BINARY_TREE,
                        Organization.UNSORTED_SEQUENTIAL_LIST)


def test_sorted_library_construction():
    lib = build_library(SORTED, 16, 42)
    assert lib.size == 16 and len(set(lib.keys)) == 16
    assert list(lib.keys) == sorted(lib.keys)


def test_single_node_tree():
    lib = build_library(TREE, 1, 0)
    assert lib.height == 1
    assert empirical_search(lib, lib.keys[0]) == (True, 1)


def test_perfect_tree_height():
    assert build_library(TREE, 1023, 7).height == 10


@pytest.mark.parametrize("org", list(Organization))
def test_library_is_deterministic(org):
    assert build_library(org, 50, 9) == build_library(org, 50, 9)
    assert build_library(org, 50, 9).keys != build_library(org, 50, 10).keys


def test_build_library_rejects_empty():
    with pytest.raises(InvalidCountError):
        build_library(SORTED, 0, 1)


def test_worst_case_sorted_16_is_four_probes():
    lib = build_library(SORTED, 16, 42)
    results = [empirical_search(lib, k) for k in lib.keys]
    assert all(found for found, _ in results)
    assert max(p for _, p in results) == 4


def test_linear_last_key():
    lib = build_library(LINEAR, 7, 3)
    assert empirical_search(lib, lib.keys[-1]) == (True, 7)


@pytest.mark.parametrize("org", list(Organization))
def test_absent_key_not_found(org):
    lib = build_library(org, 33, 5)
    found, probes = empirical_search(lib, "zzz-absent")
    assert not found and probes >= 1
    found, _ = empirical_search(lib, "aaa-absent")
    assert not found


@pytest.mark.parametrize("org", [SORTED, TREE])
def test_oracle_agrees_with_formula_up_to_1024(org):
    for n in range(1, 1025):
        assert worst_case_probes(build_library(org, n, n)) == search_iterations(org, n), n


def test_oracle_agrees_for_linear_scans():
    for n in range(1, 65):
        assert worst_case_probes(build_library(LINEAR, n, n)) == search_iterations(LINEAR, n)


def test_replay_reference_totals(ill1_scenario, ill2_scenario):
    assert replay_transfer(ill1_scenario) == pytest.approx(83230, rel=1e-12)
    assert replay_transfer(ill2_scenario) == pytest.approx(147217.2, rel=1e-12)


def test_replay_uses_rate_sample(ill2_scenario):
    assert replay_transfer(ill2_scenario, 0.2) == pytest.approx(126097.2, rel=1e-12)


def test_replay_agrees_with_analytic_on_random_scenarios():
    rng = np.random.Generator(np.random.PCG64(11))
    for _ in range(2000):
        s = random_scenario(rng)
        assert abs(replay_transfer(s) - analytic_total(s)) / analytic_total(s) <= 1e-9


def test_replay_suite_detects_disagreement(monkeypatch):
    monkeypatch.setattr("dcaq.validation.replay_transfer", lambda s: replay_transfer(s) * (1 + 1e-6))
    suite = replay_suite(10, 1e-9)
    assert not suite.passed and len(suite.failures) == 10


def test_run_validation_small():
    suites = run_validation(max_n=64, replay_cases=200)
    assert all(s.passed for s in suites), [s.failures for s in suites]


def test_monte_carlo_fixed_rate_is_degenerate(ill2_scenario):
    with pytest.warns(DegenerateDistributionWarning):
        summary = monte_carlo_dcaq(ill2_scenario, 100, 0)
    assert summary.stddev == 0
    assert summary.mean == evaluate(ill2_scenario).dcaq


def test_monte_carlo_single_trial_fixed_rate_no_warning(ill2_scenario):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        monte_carlo_dcaq(ill2_scenario, 1, 0)


def test_monte_carlo_uniform_mean_within_rate_bounds(ill2_uniform):
    summary = monte_carlo_dcaq(ill2_uniform, 10_000, 1)
    lo = evaluate(ill2_uniform, network_rate_sample=0.05).dcaq
    hi = evaluate(ill2_uniform, network_rate_sample=0.15).dcaq
    assert lo <= summary.mean <= hi
    assert summary.min <= summary.quantiles[0] <= summary.quantiles[1] <= summary.quantiles[2] <= summary.max


def test_monte_carlo_truncated_normal_quantiles():
    s = make_ill2(network=NetworkProfile(NormalRate(0.1, 0.02)))
    summary = monte_carlo_dcaq(s, 10_000, 5)
    p5, p50, p95 = summary.quantiles
    assert summary.min <= p5 <= p50 <= p95 <= summary.max
    assert summary.rate_min > 0 and summary.stddev > 0


def test_monte_carlo_is_reproducible(ill2_uniform):
    assert monte_carlo_dcaq(ill2_uniform, 500, 77) == monte_carlo_dcaq(ill2_uniform, 500, 77)
    assert monte_carlo_dcaq(ill2_uniform, 500, 77) != monte_carlo_dcaq(ill2_uniform, 500, 78)


def test_trials_are_prefix_stable(ill2_uniform):
    # per-trial seeds: the first k trials do not depend on the total count
    r1, _ = sample_dcaq(ill2_uniform, 50, 3)
    r2, _ = sample_dcaq(ill2_uniform, 100, 3)
    assert np.array_equal(r1, r2[:50])


def test_monte_carlo_sandwich(ill2_uniform):
    rates, values = sample_dcaq(ill2_uniform, 2000, 9)
    lo = evaluate(ill2_uniform, network_rate_sample=float(rates.min())).dcaq
    hi = evaluate(ill2_uniform, network_rate_sample=float(rates.max())).dcaq
    assert np.all((values >= lo) & (values <= hi))


def test_monte_carlo_rejects_local_and_bad_inputs(ill1_scenario, ill2_uniform):
    with pytest.raises(InvalidInputError):
        monte_carlo_dcaq(ill1_scenario, 10, 0)
    with pytest.raises(InvalidCountError):
        monte_carlo_dcaq(ill2_uniform, 0, 0)
    with pytest.raises(InvalidInputError):
        monte_carlo_dcaq(ill2_uniform, 10, -1)
    with pytest.raises(InvalidInputError):
        monte_carlo_dcaq(ill2_uniform, 10, 2**64)


def test_generator_name_recorded(ill2_uniform):
    assert monte_carlo_dcaq(ill2_uniform, 3, 0).generator == simulator.GENERATOR_NAME
