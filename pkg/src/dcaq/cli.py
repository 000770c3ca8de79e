"""Command-line interface: compute, compare, simulate, validate.

Exit codes: 0 success, 1 usage, 2 parse/validation, 3 oracle failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import warnings

from . import validation
from .core import ClassificationThresholds, evaluate, rank
from .errors import DcaqError, DegenerateDistributionWarning
from .model import LocalEnvironment, RemoteEnvironment
from .access_time import local_access_time, remote_access_time
from .scenario_io import load_document
from .simulator import monte_carlo_dcaq

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_ORACLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- formatting -------------------------------------------------------

def fmt_machine(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return json.dumps(repr(value))
        return format(value, ".17g")
    return json.dumps(str(value))


def dump_machine(pairs) -> str:
    """Flat JSON object; keys keep insertion order, floats carry 17 significant digits."""
    lines = [f"  {json.dumps(k)}: {fmt_machine(v)}" for k, v in pairs]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def num(x, digits=10) -> str:
    if x is None:
        return "-"
    if isinstance(x, int):
        return str(x)
    return format(x, f".{digits}g")


def time_units(ns) -> str:
    return f"{num(ns)} ns = {num(ns / 1e3)} us = {num(ns / 1e6)} ms = {num(ns / 1e9)} s"


def _table(headers, rows):
    widths = [max(len(str(c)) for c in col) for col in zip(headers, *rows)]
    out = ["  " + "  ".join(str(h).ljust(w) for h, w in zip(headers, widths)).rstrip()]
    out.append("  " + "  ".join("-" * w for w in widths))
    for row in rows:
        out.append("  " + "  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
    return out


# --- evaluation helpers ----------------------------------------------------

def _thresholds(args):
    return ClassificationThresholds(args.high_min, args.average_min)


def _load(path, args):
    doc = load_document(path)
    declared = doc.scenario.explicit_ts_override
    scenario = doc.scenario
    if args.no_ts_override and declared is not None:
        scenario = dataclasses.replace(scenario, explicit_ts_override=None)
    return doc, scenario, declared


def _breakdown(scenario, result):
    env = scenario.environment
    if isinstance(env, LocalEnvironment):
        return local_access_time(scenario.command, scenario.component, env.client)
    return remote_access_time(scenario.command, scenario.component, env.client, env.server, result.network_rate)


def _ts_notes(scenario, result, declared, ignored):
    notes = []
    computed = result.ts_computed_nanoseconds
    if ignored:
        notes.append(
            f"declared T_s override of {num(declared)} ns ignored; using the computed search cost "
            f"{num(computed)} ns. DCAQ deviates from the value obtained with the override.")
    elif result.ts_overridden and not math.isclose(declared, computed, rel_tol=1e-12):
        notes.append(
            f"T_s override {num(declared)} ns applied; the search model gives "
            f"{result.search_iterations} x {num(scenario.doocl.iteration_time)} ns = {num(computed)} ns "
            "(use --no-ts-override for the consistent value).")
    return notes


def _result_pairs(prefix, result):
    pairs = [
        (f"{prefix}dcaq", result.dcaq),
        (f"{prefix}access_time_seconds", result.access_time_seconds),
        (f"{prefix}access_time_ns", result.access_time_ns),
    ]
    pairs += [(f"{prefix}stage.{label}_ns", ns) for label, ns in result.access_time_breakdown]
    pairs += [
        (f"{prefix}ts_nanoseconds", result.ts_nanoseconds),
        (f"{prefix}ts_computed_nanoseconds", result.ts_computed_nanoseconds),
        (f"{prefix}ts_overridden", result.ts_overridden),
        (f"{prefix}search_iterations", result.search_iterations),
        (f"{prefix}availability", result.availability),
        (f"{prefix}sublibrary_count", result.sublibrary_count),
        (f"{prefix}network_rate_bpns", result.network_rate),
        (f"{prefix}classification.organizedness", result.classification[0]),
        (f"{prefix}classification.responsiveness", result.classification[1]),
    ]
    return pairs


def _hw_pairs(prefix, hw):
    return [
        (f"{prefix}.bus_rate_bpns", hw.bus_rate),
        (f"{prefix}.hit_ratio", hw.hit_ratio),
        (f"{prefix}.cache_time_ns", hw.cache_time),
        (f"{prefix}.memory_time_ns", hw.memory_time),
    ]


def _input_pairs(label, scenario):
    d, env = scenario.doocl, scenario.environment
    pairs = [
        ("label", label),
        ("input.doocl.organization", d.organization.value),
        ("input.doocl.component_count", d.component_count),
        ("input.doocl.iteration_time_ns", d.iteration_time),
        ("input.doocl.sublibrary_count", d.sublibrary_count),
        ("input.doocl.available", d.available),
        ("input.environment.variant", env.variant),
    ]
    pairs += _hw_pairs("input.environment.client", env.client)
    if isinstance(env, RemoteEnvironment):
        pairs += _hw_pairs("input.environment.server", env.server)
        spec = env.network.data_rate
        pairs.append(("input.environment.network.kind", spec.kind))
        for f in dataclasses.fields(spec):
            pairs.append((f"input.environment.network.{f.name}_bpns", getattr(spec, f.name)))
    pairs += [
        ("input.command.text", scenario.command.text),
        ("input.command.bits", scenario.command.bit_size),
        ("input.component.name", scenario.component.name),
        ("input.component.bits", scenario.component.bit_size),
        ("input.explicit_ts_override_ns", scenario.explicit_ts_override),
    ]
    return pairs


# --- commands -----------------------------------------------------------

def cmd_compute(args, out):
    doc, scenario, declared = _load(args.scenario, args)
    result = evaluate(scenario, _thresholds(args))
    ignored = args.no_ts_override and declared is not None
    notes = _ts_notes(scenario, result, declared, ignored)

    if args.output == "machine":
        pairs = _input_pairs(doc.label, scenario) + _result_pairs("result.", result)
        pairs += [("result.ts_override_ignored", ignored), ("result.declared_ts_override_ns", declared)]
        out.write(dump_machine(pairs))
        return EXIT_OK

    breakdown = _breakdown(scenario, result)
    lines = [f"Scenario: {doc.label} ({scenario.environment.variant} environment)", "", "Access time"]
    rows = []
    for (label, ns), det in zip(breakdown.stages, breakdown.details):
        if det.bits is not None:
            rows.append((label, det.bits, num(det.rate), "-", "-", "-", num(ns), det.description))
        else:
            rows.append((label, "-", "-", num(det.hit_ratio), num(det.cache_time), num(det.memory_time),
                         num(ns), det.description))
    lines += _table(("stage", "bits", "rate (bpns)", "hr", "t_c (ns)", "t_m (ns)", "time (ns)", "step"), rows)
    lines.append(f"  total T = {time_units(breakdown.total_ns)}")
    lines += ["", "Organizedness"]
    d = scenario.doocl
    lines.append(f"  {d.organization.value}, N = {d.component_count}: {result.search_iterations} iterations x "
                 f"{num(d.iteration_time)} ns = {num(result.ts_computed_nanoseconds)} ns")
    source = "override" if result.ts_overridden else "computed"
    lines.append(f"  T_s used = {num(result.ts_nanoseconds)} ns ({source})")
    lines += ["", "DCAQ"]
    lines.append(f"  = ({result.availability} x {num(result.ts_nanoseconds)}) / "
                 f"({num(result.access_time_seconds)} x {result.sublibrary_count}) = {num(result.dcaq, 8)}")
    org, resp = result.classification
    lines.append(f"  indications: {org} organizedness, {resp} responsiveness")
    for note in notes:
        lines.append(f"  note: {note}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_compare(args, out):
    if len(args.scenarios) < 2:
        raise UsageError("compare needs at least two scenario files")
    thresholds = _thresholds(args)
    results = []
    for path in args.scenarios:
        doc, scenario, _ = _load(path, args)
        results.append((doc.label, evaluate(scenario, thresholds)))
    ranked = rank(results)

    if args.output == "machine":
        pairs = [("count", len(ranked))]
        for i, (label, r) in enumerate(ranked, start=1):
            pairs.append((f"rank.{i}.label", label))
            pairs += _result_pairs(f"rank.{i}.", r)
        out.write(dump_machine(pairs))
        return EXIT_OK

    rows = [(i, label, num(r.dcaq, 8), num(r.access_time_seconds), num(r.ts_nanoseconds), r.sublibrary_count,
             f"{r.classification[0]}/{r.classification[1]}")
            for i, (label, r) in enumerate(ranked, start=1)]
    lines = ["Ranking (highest DCAQ first)"]
    lines += _table(("rank", "label", "DCAQ", "T (s)", "T_s (ns)", "n_s", "classification"), rows)
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_simulate(args, out, err):
    doc, scenario, _ = _load(args.scenario, args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateDistributionWarning)
        summary = monte_carlo_dcaq(scenario, args.trials, args.seed)
    degenerate = any(issubclass(w.category, DegenerateDistributionWarning) for w in caught)
    for w in caught:
        err.write(f"warning: {w.message}\n")

    if args.output == "machine":
        pairs = _input_pairs(doc.label, scenario) + [
            ("mc.trials", summary.trials),
            ("mc.seed", summary.seed),
            ("mc.generator", summary.generator),
            ("mc.mean", summary.mean),
            ("mc.stddev", summary.stddev),
            ("mc.min", summary.min),
            ("mc.max", summary.max),
            ("mc.p5", summary.quantiles[0]),
            ("mc.p50", summary.quantiles[1]),
            ("mc.p95", summary.quantiles[2]),
            ("mc.rate_min_bpns", summary.rate_min),
            ("mc.rate_max_bpns", summary.rate_max),
            ("mc.degenerate", degenerate),
        ]
        out.write(dump_machine(pairs))
        return EXIT_OK

    p5, p50, p95 = summary.quantiles
    lines = [
        f"Monte Carlo DCAQ: {doc.label}",
        f"  trials {summary.trials}, seed {summary.seed}, generator {summary.generator}",
        f"  mean {num(summary.mean)}  stddev {num(summary.stddev)}",
        f"  min {num(summary.min)}  p5 {num(p5)}  p50 {num(p50)}  p95 {num(p95)}  max {num(summary.max)}",
        f"  sampled network rate range [{num(summary.rate_min)}, {num(summary.rate_max)}] bpns",
    ]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_validate(args, out):
    suites = validation.run_validation(args.max_n, args.tolerance, args.replay_cases, args.seed)
    ok = all(s.passed for s in suites)
    if args.output == "machine":
        pairs = [("max_n", args.max_n), ("tolerance", args.tolerance)]
        for s in suites:
            pairs += [(f"suite.{s.name}.passed", s.passed), (f"suite.{s.name}.checked", s.checked),
                      (f"suite.{s.name}.failures", len(s.failures))]
        pairs.append(("passed", ok))
        out.write(dump_machine(pairs))
    else:
        for s in suites:
            status = "PASS" if s.passed else "FAIL"
            out.write(f"{status}  {s.name}: {s.checked} checks, {len(s.failures)} failures\n")
            for f in s.failures[:5]:
                out.write(f"      {f}\n")
        out.write("all suites passed\n" if ok else "oracle disagreement detected\n")
    return EXIT_OK if ok else EXIT_ORACLE


# --- parser --------------------------------------------------------------

def _global_options(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--output", choices=("human", "machine"), default=default("human"),
                        help="report format (default: human)")
    parser.add_argument("--no-ts-override", action="store_true", default=default(False),
                        help="ignore explicit_ts_override and use the computed search cost")
    parser.add_argument("--high-min", type=float, default=default(1000.0),
                        help="lowest DCAQ classified as good/high (default 1000)")
    parser.add_argument("--average-min", type=float, default=default(100.0),
                        help="lowest DCAQ classified as average/low (default 100)")


def build_parser():
    parser = _Parser(prog="dcaq", description="Activeness quotient (DCAQ) of a distributed component library.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("compute", help="evaluate one scenario")
    p.add_argument("scenario", help="scenario file or fixture name (e.g. illustration1)")
    _global_options(p, suppress=True)

    p = sub.add_parser("compare", help="rank several scenarios")
    p.add_argument("scenarios", nargs="+")
    _global_options(p, suppress=True)

    p = sub.add_parser("simulate", help="Monte Carlo over the network rate distribution")
    p.add_argument("scenario")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _global_options(p, suppress=True)

    p = sub.add_parser("validate", help="check the analytic model against the empirical oracle")
    p.add_argument("--max-n", type=int, default=validation.DEFAULT_MAX_N)
    p.add_argument("--tolerance", type=float, default=validation.DEFAULT_TOLERANCE)
    p.add_argument("--replay-cases", type=int, default=validation.DEFAULT_REPLAY_CASES)
    p.add_argument("--seed", type=int, default=0)
    _global_options(p, suppress=True)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "compute":
            return cmd_compute(args, out)
        if args.command == "compare":
            return cmd_compare(args, out)
        if args.command == "simulate":
            return cmd_simulate(args, out, err)
        if args.max_n < 1 or args.replay_cases < 1 or not args.tolerance >= 0:
            raise UsageError("--max-n and --replay-cases must be >= 1, --tolerance >= 0")
        return cmd_validate(args, out)
    except UsageError as exc:
        err.write(f"dcaq: error: {exc}\n")
        return EXIT_USAGE
    except DcaqError as exc:
        err.write(f"dcaq: error: {exc}\n")
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
