"""YAML scenario documents: parsing with field-path diagnostics, and rendering.

Rates may be written as plain numbers (interpreted in the document's
``units.rate``, default bpns) or as strings with a unit suffix such as
``"50 Mbps"`` or ``"0.05 bpns"``. 1 Mbps = 1e-3 bits/ns. Times are in ns.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml

from .errors import DcaqError, ScenarioError
from .model import (Command, Component, DooclDescriptor, FixedRate, HardwareProfile, LocalEnvironment,
                    NetworkProfile, NormalRate, Organization, RemoteEnvironment, Scenario, UniformRate)

FIXTURE_DIR = Path(__file__).parent / "fixtures"
RATE_UNITS = ("bpns", "mbps")
_UNIT_NAMES = {"bpns": "bpns", "mbps": "Mbps"}
_RATE_RE = re.compile(r"^\s*([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)\s*([A-Za-z]+)\s*$")


@dataclass(frozen=True)
class ScenarioDocument:
    label: str
    scenario: Scenario
    rate_unit: str = "bpns"


def fixture_names():
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.yaml"))


def resolve_path(name) -> Path:
    """A real file path, or the name of a shipped fixture."""
    path = Path(name)
    if path.is_file():
        return path
    stem = path.name[:-5] if path.name.endswith(".yaml") else path.name
    candidate = FIXTURE_DIR / f"{stem}.yaml"
    if candidate.is_file():
        return candidate
    raise ScenarioError("", f"no such scenario file or fixture: {name}")


# --- parsing ---------------------------------------------------------------

class _Reader:
    def __init__(self, data, path=""):
        self.data = data
        self.path = path

    def _sub(self, key):
        return f"{self.path}.{key}" if self.path else key

    def section(self, key):
        value = self.raw(key)
        if not isinstance(value, dict):
            raise ScenarioError(self._sub(key), f"expected a mapping, got {type(value).__name__}")
        return _Reader(value, self._sub(key))

    def raw(self, key, default=...):
        if key not in self.data:
            if default is not ...:
                return default
            raise ScenarioError(self._sub(key), "missing field")
        return self.data[key]

    def integer(self, key, default=...):
        value = self.raw(key, default)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ScenarioError(self._sub(key), f"expected an integer, got {value!r}")
        return value

    def number(self, key, default=...):
        value = self.raw(key, default)
        if value is None and default is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(self._sub(key), f"expected a number, got {value!r}")
        return float(value)

    def string(self, key, default=...):
        value = self.raw(key, default)
        if not isinstance(value, str):
            raise ScenarioError(self._sub(key), f"expected a string, got {value!r}")
        return value

    def boolean(self, key, default=...):
        value = self.raw(key, default)
        if not isinstance(value, bool):
            raise ScenarioError(self._sub(key), f"expected true/false, got {value!r}")
        return value

    def rate(self, key, unit):
        value = self.raw(key)
        path = self._sub(key)
        if isinstance(value, bool):
            raise ScenarioError(path, f"expected a rate, got {value!r}")
        if isinstance(value, (int, float)):
            return _to_bpns(float(value), unit)
        if isinstance(value, str):
            m = _RATE_RE.match(value)
            if not m or m.group(2).lower() not in RATE_UNITS:
                raise ScenarioError(path, f"cannot parse rate {value!r}; use e.g. '50 Mbps' or '0.05 bpns'")
            return _to_bpns(float(m.group(1)), m.group(2).lower())
        raise ScenarioError(path, f"expected a rate, got {value!r}")

    def build(self, key, factory, *args, fields=()):
        # run a model constructor, attributing its validation error to a field
        try:
            return factory(*args)
        except DcaqError as exc:
            key = key or _field_of(str(exc), fields)
            raise ScenarioError(self._sub(key) if key else self.path, str(exc)) from None


def _to_bpns(value, unit):
    # divide rather than multiply by 1e-3: 50 Mbps must land exactly on 0.05
    return value / 1000.0 if unit == "mbps" else value


def _field_of(exc_message, fields):
    for name in fields:
        if exc_message.startswith(name):
            return name
    return None


def _hardware(r: _Reader, unit):
    bus = r.rate("bus_rate", unit)
    hr = r.number("hit_ratio")
    tc = r.number("cache_time")
    tm = r.number("memory_time")
    try:
        return HardwareProfile(bus, hr, tc, tm)
    except DcaqError as exc:
        name = _field_of(str(exc), ("bus_rate", "hit_ratio", "cache_time", "memory_time"))
        raise ScenarioError(r._sub(name) if name else r.path, str(exc)) from None


def _network(r: _Reader, unit):
    value = r.raw("data_rate")
    if not isinstance(value, dict):
        rate = r.rate("data_rate", unit)
        return r.build("data_rate", NetworkProfile.fixed, rate)
    d = r.section("data_rate")
    kind = d.string("kind")
    if kind == "fixed":
        spec = d.build("rate", FixedRate, d.rate("rate", unit))
    elif kind == "uniform":
        spec = d.build("", UniformRate, d.rate("low", unit), d.rate("high", unit), fields=("low", "high"))
    elif kind == "normal":
        spec = d.build("", NormalRate, d.rate("mean", unit), d.rate("stddev", unit), fields=("mean", "stddev"))
    else:
        raise ScenarioError(d._sub("kind"), f"unknown distribution {kind!r}; expected fixed, uniform or normal")
    return NetworkProfile(spec)


def document_from_dict(data: Any, default_label: str = "scenario") -> ScenarioDocument:
    if not isinstance(data, dict):
        raise ScenarioError("", "scenario document must be a mapping")
    root = _Reader(data)
    label = root.string("label", default_label)
    unit = "bpns"
    if "units" in data:
        unit = root.section("units").string("rate", "bpns").lower()
        if unit not in RATE_UNITS:
            raise ScenarioError("units.rate", f"unknown rate unit {unit!r}; expected bpns or Mbps")

    d = root.section("doocl")
    org_name = d.string("organization")
    try:
        organization = Organization(org_name)
    except ValueError:
        choices = ", ".join(o.value for o in Organization)
        raise ScenarioError("doocl.organization", f"unknown organization {org_name!r}; expected one of {choices}") from None
    count = d.integer("component_count")
    iteration = d.number("iteration_time")
    subs = d.integer("sublibrary_count")
    available = d.boolean("available", True)
    try:
        doocl = DooclDescriptor(organization, count, iteration, subs, available)
    except DcaqError as exc:
        name = _field_of(str(exc), ("component_count", "iteration_time", "sublibrary_count"))
        raise ScenarioError(f"doocl.{name}" if name else "doocl", str(exc)) from None

    e = root.section("environment")
    variant = e.string("variant")
    if variant == "local":
        environment = LocalEnvironment(_hardware(e.section("client"), unit))
    elif variant == "remote":
        environment = RemoteEnvironment(
            _hardware(e.section("client"), unit),
            _hardware(e.section("server"), unit),
            _network(e.section("network"), unit),
        )
    else:
        raise ScenarioError("environment.variant", f"expected local or remote, got {variant!r}")

    c = root.section("command")
    command = c.build("", Command, c.string("text"), c.integer("bits_per_char", 8),
                      fields=("text", "bits_per_char"))
    p = root.section("component")
    component = p.build("", Component, p.string("name"), p.integer("lines"),
                        p.integer("chars_per_line"), p.integer("bits_per_char"),
                        fields=("name", "lines", "chars_per_line", "bits_per_char"))
    override = root.number("explicit_ts_override", None)
    scenario = root.build("explicit_ts_override", Scenario, doocl, environment, command, component, override)
    return ScenarioDocument(label, scenario, unit)


def parse_document(text: str, default_label: str = "scenario") -> ScenarioDocument:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError("", f"invalid YAML: {exc}") from None
    return document_from_dict(data, default_label)


def load_document(path) -> ScenarioDocument:
    path = resolve_path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioError("", f"cannot read {path}: {exc}") from None
    return parse_document(text, default_label=path.stem)


def parse_scenario(path) -> Scenario:
    return load_document(path).scenario


# --- rendering -------------------------------------------------------------

def _render_rate(rate, unit):
    if unit == "bpns":
        return rate
    shown = rate * 1000.0
    for candidate in (shown, math.nextafter(shown, math.inf), math.nextafter(shown, -math.inf)):
        if _to_bpns(candidate, unit) == rate:
            return candidate
    return f"{rate!r} bpns"


def _hardware_dict(hw, unit):
    return {
        "bus_rate": _render_rate(hw.bus_rate, unit),
        "hit_ratio": hw.hit_ratio,
        "cache_time": hw.cache_time,
        "memory_time": hw.memory_time,
    }


def _rate_spec_dict(spec, unit):
    if isinstance(spec, FixedRate):
        return {"kind": "fixed", "rate": _render_rate(spec.rate, unit)}
    if isinstance(spec, UniformRate):
        return {"kind": "uniform", "low": _render_rate(spec.low, unit), "high": _render_rate(spec.high, unit)}
    return {"kind": "normal", "mean": _render_rate(spec.mean, unit), "stddev": _render_rate(spec.stddev, unit)}


def document_to_dict(doc: ScenarioDocument) -> dict:
    s, unit = doc.scenario, doc.rate_unit
    env = s.environment
    if isinstance(env, LocalEnvironment):
        environment = {"variant": "local", "client": _hardware_dict(env.client, unit)}
    else:
        environment = {
            "variant": "remote",
            "client": _hardware_dict(env.client, unit),
            "server": _hardware_dict(env.server, unit),
            "network": {"data_rate": _rate_spec_dict(env.network.data_rate, unit)},
        }
    return {
        "label": doc.label,
        "units": {"rate": _UNIT_NAMES[unit]},
        "doocl": {
            "organization": s.doocl.organization.value,
            "component_count": s.doocl.component_count,
            "iteration_time": s.doocl.iteration_time,
            "sublibrary_count": s.doocl.sublibrary_count,
            "available": s.doocl.available,
        },
        "environment": environment,
        "command": {"text": s.command.text, "bits_per_char": s.command.bits_per_char},
        "component": {
            "name": s.component.name,
            "lines": s.component.lines,
            "chars_per_line": s.component.chars_per_line,
            "bits_per_char": s.component.bits_per_char,
        },
        "explicit_ts_override": s.explicit_ts_override,
    }


def render_document(doc: ScenarioDocument) -> str:
    return yaml.safe_dump(document_to_dict(doc), sort_keys=False)
