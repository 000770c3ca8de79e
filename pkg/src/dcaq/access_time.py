"""Analytic component access time, local (3 stages) and remote (6 stages)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from .errors import InvalidInputError, InvalidRateError, InvalidRatioError
from .model import Command, Component, HardwareProfile


class StageDetail(NamedTuple):
    """What drove a stage: a payload over a rate, or a cache lookup."""

    bits: Optional[int] = None
    rate: Optional[float] = None
    hit_ratio: Optional[float] = None
    cache_time: Optional[float] = None
    memory_time: Optional[float] = None
    description: str = ""


@dataclass(frozen=True)
class AccessTimeBreakdown:
    stages: Tuple[Tuple[str, float], ...]
    total_ns: float
    details: Tuple[StageDetail, ...] = ()

    @classmethod
    def from_stages(cls, stages, details=()):
        total = 0.0
        for _, ns in stages:
            total += ns
        return cls(tuple(stages), total, tuple(details))

    @property
    def total_seconds(self) -> float:
        return self.total_ns / 1e9


def transfer_time(bits: int, rate: float) -> float:
    """Nanoseconds to move ``bits`` over a link of ``rate`` bits/ns."""
    if isinstance(rate, bool) or not isinstance(rate, (int, float)) or math.isnan(rate) or rate <= 0:
        raise InvalidRateError(f"transfer rate must be > 0, got {rate!r}")
    if bits < 0:
        raise InvalidInputError(f"bit count must be >= 0, got {bits}")
    return bits / rate


def cache_effective_time(hr: float, t_c: float, t_m: float) -> float:
    if not 0 <= hr <= 1:
        raise InvalidRatioError(f"hit ratio must lie in [0, 1], got {hr!r}")
    if t_c < 0 or t_m < 0:
        raise InvalidInputError("cache and memory times must be >= 0")
    return hr * t_c + (1 - hr) * (t_c + t_m)


def _lookup(hw: HardwareProfile) -> float:
    return cache_effective_time(hw.hit_ratio, hw.cache_time, hw.memory_time)


def _lookup_detail(hw, description):
    return StageDetail(hit_ratio=hw.hit_ratio, cache_time=hw.cache_time,
                       memory_time=hw.memory_time, description=description)


def local_access_time(cmd: Command, comp: Component, hw: HardwareProfile) -> AccessTimeBreakdown:
    b_c, b_p = cmd.bit_size, comp.bit_size
    stages = [
        ("t1", transfer_time(b_c, hw.bus_rate)),
        ("t2", _lookup(hw)),
        ("t3", transfer_time(b_p, hw.bus_rate)),
    ]
    details = [
        StageDetail(bits=b_c, rate=hw.bus_rate, description="command to processor over bus"),
        _lookup_detail(hw, "memory search for sublibrary"),
        StageDetail(bits=b_p, rate=hw.bus_rate, description="component to video card over bus"),
    ]
    return AccessTimeBreakdown.from_stages(stages, details)


def remote_access_time(cmd: Command, comp: Component, client: HardwareProfile,
                       server: HardwareProfile, rate_n: float) -> AccessTimeBreakdown:
    b_c, b_p = cmd.bit_size, comp.bit_size
    stages = [
        ("t1", transfer_time(b_c, client.bus_rate)),
        ("t2", transfer_time(b_c, rate_n)),
        ("t3", _lookup(server)),
        ("t4", transfer_time(b_p, server.bus_rate)),
        ("t5", transfer_time(b_p, rate_n)),
        ("t6", transfer_time(b_p, client.bus_rate)),
    ]
    details = [
        StageDetail(bits=b_c, rate=client.bus_rate, description="command to client processor over bus"),
        StageDetail(bits=b_c, rate=rate_n, description="command across network to server"),
        _lookup_detail(server, "server memory search for sublibrary"),
        StageDetail(bits=b_p, rate=server.bus_rate, description="component to server network card"),
        StageDetail(bits=b_p, rate=rate_n, description="component across network to client"),
        StageDetail(bits=b_p, rate=client.bus_rate, description="component to client video card"),
    ]
    return AccessTimeBreakdown.from_stages(stages, details)
