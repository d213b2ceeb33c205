"""Map raw fog-node resources onto effort dimensions in a common unit.

Both dimensions are expressed as inverse latency (1/s): more effort means
the task finishes sooner. Transmission uses Shannon capacity with a simple
power-law path loss; processing uses a fixed cycles-per-bit workload. These
are illustrative stand-ins, and calibrating ``c`` and ``sigma`` from them is
left to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidProfile


@dataclass(frozen=True)
class ResourceProfile:
    bandwidth_hz: float
    cpu_cycles_per_s: float
    distance_m: float
    data_bits: float
    tx_power_w: float
    noise_density_w_per_hz: float
    cycles_per_bit: float
    pathloss_exponent: float = 2.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not math.isfinite(value):
                raise InvalidProfile(f"{f.name} must be finite, got {value!r}")
        if self.distance_m < 0:
            raise InvalidProfile("distance_m must be >= 0")
        if self.pathloss_exponent < 2:
            raise InvalidProfile("pathloss_exponent must be >= 2")
        for name in ("bandwidth_hz", "cpu_cycles_per_s", "data_bits", "tx_power_w",
                     "noise_density_w_per_hz", "cycles_per_bit"):
            if getattr(self, name) <= 0:
                raise InvalidProfile(f"{name} must be > 0")


def transmission_rate(p: ResourceProfile) -> float:
    """Achievable rate in bits/s; distances below 1 m are clamped to 1 m."""
    d = max(p.distance_m, 1.0)
    snr = p.tx_power_w * d ** (-p.pathloss_exponent) / (p.noise_density_w_per_hz * p.bandwidth_hz)
    return p.bandwidth_hz * math.log2(1.0 + snr)


def profile_to_effort(p: ResourceProfile) -> NDArray[np.float64]:
    """Return ``[transmission effort, processing effort]`` in 1/s."""
    transmission = transmission_rate(p) / p.data_bits
    processing = p.cpu_cycles_per_s / (p.cycles_per_bit * p.data_bits)
    return np.array([transmission, processing])
