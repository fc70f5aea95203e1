"""Experiment configuration: defaults and the flat key = value file format.

Keys carry explicit units in their names where dimensional. Defaults
reproduce the reference run: g_x = 0.129, scan g_z -3 -> +3 in 60 steps over
110 ms, J12/2pi = 214.94 Hz, aggregate decoherence time 130 ms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .decoherence import DecoherenceParams
from .pulse import DEFAULT_COUPLING_FACTOR, HardwareParams


class ConfigError(ValueError):
    """Malformed configuration file or unknown key."""


@dataclass(frozen=True)
class SweepSettings:
    g_start: float = -3.0
    g_end: float = 3.0
    steps: int = 60
    total_time: float = 0.110          # seconds
    schedule_kind: str = "sinh-optimized"
    resolution: int = 2401             # continuous-schedule samples

    def __post_init__(self):
        if self.schedule_kind not in ("sinh-optimized", "constant-adiabaticity", "uniform"):
            raise ConfigError(f"unknown schedule_kind {self.schedule_kind!r}")
        if self.steps < 2:
            raise ConfigError("steps must be at least 2")


@dataclass(frozen=True)
class ExperimentConfig:
    g_x: float = 0.129
    j_i: float | None = None           # rad/s; None -> j_12 / 4
    hardware: HardwareParams = field(default_factory=HardwareParams)
    sweep: SweepSettings = field(default_factory=SweepSettings)
    decoherence: DecoherenceParams = field(default_factory=DecoherenceParams)
    alpha: float = 1e-5
    seed: int = 0
    grid_points: int = 601             # eigen-scan g_z grid
    stride: int = 1
    step_counts: tuple[int, ...] = (10, 20, 40, 60, 90, 120)

    @property
    def resolved_j_i(self) -> float:
        if self.j_i is None:
            return DEFAULT_COUPLING_FACTOR * self.hardware.j_12
        return self.j_i


_FLOAT_KEYS = {
    "g_x", "g_z_start", "g_z_end", "total_time_ms", "j_12_hz", "omega_rf_hz",
    "j_i_hz", "decoherence_time_ms", "t1_factor", "step_overhead_ms", "alpha",
}
_INT_KEYS = {"steps", "sweep_resolution", "seed", "grid_points", "stride"}
_STR_KEYS = {"schedule_kind", "decoherence_mode"}
_BOOL_KEYS = {"decoherence_enabled"}
_LIST_KEYS = {"step_counts"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _BOOL_KEYS | _LIST_KEYS


def parse_config_text(text: str) -> ExperimentConfig:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            if key in _FLOAT_KEYS:
                values[key] = float(val)
            elif key in _INT_KEYS:
                values[key] = int(val)
            elif key in _BOOL_KEYS:
                if val.lower() not in ("true", "false"):
                    raise ValueError(val)
                values[key] = val.lower() == "true"
            elif key in _LIST_KEYS:
                values[key] = tuple(int(x) for x in val.split(",") if x.strip())
            else:
                values[key] = val
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from None
    return _build(values)


def load_config(path) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config_text(fh.read())


def _build(v: dict) -> ExperimentConfig:
    hw = HardwareParams(
        j_12=2.0 * math.pi * v.get("j_12_hz", 214.94),
        omega_rf=2.0 * math.pi * v.get("omega_rf_hz", 25e3),
    )
    sweep = SweepSettings(
        g_start=v.get("g_z_start", -3.0),
        g_end=v.get("g_z_end", 3.0),
        steps=v.get("steps", 60),
        total_time=v.get("total_time_ms", 110.0) / 1e3,
        schedule_kind=v.get("schedule_kind", "sinh-optimized"),
        resolution=v.get("sweep_resolution", 601),
    )
    dec = DecoherenceParams.from_total_time(
        total=v.get("decoherence_time_ms", 130.0) / 1e3,
        mode=v.get("decoherence_mode", "per-qubit-t2"),
        t1_factor=v.get("t1_factor", 10.0),
        enabled=v.get("decoherence_enabled", True),
        step_overhead=v.get("step_overhead_ms", 0.3) / 1e3,
    )
    j_i = None
    if "j_i_hz" in v:
        j_i = 2.0 * math.pi * v["j_i_hz"]
    return ExperimentConfig(
        g_x=v.get("g_x", 0.129),
        j_i=j_i,
        hardware=hw,
        sweep=sweep,
        decoherence=dec,
        alpha=v.get("alpha", 1e-5),
        seed=v.get("seed", 0),
        grid_points=v.get("grid_points", 601),
        stride=v.get("stride", 1),
        step_counts=v.get("step_counts", (10, 20, 40, 60, 90, 120)),
    )
