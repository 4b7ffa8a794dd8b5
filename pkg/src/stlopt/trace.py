"""Uniformly sampled multi-channel traces and window index arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    EmptyWindowError,
    InsufficientHorizonError,
    TraceError,
    UnalignedTimeError,
    UnknownChannelError,
)
from .formula import Interval

GRID_TOL = 1e-9  # absolute tolerance (seconds) when matching times to the grid


@dataclass(frozen=True, eq=False)
class Trace:
    """Signal sampled at t0 + k*dt; one row per step, one column per channel."""

    channels: tuple[str, ...]
    t0: float
    dt: float
    samples: np.ndarray

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("sample period dt must be positive")
        samples = np.ascontiguousarray(self.samples, dtype=float)
        if samples.ndim != 2:
            raise ValueError("samples must be a 2-D array (steps x channels)")
        if samples.shape[0] < 1:
            raise ValueError("trace needs at least one sample")
        if samples.shape[1] != len(self.channels):
            raise ValueError(
                f"{samples.shape[1]} columns for {len(self.channels)} channels"
            )
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "channels", tuple(self.channels))

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def end_time(self) -> float:
        return self.t0 + (self.n_samples - 1) * self.dt

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_samples)

    def column(self, channel: str) -> np.ndarray:
        try:
            j = self.channels.index(channel)
        except ValueError:
            raise UnknownChannelError(
                f"unknown channel {channel!r}; trace has {list(self.channels)}"
            ) from None
        return self.samples[:, j]

    def value(self, channel: str, k: int) -> float:
        return float(self.column(channel)[k])

    def time_index(self, t: float) -> int:
        """Grid index of time t; raises if t is off-grid or outside the trace."""
        k = round((t - self.t0) / self.dt)
        if abs(t - (self.t0 + k * self.dt)) > GRID_TOL:
            raise UnalignedTimeError(
                f"unaligned time {t}: not within {GRID_TOL} s of the sample grid"
            )
        if k < 0 or k >= self.n_samples:
            raise UnalignedTimeError(
                f"time {t} outside the sampled range [{self.t0}, {self.end_time}]"
            )
        return int(k)


def window_indices(x: Trace, t: float, interval: Interval) -> np.ndarray:
    """Sample indices k with t+a <= t0 + k*dt <= t+b (tolerance GRID_TOL).

    Raises EmptyWindowError when the grid skips the whole window and
    InsufficientHorizonError when the window reaches past the trace end.
    """
    lo = t + interval.a - GRID_TOL
    hi = t + interval.b + GRID_TOL
    k_lo = max(0, math.ceil((lo - x.t0) / x.dt))
    k_hi = math.floor((hi - x.t0) / x.dt)
    if k_hi >= x.n_samples:
        raise InsufficientHorizonError(
            f"insufficient horizon: window [{t + interval.a}, {t + interval.b}] "
            f"extends past the last sample at {x.end_time}"
        )
    if k_lo > k_hi:
        raise EmptyWindowError(
            f"empty window: no sample in [{t + interval.a}, {t + interval.b}] "
            f"with dt={x.dt} (sampling-rate/spec mismatch)"
        )
    return np.arange(k_lo, k_hi + 1)


def load_trace_csv(path: str) -> Trace:
    """Read a 'time,<ch1>,<ch2>,...' CSV; rejects non-uniform sampling."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        names = [c.strip() for c in header.split(",")]
        if not names or names[0] != "time" or len(names) < 2:
            raise TraceError(f"{path}: header must be 'time,<ch1>,...', got {header!r}")
        try:
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        except ValueError as exc:
            raise TraceError(f"{path}: {exc}") from None
    if data.shape[0] < 1 or data.shape[1] != len(names):
        raise TraceError(f"{path}: row width does not match header")
    times = data[:, 0]
    if data.shape[0] == 1:
        dt = 1.0  # single sample: period is irrelevant but must be positive
    else:
        diffs = np.diff(times)
        if np.any(diffs <= 0):
            raise TraceError(f"{path}: time column must be strictly increasing")
        dt = float((times[-1] - times[0]) / (len(times) - 1))
        if np.any(np.abs(diffs - dt) > 1e-6 * dt):
            raise TraceError(
                f"{path}: non-uniform sampling (relative tolerance 1e-6 exceeded)"
            )
    return Trace(tuple(names[1:]), float(times[0]), dt, data[:, 1:])


def save_trace_csv(trace: Trace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("time," + ",".join(trace.channels) + "\n")
        for t, row in zip(trace.times(), trace.samples):
            cells = [repr(float(t))] + [repr(float(v)) for v in row]
            fh.write(",".join(cells) + "\n")
