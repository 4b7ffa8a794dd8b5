"""Planar reaching benchmark: 9 parameters (3 segment durations, 3 waypoints)
drive a piecewise-linear end-effector trace that is scored against a
three-region eventually specification.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .formula import And, Eventually, Formula, Globally, Interval, Not, Or, Pred, Until, horizon
from .optim.bounds import Bounds
from .parser import parse_formula
from .semantics import MetricConfig, evaluate, satisfies
from .trace import GRID_TOL, Trace

PARAM_NAMES = ("d1", "d2", "d3", "x1", "y1", "x2", "y2", "x3", "y3")

WORKSPACE_LO = 0.0
WORKSPACE_HI = 1.0


@dataclass(frozen=True)
class TrajectoryParams:
    durations: tuple[float, float, float]
    waypoints: tuple[tuple[float, float], ...]

    @classmethod
    def from_vector(cls, p) -> "TrajectoryParams":
        p = np.asarray(p, dtype=float)
        if p.shape != (9,):
            raise ValueError(f"expected a 9-vector, got shape {p.shape}")
        return cls(
            (float(p[0]), float(p[1]), float(p[2])),
            ((float(p[3]), float(p[4])), (float(p[5]), float(p[6])), (float(p[7]), float(p[8]))),
        )

    def to_vector(self) -> np.ndarray:
        flat = list(self.durations) + [c for w in self.waypoints for c in w]
        return np.array(flat, dtype=float)


@dataclass(frozen=True)
class Region:
    name: str
    x_lb: float
    x_ub: float
    y_lb: float
    y_ub: float
    window: Interval

    def __post_init__(self):
        if self.x_ub <= self.x_lb or self.y_ub <= self.y_lb:
            raise ValueError(f"region {self.name!r} box is degenerate")

    @property
    def center(self) -> tuple[float, float]:
        return (0.5 * (self.x_lb + self.x_ub), 0.5 * (self.y_lb + self.y_ub))


@dataclass(frozen=True)
class TaskSpec:
    formula: Formula
    bounds: Bounds
    regions: tuple[Region, ...]
    home: tuple[float, float]
    sample_rate: float
    duration_range: tuple[float, float]

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")
        if horizon(self.formula) > 3 * self.duration_range[1] + GRID_TOL:
            raise ValueError("formula horizon exceeds the longest possible trajectory")

    @property
    def param_names(self) -> tuple[str, ...]:
        return PARAM_NAMES


def build_trajectory(params: TrajectoryParams, sample_rate: float, home) -> Trace:
    """Constant-speed straight segments home -> w1 -> w2 -> w3, sampled at
    1/sample_rate; the final sample is placed exactly on the last waypoint."""
    if sample_rate <= 0:
        raise ValueError("sample_rate must be positive")
    durations = np.asarray(params.durations, dtype=float)
    if np.any(durations <= 0):
        raise ValueError(f"duration below minimum: {durations.tolist()}")
    points = np.vstack([np.asarray(home, dtype=float), np.asarray(params.waypoints, dtype=float)])
    if np.any(points < WORKSPACE_LO) or np.any(points > WORKSPACE_HI):
        raise ValueError("waypoint outside the unit workspace")

    total = float(durations.sum())
    dt = 1.0 / sample_rate
    steps = int(round(total * sample_rate))
    n = steps + 1
    # grid end rarely matches the nominal duration sum exactly; stretch time
    # proportionally (at most half a sample period) so the path closes on w3
    time_scale = total / (steps * dt) if steps > 0 else 0.0
    cumulative = np.concatenate([[0.0], np.cumsum(durations)])

    samples = np.empty((n, 2))
    for k in range(n):
        u = min(k * dt * time_scale, total)
        seg = min(int(np.searchsorted(cumulative, u, side="right")), 3)
        if seg == 0:
            samples[k] = points[0]
            continue
        frac = (u - cumulative[seg - 1]) / durations[seg - 1]
        samples[k] = points[seg - 1] + frac * (points[seg] - points[seg - 1])
    if n > 1:
        samples[-1] = points[3]
    return Trace(("x", "y"), 0.0, dt, samples)


def region_formula_text(region: Region) -> str:
    box = (
        f"x > {region.x_lb} & x < {region.x_ub} & "
        f"y > {region.y_lb} & y < {region.y_ub}"
    )
    return f"F[{region.window.a:g},{region.window.b:g}]({box})"


DEFAULT_REGIONS = (
    Region("A", 0.20, 0.30, 0.60, 0.70, Interval(3.0, 4.0)),
    Region("B", 0.55, 0.65, 0.55, 0.65, Interval(8.0, 10.0)),
    Region("C", 0.70, 0.80, 0.15, 0.25, Interval(13.0, 15.0)),
)
DEFAULT_HOME = (0.1, 0.1)
DEFAULT_DURATION_RANGE = (1.0, 10.0)
DEFAULT_SAMPLE_RATE = 10.0


def _make_bounds(duration_range, lo=WORKSPACE_LO, hi=WORKSPACE_HI) -> Bounds:
    lower = [duration_range[0]] * 3 + [lo] * 6
    upper = [duration_range[1]] * 3 + [hi] * 6
    return Bounds(np.array(lower), np.array(upper))


def benchmark_eq2() -> TaskSpec:
    """Built-in three-region reaching benchmark."""
    text = " & ".join(region_formula_text(r) for r in DEFAULT_REGIONS)
    return TaskSpec(
        formula=parse_formula(text),
        bounds=_make_bounds(DEFAULT_DURATION_RANGE),
        regions=DEFAULT_REGIONS,
        home=DEFAULT_HOME,
        sample_rate=DEFAULT_SAMPLE_RATE,
        duration_range=DEFAULT_DURATION_RANGE,
    )


def _min_coverage(f: Formula) -> float:
    """Shortest trace duration for which every temporal window still holds a
    sample; the horizon recursion with each window's lower bound instead of
    its upper one."""
    if isinstance(f, Pred):
        return 0.0
    if isinstance(f, Not):
        return _min_coverage(f.child)
    if isinstance(f, (And, Or)):
        return max(_min_coverage(a) for a in f.args)
    if isinstance(f, (Globally, Eventually)):
        return f.interval.a + _min_coverage(f.child)
    if isinstance(f, Until):
        return f.interval.a + max(_min_coverage(f.lhs), _min_coverage(f.rhs))
    raise TypeError(f"not a formula node: {f!r}")


def _pad_to_horizon(trace: Trace, needed_end: float) -> Trace:
    """Hold the final pose so the trace covers the formula horizon."""
    if trace.end_time >= needed_end - GRID_TOL:
        return trace
    extra = int(np.ceil((needed_end - GRID_TOL - trace.end_time) / trace.dt))
    pad = np.repeat(trace.samples[-1:, :], extra, axis=0)
    return Trace(trace.channels, trace.t0, trace.dt, np.vstack([trace.samples, pad]))


def evaluation_trace(spec: TaskSpec, params: TrajectoryParams) -> Trace:
    """The trace the objective scores: built, then held at the final pose
    through the formula horizon."""
    trace = build_trajectory(params, spec.sample_rate, spec.home)
    return _pad_to_horizon(trace, horizon(spec.formula))


def objective_detail(
    spec: TaskSpec, cfg: MetricConfig, p
) -> tuple[float, bool, Trace | None]:
    """(robustness value, Boolean-oracle satisfaction, scored trace).

    Parameter vectors whose total duration cannot place a sample in every
    window are not scored; they get the penalty -(horizon - total) - 1 and
    count as unsatisfied, which keeps the objective finite on the whole box
    and pushes optimizers toward feasible durations.
    """
    p = np.asarray(p, dtype=float)
    if not spec.bounds.contains(p, tol=GRID_TOL):
        raise ValueError(f"parameters outside the task bounds: {p.tolist()}")
    params = TrajectoryParams.from_vector(p)
    total = float(sum(params.durations))
    h = horizon(spec.formula)
    if total + GRID_TOL < _min_coverage(spec.formula):
        return -(h - total) - 1.0, False, None
    trace = evaluation_trace(spec, params)
    value = evaluate(cfg, spec.formula, trace, 0.0).value
    return value, satisfies(spec.formula, trace, 0.0), trace


def objective(spec: TaskSpec, cfg: MetricConfig, p) -> float:
    """Robustness of the trajectory built from p, as a reward to maximize."""
    return objective_detail(spec, cfg, p)[0]


# task config file ----------------------------------------------------------


def task_to_json(spec: TaskSpec) -> dict:
    from .formula import format_formula

    return {
        "regions": [
            {
                "name": r.name,
                "box": [r.x_lb, r.x_ub, r.y_lb, r.y_ub],
                "window": [r.window.a, r.window.b],
            }
            for r in spec.regions
        ],
        "home": list(spec.home),
        "bounds": {
            "duration": list(spec.duration_range),
            "workspace": [WORKSPACE_LO, WORKSPACE_HI],
        },
        "sample_rate": spec.sample_rate,
        "formula": format_formula(spec.formula),
    }


def task_from_json(data: dict) -> TaskSpec:
    regions = tuple(
        Region(
            r["name"],
            float(r["box"][0]),
            float(r["box"][1]),
            float(r["box"][2]),
            float(r["box"][3]),
            Interval(float(r["window"][0]), float(r["window"][1])),
        )
        for r in data["regions"]
    )
    duration_range = tuple(float(v) for v in data["bounds"]["duration"])
    workspace = data["bounds"].get("workspace", [WORKSPACE_LO, WORKSPACE_HI])
    if "formula" in data and data["formula"]:
        formula = parse_formula(data["formula"])
    else:
        formula = parse_formula(" & ".join(region_formula_text(r) for r in regions))
    return TaskSpec(
        formula=formula,
        bounds=_make_bounds(duration_range, float(workspace[0]), float(workspace[1])),
        regions=regions,
        home=tuple(float(v) for v in data["home"]),
        sample_rate=float(data["sample_rate"]),
        duration_range=duration_range,
    )


def load_task_file(path: str) -> TaskSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return task_from_json(json.load(fh))
