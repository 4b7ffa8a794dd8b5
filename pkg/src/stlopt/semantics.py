"""Boolean satisfaction and the seven quantitative robustness semantics.

All evaluators share one recursion parameterized by a conjunction/disjunction
aggregator pair.  Negation is threaded through as a polarity flag: predicates
negate their margin and the aggregator roles swap.  For min/max, LSE, AGM and
the scale-invariant weighted-average aggregators this is identical to the
rule r(!phi) = -r(phi) because each disjunction aggregator is the exact dual
of its conjunction partner.  The smooth pair is deliberately not dual (both
members under-approximate), and the polarity trick is what keeps the smooth
value below the space value on every formula, negations included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import aggregators as agg
from .exceptions import (
    AvgSemanticsError,
    EvaluationError,
    InsufficientHorizonError,
    MissingAgmScaleError,
)
from .formula import (
    And,
    Eventually,
    Formula,
    Globally,
    Not,
    Or,
    Pred,
    Until,
    channels,
    horizon,
)
from .trace import GRID_TOL, Trace, window_indices

METRIC_KINDS = ("space", "time", "lse", "smooth", "agm", "avg", "new")


@dataclass(frozen=True)
class MetricConfig:
    """Selected robustness semantics plus its hyperparameters.

    k scales the lse and smooth aggregators, nu the scale-invariant weighted
    average, and agm_scales maps channel names to positive half-ranges used
    to normalize predicate margins into [-1, 1].
    """

    kind: str
    k: float = 10.0
    nu: float = 2.0
    agm_scales: dict[str, float] | None = None

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise ValueError(f"metric kind must be one of {METRIC_KINDS}")
        if self.k <= 0:
            raise ValueError("scale factor k must be positive")
        if self.nu <= 0:
            raise ValueError("scale factor nu must be positive")
        if self.agm_scales is not None:
            for name, scale in self.agm_scales.items():
                if scale <= 0:
                    raise ValueError(f"agm scale for {name!r} must be positive")


@dataclass(frozen=True)
class RobustnessValue:
    value: float
    satisfied_hint: bool | None = None


@dataclass(frozen=True)
class TimeRobustness:
    """Right time robustness: value = chi * d_max, chi reported separately."""

    value: float
    chi: int
    truncated: bool


def _check_preconditions(f: Formula, x: Trace, t: float) -> int:
    k0 = x.time_index(t)
    if t + horizon(f) > x.end_time + GRID_TOL:
        raise InsufficientHorizonError(
            f"insufficient horizon: need samples to {t + horizon(f)} s "
            f"but trace ends at {x.end_time} s"
        )
    return k0


def _grid_time(x: Trace, k: int) -> float:
    return x.t0 + k * x.dt


# Boolean oracle ---------------------------------------------------------


def satisfies(f: Formula, x: Trace, t: float) -> bool:
    """Classical discrete-time STL satisfaction at grid time t."""
    k0 = _check_preconditions(f, x, t)
    return _sat(f, x, k0)


def _sat(f: Formula, x: Trace, k: int) -> bool:
    if isinstance(f, Pred):
        return f.holds(x.value(f.channel, k))
    if isinstance(f, Not):
        return not _sat(f.child, x, k)
    if isinstance(f, And):
        return all(_sat(a, x, k) for a in f.args)
    if isinstance(f, Or):
        return any(_sat(a, x, k) for a in f.args)
    if isinstance(f, Globally):
        win = window_indices(x, _grid_time(x, k), f.interval)
        return all(_sat(f.child, x, int(j)) for j in win)
    if isinstance(f, Eventually):
        win = window_indices(x, _grid_time(x, k), f.interval)
        return any(_sat(f.child, x, int(j)) for j in win)
    if isinstance(f, Until):
        win = window_indices(x, _grid_time(x, k), f.interval)
        for j in win:
            if _sat(f.rhs, x, int(j)) and all(
                _sat(f.lhs, x, k1) for k1 in range(k, int(j) + 1)
            ):
                return True
        return False
    raise TypeError(f"not a formula node: {f!r}")


# Generic quantitative recursion -----------------------------------------


def _rho(f, x, k, and_agg, or_agg, pred_value, positive):
    if isinstance(f, Pred):
        v = pred_value(f, x, k)
        return v if positive else -v
    if isinstance(f, Not):
        return _rho(f.child, x, k, and_agg, or_agg, pred_value, not positive)
    conj = and_agg if positive else or_agg
    disj = or_agg if positive else and_agg
    if isinstance(f, And):
        return conj([_rho(a, x, k, and_agg, or_agg, pred_value, positive) for a in f.args])
    if isinstance(f, Or):
        return disj([_rho(a, x, k, and_agg, or_agg, pred_value, positive) for a in f.args])
    if isinstance(f, Globally):
        win = window_indices(x, _grid_time(x, k), f.interval)
        return conj(
            [_rho(f.child, x, int(j), and_agg, or_agg, pred_value, positive) for j in win]
        )
    if isinstance(f, Eventually):
        win = window_indices(x, _grid_time(x, k), f.interval)
        return disj(
            [_rho(f.child, x, int(j), and_agg, or_agg, pred_value, positive) for j in win]
        )
    if isinstance(f, Until):
        win = window_indices(x, _grid_time(x, k), f.interval)
        outer = []
        for j in win:
            prefix = conj(
                [
                    _rho(f.lhs, x, k1, and_agg, or_agg, pred_value, positive)
                    for k1 in range(k, int(j) + 1)
                ]
            )
            rhs_val = _rho(f.rhs, x, int(j), and_agg, or_agg, pred_value, positive)
            outer.append(conj([rhs_val, prefix]))
        return disj(outer)
    raise TypeError(f"not a formula node: {f!r}")


def _space_pred(f: Pred, x: Trace, k: int) -> float:
    return f.margin(x.value(f.channel, k))


def space_robustness(f: Formula, x: Trace, t: float) -> float:
    """Classical min/max robustness; sign certifies Boolean satisfaction."""
    k0 = _check_preconditions(f, x, t)
    return _rho(f, x, k0, min, max, _space_pred, True)


def lse_robustness(f: Formula, x: Trace, t: float, k: float) -> float:
    """Log-sum-exp smoothing of the space recursion; smooth but not sound."""
    k0 = _check_preconditions(f, x, t)
    return _rho(
        f,
        x,
        k0,
        lambda vs: agg.softmin_lse(vs, k),
        lambda vs: agg.softmax_lse(vs, k),
        _space_pred,
        True,
    )


def smooth_robustness(f: Formula, x: Trace, t: float, k: float) -> float:
    """Under-approximating smoothing: never exceeds the space robustness."""
    k0 = _check_preconditions(f, x, t)
    return _rho(
        f,
        x,
        k0,
        lambda vs: agg.smooth_min(vs, k),
        lambda vs: agg.smooth_max(vs, k),
        _space_pred,
        True,
    )


def new_robustness(f: Formula, x: Trace, t: float, nu: float) -> float:
    """Scale-invariant weighted-average semantics; sign matches space robustness."""
    k0 = _check_preconditions(f, x, t)
    return _rho(
        f,
        x,
        k0,
        lambda vs: agg.new_and(vs, nu),
        lambda vs: agg.new_or(vs, nu),
        _space_pred,
        True,
    )


def agm_robustness(f: Formula, x: Trace, t: float, scales: dict[str, float]) -> float:
    """Arithmetic/geometric-mean semantics over margins normalized to [-1, 1]."""
    missing = sorted(c for c in channels(f) if c not in scales)
    if missing:
        raise MissingAgmScaleError(f"missing agm scale for channel {missing[0]!r}")
    for name, scale in scales.items():
        if scale <= 0:
            raise ValueError(f"agm scale for {name!r} must be positive")

    def pred_value(p: Pred, x_: Trace, k_: int) -> float:
        return float(np.clip(p.margin(x_.value(p.channel, k_)) / scales[p.channel], -1.0, 1.0))

    k0 = _check_preconditions(f, x, t)
    return _rho(f, x, k0, agg.agm_and, agg.agm_or, pred_value, True)


# Averaging semantics ------------------------------------------------------


def _validate_avg(f: Formula, inside_temporal: bool = False) -> None:
    if isinstance(f, Pred):
        return
    if isinstance(f, Not):
        _validate_avg(f.child, inside_temporal)
        return
    if isinstance(f, (And, Or)):
        for a in f.args:
            _validate_avg(a, inside_temporal)
        return
    if isinstance(f, Until):
        raise AvgSemanticsError("until unsupported by avg semantics")
    if isinstance(f, (Globally, Eventually)):
        if inside_temporal:
            raise AvgSemanticsError("nested temporal unsupported by avg semantics")
        _validate_avg(f.child, True)
        return
    raise TypeError(f"not a formula node: {f!r}")


def avg_robustness(f: Formula, x: Trace, t: float) -> float:
    """Averaging semantics: eventualities report the mean of the satisfying part.

    Temporal operators may wrap only Boolean combinations of predicates.
    """
    _validate_avg(f)
    k0 = _check_preconditions(f, x, t)
    return _avg(f, x, k0)


def _avg(f: Formula, x: Trace, k: int) -> float:
    if isinstance(f, Pred):
        return _space_pred(f, x, k)
    if isinstance(f, Not):
        return -_avg(f.child, x, k)
    if isinstance(f, And):
        return min(_avg(a, x, k) for a in f.args)
    if isinstance(f, Or):
        return max(_avg(a, x, k) for a in f.args)
    win = window_indices(x, _grid_time(x, k), f.interval)
    w = [_avg(f.child, x, int(j)) for j in win]
    if isinstance(f, Eventually):
        positive = [v for v in w if v > 0]
        return float(np.mean(positive)) if positive else max(w)
    if isinstance(f, Globally):
        violations = [v for v in w if v <= 0]
        return float(np.mean(violations)) if violations else min(w)
    raise TypeError(f"not a formula node: {f!r}")


# Time robustness ----------------------------------------------------------


def time_robustness_plus(f: Formula, x: Trace, t: float) -> TimeRobustness:
    """Largest forward shift (in seconds) over which the verdict at t persists.

    The scan saturates at the last shift for which the horizon still fits in
    the trace; saturation is reported through the truncated flag.
    """
    base = satisfies(f, x, t)
    chi = 1 if base else -1
    h = horizon(f)
    d_max = 0.0
    truncated = True
    j = 1
    while t + j * x.dt + h <= x.end_time + GRID_TOL:
        if satisfies(f, x, t + j * x.dt) != base:
            truncated = False
            break
        d_max = j * x.dt
        j += 1
    return TimeRobustness(chi * d_max, chi, truncated)


# Dispatch -----------------------------------------------------------------


def evaluate(cfg: MetricConfig, f: Formula, x: Trace, t: float) -> RobustnessValue:
    """Evaluate f on x at time t under the configured semantics."""
    if cfg.kind == "space":
        value = space_robustness(f, x, t)
    elif cfg.kind == "time":
        value = time_robustness_plus(f, x, t).value
    elif cfg.kind == "lse":
        value = lse_robustness(f, x, t, cfg.k)
    elif cfg.kind == "smooth":
        value = smooth_robustness(f, x, t, cfg.k)
    elif cfg.kind == "agm":
        value = agm_robustness(f, x, t, cfg.agm_scales or {})
    elif cfg.kind == "avg":
        value = avg_robustness(f, x, t)
    elif cfg.kind == "new":
        value = new_robustness(f, x, t, cfg.nu)
    else:  # unreachable; MetricConfig validates kind
        raise ValueError(cfg.kind)
    if not math.isfinite(value):
        raise EvaluationError(f"{cfg.kind} robustness is not finite: {value}")
    return RobustnessValue(float(value))
