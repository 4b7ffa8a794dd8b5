"""Independent brute-force STL evaluators used as test oracles.

Deliberately naive: enumerate every sample time by scanning the whole
grid, recompute margins inline, and use Python's min/max directly.  Kept
separate from the library recursion so the two can disagree.
"""

from stlopt.formula import And, Eventually, Globally, Not, Or, Pred, Until

EPS = 1e-9


def _index_of(trace, t):
    for k in range(trace.n_samples):
        if abs(trace.t0 + k * trace.dt - t) <= EPS:
            return k
    raise AssertionError(f"time {t} not on grid")


def _window(trace, t, interval):
    lo, hi = t + interval.a, t + interval.b
    return [
        k
        for k in range(trace.n_samples)
        if lo - EPS <= trace.t0 + k * trace.dt <= hi + EPS
    ]


def _margin(pred, trace, k):
    v = trace.samples[k][trace.channels.index(pred.channel)]
    if pred.comparison in (">", ">="):
        return float(v) - pred.threshold
    return pred.threshold - float(v)


def brute_space(f, trace, t):
    k0 = _index_of(trace, t)
    return _space_at(f, trace, k0)


def _space_at(f, trace, k):
    t = trace.t0 + k * trace.dt
    if isinstance(f, Pred):
        return _margin(f, trace, k)
    if isinstance(f, Not):
        return -_space_at(f.child, trace, k)
    if isinstance(f, And):
        return min(_space_at(a, trace, k) for a in f.args)
    if isinstance(f, Or):
        return max(_space_at(a, trace, k) for a in f.args)
    if isinstance(f, Globally):
        return min(_space_at(f.child, trace, j) for j in _window(trace, t, f.interval))
    if isinstance(f, Eventually):
        return max(_space_at(f.child, trace, j) for j in _window(trace, t, f.interval))
    if isinstance(f, Until):
        best = None
        for j in _window(trace, t, f.interval):
            prefix = min(_space_at(f.lhs, trace, i) for i in range(k, j + 1))
            cand = min(_space_at(f.rhs, trace, j), prefix)
            best = cand if best is None else max(best, cand)
        return best
    raise TypeError(f)


def brute_sat(f, trace, t):
    k0 = _index_of(trace, t)
    return _sat_at(f, trace, k0)


def _sat_at(f, trace, k):
    t = trace.t0 + k * trace.dt
    if isinstance(f, Pred):
        v = float(trace.samples[k][trace.channels.index(f.channel)])
        return {
            "<": v < f.threshold,
            "<=": v <= f.threshold,
            ">": v > f.threshold,
            ">=": v >= f.threshold,
        }[f.comparison]
    if isinstance(f, Not):
        return not _sat_at(f.child, trace, k)
    if isinstance(f, And):
        return all(_sat_at(a, trace, k) for a in f.args)
    if isinstance(f, Or):
        return any(_sat_at(a, trace, k) for a in f.args)
    if isinstance(f, Globally):
        return all(_sat_at(f.child, trace, j) for j in _window(trace, t, f.interval))
    if isinstance(f, Eventually):
        return any(_sat_at(f.child, trace, j) for j in _window(trace, t, f.interval))
    if isinstance(f, Until):
        for j in _window(trace, t, f.interval):
            if _sat_at(f.rhs, trace, j) and all(
                _sat_at(f.lhs, trace, i) for i in range(k, j + 1)
            ):
                return True
        return False
    raise TypeError(f)
