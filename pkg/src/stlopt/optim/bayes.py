"""Bayesian optimization: GP surrogate with a two-scale acquisition.

The first ten proposals come from a coordinate-stratified (Latin hypercube)
design.  Afterwards each ask runs one of two arms, both deterministic given
the seed:

* exploитation (default): a GP fitted to the incumbent's nearest history
  points scores probe clouds at 0.5%/2%/6% box width around the incumbent;
  the posterior-mean argmax is proposed.  Plain EI over uniform probes
  random-walks in this 9-dimensional box (the satisfying region occupies
  ~1e-4 of it), so local model-guided refinement carries the budget.
* exploration (after 8 non-improving evaluations): expected improvement
  over 2048 uniform probes plus 64 probes within +-1% box width of the
  incumbent, scored by the global GP refitted at every tell.
"""

from __future__ import annotations

import numpy as np

from .bounds import Bounds
from .gp import expected_improvement, fit_gp_grid, gp_predict

INIT_DESIGN = 10
N_PROBES = 2048
N_LOCAL = 64
LOCAL_FRAC = 0.01
EXPLOIT_RADII = (0.005, 0.02, 0.06)
EXPLOIT_PROBES = 256
EXPLOIT_NEIGHBORS = 30
STALL_LIMIT = 8


class BayesOpt:
    def __init__(self, bounds: Bounds, seed: int = 0):
        self.bounds = bounds
        self.rng = np.random.default_rng(seed)
        self._design = self._stratified_design(INIT_DESIGN)
        self._asked = 0
        self._stall = 0
        self.x: list[np.ndarray] = []  # unit-box history
        self.y: list[float] = []
        self._gp = None

    def _stratified_design(self, m: int) -> np.ndarray:
        # each coordinate visits every stratum exactly once, in shuffled order
        design = np.empty((m, self.bounds.n))
        for j in range(self.bounds.n):
            strata = self.rng.permutation(m)
            design[:, j] = (strata + self.rng.uniform(size=m)) / m
        return design

    def _incumbent(self) -> np.ndarray:
        return self.x[int(np.argmax(self.y))]

    def _explore(self) -> np.ndarray:
        if self._gp is None:
            self._gp = fit_gp_grid(np.array(self.x), np.array(self.y))
        incumbent = self._incumbent()
        local = incumbent + self.rng.uniform(
            -LOCAL_FRAC, LOCAL_FRAC, size=(N_LOCAL, self.bounds.n)
        )
        candidates = np.vstack(
            [self.rng.uniform(size=(N_PROBES, self.bounds.n)), np.clip(local, 0.0, 1.0)]
        )
        mean, var = gp_predict(self._gp, candidates)
        best = max(self.y)
        ei = np.array(
            [expected_improvement(float(m), float(v), best) for m, v in zip(mean, var)]
        )
        return candidates[int(np.argmax(ei))]

    def _exploit(self) -> np.ndarray:
        xs = np.array(self.x)
        ys = np.array(self.y)
        incumbent = self._incumbent()
        dist = np.linalg.norm(xs - incumbent, axis=1)
        nearest = np.argsort(dist, kind="stable")[:EXPLOIT_NEIGHBORS]
        local_gp = fit_gp_grid(xs[nearest], ys[nearest])
        clouds = [
            np.clip(
                incumbent
                + self.rng.uniform(-r, r, size=(EXPLOIT_PROBES, self.bounds.n)),
                0.0,
                1.0,
            )
            for r in EXPLOIT_RADII
        ]
        candidates = np.vstack(clouds)
        mean, _ = gp_predict(local_gp, candidates)
        return candidates[int(np.argmax(mean))]

    def ask(self) -> list[np.ndarray]:
        if self._asked < len(self._design):
            z = self._design[self._asked]
            self._asked += 1
            return [self.bounds.from_unit(z)]
        self._asked += 1
        if self._stall >= STALL_LIMIT:
            self._stall = 0
            z = self._explore()
        else:
            z = self._exploit()
        return [self.bounds.from_unit(z)]

    def tell(self, points, values) -> None:
        if len(points) != len(values):
            raise ValueError(f"got {len(points)} points but {len(values)} values")
        for p, v in zip(points, values):
            v = float(v)
            if not np.isfinite(v):
                raise ValueError("objective values must be finite")
            if not self.bounds.contains(p, tol=1e-12):
                raise ValueError(f"point outside bounds: {np.asarray(p).tolist()}")
            if self.y and v <= max(self.y):
                self._stall += 1
            else:
                self._stall = 0
            self.x.append(self.bounds.to_unit(p))
            self.y.append(v)
        if len(self.y) >= INIT_DESIGN:
            self._gp = fit_gp_grid(np.array(self.x), np.array(self.y))
