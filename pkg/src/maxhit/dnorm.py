"""D-norm functionals of nonpositive level functions.

For a level function f <= 0 and a generator Z, the D-norm is
E sup_t |f(t)| Z_t; it interpolates between the sup-norm (complete
dependence, E sup Z = 1) and C times the sup-norm, where C bounds sup Z.
Estimators stream generator paths in seeded blocks; comparative checks
reuse one set of paths across several functions ("shared draws"), which
turns ordering statements into exact per-draw assertions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .estimates import Estimate, RunningMean
from .generators import (
    GeneratorSpec,
    generator_moments,
    sample_generator_block,
    validate_spec,
)
from .paths import Interval, TimeGrid, _frozen_array
from .streams import Seed, block_streams

SHAPE_TAGS = ("constant", "indicator_step", "piecewise_linear")


@dataclass(frozen=True)
class LevelFunction:
    """Nonpositive function on a grid, somewhere strictly negative.

    ``shape`` records how the values were built (one of SHAPE_TAGS); the
    estimators only ever read ``values``.
    """

    grid: TimeGrid
    values: np.ndarray
    shape: str

    def __post_init__(self):
        vals = _frozen_array(self.values)
        if vals.shape != self.grid.points.shape:
            raise ValueError("level function and grid lengths differ")
        if self.shape not in SHAPE_TAGS:
            raise ValueError(f"unknown shape tag {self.shape!r}")
        if np.any(vals > 0.0):
            raise ValueError("level function must be nonpositive everywhere")
        if not np.any(vals < 0.0):
            raise ValueError("level function must be strictly negative somewhere")
        if not np.all(np.isfinite(vals)):
            raise ValueError("level function values must be finite")
        object.__setattr__(self, "values", vals)

    @staticmethod
    def constant(grid: TimeGrid, level: float) -> LevelFunction:
        return LevelFunction(grid, np.full(len(grid), float(level)), "constant")

    @staticmethod
    def indicator_step(
        grid: TimeGrid, interval: Interval, inside: float, outside: float = 0.0
    ) -> LevelFunction:
        """``inside`` on the interval (grid endpoints inclusive), ``outside`` off it."""
        sl = grid.slice_of(interval)
        values = np.full(len(grid), float(outside))
        values[sl] = float(inside)
        return LevelFunction(grid, values, "indicator_step")

    @staticmethod
    def piecewise_linear(
        grid: TimeGrid, times: np.ndarray, levels: np.ndarray
    ) -> LevelFunction:
        """Linear interpolation through breakpoints spanning [0, 1]."""
        t = np.asarray(times, dtype=float)
        v = np.asarray(levels, dtype=float)
        if t.size != v.size or t.size < 2:
            raise ValueError("need matching times/levels with at least 2 breakpoints")
        if not np.all(np.diff(t) > 0):
            raise ValueError("breakpoint times must be strictly increasing")
        if t[0] != 0.0 or t[-1] != 1.0:
            raise ValueError("breakpoints must span [0, 1]")
        return LevelFunction(grid, np.interp(grid.points, t, v), "piecewise_linear")


@dataclass(frozen=True)
class DNormEstimate:
    """Monte Carlo D-norm value with its standard error."""

    value: float
    se: float
    n: int

    def __post_init__(self):
        if self.value < 0.0 or self.se < 0.0:
            raise ValueError("D-norm estimates are nonnegative")


def _as_dnorm(est: Estimate) -> DNormEstimate:
    return DNormEstimate(value=est.value, se=est.se, n=est.n)


def dnorm_estimates(
    spec: GeneratorSpec, fs: list[LevelFunction], n: int, seed: Seed
) -> list[DNormEstimate]:
    """D-norms of several functions from one shared set of generator paths.

    All functions must share a grid. Per draw, each function sees the same
    Z path, so pointwise dominance |f| <= |g| transfers exactly to the
    estimates.
    """
    if not fs:
        return []
    validate_spec(spec)
    if n < 2:
        raise ValueError("n must be >= 2")
    grid = fs[0].grid
    for f in fs[1:]:
        if not np.array_equal(f.grid.points, grid.points):
            raise ValueError("shared-draw D-norms need a common grid")
    absf = [np.abs(f.values) for f in fs]
    acc = RunningMean(k=len(fs))
    for count, rng in block_streams(seed, n):
        z = sample_generator_block(spec, grid.points, rng, count)
        acc.add(*(np.max(z * af[None, :], axis=1) for af in absf))
    return [_as_dnorm(acc.estimate(i)) for i in range(len(fs))]


def dnorm_estimate(
    spec: GeneratorSpec, f: LevelFunction, n: int, seed: Seed
) -> DNormEstimate:
    """Monte Carlo mean of sup |f| Z over ``n`` generator paths."""
    return dnorm_estimates(spec, [f], n, seed)[0]


def dnorm_indicator(
    spec: GeneratorSpec, interval: Interval, grid: TimeGrid, n: int, seed: Seed
) -> DNormEstimate:
    """D-norm of the indicator of ``interval``: E sup of Z over it.

    With interval [0, 1] this reproduces generator_moments' m_hat exactly
    for the same seed (same draws, same functional).
    """
    validate_spec(spec)
    sl = grid.slice_of(interval)
    acc = RunningMean(k=1)
    for count, rng in block_streams(seed, n):
        z = sample_generator_block(spec, grid.points, rng, count)
        acc.add(z[:, sl].max(axis=1))
    return _as_dnorm(acc.estimate(0))


def survivor_lower_bound(
    spec: GeneratorSpec, f: LevelFunction, n: int, seed: Seed
) -> float:
    """Estimated lower bound 1 - exp(-E inf |f| Z) for P(eta > f everywhere)."""
    validate_spec(spec)
    absf = np.abs(f.values)
    acc = RunningMean(k=1)
    for count, rng in block_streams(seed, n):
        z = sample_generator_block(spec, f.grid.points, rng, count)
        acc.add(np.min(z * absf[None, :], axis=1))
    return 1.0 - math.exp(-acc.estimate(0).value)


@dataclass(frozen=True)
class ProbeComparison:
    dnorm: DNormEstimate
    sup_norm: float

    @property
    def gap(self) -> float:
        return self.dnorm.value - self.sup_norm


@dataclass(frozen=True)
class TakahashiReport:
    """Outcome of the complete-dependence criterion m = 1.

    The D-norm equals the sup-norm (for every probe) exactly when the
    generator constant is 1.
    """

    complete_dependence: bool
    m_hat: Estimate
    probes: list[ProbeComparison]


def takahashi_check(
    spec: GeneratorSpec,
    probes: list[LevelFunction],
    n: int,
    seed: Seed,
    atol: float = 1e-12,
) -> TakahashiReport:
    """Decide complete dependence by comparing D-norms with sup-norms.

    True iff every probe satisfies |dnorm - supnorm| <= 3 se + atol; the
    absolute term absorbs float accumulation in the exact-equality case.
    Requires at least three probes.
    """
    if len(probes) < 3:
        raise ValueError("need at least 3 probe functions")
    validate_spec(spec)
    grid = probes[0].grid
    ests = dnorm_estimates(spec, probes, n, seed)
    m_hat = generator_moments(spec, grid, n, seed).m_hat
    comps = []
    ok = True
    for f, est in zip(probes, ests):
        sup_norm = float(np.max(np.abs(f.values)))
        comps.append(ProbeComparison(dnorm=est, sup_norm=sup_norm))
        if abs(est.value - sup_norm) > 3.0 * est.se + atol:
            ok = False
    return TakahashiReport(complete_dependence=ok, m_hat=m_hat, probes=comps)
