"""Exact simulation of standard max-stable processes on a grid.

A path of the process eta is built from a generator Z by the spectral
construction: with Gamma_1 < Gamma_2 < ... the arrival times of a unit-rate
Poisson process and Z_1, Z_2, ... independent generator paths,

    xi(t) = max_i Z_i(t) / Gamma_i,        eta(t) = -1 / xi(t).

Arrivals are consumed until C / Gamma_i < min_t xi(t), where C bounds
sup Z almost surely; past that point no later arrival can raise xi at any
grid point, so the returned values are exact on the grid (a property the
verification suite asserts bit-for-bit by pushing extra arrivals).

Draw layout per block and round (fixed; see ``streams``): one standard
exponential per still-active replica in ascending replica order, then the
variant's uniform block of shape (active, k) row-major.

On the standard scale, P(eta_t <= x) = exp(x) for x <= 0, and
P(eta <= f everywhere) = exp(-E sup |f| Z) for nonpositive f.
"""

from __future__ import annotations

from collections.abc import Iterator

import numpy as np

from .dnorm import LevelFunction
from .errors import BoundTooLooseError
from .estimates import Estimate, binomial_estimate
from .generators import (
    UNIFORMS_PER_PATH,
    CompleteDependence,
    GeneratorSpec,
    NonlinearExample,
    PiecewiseExample,
    SineBump,
    TwoBranch,
    sample_paths,
    validate_spec,
)
from .paths import SamplePath, SubGrid, TimeGrid
from .streams import Seed, block_streams

DEFAULT_MAX_POINTS = 10**6

#: Kolmogorov one-sample critical value at the band used throughout:
#: D_n <= KS_CRITICAL / sqrt(n).
KS_CRITICAL = 1.63


def generator_bound(spec: GeneratorSpec) -> float:
    """A constant C with sup Z <= C almost surely.

    Looser is slower but still exact; SineBump uses 1 + amp even though
    1 + amp/2 would do.
    """
    validate_spec(spec)
    if isinstance(spec, CompleteDependence):
        return 1.0
    if isinstance(spec, PiecewiseExample):
        return float(spec.n)
    if isinstance(spec, NonlinearExample):
        return max(max(z0, 1.0, z1) for _, z0, z1 in spec._atoms())
    if isinstance(spec, TwoBranch):
        return 2.0
    if isinstance(spec, SineBump):
        return 1.0 + spec.amp
    raise TypeError(f"unhandled spec {type(spec).__name__}")


def _spectral_block(
    spec: GeneratorSpec,
    grid_points: np.ndarray,
    rng: np.random.Generator,
    count: int,
    max_points: int,
) -> np.ndarray:
    """xi values for one block of replicas; shape (count, len(grid_points))."""
    bound = generator_bound(spec)
    k = UNIFORMS_PER_PATH[type(spec)]
    npts = grid_points.size
    xi_out = np.empty((count, npts))
    idx = np.arange(count)
    gamma = np.zeros(count)
    xi = np.zeros((count, npts))
    arrivals = 0
    while idx.size:
        if arrivals >= max_points:
            deficit = float((bound / gamma - xi.min(axis=1)).max())
            raise BoundTooLooseError(deficit=deficit, arrivals=arrivals)
        arrivals += 1
        gamma += rng.standard_exponential(idx.size)
        u = rng.random((idx.size, k)) if k else np.empty((idx.size, 0))
        z = sample_paths(spec, grid_points, u)
        z /= gamma[:, None]
        np.maximum(xi, z, out=xi)
        done = bound / gamma < xi.min(axis=1)
        if done.any():
            xi_out[idx[done]] = xi[done]
            keep = ~done
            idx = idx[keep]
            gamma = gamma[keep]
            xi = xi[keep]
    return xi_out


def msp_path_blocks(
    spec: GeneratorSpec,
    grid: TimeGrid | SubGrid,
    n: int,
    seed: Seed,
    max_points: int = DEFAULT_MAX_POINTS,
) -> Iterator[np.ndarray]:
    """Stream blocks of eta paths as (block, len(grid)) arrays.

    The concatenation over blocks is a deterministic function of
    (seed, n, grid); blocks are independent and may be consumed in any
    order that preserves their association with block indices.
    """
    validate_spec(spec)
    if max_points < 1:
        raise ValueError("max_points must be >= 1")
    for count, rng in block_streams(seed, n):
        xi = _spectral_block(spec, grid.points, rng, count, max_points)
        yield -1.0 / xi


def msp_corpus(
    spec: GeneratorSpec,
    grid: TimeGrid | SubGrid,
    n: int,
    seed: Seed,
    max_points: int = DEFAULT_MAX_POINTS,
) -> np.ndarray:
    """Materialize ``n`` eta paths as an (n, len(grid)) array."""
    return np.concatenate(
        list(msp_path_blocks(spec, grid, n, seed, max_points)), axis=0
    )


def sample_msp(
    spec: GeneratorSpec,
    grid: TimeGrid,
    stream: np.random.Generator,
    max_points: int = DEFAULT_MAX_POINTS,
) -> SamplePath:
    """One eta path on the grid; every value is strictly negative."""
    validate_spec(spec)
    if max_points < 1:
        raise ValueError("max_points must be >= 1")
    xi = _spectral_block(spec, grid.points, stream, 1, max_points)
    return SamplePath(grid, -1.0 / xi[0])


def joint_cdf_estimate(
    spec: GeneratorSpec, f: LevelFunction, grid: TimeGrid, n: int, seed: Seed
) -> Estimate:
    """Monte Carlo estimate of P(eta_t <= f(t) at every grid point)."""
    if not np.array_equal(f.grid.points, grid.points):
        raise ValueError("level function is not defined on the given grid")
    fv = f.values
    successes = 0
    for eta in msp_path_blocks(spec, grid, n, seed):
        successes += int(np.count_nonzero(np.all(eta <= fv, axis=1)))
    return binomial_estimate(successes, n, seed if isinstance(seed, int) else None)


def marginal_gof(
    spec: GeneratorSpec, t: float, grid: TimeGrid, n: int, seed: Seed
) -> float:
    """Kolmogorov-Smirnov distance of simulated eta_t against exp(x), x <= 0."""
    if n < 1:
        raise ValueError("n must be >= 1 for a KS distance")
    col = grid.index_of(t)
    samples = np.empty(n)
    pos = 0
    for eta in msp_path_blocks(spec, grid, n, seed):
        samples[pos : pos + eta.shape[0]] = eta[:, col]
        pos += eta.shape[0]
    return ks_distance_neg_exponential(samples)


def ks_distance_neg_exponential(samples: np.ndarray) -> float:
    """KS distance between a sample (values <= 0) and F(x) = exp(x)."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("empty sample")
    cdf = np.exp(np.minimum(x, 0.0))
    i = np.arange(1, n + 1)
    d_plus = (i / n - cdf).max()
    d_minus = (cdf - (i - 1) / n).max()
    return float(max(d_plus, d_minus))


def ks_band(n: int, critical: float = KS_CRITICAL) -> float:
    """Acceptance band for a KS distance at ``n`` samples."""
    return critical / np.sqrt(n)


def stopping_exactness_violations(
    spec: GeneratorSpec,
    grid: TimeGrid | SubGrid,
    n: int,
    seed: Seed,
    extra: int = 100,
    max_points: int = DEFAULT_MAX_POINTS,
) -> int:
    """Count paths whose grid values change when arrivals continue past the
    stopping rule.

    For each path, xi is snapshotted the round its stopping rule fires;
    at least ``extra`` further arrivals are then consumed for every path
    and the final xi is compared bit-for-bit. The expected count is 0: the
    rule fires only when no later arrival can contribute.
    """
    validate_spec(spec)
    bound = generator_bound(spec)
    k = UNIFORMS_PER_PATH[type(spec)]
    violations = 0
    for count, rng in block_streams(seed, n):
        gamma = np.zeros(count)
        xi = np.zeros((count, len(grid)))
        snap = np.zeros_like(xi)
        stopped = np.zeros(count, dtype=bool)
        since_stop = np.zeros(count, dtype=int)
        arrivals = 0
        while not (stopped.all() and since_stop.min() >= extra):
            if arrivals >= max_points + extra:
                raise BoundTooLooseError(
                    deficit=float((bound / gamma - xi.min(axis=1)).max()),
                    arrivals=arrivals,
                )
            arrivals += 1
            since_stop[stopped] += 1
            gamma += rng.standard_exponential(count)
            u = rng.random((count, k)) if k else np.empty((count, 0))
            z = sample_paths(spec, grid.points, u)
            z /= gamma[:, None]
            np.maximum(xi, z, out=xi)
            newly = ~stopped & (bound / gamma < xi.min(axis=1))
            snap[newly] = xi[newly]
            stopped |= newly
        violations += int(np.count_nonzero(np.any(snap != xi, axis=1)))
    return violations
