"""Estimators for level-hitting events of simulated max-stable paths.

A path "hits" level x inside an interval when its grid minimum and maximum
bracket x (intermediate value rule). The estimators stream seeded path
blocks and report Wilson intervals; zero observed hits report the
rule-of-three interval [0, 3/n], the operational form of "probability
zero". h(0) = 0 holds by convention and is never simulated: the level 0
is almost surely not attained.

Grid detection can only miss sub-grid excursions, so every frequency here
is biased downward by at most a small discretization allowance (0.005 at
1001 grid points in the verification tolerances).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dnorm import LevelFunction
from .estimates import Estimate, binomial_estimate
from .generators import GeneratorSpec, closed_form_m, closed_form_m_tilde
from .msp import msp_path_blocks
from .paths import Interval, TimeGrid
from .streams import Seed


def hitting_bound(m: float, m_tilde: float, x: float) -> float:
    """Upper bound exp(x m~) - exp(x m) for the hitting probability at x.

    Requires 0 <= m~ <= 1 <= m (the complete-dependence corner m = m~ = 1
    is allowed and gives 0). Clipped at zero.
    """
    if m < m_tilde:
        raise ValueError(f"need m >= m_tilde, got m={m}, m_tilde={m_tilde}")
    if not 0.0 <= m_tilde <= 1.0:
        raise ValueError(f"m_tilde must lie in [0, 1], got {m_tilde}")
    if m < 1.0:
        raise ValueError(f"m must be >= 1, got {m}")
    if x > 0.0:
        raise ValueError(f"level must be <= 0, got {x}")
    return max(0.0, math.exp(x * m_tilde) - math.exp(x * m))


@dataclass(frozen=True)
class MultiHitQuery:
    """Level plus either a split time (two-hit) or an ordered time triple.

    ``split`` t0 asks for hits in both [0, t0] and [t0, 1]; a ``triple``
    (t', t0, t'') addresses the three-point event
    {eta_t' <= x0, eta_t0 > x0, eta_t'' <= x0}.
    """

    x0: float
    split: float | None = None
    triple: tuple[float, float, float] | None = None

    def __post_init__(self):
        if not self.x0 < 0.0:
            raise ValueError(f"level must be negative, got {self.x0}")
        if (self.split is None) == (self.triple is None):
            raise ValueError("provide exactly one of split or triple")
        if self.split is not None and not 0.0 < self.split < 1.0:
            raise ValueError(f"split must be interior to (0, 1), got {self.split}")
        if self.triple is not None:
            lo, mid, hi = self.triple
            if not (0.0 <= lo < mid < hi <= 1.0):
                raise ValueError(f"triple must be strictly ordered, got {self.triple}")


def _hit_mask(eta: np.ndarray, sl: slice, x: float) -> np.ndarray:
    seg = eta[:, sl]
    mn = seg.min(axis=1)
    mx = seg.max(axis=1)
    return (mn <= x) & (x <= mx)


def _seed_echo(seed: Seed) -> int | None:
    return seed if isinstance(seed, int) else None


def hitting_prob(
    spec: GeneratorSpec,
    x: float,
    interval: Interval,
    grid: TimeGrid,
    n: int,
    seed: Seed,
) -> Estimate:
    """Frequency of paths meeting level ``x`` somewhere in ``interval``."""
    if not x < 0.0:
        raise ValueError(f"level must be negative, got {x}")
    sl = grid.slice_of(interval)
    successes = 0
    for eta in msp_path_blocks(spec, grid, n, seed):
        successes += int(np.count_nonzero(_hit_mask(eta, sl, x)))
    return binomial_estimate(successes, n, _seed_echo(seed))


def curve_hit_prob(
    spec: GeneratorSpec, f: LevelFunction, n: int, seed: Seed
) -> Estimate:
    """Frequency of paths meeting the curve f(t) at some time.

    The path meets f when eta - f changes sign or touches zero on the grid.
    """
    fv = f.values
    successes = 0
    for eta in msp_path_blocks(spec, f.grid, n, seed):
        d = eta - fv[None, :]
        successes += int(
            np.count_nonzero((d.min(axis=1) <= 0.0) & (0.0 <= d.max(axis=1)))
        )
    return binomial_estimate(successes, n, _seed_echo(seed))


@dataclass(frozen=True)
class HittingCurve:
    """Hitting probabilities over a decreasing ladder of negative levels."""

    levels: np.ndarray
    estimates: list[Estimate]
    upper_bounds: np.ndarray

    def __post_init__(self):
        lv = np.asarray(self.levels, dtype=float)
        if lv.ndim != 1 or lv.size < 1:
            raise ValueError("need at least one level")
        if np.any(lv >= 0.0):
            raise ValueError("levels must be strictly negative")
        if np.any(np.diff(lv) >= 0.0):
            raise ValueError("levels must be strictly decreasing")
        if len(self.estimates) != lv.size or self.upper_bounds.shape != lv.shape:
            raise ValueError("levels, estimates, and bounds must align")
        if any(not 0.0 <= e.value <= 1.0 for e in self.estimates):
            raise ValueError("hitting estimates must lie in [0, 1]")
        if np.any(self.upper_bounds < 0.0):
            raise ValueError("upper bounds must be nonnegative")
        object.__setattr__(self, "levels", lv)


def hitting_curve(
    spec: GeneratorSpec,
    levels: np.ndarray,
    interval: Interval,
    grid: TimeGrid,
    n: int,
    seed: Seed,
    m: float | None = None,
    m_tilde: float | None = None,
) -> HittingCurve:
    """Hitting probability per level, all levels sharing one path corpus.

    ``m`` and ``m_tilde`` feed the per-level upper bounds; they default to
    the variant's closed forms. Pass estimates explicitly (e.g. from
    ``generator_moments``, clipped into [0, 1] and [1, inf)) for a spec
    without closed-form moments.
    """
    lv = np.asarray(levels, dtype=float)
    if np.any(lv >= 0.0):
        raise ValueError("levels must be strictly negative")
    if np.any(np.diff(lv) >= 0.0):
        raise ValueError("levels must be strictly decreasing")
    sl = grid.slice_of(interval)
    counts = np.zeros(lv.size, dtype=int)
    for eta in msp_path_blocks(spec, grid, n, seed):
        seg = eta[:, sl]
        mn = seg.min(axis=1)
        mx = seg.max(axis=1)
        counts += np.count_nonzero(
            (mn[None, :] <= lv[:, None]) & (lv[:, None] <= mx[None, :]), axis=1
        )
    if m is None:
        m = closed_form_m(spec)
    if m_tilde is None:
        m_tilde = closed_form_m_tilde(spec)
    if m is None or m_tilde is None:
        raise ValueError(
            "no closed-form moments for this spec; pass m and m_tilde"
        )
    bounds = np.array([hitting_bound(m, m_tilde, x) for x in lv])
    ests = [binomial_estimate(int(c), n, _seed_echo(seed)) for c in counts]
    return HittingCurve(levels=lv, estimates=ests, upper_bounds=bounds)


def hitting_integral(
    curve: HittingCurve, m_tilde: float
) -> tuple[float, float]:
    """Trapezoid integral of the curve on [min level, 0] plus a tail bound.

    A node h(0) = 0 is appended. The tail beyond the deepest level is
    bounded by integrating h(x) <= exp(x m~): exp(x_min m~)/m~ for
    m~ > 0, infinite when m~ = 0 (the bound then carries no information
    and callers need model-specific tails).
    """
    if curve.levels.size < 3:
        raise ValueError("need at least 3 levels to integrate")
    if m_tilde < 0.0:
        raise ValueError(f"m_tilde must be >= 0, got {m_tilde}")
    xs = np.append(curve.levels[::-1], 0.0)
    hs = np.append([e.value for e in curve.estimates][::-1], 0.0)
    if np.any(np.diff(xs) <= 0.0):
        raise ValueError("levels must be sorted strictly decreasing")
    integral = float(np.sum(0.5 * (hs[1:] + hs[:-1]) * np.diff(xs)))
    x_min = float(curve.levels[-1])
    tail = math.exp(x_min * m_tilde) / m_tilde if m_tilde > 0.0 else math.inf
    return integral, tail


def down_up_down_prob(
    spec: GeneratorSpec,
    query: MultiHitQuery,
    grid: TimeGrid,
    n: int,
    seed: Seed,
) -> Estimate:
    """Frequency of {eta_t' <= x0, eta_t0 > x0, eta_t'' <= x0}.

    A three-point event: exact on the grid, no discretization allowance.
    """
    if query.triple is None:
        raise ValueError("query must carry a time triple")
    i_lo, i_mid, i_hi = (grid.index_of(t) for t in query.triple)
    x0 = query.x0
    successes = 0
    for eta in msp_path_blocks(spec, grid, n, seed):
        ok = (eta[:, i_lo] <= x0) & (eta[:, i_mid] > x0) & (eta[:, i_hi] <= x0)
        successes += int(np.count_nonzero(ok))
    return binomial_estimate(successes, n, _seed_echo(seed))


def two_hit_prob(
    spec: GeneratorSpec,
    query: MultiHitQuery,
    grid: TimeGrid,
    n: int,
    seed: Seed,
) -> Estimate:
    """Frequency of paths hitting x0 in both [0, t0] and [t0, 1]."""
    if query.split is None:
        raise ValueError("query must carry a split time")
    i0 = grid.index_of(query.split)
    if i0 in (0, len(grid) - 1):
        raise ValueError("split must be an interior grid point")
    left = slice(0, i0 + 1)
    right = slice(i0, len(grid))
    successes = 0
    for eta in msp_path_blocks(spec, grid, n, seed):
        ok = _hit_mask(eta, left, query.x0) & _hit_mask(eta, right, query.x0)
        successes += int(np.count_nonzero(ok))
    return binomial_estimate(successes, n, _seed_echo(seed))


def multi_hit_prob(
    spec: GeneratorSpec,
    x0: float,
    k: int,
    intervals: list[Interval],
    grid: TimeGrid,
    n: int,
    seed: Seed,
) -> Estimate:
    """Frequency of paths hitting x0 inside every listed interval.

    Intervals may touch at endpoints but must not overlap with positive
    length; ``k`` must match their number.
    """
    if not x0 < 0.0:
        raise ValueError(f"level must be negative, got {x0}")
    if k != len(intervals):
        raise ValueError(f"k={k} but {len(intervals)} intervals given")
    if k < 1:
        raise ValueError("need at least one interval")
    ordered = sorted(intervals, key=lambda iv: iv.lo)
    for prev, nxt in zip(ordered, ordered[1:]):
        if nxt.lo < prev.hi:
            raise ValueError(
                f"intervals overlap: [{prev.lo}, {prev.hi}] and [{nxt.lo}, {nxt.hi}]"
            )
    slices = [grid.slice_of(iv) for iv in ordered]
    successes = 0
    for eta in msp_path_blocks(spec, grid, n, seed):
        ok = np.ones(eta.shape[0], dtype=bool)
        for sl in slices:
            ok &= _hit_mask(eta, sl, x0)
        successes += int(np.count_nonzero(ok))
    return binomial_estimate(successes, n, _seed_echo(seed))
