"""Time grids, sample-path containers, and level-crossing analysis.

Paths of continuous processes are represented by their values on a finite
grid. Crossing detection uses the intermediate value theorem on grid
extrema, so it can only miss sub-grid excursions, never invent them;
cluster counts are therefore lower bounds on the number of solution times.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Times this close to a grid point count as on-grid: user-supplied decimals
# rarely equal the binary double of i/(n-1) bit for bit.
GRID_TOL = 1e-9


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing time points spanning [0, 1] exactly."""

    points: np.ndarray

    def __post_init__(self):
        pts = _frozen_array(self.points)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("grid needs at least 2 points")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("grid points must be strictly increasing")
        if pts[0] != 0.0 or pts[-1] != 1.0:
            raise ValueError("grid must start at 0 and end at 1")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.size)

    def index_of(self, t: float, tol: float = GRID_TOL) -> int:
        """Index of the grid point equal to ``t`` within ``tol``."""
        i = int(np.argmin(np.abs(self.points - t)))
        if abs(self.points[i] - t) > tol:
            raise ValueError(f"time {t!r} is not on the grid")
        return i

    def nearest_index(self, t: float) -> int:
        return int(np.argmin(np.abs(self.points - t)))

    def slice_of(self, interval: Interval, tol: float = GRID_TOL) -> slice:
        """Index slice covering ``interval``; endpoints must be on-grid."""
        try:
            lo = self.index_of(interval.lo, tol)
        except ValueError:
            raise ValueError(
                f"interval endpoint lo={interval.lo!r} is not on the grid"
            ) from None
        try:
            hi = self.index_of(interval.hi, tol)
        except ValueError:
            raise ValueError(
                f"interval endpoint hi={interval.hi!r} is not on the grid"
            ) from None
        return slice(lo, hi + 1)


@dataclass(frozen=True)
class SubGrid:
    """Grid points of a restriction; strictly increasing, inside [0, 1]."""

    points: np.ndarray

    def __post_init__(self):
        pts = _frozen_array(self.points)
        if pts.ndim != 1 or pts.size < 1:
            raise ValueError("empty grid")
        if pts.size > 1 and not np.all(np.diff(pts) > 0):
            raise ValueError("grid points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.size)


def make_grid(n: int) -> TimeGrid:
    """Uniform grid of ``n`` points including both endpoints of [0, 1]."""
    if n < 2:
        raise ValueError(f"grid needs at least 2 points, got {n}")
    return TimeGrid(np.arange(n) / (n - 1))


@dataclass(frozen=True)
class SamplePath:
    """Values of one realization of a process on a grid."""

    grid: TimeGrid | SubGrid
    values: np.ndarray

    def __post_init__(self):
        vals = _frozen_array(self.values)
        if vals.shape != self.grid.points.shape:
            raise ValueError(
                f"values length {vals.size} != grid length {len(self.grid)}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("path values must be finite")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class Interval:
    """Subinterval of [0, 1] with positive length."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi <= 1.0):
            raise ValueError(f"need 0 <= lo < hi <= 1, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class HitSummary:
    hit: bool
    cluster_count: int

    def __post_init__(self):
        if self.hit != (self.cluster_count >= 1):
            raise ValueError("hit must equal (cluster_count >= 1)")


def restrict(path: SamplePath, interval: Interval) -> SamplePath:
    """Subpath on the grid points inside ``interval``, endpoints inclusive.

    Endpoints must lie on the grid; snapping off-grid requests is a CLI
    courtesy, not library behavior.
    """
    if isinstance(path.grid, SubGrid):
        raise ValueError("cannot restrict an already-restricted path")
    sl = path.grid.slice_of(interval)
    return SamplePath(SubGrid(path.grid.points[sl]), path.values[sl])


def path_extrema(path: SamplePath) -> tuple[float, float]:
    """Grid minimum and maximum of the path values."""
    if path.values.size == 0:
        raise ValueError("empty path")
    return float(path.values.min()), float(path.values.max())


def level_hits(path: SamplePath, x: float) -> HitSummary:
    """Does the (continuous) path meet level ``x``, and in how many clusters?

    ``hit`` is true iff min <= x <= max over the grid: by the intermediate
    value theorem a continuous path through those values attains ``x``.
    ``cluster_count`` counts maximal runs of grid points on one side of
    ``x``, minus one; values exactly equal to ``x`` merge into the
    below-or-equal side, so a lone touch ([-2, -1, -2] at x = -1) is one
    cluster, not two. The count never exceeds the true number of solution
    times.
    """
    lo, hi = path_extrema(path)
    hit = lo <= x <= hi
    below = path.values <= x
    runs = 1 + int(np.count_nonzero(below[1:] != below[:-1]))
    if runs >= 2:
        clusters = runs - 1
    else:
        clusters = 1 if hit else 0
    return HitSummary(hit=hit, cluster_count=clusters)
