"""Monte Carlo result containers and interval rules.

Probability estimates carry a Wilson 95% score interval, except at the
boundaries: zero observed successes yield the rule-of-three interval
``[0, 3/n]`` (and symmetrically ``[1 - 3/n, 1]`` for n-of-n), which is the
testable form of "this probability is zero" used by the verification suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class Estimate:
    """Point estimate with standard error, 95% CI, and provenance."""

    value: float
    se: float
    ci: tuple[float, float]
    n: int
    seed: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"replication count must be >= 1, got {self.n}")
        if not (self.ci[0] <= self.value <= self.ci[1]):
            raise ValueError(
                f"estimate {self.value} outside its own CI {self.ci}"
            )

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "se": self.se,
            "ci": [self.ci[0], self.ci[1]],
            "n": self.n,
            "seed": self.seed,
        }


def wilson_interval(successes: int, n: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= successes <= n:
        raise ValueError(f"successes {successes} outside [0, {n}]")
    phat = successes / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n))
    return max(0.0, center - half), min(1.0, center + half)


def rule_of_three(n: int) -> float:
    """95% upper bound for a probability after 0 successes in n trials."""
    return 3.0 / n


def binomial_estimate(successes: int, n: int, seed: int | None = None) -> Estimate:
    """Frequency estimate with Wilson CI (rule-of-three at the boundaries)."""
    p = successes / n
    se = math.sqrt(p * (1.0 - p) / n)
    if successes == 0:
        ci = (0.0, rule_of_three(n))
    elif successes == n:
        ci = (1.0 - rule_of_three(n), 1.0)
    else:
        ci = wilson_interval(successes, n)
    return Estimate(value=p, se=se, ci=ci, n=n, seed=seed)


def mean_estimate_from_sums(
    total: float, total_sq: float, n: int, seed: int | None = None
) -> Estimate:
    """Sample-mean estimate from running sums, normal 95% CI.

    The variance is clipped at zero: for degenerate samples (all values
    identical) cancellation can leave a tiny negative residual.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    mean = total / n
    var = max(0.0, total_sq / n - mean * mean)
    se = math.sqrt(var / n)
    return Estimate(
        value=mean, se=se, ci=(mean - Z95 * se, mean + Z95 * se), n=n, seed=seed
    )


class RunningMean:
    """Accumulates sums for one or more statistics over streamed blocks.

    Each statistic is fed as its own 1-D array per block, so summation
    order (and hence the float result) is identical no matter how many
    statistics share the accumulator.
    """

    def __init__(self, k: int = 1):
        self.k = k
        self.n = 0
        self.total = np.zeros(k)
        self.total_sq = np.zeros(k)

    def add(self, *columns: np.ndarray) -> None:
        if len(columns) != self.k:
            raise ValueError(f"expected {self.k} statistics, got {len(columns)}")
        rows = columns[0].shape[0]
        for i, col in enumerate(columns):
            c = np.ascontiguousarray(col, dtype=float)
            if c.shape != (rows,):
                raise ValueError("statistics must be 1-D arrays of equal length")
            self.total[i] += c.sum()
            self.total_sq[i] += np.square(c).sum()
        self.n += rows

    def estimate(self, i: int = 0, seed: int | None = None) -> Estimate:
        return mean_estimate_from_sums(
            float(self.total[i]), float(self.total_sq[i]), self.n, seed
        )
