"""Named verification checks over the whole model catalogue.

Every closed form, bound, and equivalence the library claims is wired to
one check id here; ``run_checks`` executes a suite deterministically from
a master seed and emits a machine-readable report. The companion document
``docs/verification_matrix.md`` lists each id with the mathematical claim
it certifies.

Tolerance policy: statistical tolerance is z * se with z = 3 unless a
check states otherwise; probabilities of path functionals (hits anywhere
in an interval) get an extra grid allowance of 0.005 at the default
1001-point grid; probabilities of finitely many coordinates are
grid-exact and get no allowance. Null probabilities are asserted as zero
observed successes with rule-of-three CI upper bound 3/n.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dnorm import LevelFunction, dnorm_estimates, dnorm_indicator, takahashi_check
from .errors import UnknownCheckError
from .estimates import RunningMean, binomial_estimate
from .generators import (
    NONLINEAR_DEFAULTS,
    CompleteDependence,
    GeneratorSpec,
    NonlinearExample,
    PiecewiseExample,
    SineBump,
    TwoBranch,
    closed_form_m,
    closed_form_m_tilde,
    generator_corpus,
    generator_moments,
    sample_generator_block,
    sup_equals_max_rate,
)
from .hitting import (
    MultiHitQuery,
    down_up_down_prob,
    hitting_bound,
    hitting_curve,
    hitting_integral,
    hitting_prob,
    multi_hit_prob,
    curve_hit_prob,
    two_hit_prob,
)
from .msp import (
    ks_band,
    ks_distance_neg_exponential,
    msp_corpus,
    msp_path_blocks,
    stopping_exactness_violations,
)
from .paths import Interval, SubGrid, TimeGrid, make_grid
from .streams import Seed, block_streams, label_key, substream

DEFAULT_N = 100_000
DEFAULT_GRID_POINTS = 1001
Z_STAT = 3.0
GRID_ALLOWANCE = 0.005

#: The catalogue swept by generator-generic checks, in report order.
CATALOGUE: list[tuple[str, GeneratorSpec]] = [
    ("complete_dependence", CompleteDependence()),
    ("piecewise_example", PiecewiseExample(n=2, a=0.25, b=0.75)),
    ("nonlinear_example", NonlinearExample(**NONLINEAR_DEFAULTS)),
    ("two_branch", TwoBranch()),
    ("sine_bump", SineBump(amp=0.5)),
]


# --- closed forms of the two-branch model -----------------------------------


@dataclass(frozen=True)
class FinalExampleReference:
    """Exact values for the two-branch process at one level."""

    h: float
    m: float
    two_hit: float | None = None


def final_example_reference(x: float, t0: float | None = None) -> FinalExampleReference:
    """Closed forms for the two-branch model: hitting probability
    h(x) = (1 - e^x - x) e^x, generator constant m = 2, and (given an
    interior split t0) the two-hit probability
    (e^{x(1-t0)} - e^x)(e^{x t0} - e^x).
    """
    if x >= 0.0:
        raise ValueError(f"level must be negative, got {x}")
    h = (1.0 - math.exp(x) - x) * math.exp(x)
    two_hit = None
    if t0 is not None:
        if not 0.0 < t0 < 1.0:
            raise ValueError(f"split must be interior to (0, 1), got {t0}")
        two_hit = (math.exp(x * (1.0 - t0)) - math.exp(x)) * (
            math.exp(x * t0) - math.exp(x)
        )
    return FinalExampleReference(h=h, m=2.0, two_hit=two_hit)


def final_example_integral_below(x: float) -> float:
    """Exact integral of the two-branch hitting curve over (-inf, x], x <= 0.

    Antiderivative of (1 - e^u - u) e^u; evaluates to 3/2 at x = 0.
    """
    if x > 0.0:
        raise ValueError(f"need x <= 0, got {x}")
    return math.exp(x) * (2.0 - x) - 0.5 * math.exp(2.0 * x)


# --- check plumbing ----------------------------------------------------------


@dataclass(frozen=True)
class Assertion:
    name: str
    observed: float
    expected: float
    tol: float
    passed: bool


def eq_within(name: str, observed: float, expected: float, tol: float) -> Assertion:
    return Assertion(name, float(observed), float(expected), float(tol),
                     abs(observed - expected) <= tol)


def at_most(name: str, observed: float, bound: float, tol: float = 0.0) -> Assertion:
    return Assertion(name, float(observed), float(bound), float(tol),
                     observed <= bound + tol)


def at_least(name: str, observed: float, bound: float, tol: float = 0.0) -> Assertion:
    return Assertion(name, float(observed), float(bound), float(tol),
                     observed >= bound - tol)


@dataclass(frozen=True)
class CheckContext:
    check_id: str
    master_seed: int
    n: int
    grid: TimeGrid

    def seed(self, k: int) -> np.random.SeedSequence:
        """Substream k of this check: (master seed, crc32(check id), k)."""
        return substream(self.master_seed, label_key(self.check_id), k)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    description: str
    assertions: list[Assertion]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def as_dict(self, runtime: bool = True) -> dict:
        return {
            "id": self.check_id,
            "observed": [a.observed for a in self.assertions],
            "expected": [a.expected for a in self.assertions],
            "tol": [a.tol for a in self.assertions],
            "pass": self.passed,
            "seconds": self.seconds if runtime else 0.0,
            "parts": [a.name for a in self.assertions],
        }


@dataclass(frozen=True)
class CheckReport:
    suite: str | list[str]
    seed: int
    n_default: int
    checks: list[CheckResult]
    generated_at: str | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, check_id: str) -> CheckResult:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def as_dict(self, runtime: bool = True) -> dict:
        """``runtime=False`` zeroes per-check seconds (byte-stable reports)."""
        doc = {
            "suite": self.suite,
            "seed": self.seed,
            "n_default": self.n_default,
            "checks": [c.as_dict(runtime) for c in self.checks],
            "pass": self.passed,
        }
        if self.generated_at is not None:
            doc["generated_at"] = self.generated_at
        return doc

    def to_json(self, indent: int = 2, runtime: bool = True) -> str:
        return json.dumps(self.as_dict(runtime), indent=indent)

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status}  {c.check_id}  ({c.seconds:.2f}s)  {c.description}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return lines


# --- the checks ---------------------------------------------------------------


def _check_eq1_moments(ctx: CheckContext) -> list[Assertion]:
    """Unit mean of Z at every grid point, per catalogue generator (4 se)."""
    out = []
    for gi, (name, spec) in enumerate(CATALOGUE):
        acc_sum = np.zeros(len(ctx.grid))
        acc_sq = np.zeros(len(ctx.grid))
        for count, rng in block_streams(ctx.seed(gi), ctx.n):
            z = sample_generator_block(spec, ctx.grid.points, rng, count)
            acc_sum += z.sum(axis=0)
            acc_sq += np.square(z).sum(axis=0)
        mean = acc_sum / ctx.n
        var = np.maximum(0.0, acc_sq / ctx.n - mean * mean)
        se = np.sqrt(var / ctx.n)
        diff = np.abs(mean - 1.0)
        # degenerate points (se = 0) must match exactly; a tiny float slack
        # covers accumulation error in the sums
        zscores = np.divide(diff, se, out=np.zeros_like(diff), where=se > 0)
        zscores[(se == 0.0) & (diff > 1e-12)] = np.inf
        out.append(eq_within(f"{name}:max_z", float(zscores.max()), 0.0, 4.0))
    return out


def _criterion2_functions(grid: TimeGrid) -> list[tuple[str, LevelFunction]]:
    return [
        ("const_-1", LevelFunction.constant(grid, -1.0)),
        (
            "step",
            LevelFunction.indicator_step(
                grid, Interval(0.5, 1.0), inside=-1.01, outside=-0.01
            ),
        ),
        (
            "linear",
            LevelFunction.piecewise_linear(grid, [0.0, 1.0], [-0.5, -1.5]),
        ),
    ]


def _check_eq2_roundtrip(ctx: CheckContext) -> list[Assertion]:
    """Joint cdf equals exp(-D-norm) for three functions and every generator."""
    fs = _criterion2_functions(ctx.grid)
    out = []
    for gi, (name, spec) in enumerate(CATALOGUE):
        dns = dnorm_estimates(spec, [f for _, f in fs], ctx.n, ctx.seed(2 * gi))
        counts = np.zeros(len(fs), dtype=int)
        for eta in msp_path_blocks(spec, ctx.grid, ctx.n, ctx.seed(2 * gi + 1)):
            for fi, (_, f) in enumerate(fs):
                counts[fi] += int(np.count_nonzero(np.all(eta <= f.values, axis=1)))
        for fi, (fname, _) in enumerate(fs):
            joint = binomial_estimate(int(counts[fi]), ctx.n)
            target = math.exp(-dns[fi].value)
            se = math.sqrt(joint.se**2 + (target * dns[fi].se) ** 2)
            out.append(
                eq_within(f"{name}:{fname}", joint.value, target, Z_STAT * se)
            )
    return out


def _check_eq3_negative_paths(ctx: CheckContext) -> list[Assertion]:
    """Every simulated path value is strictly negative."""
    out = []
    for gi, (name, spec) in enumerate(CATALOGUE):
        bad = 0
        for eta in msp_path_blocks(spec, ctx.grid, ctx.n, ctx.seed(gi)):
            bad += int(np.count_nonzero(eta >= 0.0))
        out.append(eq_within(f"{name}:nonnegative_values", bad, 0.0, 0.0))
    return out


_MARGIN_TIMES = (0.0, 0.37, 1.0)


def _check_margins_ks(ctx: CheckContext) -> list[Assertion]:
    """KS distance of each margin against exp(x) within 1.63/sqrt(n)."""
    band = ks_band(ctx.n)
    out = []
    for gi, (name, spec) in enumerate(CATALOGUE):
        cols = [ctx.grid.index_of(t) for t in _MARGIN_TIMES]
        samples = np.empty((ctx.n, len(cols)))
        pos = 0
        for eta in msp_path_blocks(spec, ctx.grid, ctx.n, ctx.seed(gi)):
            samples[pos : pos + eta.shape[0]] = eta[:, cols]
            pos += eta.shape[0]
        for t, j in zip(_MARGIN_TIMES, range(len(cols))):
            d = ks_distance_neg_exponential(samples[:, j])
            out.append(at_most(f"{name}:t={t}", d, band))
    return out


def _check_max_stability(ctx: CheckContext) -> list[Assertion]:
    """k times the pointwise max of k paths has standard margins (k = 2, 5)."""
    out = []
    col_t = 0.37
    for gi, (name, spec) in enumerate([CATALOGUE[3], CATALOGUE[4]]):
        col = ctx.grid.index_of(col_t)
        vals = np.empty(ctx.n)
        pos = 0
        for eta in msp_path_blocks(spec, ctx.grid, ctx.n, ctx.seed(gi)):
            vals[pos : pos + eta.shape[0]] = eta[:, col]
            pos += eta.shape[0]
        for k in (2, 5):
            groups = ctx.n // k
            scaled = k * vals[: groups * k].reshape(groups, k).max(axis=1)
            d = ks_distance_neg_exponential(scaled)
            out.append(at_most(f"{name}:k={k}", d, ks_band(groups)))
    return out


def _check_takahashi(ctx: CheckContext) -> list[Assertion]:
    """m = 1 iff the D-norm matches the sup-norm on every probe."""
    probes = [f for _, f in _criterion2_functions(ctx.grid)]
    expected = {"complete_dependence": 1.0, "piecewise_example": 0.0, "two_branch": 0.0}
    out = []
    for gi, (name, spec) in enumerate(CATALOGUE):
        if name not in expected:
            continue
        rep = takahashi_check(spec, probes, ctx.n, ctx.seed(gi))
        out.append(
            eq_within(f"{name}:complete_dependence",
                      1.0 if rep.complete_dependence else 0.0, expected[name], 0.0)
        )
    return out


def _check_example1_complete_dependence(ctx: CheckContext) -> list[Assertion]:
    """Constant paths never hit a fixed level but do meet a sloped curve."""
    spec = CompleteDependence()
    est = hitting_prob(spec, -1.0, Interval(0.0, 1.0), ctx.grid, ctx.n, ctx.seed(0))
    out = [
        eq_within("fixed_level:estimate", est.value, 0.0, 0.0),
        at_most("fixed_level:ci_hi", est.ci[1], 3.0 / ctx.n),
    ]
    f = LevelFunction.piecewise_linear(ctx.grid, [0.0, 1.0], [-1.0, -2.0])
    curve_est = curve_hit_prob(spec, f, ctx.n, ctx.seed(1))
    target = math.exp(-1.0) - math.exp(-2.0)
    out.append(
        eq_within("sloped_curve:estimate", curve_est.value, target,
                  Z_STAT * curve_est.se)
    )
    return out


def _check_prop2_null(ctx: CheckContext) -> list[Assertion]:
    """Zero hitting probability on the interval where Z is constant."""
    spec = PiecewiseExample(n=2, a=0.25, b=0.75)
    est = hitting_prob(spec, -1.0, Interval(0.25, 0.75), ctx.grid, ctx.n, ctx.seed(0))
    return [
        eq_within("estimate", est.value, 0.0, 0.0),
        at_most("ci_hi", est.ci[1], 3.0 / ctx.n),
    ]


def _check_prop2_positive(ctx: CheckContext) -> list[Assertion]:
    """Positive hitting probability when the interval's indicator norm exceeds 1."""
    spec = PiecewiseExample(n=2, a=0.25, b=0.75)
    norm = dnorm_indicator(spec, Interval(0.0, 1.0), ctx.grid, ctx.n, ctx.seed(0))
    est = hitting_prob(spec, -1.0, Interval(0.0, 1.0), ctx.grid, ctx.n, ctx.seed(1))
    return [
        at_least("indicator_norm_gt_1", norm.value - Z_STAT * norm.se, 1.0),
        Assertion("hitting_ci_excludes_0", est.ci[0], 0.0, 0.0, est.ci[0] > 0.0),
    ]


def _check_survivor_bound(ctx: CheckContext) -> list[Assertion]:
    """Survivor probability dominates 1 - exp(-E inf |f| Z)."""
    out = []
    gens = [CATALOGUE[0], CATALOGUE[1], CATALOGUE[4]]
    for gi, (name, spec) in enumerate(gens):
        f = LevelFunction.constant(ctx.grid, -1.0)
        inf_acc = RunningMean(k=1)
        for count, rng in block_streams(ctx.seed(2 * gi), ctx.n):
            z = sample_generator_block(spec, ctx.grid.points, rng, count)
            inf_acc.add(np.min(z * np.abs(f.values)[None, :], axis=1))
        inf_est = inf_acc.estimate(0)
        bound = 1.0 - math.exp(-inf_est.value)
        bound_se = math.exp(-inf_est.value) * inf_est.se
        survived = 0
        for eta in msp_path_blocks(spec, ctx.grid, ctx.n, ctx.seed(2 * gi + 1)):
            survived += int(np.count_nonzero(np.all(eta > f.values, axis=1)))
        surv = binomial_estimate(survived, ctx.n)
        tol = Z_STAT * (surv.se + bound_se)
        out.append(at_least(f"{name}:survivor_ge_bound", surv.value, bound, tol))
    return out


def _check_example2_m(ctx: CheckContext) -> list[Assertion]:
    """Generator constants of the ramp-plateau model at n = 2."""
    spec = PiecewiseExample(n=2, a=0.25, b=0.75)
    mom = generator_moments(spec, ctx.grid, ctx.n, ctx.seed(0))
    m_exact = 14.0 / 9.0
    mt_exact = 5.0 / 9.0
    return [
        eq_within("m_hat", mom.m_hat.value, m_exact, Z_STAT * mom.m_hat.se),
        eq_within("m_tilde_hat", mom.m_tilde_hat.value, mt_exact,
                  Z_STAT * mom.m_tilde_hat.se),
        eq_within("closed_form_m", closed_form_m(spec), m_exact, 0.0),
    ]


def _check_hcurve_bound(ctx: CheckContext) -> list[Assertion]:
    """Hitting probabilities stay under exp(x m~) - exp(x m) (4 se + grid)."""
    spec = SineBump(amp=0.5)
    levels = np.array([-0.25, -1.0, -4.0])
    curve = hitting_curve(
        spec, levels, Interval(0.0, 1.0), ctx.grid, ctx.n, ctx.seed(0)
    )
    m = closed_form_m(spec)
    mt = closed_form_m_tilde(spec)
    out = []
    for lvl, est in zip(curve.levels, curve.estimates):
        bound = hitting_bound(m, mt, float(lvl))
        tol = 4.0 * est.se + GRID_ALLOWANCE
        out.append(at_most(f"x={lvl}", est.value, bound, tol))
    return out


def _integral_levels(depth: float = -12.0, count: int = 25) -> np.ndarray:
    """Quadratically spaced levels, dense near 0, decreasing to ``depth``."""
    i = np.arange(1, count + 1)
    return depth * (i / count) ** 2


def _check_hintegral_bound(ctx: CheckContext) -> list[Assertion]:
    """0 < integral of the hitting curve <= (m - m~)/(m m~)."""
    spec = SineBump(amp=0.5)
    m = closed_form_m(spec)
    mt = closed_form_m_tilde(spec)
    curve = hitting_curve(
        spec, _integral_levels(), Interval(0.0, 1.0), ctx.grid, ctx.n, ctx.seed(0)
    )
    integral, tail = hitting_integral(curve, mt)
    bound = (m - mt) / (m * mt)
    return [
        at_most("integral_le_bound", integral + tail, bound, 0.02),
        at_least("integral_positive", integral, 0.001, 0.0),
    ]


def _check_lemma31(ctx: CheckContext) -> list[Assertion]:
    """Three-point down-up-down probabilities against their closed forms."""
    grid = ctx.grid
    sine = SineBump(amp=0.5)
    q = MultiHitQuery(x0=-1.0, triple=(0.0, 0.25, 0.5))
    est = down_up_down_prob(sine, q, grid, ctx.n, ctx.seed(0))
    # E max(Z_0, Z_0.5) = 1; E max with the peak included = 1 + amp/8.
    target = math.exp(-1.0) - math.exp(-(1.0 + sine.amp / 8.0))
    out = [eq_within("sine_bump:closed_form", est.value, target, Z_STAT * est.se)]
    nl = NonlinearExample(**NONLINEAR_DEFAULTS)
    est_nl = down_up_down_prob(nl, q, grid, ctx.n, ctx.seed(1))
    out.append(eq_within("nonlinear:estimate", est_nl.value, 0.0, 0.0))
    out.append(at_most("nonlinear:ci_hi", est_nl.ci[1], 3.0 / ctx.n))
    return out


def _check_prop32_two_hit(ctx: CheckContext) -> list[Assertion]:
    """Two-hit events contain down-up-down events, draw by draw."""
    spec = SineBump(amp=0.5)
    i0 = ctx.grid.index_of(0.25)  # split; also the middle of the triple
    i_end = ctx.grid.index_of(0.5)
    x0 = -1.0
    violations = 0
    dud_hits = 0
    two_hits = 0
    for eta in msp_path_blocks(spec, ctx.grid, ctx.n, ctx.seed(0)):
        left = eta[:, : i0 + 1]
        right = eta[:, i0:]
        hit_two = (
            (left.min(axis=1) <= x0) & (x0 <= left.max(axis=1))
            & (right.min(axis=1) <= x0) & (x0 <= right.max(axis=1))
        )
        dud = (eta[:, 0] <= x0) & (eta[:, i0] > x0) & (eta[:, i_end] <= x0)
        violations += int(np.count_nonzero(dud & ~hit_two))
        dud_hits += int(np.count_nonzero(dud))
        two_hits += int(np.count_nonzero(hit_two))
    dud_est = binomial_estimate(dud_hits, ctx.n)
    return [
        eq_within("containment_violations", violations, 0.0, 0.0),
        Assertion("dud_positive", dud_est.ci[0], 0.0, 0.0, dud_est.ci[0] > 0.0),
        at_least("two_hit_ge_dud", two_hits / ctx.n, dud_hits / ctx.n, 0.0),
    ]


_COR33_WINDOW = (0.2, 0.9)
_COR33_LEVELS = (-0.5, -2.0)
# Residuals of the 2 exp(x) - 1 identity are a few parts per thousand for
# the sine bump, so this item runs at 10x the default replication to make
# its required >= 5 se failure margin decisive rather than borderline.
_COR33_RESIDUAL_FACTOR = 10


def _cor33_residuals(
    spec: GeneratorSpec, subgrid: SubGrid, n: int, seed: Seed
) -> dict[float, tuple[float, float]]:
    """(residual, se) per level for item (5): P(all <= x) - P(ends > x) - (2e^x - 1).

    Shared draws: the per-path statistic is 1{all <= x} - 1{both ends > x},
    so the reported se is the exact sd of the estimator.
    """
    sums = {x: 0.0 for x in _COR33_LEVELS}
    sumsq = {x: 0.0 for x in _COR33_LEVELS}
    for eta in msp_path_blocks(spec, subgrid, n, seed):
        for x in _COR33_LEVELS:
            a = np.all(eta <= x, axis=1)
            b = (eta[:, 0] > x) & (eta[:, -1] > x)
            r = a.astype(float) - b.astype(float)
            sums[x] += float(r.sum())
            sumsq[x] += float(np.square(r).sum())
    out = {}
    for x in _COR33_LEVELS:
        mean = sums[x] / n
        var = max(0.0, sumsq[x] / n - mean * mean)
        se = math.sqrt(var / n)
        out[x] = (mean - (2.0 * math.exp(x) - 1.0), se)
    return out


def _check_cor33(ctx: CheckContext) -> list[Assertion]:
    """Five-way equivalence: all items hold for the nonlinear generator and
    all fail for the sine bump, on the window (0.2, 0.9)."""
    t_lo, t_hi = _COR33_WINDOW
    window = Interval(t_lo, t_hi)
    sl = ctx.grid.slice_of(window)
    subgrid = SubGrid(ctx.grid.points[sl])
    nl = NonlinearExample(**NONLINEAR_DEFAULTS)
    sine = SineBump(amp=0.5)
    out = []

    # item (3): sup over the window equals the endpoint max (Z paths).
    rate_nl = sup_equals_max_rate(nl, window, ctx.grid, ctx.n, ctx.seed(0))
    out.append(eq_within("nonlinear:item3_rate", rate_nl.value, 1.0, 0.0))
    rate_sb = sup_equals_max_rate(sine, window, ctx.grid, ctx.n, ctx.seed(1))
    out.append(at_most("sine_bump:item3_rate", rate_sb.value, 0.01))

    # items (1) and (4) on a shared eta corpus per generator (window grid).
    def items_1_and_4(spec, seed, dud_t0):
        i_t0 = int(np.argmin(np.abs(subgrid.points - dud_t0)))
        dud_count = 0
        viol4 = {x: 0 for x in _COR33_LEVELS}
        for eta in msp_path_blocks(spec, subgrid, ctx.n, seed):
            dud = (eta[:, 0] <= -1.0) & (eta[:, i_t0] > -1.0) & (eta[:, -1] <= -1.0)
            dud_count += int(np.count_nonzero(dud))
            for x in _COR33_LEVELS:
                ends = (eta[:, 0] <= x) & (eta[:, -1] <= x)
                allin = np.all(eta <= x, axis=1)
                viol4[x] += int(np.count_nonzero(ends & ~allin))
        return dud_count, viol4

    dud_nl, viol4_nl = items_1_and_4(nl, ctx.seed(2), dud_t0=0.5)
    est_dud_nl = binomial_estimate(dud_nl, ctx.n)
    out.append(eq_within("nonlinear:item1_dud", est_dud_nl.value, 0.0, 0.0))
    out.append(at_most("nonlinear:item1_ci_hi", est_dud_nl.ci[1], 3.0 / ctx.n))
    for x in _COR33_LEVELS:
        out.append(eq_within(f"nonlinear:item4_viol_x={x}", viol4_nl[x], 0.0, 0.0))

    dud_sb, viol4_sb = items_1_and_4(sine, ctx.seed(3), dud_t0=0.25)
    est_dud_sb = binomial_estimate(dud_sb, ctx.n)
    out.append(
        Assertion("sine_bump:item1_dud_positive", est_dud_sb.ci[0], 0.0, 0.0,
                  est_dud_sb.ci[0] > 0.0)
    )
    for x in _COR33_LEVELS:
        diff = binomial_estimate(viol4_sb[x], ctx.n)
        out.append(
            at_least(f"sine_bump:item4_gap_x={x}", diff.value, 5.0 * diff.se, 0.0)
        )

    # item (5): the 2 exp(x) - 1 identity, high-replication residuals.
    residual_n = ctx.n * _COR33_RESIDUAL_FACTOR
    res_nl = _cor33_residuals(nl, subgrid, residual_n, ctx.seed(4))
    for x in _COR33_LEVELS:
        r, se = res_nl[x]
        out.append(eq_within(f"nonlinear:item5_residual_x={x}", r, 0.0, 4.0 * se))
    res_sb = _cor33_residuals(sine, subgrid, residual_n, ctx.seed(5))
    for x in _COR33_LEVELS:
        r, se = res_sb[x]
        out.append(
            at_least(f"sine_bump:item5_gap_x={x}", abs(r), 5.0 * se, 0.0)
        )
    return out


def _check_nonlinear_supmax(ctx: CheckContext) -> list[Assertion]:
    """Every nonlinear path attains its sup at a window endpoint."""
    spec = NonlinearExample(**NONLINEAR_DEFAULTS)
    out = []
    for k, (lo, hi) in enumerate([(0.0, 1.0), (0.1, 0.6), (0.5, 0.9)]):
        rate = sup_equals_max_rate(spec, Interval(lo, hi), ctx.grid, ctx.n, ctx.seed(k))
        out.append(eq_within(f"I=[{lo},{hi}]", rate.value, 1.0, 0.0))
    return out


def _check_final_h(ctx: CheckContext) -> list[Assertion]:
    """Two-branch hitting probabilities against (1 - e^x - x) e^x."""
    spec = TwoBranch()
    levels = np.array([-0.5, -1.0, -2.0, -4.0])
    curve = hitting_curve(
        spec, levels, Interval(0.0, 1.0), ctx.grid, ctx.n, ctx.seed(0)
    )
    out = []
    for lvl, est in zip(curve.levels, curve.estimates):
        target = final_example_reference(float(lvl)).h
        tol = Z_STAT * est.se + GRID_ALLOWANCE
        out.append(eq_within(f"x={lvl}", est.value, target, tol))
    return out


def _check_final_integral(ctx: CheckContext) -> list[Assertion]:
    """Integral of the two-branch hitting curve equals 3/2.

    The generic tail bound is infinite here (E inf Z = 0), so the exact
    closed-form tail below the deepest level is used instead.
    """
    spec = TwoBranch()
    levels = _integral_levels()
    curve = hitting_curve(
        spec, levels, Interval(0.0, 1.0), ctx.grid, ctx.n, ctx.seed(0)
    )
    integral, _ = hitting_integral(curve, m_tilde=0.0)
    tail = final_example_integral_below(float(levels[-1]))
    return [eq_within("integral_plus_exact_tail", integral + tail, 1.5, 0.05)]


def _check_final_two_hit(ctx: CheckContext) -> list[Assertion]:
    """Two-branch two-hit probability against its closed form."""
    spec = TwoBranch()
    q = MultiHitQuery(x0=-1.0, split=0.5)
    est = two_hit_prob(spec, q, ctx.grid, ctx.n, ctx.seed(0))
    target = final_example_reference(-1.0, t0=0.5).two_hit
    return [
        eq_within("two_hit", est.value, target, Z_STAT * est.se + GRID_ALLOWANCE)
    ]


def _check_final_no_three_hit(ctx: CheckContext) -> list[Assertion]:
    """No two-branch path hits a level in three disjoint intervals."""
    spec = TwoBranch()
    intervals = [Interval(0.0, 0.3), Interval(0.4, 0.6), Interval(0.7, 1.0)]
    est = multi_hit_prob(spec, -1.0, 3, intervals, ctx.grid, ctx.n, ctx.seed(0))
    return [
        eq_within("estimate", est.value, 0.0, 0.0),
        at_most("ci_hi", est.ci[1], 3.0 / ctx.n),
    ]


_SHARED_DRAW_N = 1_000


def _check_shared_draw_invariants(ctx: CheckContext) -> list[Assertion]:
    """Per-draw monotonicity/containment invariants on shared corpora."""
    grid = ctx.grid
    n = _SHARED_DRAW_N
    sl_inner = grid.slice_of(Interval(0.25, 0.75))
    i_q, i_h = grid.index_of(0.25), grid.index_of(0.5)
    out = []
    for gi, (name, spec) in enumerate(CATALOGUE):
        z = generator_corpus(spec, grid, n, ctx.seed(2 * gi))
        eta = msp_corpus(spec, grid, n, ctx.seed(2 * gi + 1))
        bad = 0

        # D-norm monotonicity: |f| <= |g| pointwise dominates per draw.
        small = np.max(z * 0.5, axis=1)
        big = np.max(z * 1.0, axis=1)
        bad += int(np.count_nonzero(small > big))
        # positive homogeneity with an exact binary factor
        bad += int(np.count_nonzero(np.max(z * 2.0, axis=1) != 2.0 * big))
        # indicator monotonicity in the interval
        bad += int(
            np.count_nonzero(z[:, sl_inner].max(axis=1) > z.max(axis=1))
        )
        # hit-set monotonicity for eta at x = -1
        x = -1.0
        inner = eta[:, sl_inner]
        hit_inner = (inner.min(axis=1) <= x) & (x <= inner.max(axis=1))
        hit_full = (eta.min(axis=1) <= x) & (x <= eta.max(axis=1))
        bad += int(np.count_nonzero(hit_inner & ~hit_full))
        # two-hit contains down-up-down (split at 0.25 over [0, 0.5])
        left = eta[:, : i_q + 1]
        right = eta[:, i_q:]
        two = (
            (left.min(axis=1) <= x) & (x <= left.max(axis=1))
            & (right.min(axis=1) <= x) & (x <= right.max(axis=1))
        )
        dud = (eta[:, 0] <= x) & (eta[:, i_q] > x) & (eta[:, i_h] <= x)
        bad += int(np.count_nonzero(dud & ~two))
        # decomposition: 1{hit} = 1{min <= x} - 1{all < x}
        mn = eta.min(axis=1)
        mx = eta.max(axis=1)
        lhs = ((mn <= x) & (x <= mx)).astype(int)
        rhs = (mn <= x).astype(int) - (mx < x).astype(int)
        bad += int(np.count_nonzero(lhs != rhs))

        out.append(eq_within(f"{name}:violations", bad, 0.0, 0.0))
    return out


_EXACTNESS_PATHS = 100
_EXACTNESS_EXTRA = 100


def _check_stopping_exactness(ctx: CheckContext) -> list[Assertion]:
    """Extra arrivals after the stopping rule never change a grid value."""
    out = []
    for gi, (name, spec) in enumerate(CATALOGUE):
        v = stopping_exactness_violations(
            spec, ctx.grid, _EXACTNESS_PATHS, ctx.seed(gi), extra=_EXACTNESS_EXTRA
        )
        out.append(eq_within(f"{name}:changed_paths", v, 0.0, 0.0))
    return out


# --- registry and runner ------------------------------------------------------


@dataclass(frozen=True)
class CheckDef:
    check_id: str
    description: str
    runner: object = field(repr=False)


_CHECKS: dict[str, CheckDef] = {}


def _register(check_id: str, description: str, runner) -> None:
    _CHECKS[check_id] = CheckDef(check_id, description, runner)


_register("eq1-moments", "unit mean of Z at every grid point", _check_eq1_moments)
_register("eq2-roundtrip", "joint cdf equals exp(-D-norm)", _check_eq2_roundtrip)
_register("eq3-negative-paths", "simulated paths are strictly negative",
          _check_eq3_negative_paths)
_register("margins-ks", "standard negative exponential margins (KS)",
          _check_margins_ks)
_register("max-stability", "k x (max of k paths) keeps the margins",
          _check_max_stability)
_register("takahashi", "m = 1 iff D-norm equals sup-norm", _check_takahashi)
_register("example1-complete-dependence",
          "constant paths miss fixed levels, meet sloped curves",
          _check_example1_complete_dependence)
_register("prop2-null-on-constant-interval",
          "no hits where the generator is degenerate", _check_prop2_null)
_register("prop2-positive-when-norm-gt-1",
          "positive hitting probability when ||1_I||_D > 1",
          _check_prop2_positive)
_register("survivor-bound", "survivor probability lower bound",
          _check_survivor_bound)
_register("example2-m", "ramp-plateau generator constant (3n^2+n)/(n+1)^2",
          _check_example2_m)
_register("hcurve-bound", "hitting curve under exp(x m~) - exp(x m)",
          _check_hcurve_bound)
_register("hintegral-bound", "hitting integral within (m - m~)/(m m~)",
          _check_hintegral_bound)
_register("lemma31-closedform", "down-up-down probabilities match closed forms",
          _check_lemma31)
_register("prop32-two-hit", "two-hit events contain down-up-down events",
          _check_prop32_two_hit)
_register("cor33-equivalences", "five-way equivalence holds/fails as one",
          _check_cor33)
_register("nonlinear-supmax", "nonlinear paths peak at window endpoints",
          _check_nonlinear_supmax)
_register("final-h", "two-branch hitting curve matches (1-e^x-x)e^x",
          _check_final_h)
_register("final-integral-3/2", "two-branch hitting integral equals 3/2",
          _check_final_integral)
_register("final-two-hit", "two-branch two-hit probability closed form",
          _check_final_two_hit)
_register("final-no-three-hit", "no level is hit in three disjoint intervals",
          _check_final_no_three_hit)
_register("shared-draw-invariants", "per-draw monotonicity and containment",
          _check_shared_draw_invariants)
_register("stopping-exactness", "extra arrivals never change stopped paths",
          _check_stopping_exactness)

PAPER_SUITE: tuple[str, ...] = tuple(_CHECKS)


def check_ids() -> list[str]:
    return list(_CHECKS)


def describe_check(check_id: str) -> str:
    if check_id not in _CHECKS:
        raise UnknownCheckError(check_id)
    return _CHECKS[check_id].description


def run_checks(
    suite: str | list[str],
    master_seed: int,
    n_default: int = DEFAULT_N,
    grid_points: int = DEFAULT_GRID_POINTS,
    threads: int = 1,
    timestamp: bool = True,
) -> CheckReport:
    """Run a suite of checks deterministically from one master seed.

    ``suite`` is "paper" (everything) or an explicit list of ids; unknown
    ids fail before anything executes. Checks derive independent
    substreams from (master seed, check id) and may run in parallel;
    report contents are independent of ``threads``.
    """
    if isinstance(suite, str):
        if suite != "paper":
            raise UnknownCheckError(suite)
        ids = list(PAPER_SUITE)
    else:
        ids = list(suite)
        for cid in ids:
            if cid not in _CHECKS:
                raise UnknownCheckError(cid)
    grid = make_grid(grid_points)

    def run_one(cid: str) -> CheckResult:
        ctx = CheckContext(
            check_id=cid, master_seed=master_seed, n=n_default, grid=grid
        )
        start = time.perf_counter()
        assertions = _CHECKS[cid].runner(ctx)
        seconds = time.perf_counter() - start
        return CheckResult(
            check_id=cid,
            description=_CHECKS[cid].description,
            assertions=assertions,
            seconds=seconds,
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, ids))
    else:
        results = [run_one(cid) for cid in ids]
    generated_at = (
        time.strftime("%Y-%m-%dT%H:%M:%S%z", time.localtime()) if timestamp else None
    )
    return CheckReport(
        suite=suite if isinstance(suite, str) else ids,
        seed=master_seed,
        n_default=n_default,
        checks=results,
        generated_at=generated_at,
    )
