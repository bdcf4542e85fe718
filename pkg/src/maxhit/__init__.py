"""Max-stable process simulation, D-norms, and hitting probabilities.

Simulates standard max-stable processes from a catalogue of generator
processes via the Poisson spectral construction (exact on the grid),
estimates D-norm functionals and level-hitting probabilities by
reproducible Monte Carlo, and ships a verification suite tying every
closed form and bound the library claims to a named, seeded check.
"""

from .dnorm import (
    DNormEstimate,
    LevelFunction,
    TakahashiReport,
    dnorm_estimate,
    dnorm_estimates,
    dnorm_indicator,
    survivor_lower_bound,
    takahashi_check,
)
from .errors import (
    BoundTooLooseError,
    InvalidSpecError,
    MaxhitError,
    UnknownCheckError,
)
from .estimates import Estimate, binomial_estimate, rule_of_three, wilson_interval
from .generators import (
    NONLINEAR_DEFAULTS,
    CompleteDependence,
    GeneratorMoments,
    GeneratorSpec,
    NonlinearExample,
    PiecewiseExample,
    SineBump,
    TwoBranch,
    closed_form_m,
    closed_form_m_tilde,
    generator_corpus,
    generator_from_json,
    generator_moments,
    generator_to_json,
    sample_generator,
    sup_equals_max_rate,
    validate_spec,
)
from .hitting import (
    HittingCurve,
    MultiHitQuery,
    curve_hit_prob,
    down_up_down_prob,
    hitting_bound,
    hitting_curve,
    hitting_integral,
    hitting_prob,
    multi_hit_prob,
    two_hit_prob,
)
from .msp import (
    generator_bound,
    joint_cdf_estimate,
    ks_band,
    marginal_gof,
    msp_corpus,
    msp_path_blocks,
    sample_msp,
    stopping_exactness_violations,
)
from .paths import (
    HitSummary,
    Interval,
    SamplePath,
    SubGrid,
    TimeGrid,
    level_hits,
    make_grid,
    path_extrema,
    restrict,
)
from .verify import (
    PAPER_SUITE,
    CheckReport,
    CheckResult,
    check_ids,
    final_example_integral_below,
    final_example_reference,
    run_checks,
)

__version__ = "0.1.0"

__all__ = [
    "BoundTooLooseError",
    "CheckReport",
    "CheckResult",
    "CompleteDependence",
    "DNormEstimate",
    "Estimate",
    "GeneratorMoments",
    "GeneratorSpec",
    "HitSummary",
    "HittingCurve",
    "Interval",
    "InvalidSpecError",
    "LevelFunction",
    "MaxhitError",
    "MultiHitQuery",
    "NONLINEAR_DEFAULTS",
    "NonlinearExample",
    "PAPER_SUITE",
    "PiecewiseExample",
    "SamplePath",
    "SineBump",
    "SubGrid",
    "TakahashiReport",
    "TimeGrid",
    "TwoBranch",
    "UnknownCheckError",
    "binomial_estimate",
    "check_ids",
    "closed_form_m",
    "closed_form_m_tilde",
    "curve_hit_prob",
    "dnorm_estimate",
    "dnorm_estimates",
    "dnorm_indicator",
    "down_up_down_prob",
    "final_example_integral_below",
    "final_example_reference",
    "generator_bound",
    "generator_corpus",
    "generator_from_json",
    "generator_moments",
    "generator_to_json",
    "hitting_bound",
    "hitting_curve",
    "hitting_integral",
    "hitting_prob",
    "joint_cdf_estimate",
    "ks_band",
    "level_hits",
    "make_grid",
    "marginal_gof",
    "msp_corpus",
    "msp_path_blocks",
    "multi_hit_prob",
    "path_extrema",
    "restrict",
    "rule_of_three",
    "run_checks",
    "sample_generator",
    "sample_msp",
    "stopping_exactness_violations",
    "sup_equals_max_rate",
    "survivor_lower_bound",
    "takahashi_check",
    "two_hit_prob",
    "validate_spec",
    "wilson_interval",
]
