"""Stein-identity generalized method-of-moments estimation.

Point estimators, closed-form asymptotics, weight tuning, and a seeded
Monte Carlo harness for the exponential, inverse Gaussian, and
negative-binomial distributions.
"""

from .asymptotics import (
    AsymptoticSummary,
    delta_oracle,
    exp_asym, exp_cov, exp_geom_closed, exp_lambda_map, exp_mean_vector,
    exp_power_closed,
    ig_asym, ig_cov, ig_lambda_map, ig_mean_vector, ig_ml_closed, ig_mm_closed,
    nb_cov, nb_mean_vector, nb_nu_asym, nb_nu_map, nb_pi_asym, nb_pi_map,
)
from .datasets import load_mites, load_runoff
from .distributions import (
    ExpParams, IGParams, NBParams, Sample,
    density, exp_pdf, ig_pdf, nb_pmf,
    nb_factorial_zmoment, nb_param_convert, nb_pgf,
    raw_moment, sample, substream,
)
from .errors import (
    AccuracyError, AccuracyWarning, ClosedFormUnavailableError,
    DegeneracyError, DegenerateDenominatorError, DomainError, FixtureError,
    InfeasibleError, SimulationError,
)
from .estimators import (
    EstimateResult, ig_estimate, nb_estimate_nu, nb_estimate_pi,
    nb_mm_estimates, stein_exp,
)
from .moments import mu_f, mu_tilde
from .numerics import (
    DEFAULT_TOLERANCE, ToleranceConfig,
    gen_binom, integrate_halfline, log_gamma, stirling2, truncated_sum,
)
from .simulation import (
    Contamination, SimResult, SimSpec, contaminate, reproduce, run_sim,
)
from .tuning import (
    DEFAULT_BRACKETS, TuneResult, TuneSpec, TwoStepResult,
    optimize_weight, two_step,
)
from .weights import (
    Admissibility, WeightFunction, check_admissible,
    constant, custom, geom_nb, geom_one_minus, identity, one_plus_log,
    parse_weight, power, reciprocal, shifted_power,
)

__version__ = "0.1.0"
