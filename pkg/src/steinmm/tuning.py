"""Weight-parameter tuning against asymptotic criteria, and two-step fitting.

The optimizer is derivative free on purpose: several criteria sit on top of
quadrature-backed moments, where numerical derivatives are noisy.  A coarse
grid scan brackets the minimum (infeasible points count as +inf) and a
golden-section stage refines it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .asymptotics import exp_asym, ig_asym, nb_nu_asym, nb_pi_asym
from .distributions import ExpParams, IGParams, NBParams
from .errors import AccuracyError, DegeneracyError, DomainError, InfeasibleError
from .estimators import EstimateResult, ig_estimate, nb_estimate_nu, \
    nb_estimate_pi, nb_mm_estimates, stein_exp
from .weights import geom_nb, geom_one_minus, power, reciprocal, shifted_power

__all__ = ["TuneSpec", "TuneResult", "TwoStepResult", "optimize_weight",
           "two_step", "DEFAULT_BRACKETS"]

_FAMILY_FACTORY = {"pow": power, "geom1m": geom_one_minus,
                   "geom": geom_nb, "shiftpow": shifted_power}

# search ranges mirroring the published optimization windows
DEFAULT_BRACKETS = {
    ("exp_lambda", "pow"): (0.5, 1.5),
    ("exp_lambda", "geom1m"): (0.01, 0.999),
    ("ig_lambda", "pow", "below"): (-2.5, -0.5),
    ("ig_lambda", "pow", "above"): (-0.5, 0.8),
    ("nb_nu", "geom"): (0.01, 0.999),
    ("nb_pi", "geom"): (0.01, 0.999),
    ("nb_nu", "shiftpow"): (-0.99, 1.5),
    ("nb_pi", "shiftpow"): (-0.99, 1.5),
}

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class TuneSpec:
    """What to optimize: family parameter against a criterion at fixed truth."""

    params: object                 # ExpParams | IGParams | NBParams
    family: str                    # "pow" | "geom1m" | "geom" | "shiftpow"
    criterion: str                 # "variance" | "bias" | "mse"
    n: int
    bracket: tuple[float, float]
    target: Optional[str] = None   # required for NB: "nb_nu" | "nb_pi"
    grid_points: int = 64

    def __post_init__(self):
        if self.family not in _FAMILY_FACTORY:
            raise DomainError(f"no tunable parameter in family {self.family!r}")
        crit = {"bias_abs": "bias"}.get(self.criterion, self.criterion)
        object.__setattr__(self, "criterion", crit)
        if crit not in ("variance", "bias", "mse"):
            raise DomainError(f"unknown criterion {self.criterion!r}")
        if self.n < 1:
            raise DomainError("n must be >= 1")
        lo, hi = self.bracket
        if not lo < hi:
            raise DomainError(f"empty bracket {self.bracket}")
        if self.grid_points < 2:
            raise DomainError("grid_points must be >= 2")
        target = self.target or _default_target(self.params)
        object.__setattr__(self, "target", target)
        if isinstance(self.params, IGParams) and self.family == "pow" \
                and lo < -0.5 < hi:
            raise DomainError(
                "IG power bracket must not straddle the degenerate point "
                "a = -1/2; optimize the two branches separately")


def _default_target(params) -> str:
    if isinstance(params, ExpParams):
        return "exp_lambda"
    if isinstance(params, IGParams):
        return "ig_lambda"
    raise DomainError("NB tuning needs an explicit target ('nb_nu' or 'nb_pi')")


@dataclass(frozen=True)
class TuneResult:
    optimum: float
    value: float
    evaluations: int
    boundary: bool = False
    multimodal: bool = False


def _summary_fn(params, target: str):
    if target == "exp_lambda":
        if not isinstance(params, ExpParams):
            raise DomainError("exp_lambda target needs ExpParams")
        return lambda w, n: exp_asym(params, w, n)
    if target == "ig_lambda":
        if not isinstance(params, IGParams):
            raise DomainError("ig_lambda target needs IGParams")
        return lambda w, n: ig_asym(params, w, n)
    if target == "nb_nu":
        return lambda w, n: nb_nu_asym(params, w, n)
    if target == "nb_pi":
        return lambda w, n: nb_pi_asym(params, w, n)
    raise DomainError(f"unknown target {target!r}")


def optimize_weight(spec: TuneSpec) -> TuneResult:
    """Minimize the chosen criterion over the family's free parameter.

    Grid scan first (64 points by default) to bracket the minimum, then
    golden-section refinement down to an interval of 1e-5.  A minimum in
    the first or last grid cell is flagged as ``boundary``; several strict
    grid-local minima are flagged (and warned) as ``multimodal``.
    """
    make = _FAMILY_FACTORY[spec.family]
    summary = _summary_fn(spec.params, spec.target)
    evals = 0

    def objective(p: float) -> float:
        nonlocal evals
        evals += 1
        try:
            s = summary(make(p), spec.n)
        except (DomainError, DegeneracyError, AccuracyError, OverflowError):
            return math.inf
        value = {"variance": s.variance, "bias": abs(s.bias),
                 "mse": s.mse}[spec.criterion]
        return value if np.isfinite(value) else math.inf

    lo, hi = spec.bracket
    grid = np.linspace(lo, hi, spec.grid_points)
    vals = np.array([objective(p) for p in grid])
    if not np.any(np.isfinite(vals)):
        raise InfeasibleError(
            f"criterion infeasible on the whole bracket {spec.bracket}")

    finite = np.where(np.isfinite(vals), vals, np.inf)
    i = int(np.argmin(finite))
    interior_minima = sum(
        1 for j in range(1, len(grid) - 1)
        if finite[j] < finite[j - 1] and finite[j] < finite[j + 1])
    multimodal = interior_minima > 1
    if multimodal:
        warnings.warn("criterion profile has several grid-local minima; "
                      "refining the global one", stacklevel=2)

    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, len(grid) - 1)]
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    fc, fd = objective(c), objective(d)
    while d - c > 1e-5:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = objective(d)
    opt = 0.5 * (a + b)
    val = objective(opt)
    boundary = i == 0 or i == len(grid) - 1
    return TuneResult(float(opt), float(val), evals, boundary, multimodal)


@dataclass(frozen=True)
class TwoStepResult:
    """Pilot fit, tuning outcome, and the re-estimated value."""

    pilot_params: object
    pilot_value: float
    tune: TuneResult
    estimate: EstimateResult


def _pilot(data, target: str):
    x = np.asarray(data.values if hasattr(data, "values") else data, dtype=float)
    xb = float(np.mean(x))
    if target == "exp_lambda":
        lam = 1.0 / xb
        return ExpParams(lam), lam
    if target == "ig_lambda":
        _, res = ig_estimate(x, reciprocal())
        return IGParams(mu=xb, lam=res.value), res.value
    if target in ("nb_nu", "nb_pi"):
        nu, pi = nb_mm_estimates(x, ddof=0)
        params = NBParams.from_mean_size(mu=xb, nu=nu)
        return params, (nu if target == "nb_nu" else params.pi)
    raise DomainError(f"unknown target {target!r}")


def two_step(data, family: str, criterion: str, target: str,
             bracket: tuple[float, float] | None = None,
             branch: str | None = None,
             pilot_params=None, grid_points: int = 64) -> TwoStepResult:
    """Pilot estimate, tune the weight at the pilot, then re-estimate.

    The pilot uses the default weight of each target (1/mean for Exp, the
    reciprocal-weight ML form for IG, the identity-weight moment form for
    NB).  ``branch`` picks the IG power bracket side ("below"/"above" the
    degenerate point); an explicit ``bracket`` overrides it.
    """
    if bracket is None:
        key = (target, family) if branch is None else (target, family, branch)
        if key not in DEFAULT_BRACKETS:
            raise DomainError(f"no default bracket for {key}; pass bracket=")
        bracket = DEFAULT_BRACKETS[key]
    if pilot_params is None:
        pilot_params, pilot_value = _pilot(data, target)
    else:
        pilot_value = {"exp_lambda": getattr(pilot_params, "lam", math.nan),
                       "ig_lambda": getattr(pilot_params, "lam", math.nan),
                       "nb_nu": getattr(pilot_params, "nu", math.nan),
                       "nb_pi": getattr(pilot_params, "pi", math.nan)}[target]
    spec = TuneSpec(params=pilot_params, family=family, criterion=criterion,
                    n=len(data), bracket=bracket, target=target,
                    grid_points=grid_points)
    tune = optimize_weight(spec)
    w = _FAMILY_FACTORY[family](tune.optimum)
    if target == "exp_lambda":
        est = stein_exp(data, w)
    elif target == "ig_lambda":
        _, est = ig_estimate(data, w)
    elif target == "nb_nu":
        est = nb_estimate_nu(data, w)
    else:
        est = nb_estimate_pi(data, w)
    return TwoStepResult(pilot_params, pilot_value, tune, est)
