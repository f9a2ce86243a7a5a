"""Closed-form Stein-MM point estimators.

All estimators are ratios of sample means of weighted transforms.  With
particular weights they reduce exactly to classical estimators:

* exponential, f(x) = x:        1 / mean(X)
* IG, f = 1:                    mean(X)^3 / S^2     (moment estimator)
* IG, f = 1/x:                  mean(X) / (mean(X) mean(1/X) - 1)   (ML)
* NB, f(x) = x:                 mean^2/(S^2 - mean) and mean/S^2

``S^2`` here always carries the 1/n divisor: that is the convention under
which the reductions above are exact algebraic identities.  The classical
textbook moment estimators that divide by n-1 are available through
:func:`nb_mm_estimates` with ``ddof=1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import Sample
from .errors import DegenerateDenominatorError, DomainError
from .weights import WeightFunction, check_admissible

__all__ = [
    "EstimateResult",
    "stein_exp", "ig_estimate", "nb_estimate_nu", "nb_estimate_pi",
    "nb_mm_estimates",
]


@dataclass(frozen=True)
class EstimateResult:
    """A point estimate with enough context to audit it."""

    value: float
    target: str
    weight: WeightFunction
    n: int
    denominator: float
    admissibility_checked: bool = True
    warnings: tuple = ()


def _values(data, kind: str) -> np.ndarray:
    if isinstance(data, Sample):
        x = data.values
    else:
        x = np.asarray(data, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise DomainError("estimation needs a one-dimensional sample with n >= 2")
    if kind in ("exp", "ig") and not np.all(x > 0):
        raise DomainError(f"{kind} data must be strictly positive")
    if kind == "nb" and (not np.all(x >= 0) or not np.all(x == np.round(x))):
        raise DomainError("nb data must be non-negative integers")
    return x


def _admit(w: WeightFunction, dist: str) -> bool:
    """True when checked and admissible; False for the unchecked escape hatch."""
    if w.family == "custom":
        return False
    adm = check_admissible(w, dist)
    if not adm.ok:
        raise DomainError(f"weight {w.spec} not admissible for {dist}: {adm.reason}")
    return True


def stein_exp(data, w: WeightFunction) -> EstimateResult:
    """Estimate the exponential rate as mean f'(X) / mean f(X)."""
    x = _values(data, "exp")
    checked = _admit(w, "exp")
    num = float(np.mean(w.deriv(x)))
    den = float(np.mean(w.eval(x)))
    if den == 0.0 or not np.isfinite(den) or not np.isfinite(num):
        raise DegenerateDenominatorError(
            f"mean f(X) = {den} with weight {w.spec}: estimator undefined")
    warn = () if checked else ("admissibility not checked (custom weight)",)
    return EstimateResult(num / den, "exp_lambda", w, x.size, den,
                          admissibility_checked=checked, warnings=warn)


def ig_estimate(data, w: WeightFunction) -> tuple[float, EstimateResult]:
    """Estimate (mu, lambda) of the inverse Gaussian.

    mu is the sample mean; lambda comes from the Stein identity with
    weight ``w``.  Returns ``(mu_hat, lambda_result)``.
    """
    x = _values(data, "ig")
    checked = _admit(w, "ig")
    xb = float(np.mean(x))
    fx = w.eval(x)
    fpx = w.deriv(x)
    num = xb ** 2 * (2.0 * float(np.mean(x ** 2 * fpx)) + float(np.mean(x * fx)))
    den = float(np.mean(x ** 2 * fx)) - xb ** 2 * float(np.mean(fx))
    if den == 0.0 or not np.isfinite(den) or not np.isfinite(num):
        raise DegenerateDenominatorError(
            f"denominator {den} with weight {w.spec}: shape estimator undefined")
    value = num / den
    # decreasing weights flip the sign of numerator and denominator together;
    # only a mismatched sign (lambda <= 0) is degenerate
    if value <= 0.0 or not np.isfinite(value):
        raise DegenerateDenominatorError(
            f"non-positive shape estimate {value} with weight {w.spec} "
            "(degenerate denominator sign)")
    warn = () if checked else ("admissibility not checked (custom weight)",)
    return xb, EstimateResult(value, "ig_lambda", w, x.size, den,
                              admissibility_checked=checked, warnings=warn)


def _nb_pieces(x: np.ndarray, w: WeightFunction):
    xb = float(np.mean(x))
    dnum = float(np.mean(x * w.diff(x)))
    fx1 = w.eval(x + 1.0)
    return xb, dnum, fx1


def nb_estimate_nu(data, w: WeightFunction) -> EstimateResult:
    """Estimate the NB size parameter nu.

    With the identity weight this is exactly mean^2 / (S^2 - mean), which
    requires overdispersion; a non-positive denominator raises
    :class:`DegenerateDenominatorError` naming that condition.
    """
    x = _values(data, "nb")
    checked = _admit(w, "nb")
    xb, dnum, fx1 = _nb_pieces(x, w)
    den = float(np.mean(x * w.eval(x))) - xb * float(np.mean(fx1))
    if den == 0.0 or not np.isfinite(den) or not np.isfinite(dnum):
        raise DegenerateDenominatorError(
            f"denominator {den} with weight {w.spec}: nu estimator undefined")
    value = xb * dnum / den
    warn = []
    if not checked:
        warn.append("admissibility not checked (custom weight)")
    # numerator and denominator must agree in sign for a valid nu > 0
    if value <= 0:
        if w.family == "identity":
            raise DegenerateDenominatorError(
                "sample not overdispersed (S^2 <= mean): moment estimator of nu "
                "is degenerate")
        raise DegenerateDenominatorError(
            f"non-positive nu estimate {value} with weight {w.spec} (degenerate "
            "denominator sign)")
    return EstimateResult(value, "nb_nu", w, x.size, den,
                          admissibility_checked=checked, warnings=tuple(warn))


def nb_estimate_pi(data, w: WeightFunction) -> EstimateResult:
    """Estimate the NB success probability pi.

    With the identity weight this is exactly mean / S^2.  Estimates at or
    beyond the equidispersion boundary (pi >= 1) are returned with a
    warning recorded in the result.
    """
    x = _values(data, "nb")
    checked = _admit(w, "nb")
    xb, dnum, fx1 = _nb_pieces(x, w)
    den = float(np.mean(x * fx1)) - xb * float(np.mean(fx1))
    if den == 0.0 or not np.isfinite(den):
        raise DegenerateDenominatorError(
            f"denominator {den} with weight {w.spec}: pi estimator undefined")
    value = dnum / den
    if not np.isfinite(value):
        raise DegenerateDenominatorError(
            f"non-finite pi estimate with weight {w.spec}")
    warn = []
    if not checked:
        warn.append("admissibility not checked (custom weight)")
    if value >= 1.0:
        warn.append("estimate at/beyond the equidispersion boundary (pi >= 1)")
    elif value <= 0.0:
        warn.append("non-positive pi estimate (outside the parameter space)")
    return EstimateResult(value, "nb_pi", w, x.size, den,
                          admissibility_checked=checked, warnings=tuple(warn))


def nb_mm_estimates(data, ddof: int = 0) -> tuple[float, float]:
    """Classical moment estimates (nu, pi) = (mean^2/(S^2-mean), mean/S^2).

    ``ddof=0`` matches the identity-weight Stein estimators exactly;
    ``ddof=1`` is the textbook sample-variance convention.
    """
    x = _values(data, "nb")
    xb = float(np.mean(x))
    s2 = float(np.var(x, ddof=ddof))
    if s2 <= xb:
        raise DegenerateDenominatorError(
            "sample not overdispersed (S^2 <= mean): moment estimator of nu "
            "is degenerate")
    return xb ** 2 / (s2 - xb), xb / s2
