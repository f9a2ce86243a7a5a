"""Closed-form asymptotic variance, bias, and MSE of the Stein-MM estimators.

The covariance matrices are the CLT covariances of the sample-mean vectors
each estimator is built from; variance and bias then follow from the Delta
method (first order for the variance, second order for the O(1/n) bias).
:func:`delta_oracle` recomputes both from finite differences of the
estimator map, independently of the transcribed formulas, and is used by
the test-suite to pin every display.

Note: the second-moment factor in the published pi-estimator variance
display is restored here to ``(mu_tilde(1,0,1) - mu_tilde(1,1,0))^2``; the
printed form is not invariant under rescaling of the weight and disagrees
with the finite-difference oracle, while this form matches both.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .distributions import ExpParams, IGParams, NBParams
from .errors import AccuracyWarning, DegeneracyError, DomainError
from .moments import exp_moment_set, ig_moment_set, nb_moment_set
from .numerics import DEFAULT_TOLERANCE, ToleranceConfig, gen_binom
from .weights import WeightFunction

__all__ = [
    "AsymptoticSummary",
    "exp_cov", "ig_cov", "nb_cov",
    "exp_mean_vector", "ig_mean_vector", "nb_mean_vector",
    "exp_asym", "exp_power_closed", "exp_geom_closed",
    "ig_asym", "ig_mm_closed", "ig_ml_closed",
    "nb_nu_asym", "nb_pi_asym",
    "delta_oracle",
    "exp_lambda_map", "ig_lambda_map", "nb_nu_map", "nb_pi_map",
]


@dataclass(frozen=True)
class AsymptoticSummary:
    """Asymptotic variance (already scaled by 1/n), O(1/n) bias, and n."""

    variance: float
    bias: float
    n: int

    @property
    def mse(self) -> float:
        return self.variance + self.bias ** 2

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)


def _check_n(n: int) -> int:
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    return int(n)


# ---------------------------------------------------------------------------
# estimator maps: each estimator is this function of its mean vector
# ---------------------------------------------------------------------------

def exp_lambda_map(z: Sequence[float]) -> float:
    """(mean f'(X), mean f(X)) -> lambda estimate."""
    return z[0] / z[1]


def ig_lambda_map(z: Sequence[float]) -> float:
    """(X, f, Xf, X^2 f, X^2 f') sample means -> lambda estimate."""
    return z[0] ** 2 * (2.0 * z[4] + z[2]) / (z[3] - z[0] ** 2 * z[1])


def nb_nu_map(z: Sequence[float]) -> float:
    """(X, f(X+1), Xf(X), Xf(X+1)) sample means -> nu estimate."""
    return z[0] * (z[3] - z[2]) / (z[2] - z[0] * z[1])


def nb_pi_map(z: Sequence[float]) -> float:
    """(X, f(X+1), Xf(X), Xf(X+1)) sample means -> pi estimate."""
    return (z[3] - z[2]) / (z[3] - z[0] * z[1])


# ---------------------------------------------------------------------------
# mean vectors and CLT covariance matrices
# ---------------------------------------------------------------------------

def exp_mean_vector(params: ExpParams, w: WeightFunction,
                    cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> np.ndarray:
    m010 = exp_moment_set(params, w, cfg)[(0, 1, 0)]
    return np.array([params.lam * m010, m010])


def exp_cov(params: ExpParams, w: WeightFunction,
            cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> np.ndarray:
    lam = params.lam
    M = exp_moment_set(params, w, cfg)
    m010, m020, m002 = M[(0, 1, 0)], M[(0, 2, 0)], M[(0, 0, 2)]
    s11 = m002 - lam ** 2 * m010 ** 2
    s22 = m020 - m010 ** 2
    s12 = 0.5 * lam * (s22 - m010 ** 2)
    return np.array([[s11, s12], [s12, s22]])


def ig_mean_vector(params: IGParams, w: WeightFunction,
                   cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> np.ndarray:
    M = ig_moment_set(params, w, cfg)
    return np.array([params.mu, M[(0, 1, 0)], M[(1, 1, 0)],
                     M[(2, 1, 0)], M[(2, 0, 1)]])


def ig_cov(params: IGParams, w: WeightFunction,
           cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> np.ndarray:
    mu, lam = params.mu, params.lam
    M = ig_moment_set(params, w, cfg)
    m010, m110, m210 = M[(0, 1, 0)], M[(1, 1, 0)], M[(2, 1, 0)]
    m201, m020, m120 = M[(2, 0, 1)], M[(0, 2, 0)], M[(1, 2, 0)]
    m220, m211, m310 = M[(2, 2, 0)], M[(2, 1, 1)], M[(3, 1, 0)]
    m301, m311, m320 = M[(3, 0, 1)], M[(3, 1, 1)], M[(3, 2, 0)]
    m411, m402, m420 = M[(4, 1, 1)], M[(4, 0, 2)], M[(4, 2, 0)]
    S = np.empty((5, 5))
    S[0, 0] = mu ** 3 / lam
    S[0, 1] = m110 - mu * m010
    S[0, 2] = m210 - mu * m110
    S[0, 3] = m310 - mu * m210
    S[0, 4] = m301 - mu * m201
    S[1, 1] = m020 - m010 ** 2
    S[1, 2] = m120 - m010 * m110
    S[1, 3] = m220 - m010 * m210
    S[1, 4] = m211 - m010 * m201
    S[2, 2] = m220 - m110 ** 2
    S[2, 3] = m320 - m110 * m210
    S[2, 4] = m311 - m110 * m201
    S[3, 3] = m420 - m210 ** 2
    S[3, 4] = m411 - m210 * m201
    S[4, 4] = m402 - m201 ** 2
    i_low = np.tril_indices(5, -1)
    S[i_low] = S.T[i_low]
    return S


def nb_mean_vector(params: NBParams, w: WeightFunction,
                   cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> np.ndarray:
    T = nb_moment_set(params, w, cfg)
    return np.array([params.mu, T[(0, 0, 1)], T[(1, 1, 0)], T[(1, 0, 1)]])


def nb_cov(params: NBParams, w: WeightFunction,
           cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> np.ndarray:
    mu, sig2 = params.mu, params.sigma2
    T = nb_moment_set(params, w, cfg)
    t001, t002 = T[(0, 0, 1)], T[(0, 0, 2)]
    t101, t102 = T[(1, 0, 1)], T[(1, 0, 2)]
    t110, t111 = T[(1, 1, 0)], T[(1, 1, 1)]
    t201, t202 = T[(2, 0, 1)], T[(2, 0, 2)]
    t210, t211, t220 = T[(2, 1, 0)], T[(2, 1, 1)], T[(2, 2, 0)]
    S = np.empty((4, 4))
    S[0, 0] = sig2
    S[0, 1] = t101 - mu * t001
    S[0, 2] = t210 - mu * t110
    S[0, 3] = t201 - mu * t101
    S[1, 1] = t002 - t001 ** 2
    S[1, 2] = t111 - t001 * t110
    S[1, 3] = t102 - t001 * t101
    S[2, 2] = t220 - t110 ** 2
    S[2, 3] = t211 - t110 * t101
    S[3, 3] = t202 - t101 ** 2
    i_low = np.tril_indices(4, -1)
    S[i_low] = S.T[i_low]
    return S


# ---------------------------------------------------------------------------
# exponential estimator
# ---------------------------------------------------------------------------

def exp_asym(params: ExpParams, w: WeightFunction, n: int,
             cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> AsymptoticSummary:
    """Asymptotic summary of the exponential rate estimator."""
    n = _check_n(n)
    lam = params.lam
    M = exp_moment_set(params, w, cfg)
    m010, m020, m002 = M[(0, 1, 0)], M[(0, 2, 0)], M[(0, 0, 2)]
    variance = m002 / m010 ** 2 / n
    bias = 0.5 * lam * m020 / m010 ** 2 / n
    return AsymptoticSummary(variance, bias, n)


def exp_power_closed(lam: float, a: float, n: int) -> AsymptoticSummary:
    """Closed form for weight x^a (requires a > 1/2)."""
    n = _check_n(n)
    if not lam > 0:
        raise DomainError(f"rate must be positive, got {lam}")
    if not a > 0.5:
        raise DomainError(f"x^a asymptotics need a > 1/2, got a={a}")
    variance = lam ** 2 / n * gen_binom(2.0 * (a - 1.0), a - 1.0)
    bias = 0.5 * lam / n * gen_binom(2.0 * a, a)
    return AsymptoticSummary(variance, bias, n)


def exp_geom_closed(lam: float, u: float, n: int) -> AsymptoticSummary:
    """Closed form for weight 1 - u^x with u in (0, 1)."""
    n = _check_n(n)
    if not lam > 0:
        raise DomainError(f"rate must be positive, got {lam}")
    if not 0.0 < u < 1.0:
        raise DomainError(f"u must lie in (0, 1), got {u}")
    lu = math.log(u)
    variance = lam / n * (lam - lu) ** 2 / (lam - 2.0 * lu)
    bias = variance / (lam - lu)
    return AsymptoticSummary(variance, bias, n)


# ---------------------------------------------------------------------------
# inverse Gaussian estimator
# ---------------------------------------------------------------------------

def ig_asym(params: IGParams, w: WeightFunction, n: int,
            cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> AsymptoticSummary:
    """Asymptotic summary of the IG shape estimator for weight ``w``."""
    n = _check_n(n)
    mu, lam = params.mu, params.lam
    M = ig_moment_set(params, w, cfg)
    m010, m110, m210 = M[(0, 1, 0)], M[(1, 1, 0)], M[(2, 1, 0)]
    m201, m020, m120 = M[(2, 0, 1)], M[(0, 2, 0)], M[(1, 2, 0)]
    m220, m211, m310 = M[(2, 2, 0)], M[(2, 1, 1)], M[(3, 1, 0)]
    m301, m311, m320 = M[(3, 0, 1)], M[(3, 1, 1)], M[(3, 2, 0)]
    m411, m402, m420 = M[(4, 1, 1)], M[(4, 0, 2)], M[(4, 2, 0)]

    theta = m210 - mu ** 2 * m010
    if abs(theta) <= 1e-8 * (abs(m210) + mu ** 2 * abs(m010)):
        raise DegeneracyError(
            f"weight {w.spec} is degenerate for IG({mu}, {lam}): "
            "mu_f(2,1,0) - mu^2 mu_f(0,1,0) vanishes")

    var_unit = (
        (mu ** 4 / theta ** 2) * (
            m220 - m110 * (lam * theta / mu ** 2 + 2.0 * m201)
            + 4.0 * m311 + 4.0 * m402 - 4.0 * m201 ** 2)
        + (2.0 * lam * mu / theta ** 2) * (
            mu ** 3 * (m120 + 2.0 * m211 - (lam * theta / mu ** 2) * m010)
            - mu * (m320 + 2.0 * m411)
            + m210 * (4.0 * m210 + 4.0 * m301 - lam * theta / mu))
        + (lam ** 2 / (mu * theta ** 2)) * (
            mu ** 5 * m020 + mu ** 3 * m010 * (theta + m210)
            - 2.0 * mu ** 3 * m220
            + 4.0 * m210 * (mu ** 2 * m110 - mu ** 3 * m010 - m310)
            + mu * (3.0 * m210 ** 2 + m420))
    )
    bias_unit = (
        (1.0 / (mu * theta ** 2)) * (
            mu ** 2 * m210 * (m210 + 3.0 * mu ** 2 * m010)
            + lam * (mu ** 5 * m020 + mu * m420 - 2.0 * m310 * m210
                     + 4.0 * mu ** 2 * m110 * m210 - 2.0 * mu ** 3 * m220))
        + (mu / theta ** 3) * (
            m210 * (2.0 * m210 ** 2 - mu * m320 + 4.0 * m210 * m301
                    - 2.0 * mu * m411 + mu ** 3 * (m120 + 2.0 * m211))
            - mu ** 2 * m010 * (
                2.0 * m310 * (2.0 * m201 + m110) + 2.0 * m210 ** 2
                + 4.0 * m210 * m301 + mu ** 3 * (m120 + 2.0 * m211)
                - mu * (m320 + 2.0 * m411)))
    )
    return AsymptoticSummary(var_unit / n, bias_unit / n, n)


def ig_mm_closed(mu: float, lam: float, n: int) -> AsymptoticSummary:
    """Constant weight (classical moment estimator of the IG shape)."""
    n = _check_n(n)
    if not (mu > 0 and lam > 0):
        raise DomainError("IG parameters must be positive")
    return AsymptoticSummary(2.0 * lam * (lam + 3.0 * mu) / n,
                             3.0 * (lam + 3.0 * mu) / n, n)


def ig_ml_closed(mu: float, lam: float, n: int) -> AsymptoticSummary:
    """Reciprocal weight (maximum-likelihood estimator of the IG shape)."""
    n = _check_n(n)
    if not (mu > 0 and lam > 0):
        raise DomainError("IG parameters must be positive")
    return AsymptoticSummary(2.0 * lam ** 2 / n, 3.0 * lam / n, n)


# ---------------------------------------------------------------------------
# negative-binomial estimators
# ---------------------------------------------------------------------------

def _nb_terms(params: NBParams, w: WeightFunction, cfg: ToleranceConfig):
    T = nb_moment_set(params, w, cfg)
    return (T[(0, 0, 1)], T[(0, 0, 2)], T[(1, 0, 1)], T[(1, 0, 2)],
            T[(1, 1, 0)], T[(1, 1, 1)], T[(2, 0, 1)], T[(2, 0, 2)],
            T[(2, 1, 0)], T[(2, 1, 1)], T[(2, 2, 0)])


def nb_nu_asym(params: NBParams, w: WeightFunction, n: int,
               cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> AsymptoticSummary:
    """Asymptotic summary of the NB size estimator for weight ``w``."""
    n = _check_n(n)
    mu, sig2 = params.mu, params.sigma2
    t001, t002, t101, t102, t110, t111, t201, t202, t210, t211, t220 = \
        _nb_terms(params, w, cfg)
    eta1 = t110 - mu * t001
    if abs(eta1) <= 1e-8 * (abs(t110) + mu * abs(t001)):
        raise DegeneracyError(
            f"weight {w.spec} is degenerate for NB(nu={params.nu:g}, "
            f"pi={params.pi:g}): mu_tilde(1,1,0) - mu mu_tilde(0,0,1) vanishes")

    var_num = (
        mu ** 4 * (t001 * (t001 * (t202 - 2.0 * t211 + t220)
                           - 2.0 * (t101 - t110) * (t102 - t111))
                   + t002 * (t101 - t110) ** 2)
        + 2.0 * mu ** 3 * (t001 * t101 * (t211 - t220)
                           - t110 * (t001 * (t202 - t211) + t102 * t110)
                           - t101 ** 2 * t111
                           + t101 * t110 * (t102 + t111))
        + mu ** 2 * (t110 * (2.0 * t101 * (-t001 * t201 + t001 * t210
                                           + t110 ** 2 - t211)
                             + t110 * (2.0 * t001 * t201 - 2.0 * t001 * t210
                                       + t202)
                             + 2.0 * t101 ** 3 - 4.0 * t101 ** 2 * t110)
                     + t101 ** 2 * t220)
        - 2.0 * mu * t110 * (t101 - t110) * (t101 * t210 - t110 * t201)
        + t110 ** 2 * sig2 * (t101 - t110) ** 2
    )
    bias_num = (
        mu ** 3 * (t001 * (t102 - t111) + t002 * (t110 - t101))
        - mu ** 2 * (t001 * (t211 - t220) - 2.0 * t101 * t111
                     + t110 * (t102 + t111))
        + mu * (t101 * (t001 * t210 + 2.0 * t110 ** 2 - t220)
                + t110 * (t001 * t201 - 2.0 * t001 * t210 + t211)
                - 2.0 * t101 ** 2 * t110)
        + t110 * (t001 * sig2 * (t110 - t101) + t101 * t210 - t110 * t201)
    )
    return AsymptoticSummary(var_num / (eta1 ** 4 * n),
                             -bias_num / (eta1 ** 3 * n), n)


def nb_pi_asym(params: NBParams, w: WeightFunction, n: int,
               cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> AsymptoticSummary:
    """Asymptotic summary of the NB success-probability estimator."""
    n = _check_n(n)
    mu, sig2 = params.mu, params.sigma2
    t001, t002, t101, t102, t110, t111, t201, t202, t210, t211, t220 = \
        _nb_terms(params, w, cfg)
    eta2 = t101 - mu * t001
    if abs(eta2) <= 1e-8 * (abs(t101) + mu * abs(t001)):
        raise DegeneracyError(
            f"weight {w.spec} is degenerate for NB(nu={params.nu:g}, "
            f"pi={params.pi:g}): mu_tilde(1,0,1) - mu mu_tilde(0,0,1) vanishes")

    var_num = (
        mu ** 2 * (t001 * (t001 * (t202 - 2.0 * t211 + t220)
                           - 2.0 * (t101 - t110) * (t102 - t111))
                   + t002 * (t101 - t110) ** 2)
        - 2.0 * mu * (t001 ** 2 * (t101 - t110) * (t201 - t210)
                      - t001 * (t101 ** 3 - 2.0 * t101 ** 2 * t110
                                + t101 * (t110 ** 2 + t211 - t220)
                                + t110 * (t211 - t202))
                      + (t101 - t110) * (t101 * t111 - t102 * t110))
        + t001 ** 2 * sig2 * (t101 - t110) ** 2
        + t101 ** 2 * t220
        - 2.0 * t001 * (t101 - t110) * (t101 * t210 - t110 * t201)
        - 2.0 * t101 * t110 * t211
        + t110 ** 2 * t202
    )
    bias_num = (
        mu ** 2 * (t001 * (t102 - t111) + t002 * (t110 - t101))
        + mu * (t001 ** 2 * (t201 - t210)
                + t001 * (t101 * (t110 - t101) - t202 + t211)
                + t101 * (t102 + t111) - 2.0 * t102 * t110)
        + t110 * (t001 ** 2 * sig2 - 2.0 * t001 * t201 + t202)
        + t001 * t101 * (-t001 * sig2 + t201 + t210)
        - t101 ** 3 + t101 ** 2 * t110 - t101 * t211
    )
    return AsymptoticSummary(var_num / (eta2 ** 4 * n),
                             -bias_num / (eta2 ** 3 * n), n)


# ---------------------------------------------------------------------------
# finite-difference Delta-method oracle
# ---------------------------------------------------------------------------

def delta_oracle(g: Callable[[np.ndarray], float], mean_vec, cov, n: int,
                 grad_step: float = 1e-5,
                 hess_step: float = 1e-4) -> AsymptoticSummary:
    """Delta-method summary computed numerically from the estimator map ``g``.

    The gradient and Hessian of ``g`` at ``mean_vec`` are estimated with
    central differences (steps relative to each coordinate's magnitude),
    sharpened by one Richardson pass (full and half step) that cancels the
    leading quadratic truncation term; the variance is D Sigma D^T / n and
    the bias is the half-trace form sum_ij H_ij Sigma_ij / (2n).  Issues
    :class:`AccuracyWarning` when the difference quotients encounter
    non-finite values.
    """
    n = _check_n(n)
    z = np.asarray(mean_vec, dtype=float)
    S = np.asarray(cov, dtype=float)
    d = z.size
    g0 = float(g(z))

    def step(sizes, i):
        e = np.zeros(d)
        e[i] = sizes[i]
        return e

    def gradient(hg):
        D = np.empty(d)
        for i in range(d):
            e = step(hg, i)
            D[i] = (g(z + e) - g(z - e)) / (2.0 * hg[i])
        return D

    def hessian(hh):
        H = np.empty((d, d))
        for i in range(d):
            ei = step(hh, i)
            H[i, i] = (g(z + ei) - 2.0 * g0 + g(z - ei)) / hh[i] ** 2
            for j in range(i):
                ej = step(hh, j)
                H[i, j] = H[j, i] = (g(z + ei + ej) - g(z + ei - ej)
                                     - g(z - ei + ej) + g(z - ei - ej)) \
                    / (4.0 * hh[i] * hh[j])
        return H

    hg = grad_step * np.maximum(np.abs(z), 1.0)
    D = (4.0 * gradient(hg / 2.0) - gradient(hg)) / 3.0
    hh = hess_step * np.maximum(np.abs(z), 1.0)
    H = (4.0 * hessian(hh / 2.0) - hessian(hh)) / 3.0

    if not (np.all(np.isfinite(D)) and np.all(np.isfinite(H))):
        warnings.warn("finite differences hit non-finite values; the oracle "
                      "output is unreliable", AccuracyWarning, stacklevel=2)
    variance = float(D @ S @ D) / n
    bias = 0.5 * float(np.sum(H * S)) / n
    return AsymptoticSummary(variance, bias, n)
