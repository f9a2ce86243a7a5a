"""Special functions, half-line quadrature, and tolerance-controlled summation.

Everything here is pure and reentrant.  Quadrature and summation accept a
:class:`ToleranceConfig`; the defaults leave plenty of headroom for the
1e-6 to 1e-8 comparisons made by the asymptotic formulas downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import scipy.integrate
from scipy.special import gammaln, gammasgn

from .errors import AccuracyError, DomainError

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOLERANCE",
    "log_gamma",
    "gen_binom",
    "stirling2",
    "integrate_halfline",
    "truncated_sum",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Accuracy targets for quadrature and series summation."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    max_terms: int = 100_000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be > 0, got {self.abs_tol}")
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")


DEFAULT_TOLERANCE = ToleranceConfig()


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return float(gammaln(x))


def _is_gamma_pole(v: float) -> bool:
    # poles of Gamma sit at 0, -1, -2, ...
    return v < 0.5 and abs(v - round(v)) < 1e-12


def gen_binom(r: float, s: float) -> float:
    """Generalized binomial coefficient Gamma(r+1) / (Gamma(s+1) Gamma(r-s+1)).

    Computed through log-gamma differences with explicit sign tracking, so
    negative non-integer arguments are handled as well.
    """
    args = (r + 1.0, s + 1.0, r - s + 1.0)
    for v in args:
        if _is_gamma_pole(v):
            raise DomainError(f"gen_binom({r}, {s}): gamma pole at argument {v}")
    sign = gammasgn(args[0]) * gammasgn(args[1]) * gammasgn(args[2])
    return float(sign * math.exp(gammaln(args[0]) - gammaln(args[1]) - gammaln(args[2])))


_STIRLING_MAX = 30
_stirling_rows: list[list[int]] = [[1]]


def stirling2(k: int, j: int) -> int:
    """Stirling number of the second kind, S(k, j), for 0 <= k <= 30.

    Values come from a cached triangular table built with the recurrence
    S(k, j) = j S(k-1, j) + S(k-1, j-1).  ``j > k`` returns 0 by convention.
    """
    if k != int(k) or j != int(j):
        raise DomainError("stirling2 arguments must be integers")
    k, j = int(k), int(j)
    if k < 0 or j < 0:
        raise DomainError("stirling2 arguments must be non-negative")
    if k > _STIRLING_MAX:
        raise DomainError(f"stirling2 table covers k <= {_STIRLING_MAX}, got k={k}")
    if j > k:
        return 0
    while len(_stirling_rows) <= k:
        prev = _stirling_rows[-1]
        kk = len(_stirling_rows)
        row = [0] * (kk + 1)
        for jj in range(1, kk):
            row[jj] = jj * prev[jj] + prev[jj - 1]
        row[kk] = 1
        _stirling_rows.append(row)
    return _stirling_rows[k][j]


def integrate_halfline(integrand: Callable[[float], float],
                       cfg: ToleranceConfig | None = None) -> float:
    """Integrate ``integrand`` over (0, inf) to the requested tolerance.

    The half line is mapped to (0, 1) through x = t / (1 - t) and the image
    is handled by adaptive Gauss-Kronrod quadrature.  Raises
    :class:`AccuracyError` (carrying the best estimate and its error bound)
    when the subdivision budget is exhausted without convergence.
    """
    cfg = cfg or DEFAULT_TOLERANCE

    def transformed(t: float) -> float:
        om = 1.0 - t
        return integrand(t / om) / (om * om)

    out = scipy.integrate.quad(
        transformed, 0.0, 1.0,
        epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions, full_output=1,
    )
    value, abserr = out[0], out[1]
    if len(out) > 3:  # quad appends an explanation when it gives up
        raise AccuracyError(
            f"half-line quadrature did not converge: {out[3]}",
            best_estimate=value, error_bound=abserr,
        )
    return float(value)


def truncated_sum(term: Callable[[int], float],
                  cfg: ToleranceConfig | None = None) -> float:
    """Sum ``term(0) + term(1) + ...`` until the terms are negligible.

    Stops at the first index whose term is below ``abs_tol`` and below
    ``rel_tol`` times the partial sum (both strictly, so leading zero terms
    of a series that has not started yet cannot trigger the rule).  Raises
    :class:`AccuracyError` if ``max_terms`` is reached first.
    """
    cfg = cfg or DEFAULT_TOLERANCE
    total = 0.0
    for x in range(cfg.max_terms):
        t = term(x)
        total += t
        at = abs(t)
        if at < cfg.abs_tol and at < cfg.rel_tol * abs(total):
            return total
    raise AccuracyError(
        f"truncated_sum: stopping rule not met within {cfg.max_terms} terms",
        best_estimate=total, error_bound=abs(term(cfg.max_terms - 1)),
    )
