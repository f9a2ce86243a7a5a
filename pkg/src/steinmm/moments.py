"""Moment functionals of weighted transforms.

For continuous distributions, ``mu_f(k, l, m) = E[X^k f(X)^l f'(X)^m]``.
For the negative binomial, ``mu_tilde(k, l, m) = E[X^k f(X)^l f(X+1)^m]``.
Closed forms are used where a family admits them, numerical quadrature or
truncated summation otherwise; ``method`` forces a particular route.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from functools import lru_cache

import numpy as np
import scipy.integrate
from scipy.special import gammaln

from .distributions import ExpParams, IGParams, NBParams, ig_pdf, \
    nb_factorial_zmoment, raw_moment
from .errors import AccuracyError, ClosedFormUnavailableError, DomainError
from .numerics import DEFAULT_TOLERANCE, ToleranceConfig, integrate_halfline, \
    stirling2, truncated_sum
from .weights import WeightFunction

__all__ = ["mu_f", "mu_tilde"]


def _check_triple(t):
    k, l, m = t
    if k < 0 or l < 0 or m < 0 or any(v != int(v) for v in (k, l, m)):
        raise DomainError(f"moment triple must be non-negative integers, got {t}")
    return int(k), int(l), int(m)


# ---------------------------------------------------------------------------
# continuous case
# ---------------------------------------------------------------------------

def _exp_xk_ux(lam: float, k: int, s: float, u: float) -> float:
    # E[X^k u^(sX)] = lam k! / (lam - s ln u)^(k+1)
    denom = lam - s * math.log(u)
    return lam * math.exp(gammaln(k + 1.0)) / denom ** (k + 1)


def _closed_mu_f(params, w: WeightFunction, k: int, l: int, m: int):
    """Closed-form value, or None when no closed form is registered."""
    fam, a = w.family, w.param

    if fam == "const":
        # f = 1, f' = 0: zero whenever a derivative factor is present
        if m > 0:
            return 0.0
        return raw_moment(params, k)

    if isinstance(params, ExpParams):
        if fam in ("identity", "pow"):
            aa = 1.0 if fam == "identity" else a
            p = k + aa * l + (aa - 1.0) * m
            if not p > -1:
                raise DomainError(
                    f"mu_f({k},{l},{m}) does not exist for Exp with x^{aa}: "
                    f"requires k + a*l + (a-1)*m > -1, got {p}")
            return aa ** m * raw_moment(params, p)
        if fam == "geom1m":
            # expand (1 - u^X)^l binomially; f'(x)^m = (-ln u)^m u^(mX)
            u = a
            total = 0.0
            for j in range(l + 1):
                c = math.comb(l, j) * (-1.0) ** j
                total += c * _exp_xk_ux(params.lam, k, j + m, u)
            return (-math.log(u)) ** m * total
        return None

    if isinstance(params, IGParams):
        if fam == "recip":
            return (-1.0) ** m * raw_moment(params, k - l - 2 * m)
        if fam in ("identity", "pow"):
            aa = 1.0 if fam == "identity" else a
            p = k + aa * l + (aa - 1.0) * m
            if abs(p - round(p)) < 1e-12 and -3 <= round(p) <= 4:
                return aa ** m * raw_moment(params, float(round(p)))
            return None
        return None

    raise TypeError(f"mu_f expects Exp or IG parameters, got {type(params)!r}")


def mu_f(params, w: WeightFunction, triple, method: str = "auto",
         cfg: ToleranceConfig | None = None) -> float:
    """E[X^k f(X)^l f'(X)^m] for Exp or IG parameters.

    ``method="auto"`` prefers a registered closed form and falls back to
    half-line quadrature; ``"closed"`` raises
    :class:`ClosedFormUnavailableError` when no closed form exists;
    ``"quadrature"`` always integrates numerically.
    """
    k, l, m = _check_triple(triple)
    if method not in ("auto", "closed", "quadrature"):
        raise DomainError(f"unknown method {method!r}")
    if method != "quadrature":
        value = _closed_mu_f(params, w, k, l, m)
        if value is not None:
            return value
        if method == "closed":
            raise ClosedFormUnavailableError(
                f"no closed form for mu_f({k},{l},{m}) with {w.spec} under "
                f"{type(params).__name__}")

    if isinstance(params, ExpParams):
        lam = params.lam

        def dens(x):
            return lam * math.exp(-lam * x)
    elif isinstance(params, IGParams):
        def dens(x):
            return ig_pdf(params, x)
    else:
        raise TypeError(f"mu_f expects Exp or IG parameters, got {type(params)!r}")

    def integrand(x):
        v = dens(x)
        if v == 0.0:
            return 0.0
        if k:
            v *= x ** k
        if l:
            v *= w.eval(x) ** l
        if m:
            v *= w.deriv(x) ** m
        return v

    return integrate_halfline(integrand, cfg)


# ---------------------------------------------------------------------------
# discrete case
# ---------------------------------------------------------------------------

_PMF_CACHE: OrderedDict = OrderedDict()
_PMF_CACHE_MAX = 32


def _pmf_list(params: NBParams) -> list:
    key = (params.nu, params.pi)
    lst = _PMF_CACHE.get(key)
    if lst is None:
        lst = [params.pi ** params.nu]
        _PMF_CACHE[key] = lst
        if len(_PMF_CACHE) > _PMF_CACHE_MAX:
            _PMF_CACHE.popitem(last=False)
    else:
        _PMF_CACHE.move_to_end(key)
    return lst


def _pmf_at(params: NBParams, lst: list, x: int) -> float:
    while len(lst) <= x:
        i = len(lst) - 1
        lst.append(lst[i] * (params.nu + i) * (1.0 - params.pi) / (i + 1.0))
    return lst[x]


def _nb_power_sum(params: NBParams, k: int, z: float) -> float:
    # E[X^k z^X] through factorial moments and Stirling numbers
    total = 0.0
    for j in range(k + 1):
        s = stirling2(k, j)
        if s:
            total += s * nb_factorial_zmoment(params, j, z)
    return total


def _closed_mu_tilde(params: NBParams, w: WeightFunction, k: int, l: int, m: int):
    fam, a = w.family, w.param
    if fam == "const":
        return raw_moment(params, k)
    if fam == "geom":
        z = a ** (l + m)
        if not (1.0 - params.pi) * z < 1.0:
            raise DomainError(
                "mu_tilde closed route diverges: (1-pi) alpha^(l+m) >= 1")
        return a ** m * _nb_power_sum(params, k, z)
    if fam == "identity":
        # X^k X^l (X+1)^m expands into raw moments
        total = 0.0
        for i in range(m + 1):
            total += math.comb(m, i) * raw_moment(params, k + l + i)
        return total
    return None


def _scalar_weight(w: WeightFunction):
    fam, a = w.family, w.param
    if fam == "geom":
        return lambda x: a ** x
    if fam == "shiftpow":
        return lambda x: (x + 1.0) ** a
    if fam == "identity":
        return float
    if fam == "geom1m":
        return lambda x: 1.0 - a ** x
    if fam == "log1p":
        return math.log1p
    if fam == "const":
        return lambda x: 1.0
    return lambda x: float(w.eval(float(x)))


def mu_tilde(params: NBParams, w: WeightFunction, triple, method: str = "auto",
             cfg: ToleranceConfig | None = None) -> float:
    """E[X^k f(X)^l f(X+1)^m] for negative-binomial parameters.

    ``method="auto"`` uses the factorial-moment closed form where one is
    registered and a tolerance-controlled truncated sum otherwise;
    ``"sum"`` forces summation, ``"closed"`` raises when unavailable.
    """
    if not isinstance(params, NBParams):
        raise TypeError(f"mu_tilde expects NB parameters, got {type(params)!r}")
    k, l, m = _check_triple(triple)
    if method not in ("auto", "closed", "sum"):
        raise DomainError(f"unknown method {method!r}")
    if method != "sum":
        value = _closed_mu_tilde(params, w, k, l, m)
        if value is not None:
            return value
        if method == "closed":
            raise ClosedFormUnavailableError(
                f"no closed form for mu_tilde({k},{l},{m}) with {w.spec}")

    lst = _pmf_list(params)
    fx = _scalar_weight(w)

    def term(x: int) -> float:
        v = _pmf_at(params, lst, x)
        if k:
            v *= float(x) ** k
        if l:
            v *= fx(float(x)) ** l
        if m:
            v *= fx(float(x) + 1.0) ** m
        return v

    return truncated_sum(term, cfg)


# ---------------------------------------------------------------------------
# moment sets used by the asymptotic formulas (cached: pure in their inputs)
# ---------------------------------------------------------------------------

IG_TRIPLES = ((0, 1, 0), (1, 1, 0), (2, 1, 0), (2, 0, 1), (0, 2, 0),
              (1, 2, 0), (2, 2, 0), (2, 1, 1), (3, 1, 0), (3, 0, 1),
              (3, 1, 1), (3, 2, 0), (4, 1, 1), (4, 0, 2), (4, 2, 0))

NB_TRIPLES = ((0, 0, 1), (0, 0, 2), (1, 0, 1), (1, 0, 2), (1, 1, 0),
              (1, 1, 1), (2, 0, 1), (2, 0, 2), (2, 1, 0), (2, 1, 1),
              (2, 2, 0))


@lru_cache(maxsize=1024)
def ig_moment_set(params: IGParams, w: WeightFunction,
                  cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> dict:
    """All mu_f values the IG asymptotics need, as one dict.

    Closed forms are taken where registered; the remaining triples are
    integrated together in a single adaptive pass over the transformed
    half line (same change of variables and quadrature family as
    :func:`steinmm.numerics.integrate_halfline`, vector-valued integrand).
    """
    vals = {}
    open_triples = []
    for t in IG_TRIPLES:
        v = _closed_mu_f(params, w, *t)
        if v is None:
            open_triples.append(t)
        else:
            vals[t] = v
    if open_triples:
        ks = np.array([t[0] for t in open_triples], dtype=float)
        ls = np.array([t[1] for t in open_triples], dtype=float)
        ms = np.array([t[2] for t in open_triples], dtype=float)
        need_deriv = bool(np.any(ms > 0))

        def integrand(t: float) -> np.ndarray:
            om = 1.0 - t
            x = t / om
            base = ig_pdf(params, x) / (om * om)
            if base == 0.0:
                return np.zeros_like(ks)
            fx = w.eval(x)
            fpx = w.deriv(x) if need_deriv else 1.0
            return base * x ** ks * fx ** ls * fpx ** ms

        res, err = scipy.integrate.quad_vec(
            integrand, 0.0, 1.0, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
            norm="max", limit=cfg.max_subdivisions)
        scale = max(1.0, float(np.max(np.abs(res))))
        if err > 1e4 * max(cfg.abs_tol, cfg.rel_tol * scale):
            raise AccuracyError("IG moment quadrature did not converge",
                                best_estimate=res, error_bound=err)
        vals.update(zip(open_triples, map(float, res)))
    return vals


@lru_cache(maxsize=1024)
def exp_moment_set(params: ExpParams, w: WeightFunction,
                   cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> dict:
    return {t: mu_f(params, w, t, cfg=cfg)
            for t in ((0, 1, 0), (0, 2, 0), (0, 0, 2))}


@lru_cache(maxsize=1024)
def nb_moment_set(params: NBParams, w: WeightFunction,
                  cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> dict:
    """All mu_tilde values the NB asymptotics need, as one dict.

    Closed forms where registered; otherwise the eleven series are summed
    together blockwise under the same stopping rule as
    :func:`steinmm.numerics.truncated_sum` (every series' current term
    must be negligible before stopping).
    """
    vals = {}
    open_triples = []
    for t in NB_TRIPLES:
        v = _closed_mu_tilde(params, w, *t)
        if v is None:
            open_triples.append(t)
        else:
            vals[t] = v
    if open_triples:
        ks = np.array([t[0] for t in open_triples], dtype=float)[:, None]
        ls = np.array([t[1] for t in open_triples], dtype=float)[:, None]
        ms = np.array([t[2] for t in open_triples], dtype=float)[:, None]
        totals = np.zeros(len(open_triples))
        lst = _pmf_list(params)
        block = 64
        start = 0
        while start < cfg.max_terms:
            stop = min(start + block, cfg.max_terms)
            _pmf_at(params, lst, stop - 1)
            xs = np.arange(start, stop, dtype=float)[None, :]
            pmf = np.asarray(lst[start:stop], dtype=float)[None, :]
            fx = np.asarray(w.eval(xs[0]), dtype=float)[None, :]
            fx1 = np.asarray(w.eval(xs[0] + 1.0), dtype=float)[None, :]
            terms = pmf * xs ** ks * fx ** ls * fx1 ** ms
            totals += terms.sum(axis=1)
            tail = np.abs(terms[:, -1])
            if np.all(tail < cfg.abs_tol) \
                    and np.all(tail < cfg.rel_tol * np.abs(totals)):
                vals.update(zip(open_triples, map(float, totals)))
                return vals
            start = stop
        raise AccuracyError(
            f"NB moment series not converged within {cfg.max_terms} terms",
            best_estimate=totals)
    return vals
