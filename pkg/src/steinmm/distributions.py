"""Parameter types, densities, moments, and samplers for Exp, IG, and NB.

Parametrizations follow the usual conventions: Exp(lam) with rate ``lam``,
IG(mu, lam) with mean ``mu`` and shape ``lam``, NB(nu, pi) with size ``nu``
and success probability ``pi`` (mean nu(1-pi)/pi, variance nu(1-pi)/pi^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .numerics import ToleranceConfig, integrate_halfline, stirling2

__all__ = [
    "ExpParams", "IGParams", "NBParams", "Sample",
    "density", "exp_pdf", "ig_pdf", "nb_pmf",
    "raw_moment", "nb_factorial_zmoment", "nb_pgf", "nb_param_convert",
    "sample", "substream",
]


@dataclass(frozen=True)
class ExpParams:
    """Exponential distribution with rate ``lam > 0``."""

    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"Exp rate must be positive, got {self.lam}")

    @property
    def mean(self) -> float:
        return 1.0 / self.lam


@dataclass(frozen=True)
class IGParams:
    """Inverse Gaussian distribution with mean ``mu > 0`` and shape ``lam > 0``."""

    mu: float
    lam: float

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"IG mean must be positive, got {self.mu}")
        if not self.lam > 0:
            raise DomainError(f"IG shape must be positive, got {self.lam}")

    @property
    def mean(self) -> float:
        return self.mu

    @property
    def variance(self) -> float:
        return self.mu ** 3 / self.lam


@dataclass(frozen=True)
class NBParams:
    """Negative binomial with size ``nu > 0`` and success probability ``pi``."""

    nu: float
    pi: float

    def __post_init__(self):
        if not self.nu > 0:
            raise DomainError(f"NB size must be positive, got {self.nu}")
        if not 0.0 < self.pi < 1.0:
            raise DomainError(f"NB probability must lie in (0, 1), got {self.pi}")

    @property
    def mu(self) -> float:
        return self.nu * (1.0 - self.pi) / self.pi

    @property
    def sigma2(self) -> float:
        return self.nu * (1.0 - self.pi) / self.pi ** 2

    @classmethod
    def from_mean_size(cls, mu: float, nu: float) -> "NBParams":
        if not mu > 0:
            raise DomainError(f"NB mean must be positive, got {mu}")
        return cls(nu=nu, pi=nu / (nu + mu))

    @classmethod
    def from_mean_prob(cls, mu: float, pi: float) -> "NBParams":
        if not mu > 0:
            raise DomainError(f"NB mean must be positive, got {mu}")
        if not 0.0 < pi < 1.0:
            raise DomainError(f"NB probability must lie in (0, 1), got {pi}")
        return cls(nu=pi * mu / (1.0 - pi), pi=pi)


Params = Union[ExpParams, IGParams, NBParams]


def nb_param_convert(*, nu: float | None = None, pi: float | None = None,
                     mu: float | None = None) -> NBParams:
    """Build canonical NB(nu, pi) from any two of ``nu``, ``pi``, ``mu``."""
    given = {k: v for k, v in {"nu": nu, "pi": pi, "mu": mu}.items() if v is not None}
    if len(given) != 2:
        raise DomainError(f"need exactly two of nu/pi/mu, got {sorted(given)}")
    if "mu" not in given:
        return NBParams(nu=nu, pi=pi)
    if "nu" in given:
        return NBParams.from_mean_size(mu=mu, nu=nu)
    return NBParams.from_mean_prob(mu=mu, pi=pi)


@dataclass(frozen=True)
class Sample:
    """An i.i.d. sample with optional support validation.

    ``kind`` is one of ``"exp"``, ``"ig"``, ``"nb"``, or None for no
    validation.  Exp/IG samples must be strictly positive; NB samples must
    be non-negative integers.
    """

    values: np.ndarray
    kind: str | None = field(default=None)

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("Sample requires a one-dimensional, non-empty array")
        if not np.all(np.isfinite(arr)):
            raise DomainError("Sample values must be finite")
        if self.kind in ("exp", "ig") and not np.all(arr > 0):
            raise DomainError(f"{self.kind} sample values must be strictly positive")
        if self.kind == "nb":
            if not np.all(arr >= 0) or not np.all(arr == np.round(arr)):
                raise DomainError("nb sample values must be non-negative integers")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.size

    def __len__(self) -> int:
        return self.values.size


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------

def exp_pdf(params: ExpParams, x):
    x = np.asarray(x, dtype=float)
    out = np.where(x > 0, params.lam * np.exp(-params.lam * np.where(x > 0, x, 0.0)), 0.0)
    return out if out.ndim else float(out)


def ig_pdf(params: IGParams, x):
    x = np.asarray(x, dtype=float)
    mu, lam = params.mu, params.lam
    xs = np.where(x > 0, x, 1.0)  # placeholder for the log; masked below
    logpdf = (0.5 * math.log(lam / (2.0 * math.pi)) - 1.5 * np.log(xs)
              + lam / mu - (lam / (2.0 * mu)) * (xs / mu + mu / xs))
    out = np.where(x > 0, np.exp(logpdf), 0.0)
    return out if out.ndim else float(out)


def nb_pmf(params: NBParams, x):
    x = np.asarray(x, dtype=float)
    ok = (x >= 0) & (x == np.round(x))
    xs = np.where(ok, x, 0.0)
    logp = (gammaln(params.nu + xs) - gammaln(params.nu) - gammaln(xs + 1.0)
            + xs * math.log1p(-params.pi) + params.nu * math.log(params.pi))
    out = np.where(ok, np.exp(logp), 0.0)
    return out if out.ndim else float(out)


def density(params: Params, x):
    """Density (Exp, IG) or probability mass (NB) at ``x``; zero off-support."""
    if isinstance(params, ExpParams):
        return exp_pdf(params, x)
    if isinstance(params, IGParams):
        return ig_pdf(params, x)
    if isinstance(params, NBParams):
        return nb_pmf(params, x)
    raise TypeError(f"unsupported parameter type {type(params)!r}")


# ---------------------------------------------------------------------------
# raw moments
# ---------------------------------------------------------------------------

def _ig_int_moment(params: IGParams, r: int) -> float:
    # positive orders 0..4 in closed form; negative orders via the
    # reflection E[X^-k] = E[X^(k+1)] / mu^(2k+1)
    mu, lam = params.mu, params.lam
    if r < 0:
        k = -r
        return _ig_int_moment(params, k + 1) / mu ** (2 * k + 1)
    if r == 0:
        return 1.0
    if r == 1:
        return mu
    if r == 2:
        return mu ** 2 + mu ** 3 / lam
    if r == 3:
        return mu ** 3 + 3 * mu ** 4 / lam + 3 * mu ** 5 / lam ** 2
    if r == 4:
        return (mu ** 4 + 6 * mu ** 5 / lam + 15 * mu ** 6 / lam ** 2
                + 15 * mu ** 7 / lam ** 3)
    raise DomainError(f"no closed-form IG moment of order {r}")


IG_CLOSED_ORDERS = range(-3, 5)


def raw_moment(params: Params, r: float, method: str = "auto",
               cfg: ToleranceConfig | None = None) -> float:
    """E[X^r] for the given distribution.

    Exp requires r > -1 (gamma-function closed form).  IG supports any real
    r: integer orders in [-3, 4] reduce to closed forms, anything else is
    integrated numerically (``method="quadrature"`` forces integration).
    NB supports non-negative integer r via factorial moments.
    """
    if isinstance(params, ExpParams):
        if not r > -1:
            raise DomainError(f"Exp moment E[X^r] requires r > -1, got r={r}")
        return math.exp(gammaln(r + 1.0) - r * math.log(params.lam))

    if isinstance(params, IGParams):
        is_int = abs(r - round(r)) < 1e-12
        if method not in ("auto", "closed", "quadrature"):
            raise DomainError(f"unknown method {method!r}")
        if method != "quadrature" and is_int and int(round(r)) in IG_CLOSED_ORDERS:
            return _ig_int_moment(params, int(round(r)))
        if method == "closed":
            raise DomainError(f"no closed-form IG moment of order {r}")
        return integrate_halfline(lambda x: x ** r * ig_pdf(params, x), cfg)

    if isinstance(params, NBParams):
        if r < 0 or abs(r - round(r)) > 1e-12:
            raise DomainError(f"NB moments need non-negative integer order, got {r}")
        k = int(round(r))
        ratio = (1.0 - params.pi) / params.pi
        total = 0.0
        for j in range(k + 1):
            rising = 1.0
            for i in range(j):
                rising *= params.nu + i
            total += stirling2(k, j) * rising * ratio ** j
        return total

    raise TypeError(f"unsupported parameter type {type(params)!r}")


def nb_pgf(params: NBParams, z: float) -> float:
    """Probability generating function E[z^X] for (1-pi) z < 1."""
    if not (1.0 - params.pi) * z < 1.0:
        raise DomainError(f"pgf diverges: (1-pi)*z = {(1.0 - params.pi) * z} >= 1")
    return (params.pi / (1.0 - (1.0 - params.pi) * z)) ** params.nu


def nb_factorial_zmoment(params: NBParams, k: int, z: float) -> float:
    """Mixed factorial moment E[X_(k) z^X] of the negative binomial.

    X_(k) is the falling factorial X(X-1)...(X-k+1).  Closed form obtained
    from the k-th derivative of the probability generating function.
    """
    if k < 0 or k != int(k):
        raise DomainError(f"k must be a non-negative integer, got {k}")
    if not z > 0:
        raise DomainError(f"z must be positive, got {z}")
    k = int(k)
    q = 1.0 - params.pi
    if not q * z < 1.0:
        raise DomainError(f"divergent: (1-pi)*z = {q * z} >= 1")
    rising = 1.0  # (nu+k-1)_(k) = nu (nu+1) ... (nu+k-1)
    for i in range(k):
        rising *= params.nu + i
    return (q * z / (1.0 - q * z)) ** k * rising * nb_pgf(params, z)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def substream(seed: int, index: int) -> np.random.Generator:
    """Independent counter-based RNG stream for (seed, index).

    Philox keys the permutation with the pair, so streams for different
    replication indices never overlap regardless of how many draws each
    consumes, and results do not depend on scheduling order.
    """
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, index & 0xFFFFFFFFFFFFFFFF],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return substream(int(seed), 0)


def _exp_draw(rng: np.random.Generator, lam: float, n: int) -> np.ndarray:
    # inverse CDF; 1 - U lies in (0, 1] so the draws are positive
    return -np.log1p(-rng.random(n)) / lam


def _ig_draw(rng: np.random.Generator, mu: float, lam: float, n: int) -> np.ndarray:
    # transformation-with-roots method: one chi-square root is kept with the
    # probability that makes the result exactly IG distributed
    y = rng.standard_normal(n) ** 2
    w = np.maximum(mu * y, 1e-300)
    # algebraically mu + w*mu/(2 lam) - (mu/(2 lam)) sqrt(4 lam w + w^2),
    # rewritten to avoid cancellation for large y
    x1 = mu * (1.0 - 2.0 / (1.0 + np.sqrt(1.0 + 4.0 * lam / w)))
    u = rng.random(n)
    return np.where(u <= mu / (mu + x1), x1, mu * mu / x1)


def _nb_draw(rng: np.random.Generator, nu: float, pi: float, n: int) -> np.ndarray:
    # gamma-Poisson mixture, valid for non-integer nu
    g = rng.gamma(shape=nu, scale=(1.0 - pi) / pi, size=n)
    return rng.poisson(g).astype(float)


def sample(params: Params, n: int, seed) -> Sample:
    """Draw n i.i.d. values; deterministic for a given integer seed."""
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    rng = _as_generator(seed)
    if isinstance(params, ExpParams):
        return Sample(_exp_draw(rng, params.lam, n), kind="exp")
    if isinstance(params, IGParams):
        return Sample(_ig_draw(rng, params.mu, params.lam, n), kind="ig")
    if isinstance(params, NBParams):
        return Sample(_nb_draw(rng, params.nu, params.pi, n), kind="nb")
    raise TypeError(f"unsupported parameter type {type(params)!r}")
