"""Weight-function families for the Stein moment identities.

Each family exposes pointwise evaluation, the exact continuous derivative,
and the discrete forward difference f(x+1) - f(x).  The built-in families
are closed (their moments admit closed forms or cheap numerics); arbitrary
callables enter through :func:`custom`, which skips admissibility checking.

Text encodings accepted by :func:`parse_weight`::

    identity   pow:a=0.9     log1p        geom1m:u=0.9
    const      recip         geom:alpha=0.53          shiftpow:a=-0.5
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

__all__ = [
    "WeightFunction", "Admissibility",
    "identity", "power", "one_plus_log", "geom_one_minus", "constant",
    "reciprocal", "geom_nb", "shifted_power", "custom",
    "parse_weight", "check_admissible",
]

FAMILIES = ("identity", "pow", "log1p", "geom1m", "const", "recip",
            "geom", "shiftpow", "custom")


def _is_int(a: float) -> bool:
    return abs(a - round(a)) < 1e-12


@dataclass(frozen=True)
class WeightFunction:
    """One member of a weight family, immutable and hashable."""

    family: str
    param: Optional[float] = None
    fn: Optional[Callable] = field(default=None, repr=False)
    fn_deriv: Optional[Callable] = field(default=None, repr=False)
    fn_diff: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown weight family {self.family!r}")
        if self.family in ("pow", "shiftpow"):
            if self.param is None:
                raise DomainError(f"{self.family} needs an exponent")
        elif self.family == "geom1m":
            if self.param is None or not 0.0 < self.param < 1.0:
                raise DomainError(f"geom1m needs u in (0, 1), got {self.param}")
        elif self.family == "geom":
            if self.param is None or not 0.0 < self.param < 1.0:
                raise DomainError(f"geom needs alpha in (0, 1), got {self.param}")
        elif self.family == "custom":
            if self.fn is None:
                raise DomainError("custom weight needs a callable")

    # -- evaluation ---------------------------------------------------------

    def eval(self, x):
        """f(x); accepts scalars or arrays."""
        x = np.asarray(x, dtype=float)
        fam, a = self.family, self.param
        if fam == "identity":
            out = x + 0.0
        elif fam == "pow":
            if a < 0 and np.any(x <= 0):
                raise DomainError(f"x^{a} requires x > 0")
            if not _is_int(a) and np.any(x < 0):
                raise DomainError(f"x^{a} undefined for negative x")
            out = x ** a
        elif fam == "log1p":
            if np.any(x <= -1):
                raise DomainError("ln(1+x) requires x > -1")
            out = np.log1p(x)
        elif fam == "geom1m":
            out = 1.0 - a ** x
        elif fam == "const":
            out = np.ones_like(x)
        elif fam == "recip":
            if np.any(x == 0):
                raise DomainError("1/x undefined at x = 0")
            out = 1.0 / x
        elif fam == "geom":
            out = a ** x
        elif fam == "shiftpow":
            if np.any(x <= -1):
                raise DomainError(f"(x+1)^{a} requires x > -1")
            out = (x + 1.0) ** a
        else:
            out = np.asarray(self.fn(x), dtype=float)
        return out if out.ndim else float(out)

    __call__ = eval

    def deriv(self, x):
        """Exact derivative f'(x) at interior points of the domain."""
        x = np.asarray(x, dtype=float)
        fam, a = self.family, self.param
        if fam == "identity":
            out = np.ones_like(x)
        elif fam == "pow":
            if np.any(x < 0) or (a < 1 and np.any(x == 0)):
                raise DomainError(f"d/dx x^{a} not defined there")
            out = a * x ** (a - 1.0)
        elif fam == "log1p":
            if np.any(x <= -1):
                raise DomainError("d/dx ln(1+x) requires x > -1")
            out = 1.0 / (1.0 + x)
        elif fam == "geom1m":
            out = -math.log(a) * a ** x
        elif fam == "const":
            out = np.zeros_like(x)
        elif fam == "recip":
            if np.any(x == 0):
                raise DomainError("d/dx 1/x undefined at x = 0")
            out = -1.0 / (x * x)
        elif fam == "geom":
            out = math.log(a) * a ** x
        elif fam == "shiftpow":
            if np.any(x <= -1) or (a < 1 and np.any(x == -1)):
                raise DomainError(f"d/dx (x+1)^{a} not defined there")
            out = a * (x + 1.0) ** (a - 1.0)
        else:
            if self.fn_deriv is None:
                raise DomainError("custom weight has no derivative callable")
            out = np.asarray(self.fn_deriv(x), dtype=float)
        return out if out.ndim else float(out)

    def diff(self, x):
        """Forward difference f(x+1) - f(x) for non-negative integer x."""
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise DomainError("diff is defined for x >= 0")
        fam, a = self.family, self.param
        if fam == "identity":
            out = np.ones_like(x)
        elif fam == "const":
            out = np.zeros_like(x)
        elif fam == "geom":
            out = (a - 1.0) * a ** x
        elif fam == "custom" and self.fn_diff is not None:
            out = np.asarray(self.fn_diff(x), dtype=float)
        else:
            out = np.asarray(self.eval(x + 1.0) - self.eval(x), dtype=float)
        return out if out.ndim else float(out)

    # -- text encoding ------------------------------------------------------

    @property
    def spec(self) -> str:
        """CLI text encoding of this weight."""
        if self.family == "pow":
            return f"pow:a={self.param:g}"
        if self.family == "geom1m":
            return f"geom1m:u={self.param:g}"
        if self.family == "geom":
            return f"geom:alpha={self.param:g}"
        if self.family == "shiftpow":
            return f"shiftpow:a={self.param:g}"
        return self.family


# -- factories --------------------------------------------------------------

def identity() -> WeightFunction:
    """f(x) = x (the default method-of-moments weight)."""
    return WeightFunction("identity")


def power(a: float) -> WeightFunction:
    """f(x) = x^a."""
    return WeightFunction("pow", float(a))


def one_plus_log() -> WeightFunction:
    """f(x) = ln(1 + x)."""
    return WeightFunction("log1p")


def geom_one_minus(u: float) -> WeightFunction:
    """f(x) = 1 - u^x with u in (0, 1)."""
    return WeightFunction("geom1m", float(u))


def constant() -> WeightFunction:
    """f(x) = 1."""
    return WeightFunction("const")


def reciprocal() -> WeightFunction:
    """f(x) = 1/x."""
    return WeightFunction("recip")


def geom_nb(alpha: float) -> WeightFunction:
    """f(x) = alpha^x with alpha in (0, 1)."""
    return WeightFunction("geom", float(alpha))


def shifted_power(a: float) -> WeightFunction:
    """f(x) = (x+1)^a, defined at x = 0 for any a."""
    return WeightFunction("shiftpow", float(a))


def custom(fn: Callable, deriv: Callable | None = None,
           diff: Callable | None = None) -> WeightFunction:
    """Escape hatch for a user-supplied weight; admissibility is not checked."""
    return WeightFunction("custom", None, fn, deriv, diff)


def parse_weight(text: str) -> WeightFunction:
    """Parse the CLI text encoding (see module docstring)."""
    text = text.strip()
    name, _, rest = text.partition(":")
    plain = {"identity": identity, "log1p": one_plus_log,
             "const": constant, "recip": reciprocal}
    if name in plain:
        if rest:
            raise DomainError(f"weight {name!r} takes no parameter")
        return plain[name]()
    parametric = {"pow": ("a", power), "geom1m": ("u", geom_one_minus),
                  "geom": ("alpha", geom_nb), "shiftpow": ("a", shifted_power)}
    if name not in parametric:
        raise DomainError(f"unknown weight spec {text!r}")
    key, factory = parametric[name]
    pname, _, pval = rest.partition("=")
    if pname != key or not pval:
        raise DomainError(f"expected {name}:{key}=VALUE, got {text!r}")
    try:
        val = float(pval)
    except ValueError as exc:
        raise DomainError(f"bad numeric value in {text!r}") from exc
    return factory(val)


# -- admissibility ------------------------------------------------------------

@dataclass(frozen=True)
class Admissibility:
    distribution: str
    ok: bool
    reason: str = ""


def check_admissible(w: WeightFunction, dist: str) -> Admissibility:
    """Check the Stein-identity side conditions of weight ``w`` for ``dist``.

    dist is "exp", "ig", or "nb".  Exp requires f(0) = 0 together with
    integrability of f and f'; IG requires f phi to vanish at both ends of
    the support (any polynomially bounded differentiable f qualifies), with
    x^(-1/2) excluded because its estimator denominator vanishes
    identically; NB requires f to be defined on the non-negative integers
    with a non-degenerate difference.
    """
    fam, a = w.family, w.param
    if dist not in ("exp", "ig", "nb"):
        raise DomainError(f"unknown distribution tag {dist!r}")
    if fam == "custom":
        return Admissibility(dist, True, "custom weight: admissibility not checked")

    if dist == "exp":
        if fam in ("identity", "log1p", "geom1m"):
            return Admissibility(dist, True)
        if fam == "pow":
            if a > 0:
                return Admissibility(dist, True)
            return Admissibility(dist, False, f"x^{a} violates f(0) = 0 (needs a > 0)")
        if fam == "const":
            return Admissibility(dist, False, "f(0) = 1 violates the f(0) = 0 condition")
        if fam == "recip":
            return Admissibility(dist, False, "1/x is not integrable at 0 under Exp")
        return Admissibility(dist, False, f"{fam} violates f(0) = 0")

    if dist == "ig":
        if fam == "pow" and abs(a + 0.5) < 1e-12:
            return Admissibility(dist, False,
                                 "x^(-1/2) makes the estimator denominator vanish "
                                 "identically (degenerate)")
        return Admissibility(dist, True)

    # nb
    if fam in ("identity", "log1p", "geom1m", "geom", "shiftpow"):
        if fam == "shiftpow" and a == 0:
            return Admissibility(dist, False, "(x+1)^0 is constant: difference vanishes")
        return Admissibility(dist, True)
    if fam == "pow":
        if a > 0:
            return Admissibility(dist, True)
        return Admissibility(dist, False, f"x^{a} undefined at x = 0 (NB mass at 0)")
    if fam == "const":
        return Admissibility(dist, False, "constant weight: difference vanishes")
    if fam == "recip":
        return Admissibility(dist, False, "1/x undefined at x = 0 (NB mass at 0)")
    return Admissibility(dist, False, f"{fam} not usable for nb")
