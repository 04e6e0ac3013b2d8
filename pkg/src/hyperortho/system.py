"""The six canonical hypergeometric-type systems.

Every system has ``sigma(s)`` from a fixed list, ``tau(s) = alpha*s + beta``
with exact rational ``alpha, beta``, an interval ``(a, b)``, a weight ``rho``
satisfying ``(sigma*rho)' = tau*rho`` and a cutoff ``nu``: polynomial
solutions with index ``l < nu`` are orthogonal and square integrable.

Weights are evaluated in log space.  The internal ``log_*`` helpers take the
point ``s`` together with its distances to the endpoints, ``da = s - a`` and
``db = b - s``; passing distances computed without cancellation keeps the
Jacobi-type endpoint singularities accurate inside quadrature rules.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import Inadmissible, OutOfDomain
from .exactpoly import RationalPoly, as_rational, format_rational

INF = math.inf


class CaseTag(enum.Enum):
    CONST = "const"
    LINEAR = "linear"
    ONE_MINUS_S2 = "one_minus_s2"
    S2_MINUS_ONE = "s2_minus_one"
    S2 = "s2"
    S2_PLUS_ONE = "s2_plus_one"

    @classmethod
    def parse(cls, text: "str | CaseTag") -> "CaseTag":
        if isinstance(text, CaseTag):
            return text
        key = text.strip().lower()
        if key in _ALIASES:
            return _ALIASES[key]
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown case {text!r}; expected one of {names}") from None


_ALIASES = {
    "1": CaseTag.CONST,
    "s": CaseTag.LINEAR,
    "1-s^2": CaseTag.ONE_MINUS_S2,
    "s^2-1": CaseTag.S2_MINUS_ONE,
    "s^2": CaseTag.S2,
    "s^2+1": CaseTag.S2_PLUS_ONE,
}

# (sigma_0, sigma_1, sigma_2)
_SIGMA = {
    CaseTag.CONST: (1, 0, 0),
    CaseTag.LINEAR: (0, 1, 0),
    CaseTag.ONE_MINUS_S2: (1, 0, -1),
    CaseTag.S2_MINUS_ONE: (-1, 0, 1),
    CaseTag.S2: (0, 0, 1),
    CaseTag.S2_PLUS_ONE: (1, 0, 1),
}

_INTERVAL = {
    CaseTag.CONST: (-INF, INF),
    CaseTag.LINEAR: (0.0, INF),
    CaseTag.ONE_MINUS_S2: (-1.0, 1.0),
    CaseTag.S2_MINUS_ONE: (1.0, INF),
    CaseTag.S2: (0.0, INF),
    CaseTag.S2_PLUS_ONE: (-INF, INF),
}

SIGMA_TEXT = {
    CaseTag.CONST: "1",
    CaseTag.LINEAR: "s",
    CaseTag.ONE_MINUS_S2: "1-s^2",
    CaseTag.S2_MINUS_ONE: "s^2-1",
    CaseTag.S2: "s^2",
    CaseTag.S2_PLUS_ONE: "s^2+1",
}

RHO_TEXT = {
    CaseTag.CONST: "exp(alpha*s^2/2 + beta*s)",
    CaseTag.LINEAR: "s^(beta-1) * exp(alpha*s)",
    CaseTag.ONE_MINUS_S2: "(1+s)^(-(alpha-beta)/2-1) * (1-s)^(-(alpha+beta)/2-1)",
    CaseTag.S2_MINUS_ONE: "(s+1)^((alpha-beta)/2-1) * (s-1)^((alpha+beta)/2-1)",
    CaseTag.S2: "s^(alpha-2) * exp(-beta/s)",
    CaseTag.S2_PLUS_ONE: "(1+s^2)^(alpha/2-1) * exp(beta*arctan(s))",
}

FINITE_FAMILIES = (CaseTag.S2_MINUS_ONE, CaseTag.S2, CaseTag.S2_PLUS_ONE)


def _log1p_sq(s):
    s = np.abs(s)
    with np.errstate(over="ignore", divide="ignore"):
        return np.where(s < 1e150, np.log1p(s * s), 2.0 * np.log(s))


def _check_admissible(case: CaseTag, alpha: Fraction, beta: Fraction) -> None:
    name = case.value
    if case is CaseTag.ONE_MINUS_S2:
        if not alpha < beta < -alpha:
            raise Inadmissible(f"case {name!r} requires alpha<beta<-alpha")
        return
    if case is CaseTag.S2_MINUS_ONE:
        if not -beta < alpha < 0:
            raise Inadmissible(f"case {name!r} requires -beta<alpha<0")
        return
    if not alpha < 0:
        raise Inadmissible(f"case {name!r} requires alpha<0")
    if case in (CaseTag.LINEAR, CaseTag.S2) and not beta > 0:
        raise Inadmissible(f"case {name!r} requires beta>0")


@dataclass(frozen=True)
class HyperSystem:
    """One row of the classification with concrete parameters.

    Build with :func:`make_system`; constructing directly skips validation.
    """

    case: CaseTag
    alpha: Fraction
    beta: Fraction

    @property
    def sigma_coeffs(self) -> tuple[int, int, int]:
        return _SIGMA[self.case]

    @property
    def sigma(self) -> RationalPoly:
        return RationalPoly(self.sigma_coeffs)

    @property
    def tau(self) -> RationalPoly:
        return RationalPoly([self.beta, self.alpha])

    @property
    def interval(self) -> tuple[float, float]:
        return _INTERVAL[self.case]

    @property
    def nu(self):
        return nu_cutoff(self)

    @property
    def is_finite(self) -> bool:
        return self.case in FINITE_FAMILIES

    def lam(self, l: int) -> Fraction:
        return lambda_l(self, l)

    def max_index(self, cap: Optional[int] = None) -> int:
        """Largest ``l < nu``, optionally capped at ``cap``."""
        nu = nu_cutoff(self)
        top = math.ceil(nu) - 1 if nu != INF else None
        if top is None:
            if cap is None:
                raise ValueError("infinite system needs a cap")
            return cap
        return top if cap is None else min(top, cap)

    def describe(self) -> str:
        return (f"{self.case.value}(alpha={format_rational(self.alpha)}, "
                f"beta={format_rational(self.beta)})")

    def to_descriptor(self) -> dict:
        return {"case": self.case.value,
                "alpha": format_rational(self.alpha),
                "beta": format_rational(self.beta)}

    # log-space pieces ------------------------------------------------
    def distances(self, s):
        s = np.asarray(s, dtype=float)
        a, b = self.interval
        return s - a, b - s

    def log_sigma(self, s, da=None, db=None):
        s = np.asarray(s, dtype=float)
        if da is None or db is None:
            da, db = self.distances(s)
        c = self.case
        if c is CaseTag.CONST:
            return np.zeros_like(s)
        if c is CaseTag.LINEAR:
            return np.log(da)
        if c is CaseTag.ONE_MINUS_S2:
            return np.log(da) + np.log(db)
        if c is CaseTag.S2_MINUS_ONE:
            return np.log(da) + np.log(da + 2.0)
        if c is CaseTag.S2:
            return 2.0 * np.log(np.abs(s))
        return _log1p_sq(s)

    def log_rho(self, s, da=None, db=None):
        s = np.asarray(s, dtype=float)
        if da is None or db is None:
            da, db = self.distances(s)
        al, be = float(self.alpha), float(self.beta)
        c = self.case
        if c is CaseTag.CONST:
            return al * s * s / 2.0 + be * s
        if c is CaseTag.LINEAR:
            return (be - 1.0) * np.log(da) + al * s
        if c is CaseTag.ONE_MINUS_S2:
            p = float(-(self.alpha - self.beta) / 2 - 1)
            q = float(-(self.alpha + self.beta) / 2 - 1)
            return p * np.log(da) + q * np.log(db)
        if c is CaseTag.S2_MINUS_ONE:
            p = float((self.alpha - self.beta) / 2 - 1)
            q = float((self.alpha + self.beta) / 2 - 1)
            return p * np.log(da + 2.0) + q * np.log(da)
        if c is CaseTag.S2:
            return (al - 2.0) * np.log(s) - be / s
        return (al / 2.0 - 1.0) * _log1p_sq(s) + be * np.arctan(s)

    def log_weight(self, m: int, s, da=None, db=None):
        """``log(sigma^m * rho)``."""
        out = self.log_rho(s, da, db)
        if m:
            out = out + m * self.log_sigma(s, da, db)
        return out

    def contains(self, s0: float) -> bool:
        a, b = self.interval
        return a < s0 < b


def make_system(case, alpha, beta, *, strict: bool = True) -> HyperSystem:
    """Validate parameters and build a :class:`HyperSystem`.

    ``alpha`` and ``beta`` must be exact (int, Fraction or ``"p/q"``);
    floats raise TypeError.  With ``strict=False`` the admissibility check is
    skipped, which is only meaningful for formal evaluation of closed-form
    expressions.
    """
    tag = CaseTag.parse(case)
    al, be = as_rational(alpha), as_rational(beta)
    if strict:
        _check_admissible(tag, al, be)
    return HyperSystem(tag, al, be)


def is_admissible(case, alpha, beta) -> bool:
    try:
        make_system(case, alpha, beta)
    except Inadmissible:
        return False
    return True


def lambda_l(sys: HyperSystem, l: int) -> Fraction:
    """Eigenvalue ``-sigma''/2 * l(l-1) - tau' * l`` of the degree-``l`` solution."""
    if l < 0:
        raise ValueError("l must be non-negative")
    sigma2 = sys.sigma_coeffs[2]
    return Fraction(-sigma2 * l * (l - 1)) - sys.alpha * l


def nu_cutoff(sys: HyperSystem):
    """``inf`` for the infinite families, ``(1 - alpha)/2`` otherwise."""
    if sys.case in FINITE_FAMILIES:
        return (1 - sys.alpha) / 2
    return INF


def weight_eval(sys: HyperSystem, m: int, s0: float) -> float:
    """``rho_m(s0) = sigma(s0)^m * rho(s0)``."""
    if not sys.contains(s0):
        raise OutOfDomain(f"s={s0} outside {sys.interval}")
    return float(np.exp(sys.log_weight(m, float(s0))))


def lambda_strictly_increasing_check(sys: HyperSystem, upto: Optional[int] = None) -> bool:
    """True iff ``lambda_0 < lambda_1 < ...`` over the checked index range.

    The default range is every ``l < nu`` (finite families) or the first 50
    indices.  ``upto`` overrides the last index, which may exceed the cutoff.
    """
    if upto is None:
        upto = sys.max_index() if sys.is_finite else 49
    lams = [lambda_l(sys, l) for l in range(upto + 1)]
    return all(x < y for x, y in zip(lams, lams[1:]))


def sample_points(sys: HyperSystem, n: int = 32, window: float = 10.0) -> np.ndarray:
    """Chebyshev-spaced interior points of (a, b).

    Infinite ends are mapped onto a compact window of half-width ``window``.
    """
    k = np.arange(n)
    t = np.cos((2 * k + 1) * np.pi / (2 * n))[::-1]
    a, b = sys.interval
    if math.isfinite(a) and math.isfinite(b):
        return (a + b) / 2 + (b - a) / 2 * t
    if math.isfinite(a):
        return a + window * (1 + t) / 2
    return window * t
