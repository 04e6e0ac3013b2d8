"""Weighted inner products by double-exponential quadrature.

All six intervals are handled by one trapezoid rule in a transformed
variable ``t``:

* finite ``(a, b)``: tanh-sinh, ``s = (a+b)/2 + (b-a)/2 * tanh(pi/2 sinh t)``
* ``(a, inf)``: exp-sinh, ``s = a + L * exp(pi/2 sinh t)``
* ``(-inf, inf)``: sinh-sinh, ``s = c + L * sinh(pi/2 sinh t)``

Endpoint distances are produced alongside the nodes so that weights with
integrable endpoint singularities are evaluated without cancellation.  The
integrand is assembled in log space; polynomials of degree 20 at ``s ~ 1e137``
are routine here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import expit, logsumexp

from .errors import NonConvergence
from .exactpoly import RationalPoly
from .ladder import HalfPowerFn, apply_A, apply_A_plus, assoc_from_phi
from .polygen import PolySystemSlice, probe_poly
from .system import CaseTag, HyperSystem, lambda_l

HALF_PI = math.pi / 2
EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class QuadRule:
    """Refinement schedule and stopping tolerances.

    Level ``k`` uses step ``h0 / 2**k`` on ``[-t_max, t_max]``; the estimate
    is accepted once two consecutive levels differ by at most
    ``max(tol_abs * min(M, 1), tol_rel * M)`` with ``M`` the integral of
    ``|f|``.  The absolute floor shrinks with ``M`` so that integrals far
    below one are still resolved relative to their own size.
    """

    tol_abs: float = 1e-10
    tol_rel: float = 1e-12
    t_max: float = 6.0
    h0: float = 0.125
    max_levels: int = 10

    def __post_init__(self):
        if 2 * self.t_max / self.h0 + 1 < 64:
            raise ValueError("fewer than 64 nodes on the coarsest level")

    def threshold(self, scale: float) -> float:
        return max(self.tol_abs * min(scale, 1.0), self.tol_rel * scale)

    def halved(self) -> "QuadRule":
        return QuadRule(self.tol_abs / 2, self.tol_rel / 2, self.t_max, self.h0, self.max_levels)


DEFAULT_RULE = QuadRule()


def _shift_scale(sys: HyperSystem) -> tuple[float, float]:
    al, be = float(sys.alpha), float(sys.beta)
    if sys.case is CaseTag.CONST:
        return -be / al, 1.0 / math.sqrt(-al)
    if sys.case is CaseTag.LINEAR:
        return 0.0, 1.0 / abs(al)
    return 0.0, 1.0


def de_nodes(sys: HyperSystem, h: float, t_max: float):
    """Nodes ``s``, endpoint distances ``da, db`` and weights ``w`` for step ``h``."""
    n = int(round(t_max / h))
    t = h * np.arange(-n, n + 1)
    u = HALF_PI * np.sinh(t)
    du = HALF_PI * np.cosh(t)
    a, b = sys.interval
    if math.isfinite(a) and math.isfinite(b):
        width = b - a
        da = width * expit(2 * u)
        db = width * expit(-2 * u)
        s = np.where(u < 0, a + da, b - db)
        w = h * width * 2 * expit(2 * u) * expit(-2 * u) * du
        return s, da, db, w
    c, L = _shift_scale(sys)
    if math.isfinite(a):
        with np.errstate(over="ignore"):
            da = L * np.exp(u)
        s = a + da
        w = h * da * du
        return s, da, np.full_like(s, np.inf), w
    with np.errstate(over="ignore"):
        s = c + L * np.sinh(u)
        w = h * L * np.cosh(u) * du
    return s, np.full_like(s, np.inf), np.full_like(s, np.inf), w


def log_abs_poly(p: RationalPoly, s: np.ndarray):
    """``(log|p(s)|, sign p(s))`` without overflow for large ``|s|``."""
    s = np.asarray(s, dtype=float)
    c = p.float_coeffs()
    if not c:
        return np.full_like(s, -np.inf), np.zeros_like(s)
    d = len(c) - 1
    big = np.abs(s) > 1.0
    out_log = np.empty_like(s)
    out_sign = np.empty_like(s)
    small_s = s[~big]
    acc = np.zeros_like(small_s)
    for ck in reversed(c):
        acc = acc * small_s + ck
    with np.errstate(divide="ignore"):
        out_log[~big] = np.log(np.abs(acc))
    out_sign[~big] = np.sign(acc)
    big_s = s[big]
    inv = 1.0 / big_s
    acc = np.zeros_like(big_s)
    for ck in c:
        acc = acc * inv + ck
    with np.errstate(divide="ignore"):
        out_log[big] = d * np.log(np.abs(big_s)) + np.log(np.abs(acc))
    out_sign[big] = np.sign(acc) * np.sign(big_s) ** d
    return out_log, out_sign


def _center(sys: HyperSystem) -> Fraction:
    """Exact centre used to evaluate polynomials in ``t = s - c``."""
    if sys.case is CaseTag.CONST:
        return -sys.beta / sys.alpha
    return Fraction(0)


def _integrand(sys: HyperSystem, m: int, polys, s, da, db, with_bound: bool = False):
    """``log|f|`` and ``sign f`` for ``f = sigma^m rho prod(polys)``.

    Polynomials are expanded about the weight's centre, which keeps their
    evaluation well conditioned when the centre is far from the origin.
    With ``with_bound`` the log of ``sigma^m rho prod(sum |q_k| |t|^k)`` is
    returned as well; it bounds the size of the rounding error.
    """
    c = _center(sys)
    t = s - float(c) if c else s
    log_f = sys.log_weight(m, s, da, db)
    log_b = log_f.copy() if with_bound else None
    sign = np.ones_like(s)
    for p in polys:
        q = p.shifted(c) if c else p
        lp, sp = log_abs_poly(q, t)
        log_f = log_f + lp
        sign = sign * sp
        if with_bound:
            lb, _ = log_abs_poly(RationalPoly(abs(a) for a in q.coeffs), np.abs(t))
            log_b = log_b + lb
    if with_bound:
        return log_f, sign, log_b
    return log_f, sign


def integrate_weighted(sys: HyperSystem, m: int, polys, rule: QuadRule = DEFAULT_RULE) -> float:
    """``integral over (a, b) of sigma^m * rho * prod(polys)``.

    Besides the rule's own tolerance, refinement stops once successive
    estimates agree to within the rounding noise of the polynomial values,
    ``16 * eps * (total degree + 1)`` times the integral of the coefficient
    bound.
    """
    prev = None
    diff = math.inf
    deg = sum(max(p.degree, 0) for p in polys) + 1
    for level in range(rule.max_levels):
        h = rule.h0 / 2 ** level
        s, da, db, w = de_nodes(sys, h, rule.t_max)
        keep = w > 0
        s, da, db, w = s[keep], da[keep], db[keep], w[keep]
        log_f, sign, log_b = _integrand(sys, m, polys, s, da, db, with_bound=True)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            terms = sign * np.exp(log_f + np.log(w))
            bound = np.exp(log_b + np.log(w))
        if not np.all(np.isfinite(terms)):
            raise NonConvergence(f"non-finite integrand for {sys.describe()}, m={m}")
        total = float(np.sum(terms))
        scale = float(np.sum(np.abs(terms)))
        tol = max(rule.threshold(scale), 16 * EPS * deg * float(np.sum(bound)))
        if prev is not None:
            diff = abs(total - prev)
            if diff <= tol:
                return total
        prev = total
    if diff > 10 * tol:
        raise NonConvergence(f"refinements differ by {diff:.3e} (tolerance {tol:.3e})")
    return prev


def inner_product(sys: HyperSystem, f: HalfPowerFn, g: HalfPowerFn,
                  rule: QuadRule = DEFAULT_RULE) -> float:
    """``<f, g> = integral of f g rho ds`` for functions with equal half-power index."""
    if f.m != g.m:
        raise ValueError(f"inner product needs equal half-power index, got {f.m} and {g.m}")
    return integrate_weighted(sys, f.m, (f.p, g.p), rule)


def norm_sq(sys: HyperSystem, f: HalfPowerFn, rule: QuadRule = DEFAULT_RULE) -> float:
    return inner_product(sys, f, f, rule)


@dataclass
class Gram:
    """Gram matrix of ``{Phi_{l,m}}`` for ``l = m .. l_max``.

    ``claimed[i, j]`` marks entries covered by the orthogonality statement;
    for the finite families off-diagonal pairs need ``l + k < -alpha``.
    """

    m: int
    indices: list
    values: np.ndarray
    claimed: np.ndarray

    def relative_offdiag(self) -> np.ndarray:
        d = np.sqrt(np.abs(np.diag(self.values)))
        rel = np.abs(self.values) / np.outer(d, d)
        np.fill_diagonal(rel, 0.0)
        return rel

    def max_claimed_offdiag(self) -> float:
        rel = self.relative_offdiag()
        mask = self.claimed.copy()
        np.fill_diagonal(mask, False)
        return float(rel[mask].max()) if mask.any() else 0.0

    def skipped_pairs(self) -> list[tuple[int, int]]:
        out = []
        for i, l in enumerate(self.indices):
            for j, k in enumerate(self.indices):
                if i < j and not self.claimed[i, j]:
                    out.append((l, k))
        return out


def orthogonality_matrix(sys: HyperSystem, m: int, l_max: int,
                         rule: QuadRule = DEFAULT_RULE) -> Gram:
    sl = PolySystemSlice.build(sys, l_max)
    idx = list(range(m, l_max + 1))
    fns = [assoc_from_phi(sl, l, m) for l in idx]
    n = len(idx)
    vals = np.zeros((n, n))
    claimed = np.ones((n, n), dtype=bool)
    for i in range(n):
        for j in range(i, n):
            vals[i, j] = vals[j, i] = inner_product(sys, fns[i], fns[j], rule)
            if i != j and sys.is_finite:
                claimed[i, j] = claimed[j, i] = idx[i] + idx[j] < -sys.alpha
    return Gram(m, idx, vals, claimed)


def norm_ladder_check(sys: HyperSystem, l: int, rule: QuadRule = DEFAULT_RULE) -> list[float]:
    """``||Phi_{l,m+1}||^2 / ||Phi_{l,m}||^2 - (lambda_l - lambda_m)`` for ``m < l``."""
    sl = PolySystemSlice.build(sys, l)
    norms = [norm_sq(sys, assoc_from_phi(sl, l, m), rule) for m in range(l + 1)]
    lam = lambda_l(sys, l)
    return [norms[m + 1] / norms[m] - float(lam - lambda_l(sys, m)) for m in range(l)]


def adjointness_gap(sys: HyperSystem, l: int, k: int, m: int,
                    rule: QuadRule = DEFAULT_RULE) -> tuple[float, float]:
    """``(<A_m Phi_{l,m}, Phi_{k,m+1}>, <Phi_{l,m}, A_m^+ Phi_{k,m+1}>)``."""
    sl = PolySystemSlice(sys)
    f = assoc_from_phi(sl, l, m)
    g = assoc_from_phi(sl, k, m + 1)
    return inner_product(sys, apply_A(sys, f), g, rule), inner_product(sys, f, apply_A_plus(sys, g), rule)


def _shell_log_masses(sys: HyperSystem, m: int, p: RationalPoly, endpoint: str,
                      n_shells: int = 60, n_gauss: int = 32) -> np.ndarray:
    """Log of the mass of ``sigma^m p^2 rho`` in geometric shells toward one end."""
    x, wg = leggauss(n_gauss)
    a, b = sys.interval
    c, _ = _shift_scale(sys)
    k = np.arange(n_shells)[:, None]
    if endpoint == "b" and math.isinf(b) or endpoint == "a" and math.isinf(a):
        r0 = 1.0 + abs(c) + (a if math.isfinite(a) else 0.0)
        lo = math.log(r0) + k * math.log(2)
        u = lo + math.log(2) / 2 * (1 + x)
        mag = np.exp(u)
        s = mag if endpoint == "b" else -mag
        da = s - a if math.isfinite(a) else np.full_like(s, np.inf)
        db = np.full_like(s, np.inf)
    else:
        width = b - a
        d0 = min(1.0, width / 4)
        lo = math.log(d0) - (k + 1) * math.log(2)
        u = lo + math.log(2) / 2 * (1 + x)
        d = np.exp(u)
        other = (b - a) - d if math.isfinite(b - a) else np.full_like(d, np.inf)
        if endpoint == "a":
            s, da, db = a + d, d, other
        else:
            s, da, db = b - d, other, d
    # ds = exp(u) du in the log variable
    log_f, _ = _integrand(sys, m, (p, p), s.ravel(), da.ravel(), db.ravel())
    log_f = log_f.reshape(s.shape) + u + np.log(wg * math.log(2) / 2)
    return logsumexp(log_f, axis=1)


def square_integrability_check(sys: HyperSystem, l: int, m: int,
                               rule: QuadRule = DEFAULT_RULE, tail: int = 8) -> bool:
    """Whether ``integral of |Phi_{l,m}|^2 rho`` converges.

    The mass in successive geometric shells toward each endpoint must shrink
    strictly over the last ``tail`` shells.  Beyond the cutoff ``Phi_l`` is
    replaced by ``s^l`` (see :func:`probe_poly`), so the check also detects
    divergence.
    """
    if not 0 <= m <= l:
        raise ValueError(f"need 0 <= m <= l, got l={l}, m={m}")
    p = probe_poly(sys, l).derivative(m)
    for end in ("a", "b"):
        logs = _shell_log_masses(sys, m, p, end)
        last = logs[-tail - 1:]
        if np.isneginf(last[-1]):
            continue
        if not np.all(np.isfinite(last)):
            return False
        if not np.all(np.diff(last) < -1e-6):
            return False
    return True
