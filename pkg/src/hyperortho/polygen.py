"""Exact generation of the polynomials Phi_l and their elementary structure.

Two independent generators are provided: a backward recursion on the
coefficients of ``sigma*y'' + tau*y' + lambda_l*y = 0`` and the Rodrigues
formula ``(1/rho) d^l/ds^l [sigma^l rho]`` carried out symbolically.  Both
return monic polynomials and must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import IndexBeyondCutoff, NumericalFailure
from .exactpoly import ONE, RationalPoly
from .system import HyperSystem, lambda_l, nu_cutoff


def _require_below_cutoff(sys: HyperSystem, l: int) -> None:
    if l < 0:
        raise IndexBeyondCutoff(f"negative index l={l}")
    if not l < nu_cutoff(sys):
        raise IndexBeyondCutoff(f"l={l} is not below nu={nu_cutoff(sys)} for {sys.describe()}")


def generate_phi(sys: HyperSystem, l: int) -> RationalPoly:
    """Monic degree-``l`` polynomial solution by backward coefficient recursion."""
    _require_below_cutoff(sys, l)
    s0, s1, _ = sys.sigma_coeffs
    t0 = sys.beta
    lam = lambda_l(sys, l)
    c = [Fraction(0)] * (l + 3)
    c[l] = Fraction(1)
    for k in range(l - 1, -1, -1):
        num = (k + 1) * (k * s1 + t0) * c[k + 1] + (k + 2) * (k + 1) * s0 * c[k + 2]
        c[k] = -num / (lam - lambda_l(sys, k))
    return RationalPoly(c[: l + 1])


def rodrigues_raw(sys: HyperSystem, l: int) -> RationalPoly:
    """``[sigma^l rho]^(l) / rho`` as an exact polynomial, unnormalized.

    Works for any ``l``; the result may have degree below ``l`` past the cutoff.
    """
    sigma, tau = sys.sigma, sys.tau
    dsigma = sigma.derivative()
    q = ONE
    # invariant: current function is sigma^k * rho * q
    for k in range(l, 0, -1):
        q = (tau + dsigma * (k - 1)) * q + sigma * q.derivative()
    return q


def generate_phi_rodrigues(sys: HyperSystem, l: int) -> RationalPoly:
    _require_below_cutoff(sys, l)
    return rodrigues_raw(sys, l).monic()


def ode_residual(sys: HyperSystem, l: int, p: RationalPoly) -> RationalPoly:
    """``sigma p'' + tau p' + lambda_l p``; zero iff ``p`` solves the equation."""
    return sys.sigma * p.derivative(2) + sys.tau * p.derivative() + p * lambda_l(sys, l)


def probe_poly(sys: HyperSystem, l: int) -> RationalPoly:
    """``Phi_l`` below the cutoff, and the bare power ``s^l`` at or above it.

    Past the cutoff a degree-``l`` polynomial solution need not exist, so the
    power stands in for a generic degree-``l`` polynomial when probing
    integrability.
    """
    if l < nu_cutoff(sys):
        return generate_phi(sys, l)
    return RationalPoly.monomial(l)


@dataclass(frozen=True)
class RecurrenceCoeffs:
    l: int
    alpha_l: Fraction
    beta_l: Fraction
    gamma_l: Optional[Fraction]


@dataclass
class PolySystemSlice:
    """Cache of ``Phi_0 .. Phi_L`` for one system."""

    sys: HyperSystem
    polys: list = field(default_factory=list)

    @classmethod
    def build(cls, sys: HyperSystem, l_max: int) -> "PolySystemSlice":
        _require_below_cutoff(sys, l_max)
        return cls(sys, [generate_phi(sys, l) for l in range(l_max + 1)])

    def __getitem__(self, l: int) -> RationalPoly:
        _require_below_cutoff(self.sys, l)
        while len(self.polys) <= l:
            self.polys.append(generate_phi(self.sys, len(self.polys)))
        return self.polys[l]

    @property
    def l_max(self) -> int:
        return len(self.polys) - 1


def recurrence_coeffs(slice_: PolySystemSlice, l: int) -> RecurrenceCoeffs:
    """Solve ``s Phi_l = a Phi_{l+1} + b Phi_l + g Phi_{l-1}`` exactly.

    The triangular solve runs from the top coefficient down; a nonzero
    leftover after removing all three terms would mean no such relation.
    """
    if l < 0 or not l + 1 < nu_cutoff(slice_.sys):
        raise IndexBeyondCutoff(f"recurrence at l={l} needs Phi_{l + 1} below nu")
    p_next, p = slice_[l + 1], slice_[l]
    rest = RationalPoly.s() * p
    a = rest[l + 1] / p_next.leading
    rest = rest - p_next * a
    b = rest[l] / p.leading
    rest = rest - p * b
    g = None
    if l >= 1:
        p_prev = slice_[l - 1]
        g = rest[l - 1] / p_prev.leading
        rest = rest - p_prev * g
    if not rest.is_zero():
        raise NumericalFailure(f"no three-term relation at l={l}: leftover {rest}")
    return RecurrenceCoeffs(l, a, b, g)


def recurrence_residual(slice_: PolySystemSlice, rc: RecurrenceCoeffs) -> RationalPoly:
    l = rc.l
    out = RationalPoly.s() * slice_[l] - slice_[l + 1] * rc.alpha_l - slice_[l] * rc.beta_l
    if rc.gamma_l is not None:
        out = out - slice_[l - 1] * rc.gamma_l
    return out


def _companion_roots(p: RationalPoly) -> np.ndarray:
    c = np.array(p.monic().float_coeffs())
    n = len(c) - 1
    comp = np.zeros((n, n))
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -c[:-1]
    # LAPACK geev balances the matrix before the QR iteration
    return np.linalg.eigvals(comp)


def _newton_step(p: RationalPoly, dp: RationalPoly, x: float) -> float:
    fx = Fraction(x)
    d = dp.eval_exact(fx)
    if d == 0:
        return x
    return x - float(p.eval_exact(fx) / d)


def zero_residual_scale(p: RationalPoly, z: float) -> float:
    """``max(||coeffs||, sum |c_k| |z|^k)``, the size of the Horner terms at ``z``."""
    c = np.abs(np.array(p.float_coeffs()))
    return float(max(np.linalg.norm(c), np.sum(c * abs(z) ** np.arange(len(c)))))


def phi_zeros(slice_: PolySystemSlice, l: int, newton_steps: int = 8) -> list[float]:
    """Real zeros of ``Phi_l`` in ascending order.

    Companion-matrix eigenvalues are polished by Newton steps with exact
    evaluation.  Raises NumericalFailure on complex output or a residual
    above ``1e-8 * zero_residual_scale``; for zeros with ``|z| <= 1`` that
    scale is the coefficient norm.
    """
    p = slice_[l]
    if l == 0:
        return []
    roots = _companion_roots(p)
    if np.max(np.abs(roots.imag)) > 1e-6 * max(1.0, np.max(np.abs(roots))):
        raise NumericalFailure(f"Phi_{l} has non-real computed zeros: {roots}")
    z = np.sort(roots.real)
    dp = p.derivative()
    for _ in range(newton_steps):
        nz = np.array([_newton_step(p, dp, x) for x in z])
        done = np.array_equal(nz, z)
        z = nz
        if done:
            break
    z = np.sort(z)
    # exact evaluation at the float zeros; Horner in floats loses too much
    # for zeros far from the origin
    resid = np.array([abs(float(p.eval_exact(Fraction(x)))) / zero_residual_scale(p, x) for x in z])
    if np.any(resid > 1e-8):
        raise NumericalFailure(f"relative zero residual {resid.max():.3e} exceeds 1e-8 for Phi_{l}")
    return [float(x) for x in z]
