"""Associated functions Phi_{l,m} and the operators H_m, A_m, A_m^+.

A function ``kappa(s)^m * p(s)`` with ``kappa = sqrt(sigma)`` is stored as
the pair ``(m, p)``.  On that representation every operator has a closed
form with polynomial coefficients, so all identities become exact equalities
of rational polynomials:

* ``A_m   (m, p)   -> (m+1, p')``
* ``A_m^+ (m+1, q) -> (m, -sigma q' - (tau + m sigma') q)``
* ``H_m   (m, p)   -> (m, -sigma p'' - (tau + m sigma') p' + lambda_m p)``
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import IndexBeyondCutoff
from .exactpoly import RationalPoly
from .polygen import PolySystemSlice
from .system import HyperSystem, lambda_l, nu_cutoff


@dataclass(frozen=True)
class HalfPowerFn:
    m: int
    p: RationalPoly

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("half-power index must be non-negative")

    def __add__(self, other: "HalfPowerFn") -> "HalfPowerFn":
        _same_m(self, other)
        return HalfPowerFn(self.m, self.p + other.p)

    def __sub__(self, other: "HalfPowerFn") -> "HalfPowerFn":
        _same_m(self, other)
        return HalfPowerFn(self.m, self.p - other.p)

    def __mul__(self, c) -> "HalfPowerFn":
        return HalfPowerFn(self.m, self.p * c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "HalfPowerFn":
        return HalfPowerFn(self.m, self.p / c)

    def is_zero(self) -> bool:
        return self.p.is_zero()

    def eval_float(self, sys: HyperSystem, s):
        """Pointwise value ``sigma(s)^(m/2) * p(s)`` for interior points."""
        return np.exp(0.5 * self.m * sys.log_sigma(s)) * self.p.eval_float(np.asarray(s, dtype=float))


def _same_m(f: HalfPowerFn, g: HalfPowerFn) -> None:
    if f.m != g.m:
        raise ValueError(f"half-power mismatch: {f.m} vs {g.m}")


def assoc_from_phi(slice_: PolySystemSlice, l: int, m: int) -> HalfPowerFn:
    """``Phi_{l,m} = kappa^m * Phi_l^(m)``."""
    if not 0 <= m <= l:
        raise IndexBeyondCutoff(f"need 0 <= m <= l, got l={l}, m={m}")
    return HalfPowerFn(m, slice_[l].derivative(m))


def _check_operator_index(sys: HyperSystem, m: int) -> None:
    # A_m and A_m^+ exist for m + 1 < nu
    if m < 0 or not m + 1 < nu_cutoff(sys):
        raise IndexBeyondCutoff(f"ladder operators at m={m} need m+1 < nu={nu_cutoff(sys)}")


def apply_A(sys: HyperSystem, f: HalfPowerFn) -> HalfPowerFn:
    """Raising operator ``A_m = kappa d/ds - m kappa'`` with ``m = f.m``."""
    _check_operator_index(sys, f.m)
    return HalfPowerFn(f.m + 1, f.p.derivative())


def apply_A_plus(sys: HyperSystem, f: HalfPowerFn) -> HalfPowerFn:
    """Lowering operator ``A_m^+`` applied to ``f = (m+1, q)``."""
    if f.m < 1:
        raise ValueError("A^+ lowers the half-power index; input must have m >= 1")
    m = f.m - 1
    _check_operator_index(sys, m)
    sigma, tau = sys.sigma, sys.tau
    q = f.p
    return HalfPowerFn(m, -(sigma * q.derivative()) - (tau + sigma.derivative() * m) * q)


def apply_H(sys: HyperSystem, m: int, f: HalfPowerFn) -> HalfPowerFn:
    if f.m != m:
        raise ValueError(f"H_{m} applied to a function with half-power index {f.m}")
    sigma, tau = sys.sigma, sys.tau
    p = f.p
    out = (-(sigma * p.derivative(2)) - (tau + sigma.derivative() * m) * p.derivative()
           + p * lambda_l(sys, m))
    return HalfPowerFn(m, out)


def check_theorem3_recurrence(sys: HyperSystem, l: int, m: int,
                              slice_: PolySystemSlice | None = None) -> RationalPoly:
    """Residual of the three-term relation in ``m`` for fixed ``l``.

    Divided through by ``kappa^(m-1)`` the relation reads
    ``sigma p_{m+1} + (tau + (m-1) sigma') p_m + (lambda_l - lambda_{m-1}) p_{m-1}``
    with ``p_j = Phi_l^(j)``; at ``m = l`` the first term is absent.
    """
    if not 1 <= m <= l:
        raise IndexBeyondCutoff(f"need 1 <= m <= l, got l={l}, m={m}")
    slice_ = slice_ or PolySystemSlice(sys)
    phi = slice_[l]
    sigma, tau = sys.sigma, sys.tau
    p_prev, p_m, p_next = phi.derivative(m - 1), phi.derivative(m), phi.derivative(m + 1)
    res = (tau + sigma.derivative() * (m - 1)) * p_m + p_prev * (lambda_l(sys, l) - lambda_l(sys, m - 1))
    if m < l:
        res = res + sigma * p_next
    return res


def lower_chain(sys: HyperSystem, l: int, m: int,
                slice_: PolySystemSlice | None = None) -> HalfPowerFn:
    """Rebuild ``Phi_{l,m}`` from ``Phi_{l,l}`` by repeated normalized lowering."""
    if not 0 <= m < l:
        raise IndexBeyondCutoff(f"need 0 <= m < l, got l={l}, m={m}")
    slice_ = slice_ or PolySystemSlice(sys)
    f = assoc_from_phi(slice_, l, l)
    lam = lambda_l(sys, l)
    for k in range(l - 1, m - 1, -1):
        gap = lam - lambda_l(sys, k)
        assert gap != 0, f"lambda_{l} == lambda_{k}"
        f = apply_A_plus(sys, f) / gap
    return f


@dataclass(frozen=True)
class LadderPair:
    """The operators ``A_m`` and ``A_m^+`` at one ``m`` for a given system."""

    sys: HyperSystem
    m: int

    def __post_init__(self):
        _check_operator_index(self.sys, self.m)

    def raise_(self, f: HalfPowerFn) -> HalfPowerFn:
        if f.m != self.m:
            raise ValueError(f"A_{self.m} expects half-power {self.m}, got {f.m}")
        return apply_A(self.sys, f)

    def lower(self, g: HalfPowerFn) -> HalfPowerFn:
        if g.m != self.m + 1:
            raise ValueError(f"A_{self.m}^+ expects half-power {self.m + 1}, got {g.m}")
        return apply_A_plus(self.sys, g)


def ladder_residuals(sys: HyperSystem, l_max: int) -> dict[str, Fraction]:
    """Largest absolute coefficient of every ladder-identity residual.

    Covers the eigen-relation for H_m, the recurrence in m, raising and
    lowering, the lowering chain, both factorizations and both intertwinings on ``{Phi_{l,m} : 0 <= m <= l <= l_max}``.  All entries are
    zero when the identities hold.
    """
    sl = PolySystemSlice(sys)
    worst = {k: Fraction(0) for k in ("raise", "lower", "chain", "factor_AplusA",
                                      "factor_AAplus", "intertwine_H_Aplus",
                                      "intertwine_A_H", "theorem3", "eigen")}

    def note(key, f):
        p = f.p if isinstance(f, HalfPowerFn) else f
        mag = max((abs(c) for c in p.coeffs), default=Fraction(0))
        worst[key] = max(worst[key], mag)

    nu = nu_cutoff(sys)
    for l in range(l_max + 1):
        lam_l = lambda_l(sys, l)
        for m in range(l + 1):
            f = assoc_from_phi(sl, l, m)
            note("eigen", apply_H(sys, m, f) - f * lam_l)
            if m >= 1:
                note("theorem3", check_theorem3_recurrence(sys, l, m, sl))
            if m < l:
                g = assoc_from_phi(sl, l, m + 1)
                note("raise", apply_A(sys, f) - g)
                note("lower", apply_A_plus(sys, g) - f * (lam_l - lambda_l(sys, m)))
                note("chain", lower_chain(sys, l, m, sl) - f)
            if m + 1 < nu:
                lam_m = lambda_l(sys, m)
                note("factor_AplusA", apply_A_plus(sys, apply_A(sys, f))
                     - (apply_H(sys, m, f) - f * lam_m))
                note("intertwine_A_H", apply_A(sys, apply_H(sys, m, f))
                     - apply_H(sys, m + 1, apply_A(sys, f)))
            if m >= 1 and m < nu:
                k = m - 1
                lam_k = lambda_l(sys, k)
                note("factor_AAplus", apply_A(sys, apply_A_plus(sys, f))
                     - (apply_H(sys, m, f) - f * lam_k))
                note("intertwine_H_Aplus", apply_H(sys, k, apply_A_plus(sys, f))
                     - apply_A_plus(sys, apply_H(sys, m, f)))
    return worst
