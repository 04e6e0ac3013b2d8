"""Hermite, Laguerre and Jacobi polynomials in exact arithmetic.

The recurrences are written once, generically: they work for any argument
that supports ``+``, ``-``, ``*`` and scalar division, which covers
Fractions, :class:`ComplexRational` points and :class:`ComplexPoly`
(symbolic expansion in ``s``).  Jacobi parameters may be complex.

The reductions of ``Phi_l`` to classical polynomials hold only up to a
constant factor; :func:`proportionality_check` measures that factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AllZero, IndexBeyondCutoff, Mismatch
from .exactpoly import RationalPoly, as_rational
from .system import CaseTag, HyperSystem, nu_cutoff


@dataclass(frozen=True)
class ComplexRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    @staticmethod
    def lift(x) -> "ComplexRational":
        if isinstance(x, ComplexRational):
            return x
        return ComplexRational(as_rational(x), Fraction(0))

    def __add__(self, other):
        if isinstance(other, ComplexPoly):
            return NotImplemented
        o = ComplexRational.lift(other)
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, ComplexPoly):
            return NotImplemented
        return self + (-ComplexRational.lift(other))

    def __rsub__(self, other):
        return ComplexRational.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            return NotImplemented
        o = ComplexRational.lift(other)
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = ComplexRational.lift(other)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("complex rational division by zero")
        n = self * o.conjugate()
        return ComplexRational(n.re / d, n.im / d)

    def __rtruediv__(self, other):
        return ComplexRational.lift(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ComplexRational.lift(other)
        if not isinstance(other, ComplexRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexRational({self.re}, {self.im})"


I = ComplexRational(0, 1)


class ComplexPoly:
    """Polynomial in ``s`` with complex-rational coefficients, stored as re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalPoly, im: RationalPoly = RationalPoly()):
        self.re = re
        self.im = im

    @classmethod
    def from_real(cls, p: RationalPoly) -> "ComplexPoly":
        return cls(p, RationalPoly())

    @classmethod
    def s(cls) -> "ComplexPoly":
        return cls(RationalPoly.s())

    @staticmethod
    def _lift(x) -> "ComplexPoly":
        if isinstance(x, ComplexPoly):
            return x
        if isinstance(x, RationalPoly):
            return ComplexPoly(x)
        c = ComplexRational.lift(x)
        return ComplexPoly(RationalPoly([c.re]), RationalPoly([c.im]))

    def __add__(self, other):
        o = ComplexPoly._lift(other)
        return ComplexPoly(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoly(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-ComplexPoly._lift(other))

    def __rsub__(self, other):
        return ComplexPoly._lift(other) - self

    def __mul__(self, other):
        o = ComplexPoly._lift(other)
        return ComplexPoly(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (ComplexRational(1) / ComplexRational.lift(c))

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    @property
    def degree(self) -> int:
        return max(self.re.degree, self.im.degree)

    def is_real(self) -> bool:
        return self.im.is_zero()

    def eval_exact(self, s0) -> ComplexRational:
        s0 = as_rational(s0)
        return ComplexRational(self.re.eval_exact(s0), self.im.eval_exact(s0))

    def eval_float(self, s0):
        return self.re.eval_float(s0) + 1j * self.im.eval_float(s0)

    def __repr__(self):
        return f"ComplexPoly(re={self.re!r}, im={self.im!r})"


def _coerce_point(x):
    if isinstance(x, (ComplexPoly, ComplexRational, float, complex, np.ndarray)):
        return x
    if isinstance(x, RationalPoly):
        return ComplexPoly(x)
    return ComplexRational.lift(x)


def _scalar(p):
    if isinstance(p, (float, complex)):
        return p
    return ComplexRational.lift(p)


def hermite(l: int, x):
    """Physicists' Hermite ``H_l(x)``: ``H_{n+1} = 2x H_n - 2n H_{n-1}``."""
    x = _coerce_point(x)
    prev, cur = x * 0 + 1, x * 2
    if l == 0:
        return prev
    for n in range(1, l):
        prev, cur = cur, x * 2 * cur - prev * (2 * n)
    return cur


def laguerre(l: int, p, x):
    """Generalized Laguerre ``L_l^p(x)``."""
    x = _coerce_point(x)
    p = _scalar(p)
    prev = x * 0 + 1
    if l == 0:
        return prev
    cur = prev * (p + 1) - x
    for n in range(1, l):
        nxt = (cur * (p + (2 * n + 1)) - x * cur - prev * (p + n)) / (n + 1)
        prev, cur = cur, nxt
    return cur


def jacobi(l: int, p, q, x):
    """Jacobi ``P_l^(p,q)(x)`` by the standard three-term recurrence."""
    x = _coerce_point(x)
    p, q = _scalar(p), _scalar(q)
    prev = x * 0 + 1
    if l == 0:
        return prev
    cur = prev * ((p - q) / 2) + x * ((p + q + 2) / 2)
    for n in range(2, l + 1):
        ab = p + q
        c2n = ab + 2 * n
        denom = (ab + n) * (c2n - 2) * (2 * n)
        if denom == 0:
            raise ZeroDivisionError(f"Jacobi recurrence degenerates at n={n} for p={p}, q={q}")
        a1 = (c2n - 1) * (c2n * (c2n - 2))
        a0 = (c2n - 1) * (p * p - q * q)
        b = (p + (n - 1)) * (q + (n - 1)) * c2n * 2
        nxt = (x * cur * a1 + cur * a0 - prev * b) / denom
        prev, cur = cur, nxt
    return cur


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass
class ClassicalRef:
    """One reduction of ``Phi_l`` to a classical family.

    ``poly`` holds the exact expansion in ``s`` when every coefficient is
    rational; ``float_fn`` is always available.
    """

    family: str
    l: int
    params: tuple
    transform: str
    poly: Optional[ComplexPoly]
    float_fn: Callable

    @property
    def exact(self) -> bool:
        return self.poly is not None

    def __call__(self, s0):
        if self.poly is not None and isinstance(s0, (int, Fraction)):
            return self.poly.eval_exact(s0)
        return self.float_fn(s0)


def theorem2_reference(sys: HyperSystem, l: int) -> ClassicalRef:
    """Classical expression proportional to ``Phi_l`` for the system's case."""
    if l < 0 or not l < nu_cutoff(sys):
        raise IndexBeyondCutoff(f"l={l} is not below nu={nu_cutoff(sys)}")
    al, be = sys.alpha, sys.beta
    S = ComplexPoly.s()
    case = sys.case

    def from_poly(family, params, transform, poly):
        return ClassicalRef(family, l, params, transform, poly, lambda s0: poly.eval_float(s0))

    if case is CaseTag.CONST:
        r = _rational_sqrt(-al / 2)
        transform = "x = sqrt(-alpha/2) s - beta/sqrt(-2 alpha)"
        if r is not None:
            return from_poly("hermite", (), transform, hermite(l, S * r - be / (2 * r)))
        rf = math.sqrt(float(-al / 2))
        bf = float(be) / math.sqrt(float(-2 * al))
        return ClassicalRef("hermite", l, (), transform, None,
                            lambda s0: hermite_float(l, rf * np.asarray(s0, dtype=float) - bf))
    if case is CaseTag.LINEAR:
        return from_poly("laguerre", (be - 1,), "x = -alpha s", laguerre(l, be - 1, S * (-al)))
    if case is CaseTag.ONE_MINUS_S2:
        p, q = -(al + be) / 2 - 1, (-al + be) / 2 - 1
        return from_poly("jacobi", (p, q), "x = s", jacobi(l, p, q, S))
    if case is CaseTag.S2_MINUS_ONE:
        p, q = (al - be) / 2 - 1, (al + be) / 2 - 1
        return from_poly("jacobi", (p, q), "x = -s", jacobi(l, p, q, -S))
    if case is CaseTag.S2:
        p = 1 - al - 2 * l
        lag = laguerre(l, p, ComplexPoly.s())
        # (s/beta)^l * sum_k a_k (beta/s)^k = sum_k a_k beta^(k-l) s^(l-k)
        coeffs = [Fraction(0)] * (l + 1)
        for k in range(l + 1):
            coeffs[l - k] = lag.re[k] * be ** (k - l)
        return from_poly("laguerre", (p,), "x = beta/s, times (s/beta)^l", ComplexPoly(RationalPoly(coeffs)))
    p = ComplexRational(al / 2 - 1, be / 2)
    q = ComplexRational(al / 2 - 1, -be / 2)
    poly = jacobi(l, p, q, S * I)
    for _ in range(l):
        poly = poly * I
    return from_poly("jacobi", (p, q), "x = i s, times i^l", poly)


def hermite_float(l: int, x):
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), 2 * x
    if l == 0:
        return prev
    for n in range(1, l):
        prev, cur = cur, 2 * x * cur - 2 * n * prev
    return cur


def default_sample_points(n: int) -> list[Fraction]:
    """``n`` distinct rationals spread over roughly ``[-2, 3]``."""
    return [Fraction(-2) + Fraction(5 * k, max(n - 1, 1)) + Fraction(1, 97) for k in range(n)]


def proportionality_check(f: Callable, g: Callable, sample_points: Sequence):
    """Exact constant ``c`` with ``f = c * g`` at every sample point.

    Values may be Fractions or ComplexRationals.  Raises :class:`AllZero` if
    ``g`` vanishes everywhere and :class:`Mismatch` if no single constant fits.
    """
    fv = [ComplexRational.lift(f(x)) for x in sample_points]
    gv = [ComplexRational.lift(g(x)) for x in sample_points]
    try:
        pivot = next(i for i, v in enumerate(gv) if not v.is_zero())
    except StopIteration:
        raise AllZero("reference vanishes at every sample point") from None
    c = fv[pivot] / gv[pivot]
    for x, a, b in zip(sample_points, fv, gv):
        if a != c * b:
            raise Mismatch(f"f/g is not constant: fails at s={x}")
    return c.re if c.im == 0 else c


def proportionality_check_float(f: Callable, g: Callable, sample_points, tol: float = 1e-10) -> float:
    """Floating-point proportionality with relative tolerance ``tol``."""
    fv = np.asarray(f(np.asarray(sample_points, dtype=float)), dtype=float)
    gv = np.asarray(g(np.asarray(sample_points, dtype=float)), dtype=float)
    if not np.any(gv):
        raise AllZero("reference vanishes at every sample point")
    c = float(np.dot(fv, gv) / np.dot(gv, gv))
    err = np.max(np.abs(fv - c * gv)) / max(np.max(np.abs(fv)), np.finfo(float).tiny)
    if err > tol:
        raise Mismatch(f"relative misfit {err:.3e} exceeds {tol:.1e}")
    return c
