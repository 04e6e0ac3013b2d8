"""Dense univariate polynomials with exact rational coefficients.

Coefficients are :class:`fractions.Fraction` instances stored in ascending
powers of ``s``.  Trailing zeros are stripped on construction so that two
polynomials are equal iff their coefficient tuples are equal.
"""

from __future__ import annotations

import json
import numbers
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction, rejecting floats.

    Accepts ints, Fractions and strings of the form ``"p/q"`` or ``"p"``.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise TypeError(f"{value!r} is not an exact rational literal")
        return Fraction(text)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"num/den"``; the denominator is always written."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class RationalPoly:
    """Immutable polynomial ``sum(coeffs[k] * s**k)`` over the rationals."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> "RationalPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "RationalPoly":
        return cls([0] * k + [c])

    @classmethod
    def s(cls) -> "RationalPoly":
        return cls([0, 1])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    # ring operations -------------------------------------------------
    @staticmethod
    def _lift(other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly([as_rational(other)])

    def __add__(self, other) -> "RationalPoly":
        if not isinstance(other, (RationalPoly, int, Fraction)):
            return NotImplemented
        q = self._lift(other)
        n = max(len(self._coeffs), len(q._coeffs))
        return RationalPoly(self[k] + q[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-c for c in self._coeffs)

    def __sub__(self, other) -> "RationalPoly":
        if not isinstance(other, (RationalPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RationalPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "RationalPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            return RationalPoly(c * a for a in self._coeffs)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "RationalPoly":
        c = as_rational(c)
        return RationalPoly(a / c for a in self._coeffs)

    def __pow__(self, n: int) -> "RationalPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = RationalPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == RationalPoly([other])._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"RationalPoly([{', '.join(format_rational(c) for c in self._coeffs)}])"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(reversed(terms)).replace("+ -", "- ")

    # calculus / evaluation ------------------------------------------
    def derivative(self, times: int = 1) -> "RationalPoly":
        p = self
        for _ in range(times):
            p = RationalPoly(k * c for k, c in enumerate(p._coeffs) if k > 0)
        return p

    def shifted(self, c: Scalar) -> "RationalPoly":
        """``q`` with ``q(t) = p(t + c)``, exactly."""
        c = as_rational(c)
        step = RationalPoly([c, 1])
        acc = RationalPoly()
        for a in reversed(self._coeffs):
            acc = acc * step + a
        return acc

    def eval_exact(self, s0: Scalar) -> Fraction:
        s0 = as_rational(s0)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * s0 + c
        return acc

    def eval_float(self, s0):
        """Horner evaluation in floating point; ``s0`` may be a numpy array."""
        acc = 0.0 * s0
        for c in reversed(self._coeffs):
            acc = acc * s0 + float(c)
        return acc

    def __call__(self, s0):
        if isinstance(s0, (int, Fraction)):
            return self.eval_exact(s0)
        return self.eval_float(s0)

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self._coeffs]

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self / self.leading

    # serialization ---------------------------------------------------
    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self._coeffs]

    def to_json(self) -> str:
        return json.dumps(self.to_strings())

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "RationalPoly":
        return cls(Fraction(x) for x in items)

    @classmethod
    def from_json(cls, text: str) -> "RationalPoly":
        return cls.from_strings(json.loads(text))


ZERO = RationalPoly()
ONE = RationalPoly([1])
S = RationalPoly.s()


def add(p: RationalPoly, q) -> RationalPoly:
    return p + q


def sub(p: RationalPoly, q) -> RationalPoly:
    return p - q


def mul(p: RationalPoly, q) -> RationalPoly:
    return p * q


def scale(p: RationalPoly, c: Scalar) -> RationalPoly:
    return p * as_rational(c)


def derivative(p: RationalPoly, times: int = 1) -> RationalPoly:
    return p.derivative(times)


def eval_exact(p: RationalPoly, s0: Scalar) -> Fraction:
    return p.eval_exact(s0)


def eval_float(p: RationalPoly, s0: float) -> float:
    return p.eval_float(s0)
