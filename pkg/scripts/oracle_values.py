#!/usr/bin/env python3
"""Independent reference values frozen into the test suite.

Nothing here imports hyperortho.  Polynomials come from a symbolic
Rodrigues formula with the weight written out explicitly, classical
polynomials from sympy, norms from mpmath at 40 digits, and potentials
from symbolic differentiation of the superpotential.

    python scripts/oracle_values.py
"""

import mpmath as mp
import sympy as sp

s, x = sp.symbols("s x", real=True)
mp.mp.dps = 40

SIGMA = {"const": sp.Integer(1), "linear": s, "one_minus_s2": 1 - s**2,
         "s2_minus_one": s**2 - 1, "s2": s**2, "s2_plus_one": s**2 + 1}
INTERVAL = {"const": (-mp.inf, mp.inf), "linear": (0, mp.inf), "one_minus_s2": (-1, 1),
            "s2_minus_one": (1, mp.inf), "s2": (0, mp.inf), "s2_plus_one": (-mp.inf, mp.inf)}


def rho(case, a, b):
    if case == "const":
        return sp.exp(a * s**2 / 2 + b * s)
    if case == "linear":
        return s ** (b - 1) * sp.exp(a * s)
    if case == "one_minus_s2":
        return (1 + s) ** (-(a - b) / 2 - 1) * (1 - s) ** (-(a + b) / 2 - 1)
    if case == "s2_minus_one":
        return (s + 1) ** ((a - b) / 2 - 1) * (s - 1) ** ((a + b) / 2 - 1)
    if case == "s2":
        return s ** (a - 2) * sp.exp(-b / s)
    return (1 + s**2) ** (a / 2 - 1) * sp.exp(b * sp.atan(s))


def rodrigues(case, a, b, l):
    a, b = sp.Rational(a), sp.Rational(b)
    r = rho(case, a, b)
    p = sp.simplify(sp.diff(SIGMA[case] ** l * r, s, l) / r)
    poly = sp.Poly(sp.expand(sp.simplify(p)), s)
    return [str(c) for c in reversed((poly.monic()).all_coeffs())]


def norm_sq(case, a, b, l, m):
    a, b = sp.Rational(a), sp.Rational(b)
    phi = sp.Poly(list(reversed([sp.Rational(c) for c in rodrigues(case, a, b, l)])), s).as_expr()
    integrand = sp.diff(phi, s, m) ** 2 * SIGMA[case] ** m * rho(case, a, b)
    f = sp.lambdify(s, integrand, "mpmath")
    lo, hi = INTERVAL[case]
    pts = [lo] + [p for p in (-1, 0, 1, 2) if lo < p < hi] + [hi]
    return mp.quad(f, pts)


def classical_constant(case, a, b, l):
    """Ratio Phi_l / classical expression, with sympy's classical polynomials."""
    a, b = sp.Rational(a), sp.Rational(b)
    phi = sp.Poly(list(reversed([sp.Rational(c) for c in rodrigues(case, a, b, l)])), s).as_expr()
    if case == "const":
        ref = sp.hermite(l, sp.sqrt(-a / 2) * s - b / sp.sqrt(-2 * a))
    elif case == "linear":
        ref = sp.assoc_laguerre(l, b - 1, -a * s)
    elif case == "one_minus_s2":
        ref = sp.jacobi(l, -(a + b) / 2 - 1, (-a + b) / 2 - 1, s)
    elif case == "s2_minus_one":
        ref = sp.jacobi(l, (a - b) / 2 - 1, (a + b) / 2 - 1, -s)
    elif case == "s2":
        ref = (s / b) ** l * sp.assoc_laguerre(l, 1 - a - 2 * l, b / s)
    else:
        ref = sp.I**l * sp.jacobi(l, (a + sp.I * b) / 2 - 1, (a - sp.I * b) / 2 - 1, sp.I * s)
    ratio = sp.simplify(sp.expand(phi) / sp.expand(ref))
    return ratio


def potential_from_W(case, a, b, m):
    """V_m - lambda_m = W^2 - sign W' with W from the general formula."""
    a, b = sp.Rational(a), sp.Rational(b)
    smap = {"const": (x, 1), "linear": (x**2 / 4, 1), "one_minus_s2": (sp.cos(x), -1),
            "s2_minus_one": (sp.cosh(x), 1), "s2": (sp.exp(x), 1), "s2_plus_one": (sp.sinh(x), 1)}
    sx, sign = smap[case]
    kappa = sp.sqrt(SIGMA[case].subs(s, sx))
    tau = a * sx + b
    W = -tau / (2 * kappa) - sign * (2 * m - 1) / (2 * kappa) * sp.diff(kappa, x)
    lam_m = -sp.Poly(SIGMA[case], s).coeff_monomial(s**2) * m * (m - 1) - a * m
    V = W**2 - sign * sp.diff(W, x) + lam_m
    return sp.simplify(W), sp.simplify(V)


if __name__ == "__main__":
    print("# Rodrigues polynomials (monic, ascending)")
    for case, a, b, l in [("const", -2, 0, 3), ("linear", -1, 1, 2), ("one_minus_s2", -5, 1, 2),
                          ("one_minus_s2", "-7/2", "-1/2", 3), ("s2_minus_one", -8, 9, 2),
                          ("s2", -10, 2, 3), ("s2_plus_one", -4, 2, 1), ("s2_plus_one", -7, "-3/2", 2),
                          ("const", "-1/2", 1, 2), ("linear", "-1/3", 3, 3)]:
        print(case, a, b, l, rodrigues(case, a, b, l))
    print("# squared norms ||Phi_{l,m}||^2")
    for case, a, b, l, m in [("const", -2, 0, 2, 0), ("const", -2, 0, 2, 1), ("one_minus_s2", -5, 1, 1, 0),
                             ("one_minus_s2", -5, 1, 2, 1), ("s2_minus_one", -8, 9, 2, 0),
                             ("s2", -10, 2, 3, 1), ("linear", -1, 1, 3, 2), ("s2_plus_one", -7, "-3/2", 2, 0)]:
        print(case, a, b, l, m, mp.nstr(norm_sq(case, a, b, l, m), 20))
    print("# Theorem-2 style constants Phi_l / classical")
    for case, a, b, l in [("const", -2, 0, 2), ("const", -8, 2, 3), ("linear", -1, 1, 3),
                          ("one_minus_s2", -5, 1, 3), ("s2_minus_one", -8, 9, 2), ("s2", -6, 2, 1),
                          ("s2", -10, 2, 4), ("s2_plus_one", -2, 2, 1), ("s2_plus_one", -7, "-3/2", 2)]:
        print(case, a, b, l, classical_constant(case, a, b, l))
    print("# potentials from W (sympy)")
    for case, a, b, m, xs in [("s2", -6, -4, 0, [0, 1]), ("const", -2, 0, 0, [0, 1]),
                              ("one_minus_s2", -5, 1, 1, [sp.Rational(1, 2), 2]),
                              ("s2_minus_one", -8, 9, 0, [sp.Rational(1, 2), 2]),
                              ("s2_plus_one", -4, 2, 1, [-1, sp.Rational(1, 3)]),
                              ("linear", -1, 1, 1, [sp.Rational(1, 2), 3])]:
        W, V = potential_from_W(case, a, b, m)
        vals = [(str(xx), mp.nstr(mp.mpf(sp.N(W.subs(x, xx), 30)), 20),
                 mp.nstr(mp.mpf(sp.N(V.subs(x, xx), 30)), 20)) for xx in xs]
        print(case, a, b, m, vals)
