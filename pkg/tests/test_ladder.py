from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from hyperortho import (HalfPowerFn, IndexBeyondCutoff, LadderPair, PolySystemSlice, RationalPoly,
                        apply_A, apply_A_plus, apply_H, assoc_from_phi, lambda_l, lower_chain,
                        make_system)
from hyperortho.ladder import check_theorem3_recurrence, ladder_residuals
from strategies import admissible_systems

F = Fraction
HERM = make_system("const", -2, 0)


def poly(*c):
    return RationalPoly(c)


def test_assoc_examples():
    sl = PolySystemSlice(HERM)
    assert assoc_from_phi(sl, 2, 0) == HalfPowerFn(0, poly(F(-1, 2), 0, 1))
    assert assoc_from_phi(sl, 2, 1) == HalfPowerFn(1, poly(0, 2))
    assert assoc_from_phi(sl, 2, 2) == HalfPowerFn(2, poly(2))
    with pytest.raises(IndexBeyondCutoff):
        assoc_from_phi(sl, 2, 3)


def test_raise_examples():
    assert apply_A(HERM, HalfPowerFn(0, poly(F(-1, 2), 0, 1))) == HalfPowerFn(1, poly(0, 2))
    assert apply_A(HERM, HalfPowerFn(3, poly(5))).is_zero()


def test_lower_examples():
    assert apply_A_plus(HERM, HalfPowerFn(1, poly(0, 2))) == HalfPowerFn(0, poly(-2, 0, 4))
    assert apply_A_plus(HERM, HalfPowerFn(2, RationalPoly())).is_zero()
    with pytest.raises(ValueError):
        apply_A_plus(HERM, HalfPowerFn(0, poly(1)))
    jac = make_system("one_minus_s2", -5, 1)
    phi1 = assoc_from_phi(PolySystemSlice(jac), 1, 0)
    assert apply_A_plus(jac, apply_A(jac, phi1)) == phi1 * 5
    assert phi1.p == poly(F(-1, 5), 1)


def test_H_examples():
    sl = PolySystemSlice(HERM)
    f = assoc_from_phi(sl, 2, 0)
    assert apply_H(HERM, 0, f) == f * 4
    assert apply_H(HERM, 1, HalfPowerFn(1, RationalPoly())).is_zero()
    morse = make_system("s2", -6, 2)
    g = assoc_from_phi(PolySystemSlice(morse), 1, 0)
    assert apply_H(morse, 0, g) == g * 6
    with pytest.raises(ValueError):
        apply_H(HERM, 1, f)


def test_theorem3_examples():
    assert check_theorem3_recurrence(HERM, 2, 1).is_zero()
    assert check_theorem3_recurrence(HERM, 2, 2).is_zero()
    assert check_theorem3_recurrence(HERM, 1, 1).is_zero()


def test_chain_examples():
    assert lower_chain(HERM, 2, 0) == HalfPowerFn(0, poly(F(-1, 2), 0, 1))
    assert lower_chain(HERM, 2, 1) == HalfPowerFn(1, poly(0, 2))
    sc = make_system("s2_plus_one", -4, 2)
    assert lower_chain(sc, 1, 0) == assoc_from_phi(PolySystemSlice(sc), 1, 0)


def test_operator_range_in_finite_case():
    sys = make_system("s2", -4, 2)   # nu = 5/2, operators need m + 1 < nu
    LadderPair(sys, 1)
    with pytest.raises(IndexBeyondCutoff):
        LadderPair(sys, 2)


@pytest.mark.parametrize("args,m", [(("one_minus_s2", -5, 1), 1), (("s2", -10, 2), 2),
                                    (("s2_plus_one", -7, "-3/2"), 1), (("linear", -2, "1/2"), 3)])
def test_closed_forms_against_sympy(args, m):
    """A_m and A_m^+ written with kappa = sqrt(sigma), applied symbolically."""
    sys = make_system(*args)
    s = sp.symbols("s", positive=True)
    sig = sum(c * s ** k for k, c in enumerate(sys.sigma_coeffs))
    kap = sp.sqrt(sig)
    tau = sp.Rational(sys.alpha.numerator, sys.alpha.denominator) * s + \
        sp.Rational(sys.beta.numerator, sys.beta.denominator)
    p = RationalPoly([1, F(-2, 3), F(5, 7), 2])
    pe = sum(sp.Rational(c.numerator, c.denominator) * s ** k for k, c in enumerate(p.coeffs))

    def expr(f):
        return kap ** f.m * sum(sp.Rational(c.numerator, c.denominator) * s ** k
                                for k, c in enumerate(f.p.coeffs))

    f = kap ** m * pe
    A = kap * sp.diff(f, s) - m * sp.diff(kap, s) * f
    assert sp.simplify(A - expr(apply_A(sys, HalfPowerFn(m, p)))) == 0
    g = kap ** (m + 1) * pe
    Ap = -kap * sp.diff(g, s) - tau / kap * g - (m - 1) * sp.diff(kap, s) * g
    assert sp.simplify(Ap - expr(apply_A_plus(sys, HalfPowerFn(m + 1, p)))) == 0


@pytest.mark.parametrize("args", [("const", -2, 0), ("one_minus_s2", -5, 1), ("s2", -10, 2),
                                  ("s2_plus_one", -25, 1)])
def test_all_identities_exact(args):
    sys = make_system(*args)
    res = ladder_residuals(sys, sys.max_index(8))
    assert set(res) == {"raise", "lower", "chain", "factor_AplusA", "factor_AAplus",
                        "intertwine_H_Aplus", "intertwine_A_H", "theorem3", "eigen"}
    assert all(v == 0 for v in res.values())


@settings(max_examples=15)
@given(admissible_systems())
def test_identities_on_random_systems(sys):
    assert all(v == 0 for v in ladder_residuals(sys, sys.max_index(6)).values())


@settings(max_examples=20)
@given(admissible_systems())
def test_degree_bookkeeping(sys):
    sl = PolySystemSlice(sys)
    for l in range(sys.max_index(6) + 1):
        for m in range(l + 1):
            assert assoc_from_phi(sl, l, m).p.degree == l - m


def test_lowering_scale_factor():
    sys = make_system("s2_minus_one", -25, 30)
    sl = PolySystemSlice(sys)
    for l in range(1, 6):
        for m in range(l):
            g = assoc_from_phi(sl, l, m + 1)
            assert apply_A_plus(sys, g) == assoc_from_phi(sl, l, m) * (lambda_l(sys, l) - lambda_l(sys, m))
