import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from hyperortho import Inadmissible, OutOfDomain, lambda_l, make_system, nu_cutoff, weight_eval
from hyperortho.system import CaseTag, lambda_strictly_increasing_check, sample_points
from strategies import admissible_systems

F = Fraction


def test_interval_of_jacobi_case():
    sys = make_system("one_minus_s2", -3, 1)
    assert sys.interval == (-1.0, 1.0)


@pytest.mark.parametrize("case", [c.value for c in CaseTag])
def test_alpha_zero_rejected(case):
    with pytest.raises(Inadmissible):
        make_system(case, 0, 1)


@pytest.mark.parametrize("case,alpha,beta", [
    ("linear", -1, 0),
    ("s2", -1, 0),
    ("one_minus_s2", -3, 3),      # beta must stay strictly inside (alpha, -alpha)
    ("one_minus_s2", -3, -3),
    ("s2_minus_one", -3, 3),      # -beta < alpha fails at equality
    ("s2_minus_one", -3, 2),
])
def test_boundary_and_outside_rejected(case, alpha, beta):
    with pytest.raises(Inadmissible):
        make_system(case, alpha, beta)


def test_reason_message():
    with pytest.raises(Inadmissible, match="requires beta>0"):
        make_system("s", -1, 0)


def test_float_parameters_rejected():
    with pytest.raises(TypeError):
        make_system("const", -2.0, 0)


def test_lambda_values():
    assert lambda_l(make_system("one_minus_s2", -3, 1), 2) == 8
    assert lambda_l(make_system("s2", -6, 2), 3) == 12
    assert lambda_l(make_system("const", -2, 0), 0) == 0


def test_nu_values():
    assert nu_cutoff(make_system("const", -2, 0)) == math.inf
    assert nu_cutoff(make_system("s2", -10, 2)) == F(11, 2)
    assert nu_cutoff(make_system("s2_plus_one", -1, 0)) == 1
    assert make_system("s2", -10, 2).max_index() == 5


def test_weight_values():
    assert weight_eval(make_system("const", -2, 0), 0, 0.0) == 1.0
    assert weight_eval(make_system("linear", -1, 1), 0, 2.0) == pytest.approx(math.exp(-2), rel=1e-15)
    assert weight_eval(make_system("s2", -6, 2), 0, 1.0) == pytest.approx(math.exp(-2), rel=1e-15)
    with pytest.raises(OutOfDomain):
        weight_eval(make_system("one_minus_s2", -3, 1), 0, 1.5)


def test_rho_m_is_sigma_power_times_rho():
    sys = make_system("one_minus_s2", -5, 1)
    s0 = 0.3
    assert weight_eval(sys, 2, s0) == pytest.approx((1 - s0 ** 2) ** 2 * weight_eval(sys, 0, s0), rel=1e-14)


def test_lambda_monotonicity():
    assert lambda_strictly_increasing_check(make_system("const", -2, 0))
    sys = make_system("s2", -6, 2)
    assert lambda_strictly_increasing_check(sys)
    assert [lambda_l(sys, l) for l in range(5)] == [0, 6, 10, 12, 12]
    assert not lambda_strictly_increasing_check(sys, upto=4)


def test_descriptor():
    assert make_system("s", "-1/2", 3).to_descriptor() == {"case": "linear", "alpha": "-1/2", "beta": "3/1"}


@given(admissible_systems())
def test_sigma_and_rho_positive(sys):
    s = sample_points(sys, 32)
    assert np.all(sys.sigma.eval_float(s) > 0)
    assert np.all(np.isfinite(sys.log_rho(s)))


@given(admissible_systems())
def test_lambda_gaps_nonzero(sys):
    top = sys.max_index(12)
    lams = [lambda_l(sys, l) for l in range(top + 1)]
    assert len(set(lams)) == len(lams)


@given(admissible_systems())
def test_endpoint_decay(sys):
    # sigma * rho * s^gamma along geometric sequences toward each end
    a, b = sys.interval
    gammas = [0, 1, 5] if not sys.is_finite else [0, max(0.0, float(-sys.alpha) - 1)]
    k = np.arange(30, 60)
    for end in ("a", "b"):
        lim = a if end == "a" else b
        if math.isinf(lim):
            s = np.sign(lim) * 2.0 ** k
            da, db = (s - a, np.full_like(s, np.inf)) if end == "b" else (np.full_like(s, np.inf), b - s)
        else:
            d = 2.0 ** (-k)
            s = lim + d if end == "a" else lim - d
            da = d if end == "a" else (b - a) - d
            db = d if end == "b" else (b - a) - d
        for g in gammas:
            logv = sys.log_sigma(s, da, db) + sys.log_rho(s, da, db) + g * np.log(np.abs(s))
            assert np.all(np.diff(logv[-10:]) < 0)
