import math

import numpy as np
import pytest

from hyperortho import (BoundState, GridTooCoarse, IndexBeyondCutoff, OutOfDomain, PolySystemSlice,
                        WindowTooSmall, assoc_from_phi, fd_eigensolve, lambda_l, make_model, make_system, norm_sq, potential_V,
                        psi_eval, superpotential_W)
from hyperortho.schrodinger import (change_of_variable_residual, example_closed_forms,
                                    ground_state_relations, numeric_W_dot, superpotential_W_dot,
                                    x_ladder_apply, x_sample_points)
from hyperortho.suites import SCHRODINGER_TOLS, grid_ladder_errors, pointwise_schrodinger

# W_m and V_m from symbolic differentiation, scripts/oracle_values.py
FROZEN_WV = [
    (("s2", -6, -4), 0, [(0.0, 5.5, 32.25), (1.0, 4.2357588823428846432, 18.677412191689527913)]),
    (("const", -2, 0), 0, [(0.0, 0.0, -1.0), (1.0, 1.0, 0.0)]),
    (("one_minus_s2", -5, 1), 1, [(0.5, 4.4485483436706116649, 13.646569243441222944),
                                  (2.0, -1.9228477482281655246, 4.817337665004841897)]),
    (("s2_minus_one", -8, 9), 0, [(0.5, 1.1021339808166910818, -0.90033409814350401624),
                                  (2.0, 3.4271737018009419965, 10.800577313684413439)]),
    (("s2_plus_one", -4, 2), 1, [(-1.0, -1.7904455075975327318, 7.0692879508197206102),
                                 (1 / 3, -0.46463614746604640948, 2.5665003098041288958)]),
    (("linear", -1, 1), 1, [(0.5, -2.875, 3.015625), (3.0, 0.25, 0.64583333333333333333)]),
]

EXAMPLES = [("one_minus_s2", -5, 1), ("one_minus_s2", "-7/2", "-1/2"), ("s2_minus_one", -8, 9),
            ("s2_minus_one", -25, 30), ("s2", -10, 2), ("s2", -6, 4), ("s2_plus_one", -7, "-3/2"),
            ("s2_plus_one", -25, 1)]
ALL_SIX = EXAMPLES + [("const", -2, 0), ("const", -3, "-2/3"), ("linear", -1, 1), ("linear", -2, "1/2")]


@pytest.mark.parametrize("args,m,points", FROZEN_WV, ids=lambda v: str(v))
def test_frozen_W_and_V(args, m, points):
    model = make_model(make_system(*args, strict=False), m)
    for x, w, v in points:
        assert superpotential_W(model, np.array([x]))[0] == pytest.approx(w, rel=1e-12, abs=1e-13)
        assert potential_V(model, np.array([x]))[0] == pytest.approx(v, rel=1e-12, abs=1e-13)


def test_harmonic_examples():
    sys = make_system("const", -2, 0)
    model = make_model(sys)
    assert psi_eval(model, PolySystemSlice(sys), 0, np.array([0.0]))[0] == pytest.approx(1.0)
    bs = BoundState(model, 0)
    assert bs.eigenvalue == 0
    assert bs.norm_sq_x() == pytest.approx(math.sqrt(math.pi), rel=1e-10)


@pytest.mark.parametrize("args", EXAMPLES, ids=str)
@pytest.mark.parametrize("m", [0, 1])
def test_closed_forms_match_general_formula(args, m):
    sys = make_system(*args)
    if not m < sys.nu:
        pytest.skip("m beyond cutoff")
    model = make_model(sys, m)
    W, V = example_closed_forms(model)
    x = x_sample_points(model)
    assert np.allclose(W(x), superpotential_W(model, x), rtol=1e-10, atol=1e-10)
    assert np.allclose(V(x), potential_V(model, x), rtol=1e-10, atol=1e-10)


def test_no_closed_form_for_first_two_cases():
    assert example_closed_forms(make_model(make_system("const", -2, 0))) is None
    assert example_closed_forms(make_model(make_system("linear", -1, 1))) is None


@pytest.mark.parametrize("args", ALL_SIX, ids=str)
def test_pointwise_identities(args):
    sys = make_system(*args)
    for m in range(min(sys.max_index(1), 1) + 1):
        res = pointwise_schrodinger(sys, m)
        for key, val in res.items():
            if not math.isnan(val):
                assert val < SCHRODINGER_TOLS[key], (key, m, val)


def test_riccati_analytic_vs_numeric_derivative():
    model = make_model(make_system("s2_plus_one", -9, 2), 1)
    x = x_sample_points(model)
    assert np.allclose(numeric_W_dot(model, x), superpotential_W_dot(model, x), rtol=1e-7, atol=1e-7)


def test_ground_state_recovers_W():
    sys = make_system("s2", -10, 2)
    model = make_model(sys, 1)
    x = x_sample_points(model)
    w, v = ground_state_relations(model, PolySystemSlice(sys), x)
    assert np.allclose(w, superpotential_W(model, x), rtol=1e-6, atol=1e-6)
    assert np.allclose(v, potential_V(model, x), rtol=1e-5, atol=1e-5)


def test_change_of_variable():
    for args in ALL_SIX:
        assert change_of_variable_residual(make_model(make_system(*args))) < 1e-6


@pytest.mark.parametrize("args,l,m", [(("const", -2, 0), 2, 0), (("s2", -10, 2), 2, 1),
                                       (("s2_plus_one", -7, "-3/2"), 2, 0), (("one_minus_s2", -5, 1), 2, 1)])
def test_grid_ladder(args, l, m):
    errs = grid_ladder_errors(make_system(*args), l, m)
    for key, val in errs.items():
        assert val < SCHRODINGER_TOLS[key], (key, val)


@pytest.mark.parametrize("args,l,m", [(("const", -3, 1), 2, 1), (("s2", -10, 2), 3, 2),
                                       (("one_minus_s2", -5, 1), 2, 0), (("linear", -2, "1/2"), 1, 0),
                                       (("s2_minus_one", -25, 30), 2, 1), (("s2_plus_one", -25, 1), 3, 0)])
def test_norm_in_x_equals_norm_in_s(args, l, m):
    sys = make_system(*args)
    bs = BoundState(make_model(sys, m), l)
    ns = norm_sq(sys, assoc_from_phi(PolySystemSlice(sys), l, m))
    assert bs.norm_sq_x() == pytest.approx(ns, rel=1e-6)


def test_harmonic_spectrum():
    rep = fd_eigensolve(make_model(make_system("const", -2, 0)), n_grid=2000, window=(-8, 8))
    assert rep.levels == [0, 1, 2]
    assert np.allclose(rep.fd_eigenvalues[:3], [0, 2, 4], atol=1e-3)
    assert rep.matches(atol=1e-3)


def test_morse_admissible_spectrum():
    rep = fd_eigensolve(make_model(make_system("s2", -6, 4)), n_grid=4000)
    assert rep.levels == [0, 1, 2, 3]
    assert rep.matches(rtol=1e-2)
    assert rep.analytic == [0.0, 6.0, 10.0, 12.0]


def test_poschl_teller_spectrum():
    model = make_model(make_system("one_minus_s2", -4, 0))
    rep = fd_eigensolve(model, n_grid=3000, window=(1e-6, math.pi - 1e-6), n_levels=3)
    assert rep.matches(rtol=1e-2)
    assert rep.analytic == [0.0, 4.0, 10.0]


def test_spectrum_report_serialises():
    rep = fd_eigensolve(make_model(make_system("const", -2, 0)), n_grid=600, window=(-8, 8), n_levels=2)
    d = rep.to_dict()
    assert d["window"] == [-8.0, 8.0] and d["m"] == 0
    assert '"fd_eigenvalues"' in rep.to_json()


def test_solver_errors():
    model = make_model(make_system("const", -2, 0))
    with pytest.raises(WindowTooSmall):
        fd_eigensolve(model, window=(-1, 1))
    with pytest.raises(ValueError):
        fd_eigensolve(model, n_grid=100, window=(-8, 8))
    pt = make_model(make_system("one_minus_s2", -4, 0))
    with pytest.raises(OutOfDomain):
        fd_eigensolve(pt, window=(0.0, 3.0))
    with pytest.raises(OutOfDomain):
        superpotential_W(pt, np.array([4.0]))


def test_grid_too_coarse():
    model = make_model(make_system("const", -2, 0))
    x = np.linspace(-5, 5, 101)
    with pytest.raises(GridTooCoarse):
        x_ladder_apply(model, "raise", x, np.exp(-x ** 2 / 2))
    x = np.linspace(-5, 5, 20001)
    with pytest.raises(ValueError):
        x_ladder_apply(model, "sideways", x, np.exp(-x ** 2 / 2))


def test_cutoff_limits():
    sys = make_system("s2", -4, 2)   # nu = 5/2
    make_model(sys, 2)
    with pytest.raises(IndexBeyondCutoff):
        make_model(sys, 3)
    with pytest.raises(IndexBeyondCutoff):
        BoundState(make_model(sys, 0), 3)


def test_inadmissible_morse_has_no_bound_states():
    # formal evaluation is allowed, but the Dirichlet oracle sees no decaying states
    model = make_model(make_system("s2", -6, -4, strict=False))
    with pytest.raises(WindowTooSmall):
        fd_eigensolve(model, n_grid=4000, window=(-2, 12))


def test_partner_potentials_share_levels():
    sys = make_system("s2", -12, 3)
    lo = fd_eigensolve(make_model(sys, 0), n_grid=3000, n_levels=4)
    hi = fd_eigensolve(make_model(sys, 1), n_grid=3000, n_levels=3)
    assert np.allclose(lo.fd_eigenvalues[1:4], hi.fd_eigenvalues[:3], rtol=1e-2)
    assert float(lambda_l(sys, 1)) == pytest.approx(hi.analytic[0])
