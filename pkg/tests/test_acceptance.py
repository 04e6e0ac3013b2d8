"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line (visible without
``-s``) and then asserts.  Criterion 7b is checked exactly as stated and
is expected to fail: for ``beta = -4`` the potential is purely repulsive and
has no bound states.  7b+ runs the same check with ``beta = +4``.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from hyperortho import (CaseTag, PolySystemSlice, assoc_from_phi, fd_eigensolve, generate_phi,
                        generate_phi_rodrigues, lambda_l, make_model, make_system, norm_sq,
                        orthogonality_matrix, phi_zeros, theorem2_reference)
from hyperortho.classical import (default_sample_points, proportionality_check,
                                  proportionality_check_float)
from hyperortho.ladder import ladder_residuals
from hyperortho.polygen import ode_residual
from hyperortho.quad import norm_ladder_check, square_integrability_check
from hyperortho.schrodinger import BoundState
from hyperortho.suites import SCHRODINGER_TOLS, grid_systems, pointwise_schrodinger

GRID = grid_systems()


@pytest.fixture
def report(capsys):
    def emit(tag, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {tag}: {detail}")
        return ok
    return emit


def test_c1_dual_generation(report):
    t0 = time.perf_counter()
    bad = []
    n = 0
    for sys in GRID:
        for l in range(sys.max_index(12) + 1):
            p, q = generate_phi(sys, l), generate_phi_rodrigues(sys, l)
            n += 1
            if p != q or p.degree != l or p.leading != 1 or not ode_residual(sys, l, p).is_zero():
                bad.append((sys.describe(), l))
    dt = time.perf_counter() - t0
    counts = {c: sum(s.case is c for s in GRID) for c in CaseTag}
    ok = not bad and dt < 5 and min(counts.values()) >= 3
    assert report("1", ok, f"{n} polynomials, {len(bad)} mismatches, {dt:.2f}s (< 5s)")
    assert ok


def test_c2_classical_reductions(report):
    worst_float, bad, checked = 0.0, [], set()
    pts = default_sample_points(20)
    for sys in GRID:
        for l in range(sys.max_index(8) + 1):
            ref = theorem2_reference(sys, l)
            phi = generate_phi(sys, l)
            checked.add(sys.case)
            try:
                if ref.exact:
                    c = proportionality_check(lambda s: phi(s), ref, pts)
                    if c == 0:
                        bad.append((sys.describe(), l, "zero constant"))
                    if sys.case is CaseTag.S2_PLUS_ONE and not ref.poly.is_real():
                        bad.append((sys.describe(), l, "imaginary part"))
                else:
                    xs = np.linspace(-2, 3, 20)
                    proportionality_check_float(lambda s: np.array([phi.eval_float(t) for t in s]),
                                                ref, xs, tol=1e-10)
            except Exception as exc:  # Mismatch / AllZero
                bad.append((sys.describe(), l, repr(exc)))
    ok = not bad and checked == set(CaseTag)
    assert report("2", ok, f"{len(checked)} cases, failures: {bad[:3]}")
    assert ok


def test_c3_ladder_algebra(report):
    t0 = time.perf_counter()
    nonzero = []
    for sys in GRID:
        top = sys.max_index(10)   # min(10, ceil(nu) - 1)
        res = ladder_residuals(sys, top)
        nonzero += [(sys.describe(), k) for k, v in res.items() if v != 0]
    dt = time.perf_counter() - t0
    ok = not nonzero and dt < 10
    assert report("3", ok, f"{len(GRID)} systems, nonzero residuals {nonzero[:3]}, {dt:.2f}s (< 10s)")
    assert ok


def test_c4_norm_ladder(report):
    worst = 0.0
    for sys in GRID:
        for l in range(1, sys.max_index(6) + 1):
            for m, r in enumerate(norm_ladder_check(sys, l)):
                gap = float(lambda_l(sys, l) - lambda_l(sys, m))
                worst = max(worst, abs(r) / gap)
    herm = make_system("const", -2, 0)
    sl = PolySystemSlice(herm)
    ratio = norm_sq(herm, assoc_from_phi(sl, 2, 1)) / norm_sq(herm, assoc_from_phi(sl, 2, 0))
    ok = worst < 1e-8 and abs(ratio - 4) < 1e-10
    assert report("4", ok, f"max relative gap {worst:.2e} (< 1e-8), Hermite ratio {ratio!r}")
    assert ok


def test_c5_orthogonality(report):
    worst, wrong = 0.0, []
    for sys in GRID:
        top = sys.max_index(6)
        for m in range(min(top, 2) + 1):
            worst = max(worst, orthogonality_matrix(sys, m, top).max_claimed_offdiag())
        for l in range(top + 1):
            for m in range(l + 1):
                if not square_integrability_check(sys, l, m):
                    wrong.append((sys.describe(), l, m))
    out_of_range = square_integrability_check(make_system("s2", -4, 2), 3, 0)
    ok = worst < 1e-8 and not wrong and out_of_range is False
    assert report("5", ok, f"max off-diagonal {worst:.2e} (< 1e-8), in-range failures {wrong[:3]}, "
                           f"s2(-4,2) l=3 integrable={out_of_range}")
    assert ok


def test_c6_zeros(report):
    worst_res, worst_sep, bad = 0.0, math.inf, []
    for sys in GRID:
        a, b = sys.interval
        sl = PolySystemSlice(sys)
        for l in range(1, sys.max_index(10) + 1):
            p = sl[l]
            z = phi_zeros(sl, l)
            norm = np.linalg.norm(p.float_coeffs())
            worst_res = max([worst_res] + [abs(float(p.eval_exact(Fraction(t)))) / norm for t in z])
            if len(z) != l or not all(a < t < b for t in z):
                bad.append((sys.describe(), l, "outside"))
            if l > 1:
                worst_sep = min(worst_sep, float(np.min(np.diff(z))))
            if l + 1 < sys.nu:
                w = phi_zeros(sl, l + 1)
                if not all(w[i] < z[i] < w[i + 1] for i in range(l)):
                    bad.append((sys.describe(), l, "interlacing"))
    ok = not bad and worst_res < 1e-8 and worst_sep > 1e-9
    assert report("6", ok, f"max |Phi(z)|/||coeffs|| {worst_res:.2e}, min separation {worst_sep:.3g}, "
                           f"failures {bad[:3]}")
    assert ok


def _timed_solve(model, **kw):
    t0 = time.perf_counter()
    rep = fd_eigensolve(model, **kw)
    return rep, time.perf_counter() - t0


def test_c7a_harmonic_spectrum(report):
    rep, dt = _timed_solve(make_model(make_system("const", -2, 0)), n_grid=2000, n_levels=3)
    fd = rep.fd_eigenvalues[:3]
    ok = np.allclose(fd, [0, 2, 4], rtol=0, atol=1e-3) and dt < 10
    assert report("7a", ok, f"harmonic FD {np.round(fd, 6).tolist()} vs [0, 2, 4], {dt:.2f}s")
    assert ok


def test_c7b_morse_as_stated(report):
    # beta = -4 is outside the admissible range (sigma = s^2 needs beta > 0);
    # the potential 4 e^{-2x} + 16 e^{-x} + 49/4 has no bound states.  The
    # window is the one used for this potential elsewhere; the bound-state
    # edge test is switched off because there are no bound states to test.
    model = make_model(make_system("s2", -6, -4, strict=False))
    rep, dt = _timed_solve(model, n_grid=4000, window=(-2.0, 12.0), check_window=False)
    target = [0.0, 6.0, 10.0, 12.0]
    fd = rep.fd_eigenvalues[:4]
    ok = all(abs(f - t) <= 1e-2 * max(abs(t), 1.0) for f, t in zip(fd, target)) and dt < 10
    assert report("7b", ok, f"Morse beta=-4 FD {np.round(fd, 4).tolist()} vs {target} "
                            f"(no bound states; see notes), {dt:.2f}s")
    assert ok


def test_c7b_morse_admissible_sign(report):
    rep, dt = _timed_solve(make_model(make_system("s2", -6, 4)), n_grid=4000)
    fd = rep.fd_eigenvalues[:4]
    ok = rep.analytic == [0.0, 6.0, 10.0, 12.0] and rep.matches(rtol=1e-2) and dt < 10
    assert report("7b+", ok, f"Morse beta=+4 FD {np.round(fd, 4).tolist()} vs {rep.analytic} "
                             f"on {tuple(round(v, 3) for v in rep.window)}, {dt:.2f}s")
    assert ok


def test_c7c_poschl_teller_spectrum(report):
    model = make_model(make_system("one_minus_s2", -4, 0))
    rep, dt = _timed_solve(model, n_grid=3000, window=(1e-6, math.pi - 1e-6), n_levels=3)
    fd = rep.fd_eigenvalues[:3]
    ok = rep.analytic == [0.0, 4.0, 10.0] and rep.matches(rtol=1e-2) and dt < 10
    assert report("7c", ok, f"Poschl-Teller FD {np.round(fd, 4).tolist()} vs [0, 4, 10], {dt:.2f}s")
    assert ok


def test_c8_pointwise_identities(report):
    worst = {}
    failures = []
    cases = set()
    for sys in GRID:
        cases.add(sys.case)
        top = sys.max_index(3)
        for m in range(min(top, 1) + 1):
            for key, val in pointwise_schrodinger(sys, m).items():
                if math.isnan(val):
                    continue
                worst[key] = max(worst.get(key, 0.0), val)
                if not val < SCHRODINGER_TOLS[key]:
                    failures.append((sys.describe(), m, key, val))
            sl = PolySystemSlice(sys)
            for l in range(m, top + 1):
                ns = norm_sq(sys, assoc_from_phi(sl, l, m))
                err = abs(BoundState(make_model(sys, m), l, sl).norm_sq_x() - ns) / ns
                worst["norm_x_vs_s"] = max(worst.get("norm_x_vs_s", 0.0), err)
                if not err < SCHRODINGER_TOLS["norm_x_vs_s"]:
                    failures.append((sys.describe(), l, m, "norm", err))
    ok = not failures and cases == set(CaseTag)
    summary = ", ".join(f"{k} {v:.1e}" for k, v in sorted(worst.items()))
    assert report("8", ok, f"{len(cases)} cases; worst: {summary}; failures {failures[:2]}")
    assert ok
