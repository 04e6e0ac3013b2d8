"""Verification suites run by ``hyperortho check``.

Every suite walks a list of systems (the built-in grid below unless one is
given) and records one row per individual check.  Exact checks report their
residual as a ``"num/den"`` string; numeric checks report a float.
"""

from __future__ import annotations

import json
import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from .classical import (ComplexRational, default_sample_points, proportionality_check,
                        proportionality_check_float, theorem2_reference)
from .errors import HyperOrthoError, WindowTooSmall
from .exactpoly import RationalPoly, format_rational
from .ladder import assoc_from_phi, ladder_residuals
from .polygen import (PolySystemSlice, generate_phi, generate_phi_rodrigues, ode_residual,
                      phi_zeros, recurrence_coeffs, recurrence_residual)
from .quad import QuadRule, norm_ladder_check, norm_sq, orthogonality_matrix, square_integrability_check
from .schrodinger import (BoundState, change_of_variable_residual, default_window,
                          example_closed_forms, fd_eigensolve, ground_state_relations, make_model,
                          numeric_W_dot, potential_V, psi_eval, superpotential_W,
                          superpotential_W_dot, x_ladder_apply, x_lower_chain, x_sample_points)
from .system import CaseTag, HyperSystem, lambda_l, make_system

SUITES = ("ode", "rodrigues", "orthogonality", "theorem2", "ladder", "norms", "recurrence",
          "schrodinger")

# at least three admissible samples per case
PARAMETER_GRID = {
    CaseTag.CONST: [("-2", "0"), ("-1/2", "1"), ("-3", "-2/3")],
    CaseTag.LINEAR: [("-1", "1"), ("-2", "1/2"), ("-1/3", "3")],
    CaseTag.ONE_MINUS_S2: [("-5", "1"), ("-3", "1"), ("-4", "0"), ("-7/2", "-1/2")],
    CaseTag.S2_MINUS_ONE: [("-25", "30"), ("-8", "9"), ("-13/2", "7")],
    CaseTag.S2: [("-10", "2"), ("-6", "4"), ("-25", "3"), ("-4", "2")],
    CaseTag.S2_PLUS_ONE: [("-4", "2"), ("-25", "1"), ("-7", "-3/2"), ("-2", "2")],
}

DEFAULT_LMAX = {"ode": 12, "rodrigues": 12, "orthogonality": 6, "theorem2": 8, "ladder": 10,
                "norms": 6, "recurrence": 10, "schrodinger": 3}


def grid_systems() -> list[HyperSystem]:
    return [make_system(case, a, b) for case, pairs in PARAMETER_GRID.items() for a, b in pairs]


def random_admissible(case: CaseTag, rng: random.Random) -> HyperSystem:
    """A random admissible system with small rational parameters."""
    d = rng.randint(1, 3)
    if case is CaseTag.CONST:
        al, be = -Fraction(rng.randint(1, 8), d), Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    elif case in (CaseTag.LINEAR, CaseTag.S2):
        al, be = -Fraction(rng.randint(1, 24), d), Fraction(rng.randint(1, 12), rng.randint(1, 3))
    elif case is CaseTag.ONE_MINUS_S2:
        a = rng.randint(2, 20)
        al, be = -Fraction(a, d), Fraction(rng.randint(-a + 1, a - 1), d)
    elif case is CaseTag.S2_MINUS_ONE:
        a = rng.randint(3, 24)
        al, be = -Fraction(a, d), Fraction(a + rng.randint(1, 12), d)
    else:
        al, be = -Fraction(rng.randint(2, 24), d), Fraction(rng.randint(-8, 8), rng.randint(1, 3))
    return make_system(case, al, be)


def random_systems(seed: int, per_case: int = 2) -> list[HyperSystem]:
    rng = random.Random(seed)
    return [random_admissible(c, rng) for c in CaseTag for _ in range(per_case)]


@dataclass
class SuiteConfig:
    tol_abs: float = 1e-10
    tol_rel: float = 1e-8
    l_max: Optional[int] = None
    seed: Optional[int] = None
    threads: Optional[int] = None

    def rule(self) -> QuadRule:
        return QuadRule(tol_abs=self.tol_abs)

    def worker_count(self) -> int:
        if self.threads is not None:
            return max(1, self.threads)
        env = os.environ.get("HYPERORTHO_THREADS")
        if env:
            return max(1, int(env))
        return min(8, os.cpu_count() or 1)


@dataclass
class CheckRow:
    system: dict
    check: str
    l: Optional[int]
    m: Optional[int]
    residual: object
    status: str  # pass | fail | skipped
    note: str = ""


@dataclass
class SuiteReport:
    suite: str
    config: dict
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.rows)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.rows:
            out[r.status] += 1
        return out

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "counts": self.counts(),
                "config": self.config, "results": [asdict(r) for r in self.rows]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _max_coeff(p: RationalPoly) -> Fraction:
    return max((abs(c) for c in p.coeffs), default=Fraction(0))


def _exact_row(sys, check, l, m, value: Fraction, note: str = "") -> CheckRow:
    return CheckRow(sys.to_descriptor(), check, l, m, format_rational(value),
                    "pass" if value == 0 else "fail", note)


def _num_row(sys, check, l, m, value: float, tol: float, note: str = "") -> CheckRow:
    ok = bool(np.isfinite(value)) and value <= tol
    return CheckRow(sys.to_descriptor(), check, l, m, float(value), "pass" if ok else "fail", note)


def _error_row(sys, check, l, m, exc: Exception) -> CheckRow:
    return CheckRow(sys.to_descriptor(), check, l, m, None, "fail", f"{type(exc).__name__}: {exc}")


def _top(sys: HyperSystem, cap: int) -> int:
    return sys.max_index(cap)


# ----------------------------------------------------------------------------
# individual suites; each maps one system to a list of rows


def suite_ode(sys: HyperSystem, cfg: SuiteConfig) -> list[CheckRow]:
    rows = []
    for l in range(_top(sys, cfg.l_max) + 1):
        p = generate_phi(sys, l)
        rows.append(_exact_row(sys, "ode_residual", l, None, _max_coeff(ode_residual(sys, l, p))))
        deg_ok = p.degree == l and p.leading == 1
        rows.append(CheckRow(sys.to_descriptor(), "monic_degree", l, None, p.degree,
                             "pass" if deg_ok else "fail"))
    return rows


def suite_rodrigues(sys: HyperSystem, cfg: SuiteConfig) -> list[CheckRow]:
    rows = []
    for l in range(_top(sys, cfg.l_max) + 1):
        diff = generate_phi(sys, l) - generate_phi_rodrigues(sys, l)
        rows.append(_exact_row(sys, "rodrigues_vs_recursion", l, None, _max_coeff(diff)))
    return rows


def suite_orthogonality(sys: HyperSystem, cfg: SuiteConfig) -> list[CheckRow]:
    rows = []
    top = _top(sys, cfg.l_max)
    rule = cfg.rule()
    for m in range(min(top, 2) + 1):
        try:
            gram = orthogonality_matrix(sys, m, top, rule)
        except HyperOrthoError as exc:
            rows.append(_error_row(sys, "gram_offdiag", None, m, exc))
            continue
        rel = gram.relative_offdiag()
        for i, l in enumerate(gram.indices):
            for j, k in enumerate(gram.indices):
                if j <= i:
                    continue
                if gram.claimed[i, j]:
                    rows.append(_num_row(sys, "gram_offdiag", l, m, rel[i, j], cfg.tol_rel,
                                         note=f"pair ({l},{k})"))
                else:
                    rows.append(CheckRow(sys.to_descriptor(), "gram_offdiag", l, m, float(rel[i, j]),
                                         "skipped", note=f"pair ({l},{k}): l+k >= -alpha"))
    for l in range(top + 1):
        for m in range(l + 1):
            ok = square_integrability_check(sys, l, m, rule)
            rows.append(CheckRow(sys.to_descriptor(), "square_integrable", l, m, ok,
                                 "pass" if ok else "fail"))
    return rows


def suite_theorem2(sys: HyperSystem, cfg: SuiteConfig) -> list[CheckRow]:
    rows = []
    for l in range(_top(sys, cfg.l_max) + 1):
        phi = generate_phi(sys, l)
        ref = theorem2_reference(sys, l)
        try:
            if ref.exact:
                c = proportionality_check(phi.eval_exact, ref, default_sample_points(l + 3))
                shown = str(c) if isinstance(c, ComplexRational) else format_rational(c)
                rows.append(CheckRow(sys.to_descriptor(), "proportional", l, None, shown, "pass",
                                     note=f"{ref.family}{ref.params and ' ' + str(tuple(str(p) for p in ref.params)) or ''}"))
                if sys.case is CaseTag.S2_PLUS_ONE:
                    im = _max_coeff(ref.poly.im)
                    rows.append(_exact_row(sys, "imaginary_part", l, None, im))
            else:
                pts = np.linspace(-2.0, 3.0, 20) + 1 / 97
                c = proportionality_check_float(phi.eval_float, ref.float_fn, pts, tol=1e-10)
                rows.append(CheckRow(sys.to_descriptor(), "proportional_float", l, None, c, "pass",
                                     note="irrational Hermite scaling, tol 1e-10"))
        except HyperOrthoError as exc:
            rows.append(_error_row(sys, "proportional", l, None, exc))
    return rows


def suite_ladder(sys: HyperSystem, cfg: SuiteConfig) -> list[CheckRow]:
    res = ladder_residuals(sys, _top(sys, cfg.l_max))
    return [_exact_row(sys, key, None, None, val) for key, val in res.items()]


def suite_norms(sys: HyperSystem, cfg: SuiteConfig) -> list[CheckRow]:
    rows = []
    rule = cfg.rule()
    for l in range(1, _top(sys, cfg.l_max) + 1):
        try:
            diffs = norm_ladder_check(sys, l, rule)
        except HyperOrthoError as exc:
            rows.append(_error_row(sys, "norm_ladder", l, None, exc))
            continue
        for m, d in enumerate(diffs):
            gap = float(lambda_l(sys, l) - lambda_l(sys, m))
            rows.append(_num_row(sys, "norm_ladder", l, m, abs(d) / gap, cfg.tol_rel))
    return rows


def zeros_report(sys: HyperSystem, sl: PolySystemSlice, l: int) -> tuple[bool, str]:
    """Zeros of ``Phi_l`` inside (a, b), simple, and interlaced with ``Phi_{l+1}``."""
    a, b = sys.interval
    z = phi_zeros(sl, l)
    if len(z) != l:
        return False, f"{len(z)} zeros for degree {l}"
    if any(not a < t < b for t in z):
        return False, "zero outside (a,b)"
    for u, v in zip(z, z[1:]):
        if not v - u > 1e-9 * max(1.0, abs(u), abs(v)):
            return False, f"zeros {u} and {v} not separated"
    if l + 1 < sys.nu and l >= 1:
        w = phi_zeros(sl, l + 1)
        inter = all(w[i] < z[i] < w[i + 1] for i in range(l))
        if not inter:
            return False, f"zeros of Phi_{l} and Phi_{l + 1} do not interlace"
    return True, ""


def suite_recurrence(sys: HyperSystem, cfg: SuiteConfig) -> list[CheckRow]:
    rows = []
    sl = PolySystemSlice(sys)
    top = _top(sys, cfg.l_max)
    for l in range(top + 1):
        if l + 1 <= sys.max_index(top + 1):
            try:
                rc = recurrence_coeffs(sl, l)
                rows.append(_exact_row(sys, "three_term", l, None, _max_coeff(recurrence_residual(sl, rc)),
                                       note=f"beta_l={format_rational(rc.beta_l)}"
                                            + ("" if rc.gamma_l is None else f" gamma_l={format_rational(rc.gamma_l)}")))
                rows.append(_exact_row(sys, "alpha_l_is_one", l, None, rc.alpha_l - 1))
            except HyperOrthoError as exc:
                rows.append(_error_row(sys, "three_term", l, None, exc))
        try:
            ok, why = zeros_report(sys, sl, l)
        except HyperOrthoError as exc:
            ok, why = False, f"{type(exc).__name__}: {exc}"
        rows.append(CheckRow(sys.to_descriptor(), "zeros", l, None, ok, "pass" if ok else "fail", why))
    return rows


def _rel_err(a, b) -> float:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1.0)))


def pointwise_schrodinger(sys: HyperSystem, m: int) -> dict[str, float]:
    """Relative errors of the pointwise x-space identities at one ``m``.

    Keys: ``cov`` (ds/dx = sign kappa), ``riccati`` (analytic W dot),
    ``riccati_numeric``, ``partner`` (V_{m+1} from W_m; nan if unavailable),
    ``ground_W``, ``ground_V``, ``example_W``, ``example_V`` (nan if the case
    has no closed form).
    """
    sl = PolySystemSlice(sys)
    model = make_model(sys, m)
    x = x_sample_points(model)
    w, v = superpotential_W(model, x), potential_V(model, x)
    lam_m = float(lambda_l(sys, m))
    out = {"cov": change_of_variable_residual(model)}
    out["riccati"] = _rel_err(w ** 2 - model.sign * superpotential_W_dot(model, x) + lam_m, v)
    out["riccati_numeric"] = _rel_err(w ** 2 - model.sign * numeric_W_dot(model, x) + lam_m, v)
    out["partner"] = math.nan
    if m + 1 < sys.nu:
        v_next = potential_V(make_model(sys, m + 1), x)
        out["partner"] = _rel_err(w ** 2 + model.sign * superpotential_W_dot(model, x) + lam_m, v_next)
    wg, vg = ground_state_relations(model, sl, x)
    out["ground_W"] = _rel_err(wg, w)
    out["ground_V"] = _rel_err(vg, v)
    closed = example_closed_forms(model)
    out["example_W"] = out["example_V"] = math.nan
    if closed is not None:
        out["example_W"] = _rel_err(closed[0](x), w)
        out["example_V"] = _rel_err(closed[1](x), v)
    return out


def grid_ladder_errors(sys: HyperSystem, l: int, m: int, n: int = 100001,
                       trim: float = 0.01) -> dict[str, float]:
    """Grid versions of raising, lowering, chain and annihilation at ``(l, m)``.

    Errors are relative to the peak of the target and measured on the points
    left after trimming ``trim`` of the grid at each end.
    """
    sl = PolySystemSlice(sys)
    model, upper = make_model(sys, m), make_model(sys, m + 1)
    lo, hi = default_window(model, [l], tol=1e-10)
    x = np.linspace(lo, hi, n)
    core = slice(int(trim * n), n - int(trim * n))
    psi, psi_up = psi_eval(model, sl, l, x), psi_eval(upper, sl, l, x)
    gap = float(lambda_l(sys, l) - lambda_l(sys, m))

    def rel(a, b):
        return float(np.max(np.abs(a - b)[core]) / np.max(np.abs(b)[core]))

    out = {"raise": rel(x_ladder_apply(model, "raise", x, psi), psi_up),
           "lower": rel(x_ladder_apply(model, "lower", x, psi_up), gap * psi),
           "factorization": rel(x_ladder_apply(model, "lower", x, x_ladder_apply(model, "raise", x, psi))
                                + float(lambda_l(sys, m)) * psi, float(lambda_l(sys, l)) * psi),
           "chain": rel(x_lower_chain(sys, sl, l, m, x), psi)}
    ground = psi_eval(model, sl, m, x)
    out["annihilate"] = float(np.max(np.abs(x_ladder_apply(model, "raise", x, ground))[core])
                              / np.max(np.abs(ground)[core]))
    return out


SCHRODINGER_TOLS = {"cov": 1e-6, "riccati": 1e-8, "riccati_numeric": 1e-5, "partner": 1e-8,
                    "ground_W": 1e-5, "ground_V": 1e-5, "example_W": 1e-10, "example_V": 1e-10,
                    "raise": 1e-5, "lower": 1e-5, "chain": 1e-5, "annihilate": 1e-5,
                    "factorization": 1e-4, "norm_x_vs_s": 1e-6, "fd_spectrum": 1e-2}


def suite_schrodinger(sys: HyperSystem, cfg: SuiteConfig) -> list[CheckRow]:
    rows = []
    top = _top(sys, cfg.l_max)
    sl = PolySystemSlice(sys)
    for m in range(min(top, 1) + 1):
        for key, val in pointwise_schrodinger(sys, m).items():
            if math.isnan(val):
                continue
            rows.append(_num_row(sys, key, None, m, val, SCHRODINGER_TOLS[key]))
        for l in range(m, top + 1):
            bs = BoundState(make_model(sys, m), l, sl)
            ns = norm_sq(sys, assoc_from_phi(sl, l, m), cfg.rule())
            rows.append(_num_row(sys, "norm_x_vs_s", l, m, abs(bs.norm_sq_x() - ns) / ns,
                                 SCHRODINGER_TOLS["norm_x_vs_s"]))
        if m < top:
            for key, val in grid_ladder_errors(sys, m + 1, m).items():
                rows.append(_num_row(sys, "grid_" + key, m + 1, m, val, SCHRODINGER_TOLS[key]))
    try:
        rep = fd_eigensolve(make_model(sys, 0), n_grid=3000, n_levels=min(top + 1, 4))
        for l, r, a in zip(rep.levels, rep.residuals, rep.analytic):
            rows.append(_num_row(sys, "fd_spectrum", l, 0, abs(r) / max(abs(a), 1.0),
                                 SCHRODINGER_TOLS["fd_spectrum"]))
    except WindowTooSmall as exc:
        # the Dirichlet oracle needs states that vanish at both window edges;
        # states finite (or slowly vanishing) at a finite end are out of its reach
        rows.append(CheckRow(sys.to_descriptor(), "fd_spectrum", None, 0, None, "skipped", str(exc)))
    except HyperOrthoError as exc:
        rows.append(_error_row(sys, "fd_spectrum", None, 0, exc))
    return rows


_RUNNERS: dict[str, Callable[[HyperSystem, SuiteConfig], list]] = {
    "ode": suite_ode, "rodrigues": suite_rodrigues, "orthogonality": suite_orthogonality,
    "theorem2": suite_theorem2, "ladder": suite_ladder, "norms": suite_norms,
    "recurrence": suite_recurrence, "schrodinger": suite_schrodinger,
}


def run_suite(name: str, systems: Optional[Iterable[HyperSystem]] = None,
              config: Optional[SuiteConfig] = None) -> SuiteReport:
    """Run one suite over ``systems`` (default: the built-in grid).

    With ``config.seed`` set, two random admissible systems per case are
    appended.  Work is spread over a thread pool; rows keep system order.
    """
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = config or SuiteConfig()
    if cfg.l_max is None:
        cfg = SuiteConfig(**{**asdict(cfg), "l_max": DEFAULT_LMAX[name]})
    systems = list(systems) if systems is not None else grid_systems()
    if cfg.seed is not None:
        systems += random_systems(cfg.seed)
    runner = _RUNNERS[name]

    def one(sys):
        try:
            return runner(sys, cfg)
        except HyperOrthoError as exc:
            return [_error_row(sys, name, None, None, exc)]

    with ThreadPoolExecutor(max_workers=cfg.worker_count()) as pool:
        chunks = list(pool.map(one, systems))
    report = SuiteReport(name, {k: v for k, v in asdict(cfg).items() if k != "threads"})
    for chunk in chunks:
        report.rows.extend(chunk)
    return report
