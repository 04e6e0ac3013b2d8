"""Schroedinger-type form of the eigenproblem for ``H_m``.

A change of variable ``s = s(x)`` with ``ds/dx = sign * kappa(s)`` turns
``H_m Phi_{l,m} = lambda_l Phi_{l,m}`` into
``-Psi'' + V_m Psi = lambda_l Psi`` for
``Psi_{l,m}(x) = sqrt(kappa rho) * Phi_{l,m}`` evaluated at ``s(x)``.

Closed forms used below, with ``N(s) = tau(s) + (m - 1/2) sigma'(s)``:

* ``W_m = -N / (2 kappa)``                     (either sign)
* ``dW_m/dx = sign * (-N'/2 + N sigma' / (4 sigma))``
* ``V_m = lambda_m + N^2/(4 sigma) + N'/2 - N sigma'/(4 sigma)``

The finite-difference solver at the bottom is an independent check of the
spectrum and shares none of this algebra.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.linalg import eigh_tridiagonal

from .errors import GridTooCoarse, IndexBeyondCutoff, OutOfDomain, WindowTooSmall
from .polygen import PolySystemSlice
from .quad import log_abs_poly
from .system import CaseTag, HyperSystem, lambda_l, nu_cutoff

INF = math.inf


@dataclass(frozen=True)
class CoordMap:
    """``x -> s(x)`` with its derivative and accurate endpoint distances."""

    s_of_x: Callable
    ds_dx: Callable
    dists: Callable  # x -> (s - a, b - s)
    x_domain: tuple[float, float]
    sign: int
    label: str


def _const_map():
    inf = lambda x: np.full_like(np.asarray(x, dtype=float), np.inf)
    return CoordMap(lambda x: np.asarray(x, dtype=float), lambda x: np.ones_like(np.asarray(x, dtype=float)),
                    lambda x: (inf(x), inf(x)), (-INF, INF), +1, "s = x")


def change_of_variable(sys: HyperSystem) -> CoordMap:
    """Monotone solution of ``ds/dx = +-kappa(s)`` mapping ``(a', b')`` onto ``(a, b)``."""
    c = sys.case

    def inf(x):
        return np.full_like(np.asarray(x, dtype=float), np.inf)

    if c is CaseTag.CONST:
        return _const_map()
    if c is CaseTag.LINEAR:
        return CoordMap(lambda x: np.asarray(x, dtype=float) ** 2 / 4,
                        lambda x: np.asarray(x, dtype=float) / 2,
                        lambda x: (np.asarray(x, dtype=float) ** 2 / 4, inf(x)),
                        (0.0, INF), +1, "s = x^2/4")
    if c is CaseTag.ONE_MINUS_S2:
        return CoordMap(np.cos, lambda x: -np.sin(x),
                        lambda x: (2 * np.cos(np.asarray(x) / 2) ** 2, 2 * np.sin(np.asarray(x) / 2) ** 2),
                        (0.0, math.pi), -1, "s = cos x")
    if c is CaseTag.S2_MINUS_ONE:
        return CoordMap(np.cosh, np.sinh,
                        lambda x: (2 * np.sinh(np.asarray(x) / 2) ** 2, inf(x)),
                        (0.0, INF), +1, "s = cosh x")
    if c is CaseTag.S2:
        return CoordMap(np.exp, np.exp, lambda x: (np.exp(x), inf(x)),
                        (-INF, INF), +1, "s = exp x")
    return CoordMap(np.sinh, np.cosh, lambda x: (inf(x), inf(x)),
                    (-INF, INF), +1, "s = sinh x")


@dataclass
class PotentialModel:
    sys: HyperSystem
    m: int
    cmap: CoordMap

    @property
    def sign(self) -> int:
        return self.cmap.sign

    @property
    def x_domain(self) -> tuple[float, float]:
        return self.cmap.x_domain

    def check_x(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        lo, hi = self.x_domain
        if np.any(x <= lo) or np.any(x >= hi):
            raise OutOfDomain(f"x outside ({lo}, {hi})")
        return x

    def s_parts(self, x):
        x = self.check_x(x)
        s = self.cmap.s_of_x(x)
        da, db = self.cmap.dists(x)
        return s, da, db

    def kappa(self, x):
        s, da, db = self.s_parts(x)
        return np.exp(0.5 * self.sys.log_sigma(s, da, db))

    def _N(self, s):
        sig = self.sys.sigma_coeffs
        dsigma = sig[1] + 2 * sig[2] * s
        tau = float(self.sys.alpha) * s + float(self.sys.beta)
        return tau + (self.m - 0.5) * dsigma, dsigma

    def _N_prime(self):
        return float(self.sys.alpha) + (self.m - 0.5) * 2 * self.sys.sigma_coeffs[2]


def make_model(sys: HyperSystem, m: int = 0) -> PotentialModel:
    if m < 0 or not m < nu_cutoff(sys):
        raise IndexBeyondCutoff(f"m={m} is not below nu={nu_cutoff(sys)}")
    return PotentialModel(sys, m, change_of_variable(sys))


def superpotential_W(model: PotentialModel, x):
    """``W_m = -tau/(2 kappa) -+ (2m-1)/(2 kappa) * d kappa(s(x))/dx``.

    The upper sign belongs to ``ds/dx = +kappa``.  ``d kappa/dx`` is assembled
    from ``kappa'(s) = sigma'/(2 kappa)`` and the explicit ``ds/dx`` of the map.
    """
    s, da, db = model.s_parts(x)
    kap = np.exp(0.5 * model.sys.log_sigma(s, da, db))
    sig = model.sys.sigma_coeffs
    dsigma = sig[1] + 2 * sig[2] * s
    dkappa_dx = dsigma / (2 * kap) * model.cmap.ds_dx(np.asarray(x, dtype=float))
    tau = float(model.sys.alpha) * s + float(model.sys.beta)
    return -tau / (2 * kap) - model.sign * (2 * model.m - 1) / (2 * kap) * dkappa_dx


def superpotential_W_dot(model: PotentialModel, x):
    """Analytic ``dW_m/dx``."""
    s, da, db = model.s_parts(x)
    sigma = np.exp(model.sys.log_sigma(s, da, db))
    n, dsigma = model._N(s)
    return model.sign * (-model._N_prime() / 2 + n * dsigma / (4 * sigma))


def potential_V(model: PotentialModel, x):
    s, da, db = model.s_parts(x)
    sigma = np.exp(model.sys.log_sigma(s, da, db))
    n, dsigma = model._N(s)
    lam_m = float(lambda_l(model.sys, model.m))
    return lam_m + n * n / (4 * sigma) + model._N_prime() / 2 - n * dsigma / (4 * sigma)


def example_closed_forms(model: PotentialModel) -> Optional[tuple[Callable, Callable]]:
    """``(W_m, V_m)`` in the hand-simplified trigonometric/hyperbolic forms.

    Available for the four families with a named potential; ``None`` for the
    ``sigma = 1`` and ``sigma = s`` cases.
    """
    al, be, m = model.sys.alpha, model.sys.beta, model.m
    a_m = float((1 - al - 2 * m) / 2)
    a_pm = float((-1 - al + 2 * m) / 2)
    d = float(-be / 2)
    lam = float(lambda_l(model.sys, m))
    c = model.sys.case
    if c is CaseTag.ONE_MINUS_S2:
        def W(x):
            return a_pm / np.tan(x) + d / np.sin(x)

        def V(x):
            csc, cot = 1 / np.sin(x), 1 / np.tan(x)
            return (a_pm ** 2 - a_pm + d ** 2) * csc ** 2 + (2 * a_pm - 1) * d * cot * csc - a_pm ** 2 + lam
        return W, V
    if c is CaseTag.S2_MINUS_ONE:
        def W(x):
            return a_m / np.tanh(x) + d / np.sinh(x)

        def V(x):
            csch, coth = 1 / np.sinh(x), 1 / np.tanh(x)
            return (a_m ** 2 + a_m + d ** 2) * csch ** 2 + (2 * a_m + 1) * d * coth * csch + a_m ** 2 + lam
        return W, V
    if c is CaseTag.S2:
        def W(x):
            return a_m + d * np.exp(-x)

        def V(x):
            return d ** 2 * np.exp(-2 * x) + (2 * a_m + 1) * d * np.exp(-x) + a_m ** 2 + lam
        return W, V
    if c is CaseTag.S2_PLUS_ONE:
        def W(x):
            return a_m * np.tanh(x) + d / np.cosh(x)

        def V(x):
            sech, th = 1 / np.cosh(x), np.tanh(x)
            return (-a_m ** 2 - a_m + d ** 2) * sech ** 2 + (2 * a_m + 1) * d * th * sech + a_m ** 2 + lam
        return W, V
    return None


def psi_eval(model: PotentialModel, slice_: PolySystemSlice, l: int, x):
    """``Psi_{l,m}(x) = sqrt(kappa rho) * kappa^m * Phi_l^(m)`` at ``s = s(x)``."""
    m = model.m
    if not m <= l:
        raise IndexBeyondCutoff(f"need m <= l, got l={l}, m={m}")
    s, da, db = model.s_parts(x)
    p = slice_[l].derivative(m)
    log_sigma = model.sys.log_sigma(s, da, db)
    log_rho = model.sys.log_rho(s, da, db)
    lp, sgn = log_abs_poly(p, np.atleast_1d(s))
    lp = lp.reshape(np.shape(s))
    sgn = sgn.reshape(np.shape(s))
    with np.errstate(under="ignore"):
        return sgn * np.exp(0.25 * log_sigma + 0.5 * log_rho + 0.5 * m * log_sigma + lp)


def x_sample_points(model: PotentialModel, n: int = 32) -> np.ndarray:
    """Chebyshev-spaced points in a window where the potential is non-degenerate."""
    k = np.arange(n)
    t = np.cos((2 * k + 1) * np.pi / (2 * n))[::-1]
    lo, hi = model.x_domain
    if math.isfinite(lo) and math.isfinite(hi):
        return (lo + hi) / 2 + (hi - lo) / 2 * 0.98 * t
    if math.isfinite(lo):
        return lo + 0.25 + 3.0 * (1 + t)
    center = 0.0
    if model.sys.case is CaseTag.CONST:
        center = float(-model.sys.beta / model.sys.alpha)
    return center + 4.0 * t


def change_of_variable_residual(model: PotentialModel, n: int = 32, h: float = 1e-5) -> float:
    """Max relative gap between central-difference ``ds/dx`` and ``sign * kappa``."""
    x = x_sample_points(model, n)
    fd = (model.cmap.s_of_x(x + h) - model.cmap.s_of_x(x - h)) / (2 * h)
    target = model.sign * model.kappa(x)
    return float(np.max(np.abs(fd - target) / np.maximum(np.abs(target), 1e-300)))


# ----------------------------------------------------------------------------
# x-space ladder operators on sampled grids


def _grid_step(x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    steps = np.diff(x)
    h = float(steps.mean())
    if not np.allclose(steps, h, rtol=1e-9, atol=0):
        raise ValueError("x grid must be uniform")
    if h > 1e-3 * (x[-1] - x[0]):
        raise GridTooCoarse(f"step {h:.3e} exceeds 1e-3 of the window {x[-1] - x[0]:.3e}")
    return h


def x_ladder_apply(model: PotentialModel, direction: str, x, values) -> np.ndarray:
    """Apply ``sign d/dx + W_m`` (raise) or ``-sign d/dx + W_m`` (lower) on a grid.

    Derivatives are second-order central differences; the two end values use
    one-sided stencils and are less accurate.
    """
    h = _grid_step(x)
    values = np.asarray(values, dtype=float)
    d = np.gradient(values, h, edge_order=2)
    w = superpotential_W(model, x)
    if direction == "raise":
        return model.sign * d + w * values
    if direction == "lower":
        return -model.sign * d + w * values
    raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")


def x_lower_chain(sys: HyperSystem, slice_: PolySystemSlice, l: int, m: int, x) -> np.ndarray:
    """``Psi_{l,m}`` rebuilt on a grid from ``Psi_{l,l}`` by normalized lowering."""
    vals = psi_eval(make_model(sys, l), slice_, l, x)
    lam = lambda_l(sys, l)
    for k in range(l - 1, m - 1, -1):
        vals = x_ladder_apply(make_model(sys, k), "lower", x, vals) / float(lam - lambda_l(sys, k))
    return vals


def _richardson_d1(f, x, h):
    d = lambda t: (f(x + t) - f(x - t)) / (2 * t)
    return (4 * d(h) - d(2 * h)) / 3


def _richardson_d2(f, x, h):
    f0 = f(x)
    d = lambda t: (f(x + t) - 2 * f0 + f(x - t)) / (t * t)
    return (4 * d(h) - d(2 * h)) / 3


def _local_step(model: PotentialModel, x: np.ndarray, h: float) -> np.ndarray:
    # shrink the step near finite ends so x +- 2h stays well inside, and
    # where Psi varies fast (|Psi'/Psi| = |W|)
    lo, hi = model.x_domain
    w = np.abs(superpotential_W(model, x))
    return h * np.minimum(np.minimum(1.0, np.minimum(x - lo, hi - x)), 1.0 / np.maximum(w, 1.0))


def numeric_W_dot(model: PotentialModel, x, h: float = 1e-3):
    """``dW_m/dx`` by Richardson-extrapolated central differences."""
    x = np.asarray(x, dtype=float)
    return _richardson_d1(lambda t: superpotential_W(model, t), x, _local_step(model, x, h))


def ground_state_relations(model: PotentialModel, slice_: PolySystemSlice, x, h: float = 1e-3):
    """``(W, V)`` recovered from ``Psi_{m,m}`` by finite differences.

    Uses ``W_m = -sign * Psi'/Psi`` and ``V_m = Psi''/Psi + lambda_m``; the
    sample points must keep ``x +- 2h`` inside the domain.
    """
    m = model.m
    x = np.asarray(x, dtype=float)
    h = _local_step(model, x, h)
    psi = lambda t: psi_eval(model, slice_, m, t)
    p0 = psi(x)
    w = -model.sign * _richardson_d1(psi, x, h) / p0
    v = _richardson_d2(psi, x, h) / p0 + float(lambda_l(model.sys, m))
    return w, v


@dataclass
class BoundState:
    """``Psi_{l,m}`` of the model together with its eigenvalue ``lambda_l``."""

    model: PotentialModel
    l: int
    slice_: PolySystemSlice = None

    def __post_init__(self):
        if self.slice_ is None:
            self.slice_ = PolySystemSlice(self.model.sys)
        if not self.model.m <= self.l < nu_cutoff(self.model.sys):
            raise IndexBeyondCutoff(f"need m <= l < nu, got l={self.l}, m={self.model.m}")

    @property
    def m(self) -> int:
        return self.model.m

    @property
    def eigenvalue(self):
        return lambda_l(self.model.sys, self.l)

    def __call__(self, x):
        return psi_eval(self.model, self.slice_, self.l, x)

    def norm_sq_x(self, epsrel: float = 1e-11, tail_tol: float = 1e-12) -> float:
        """``integral |Psi|^2 dx`` by adaptive quadrature in ``x``.

        Infinite ends are cut where ``|Psi|`` drops below ``tail_tol`` of its
        peak, which leaves out a relative mass of order ``tail_tol**2``.
        """
        lo, hi = self.model.x_domain
        wlo, whi = default_window(self.model, [self.l], tol=tail_tol)
        a = lo if math.isfinite(lo) else wlo
        b = hi if math.isfinite(hi) else whi
        f = lambda t: float(self(np.array([t]))[0]) ** 2
        val, _ = quad(f, a, b, epsabs=0.0, epsrel=epsrel, limit=400)
        return val


# ----------------------------------------------------------------------------
# finite-difference oracle


@dataclass
class SpectrumReport:
    case: str
    alpha: str
    beta: str
    m: int
    n_grid: int
    window: tuple
    fd_eigenvalues: list
    analytic: list
    residuals: list
    levels: list
    boundary_ratio: float
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window"] = list(self.window)
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def matches(self, rtol: float = 0.0, atol: float = 0.0) -> bool:
        """``|fd - lambda| <= max(atol, rtol * max(|lambda|, 1))`` at every level."""
        return all(abs(r) <= max(atol, rtol * max(abs(a), 1.0))
                   for r, a in zip(self.residuals, self.analytic))


def target_levels(model: PotentialModel, n_levels: Optional[int] = None) -> list[int]:
    """Indices ``l >= m`` whose bound states the solver should reproduce."""
    nu = nu_cutoff(model.sys)
    top = model.sys.max_index() if math.isfinite(nu) else model.m + (n_levels or 3) - 1
    if n_levels is not None:
        top = min(top, model.m + n_levels - 1)
    return list(range(model.m, top + 1))


def boundary_ratio(model: PotentialModel, slice_: PolySystemSlice, levels: Sequence[int],
                   window: tuple[float, float], n_probe: int = 4001) -> float:
    """Largest ``|Psi(edge)| / max |Psi|`` over the targeted levels."""
    lo, hi = window
    xs = np.linspace(lo, hi, n_probe)
    worst = 0.0
    for l in levels:
        vals = np.abs(psi_eval(model, slice_, l, xs))
        peak = vals.max()
        if not np.isfinite(peak) or peak == 0:
            return math.inf
        worst = max(worst, vals[0] / peak, vals[-1] / peak)
    return float(worst)


def default_window(model: PotentialModel, levels: Sequence[int], tol: float = 1e-10) -> tuple[float, float]:
    """Smallest window found by doubling/halving whose edge values are below ``tol``."""
    sl = PolySystemSlice(model.sys)
    lo, hi = model.x_domain
    center = float(np.mean(x_sample_points(model, 8)))

    def edge_small(x_edge, xs_peak):
        for l in levels:
            peak = np.abs(psi_eval(model, sl, l, xs_peak)).max()
            if abs(psi_eval(model, sl, l, np.array([x_edge]))[0]) > tol * peak:
                return False
        return True

    probe = x_sample_points(model, 64)
    if math.isfinite(hi):
        right = hi - 1e-2
        while not edge_small(right, probe) and hi - right > 1e-14:
            right = hi - (hi - right) / 4
    else:
        right = center + 2.0
        while not edge_small(right, probe):
            right = center + 2 * (right - center)
            if right - center > 1e4:
                raise WindowTooSmall("bound states do not decay toward +inf")
    if math.isfinite(lo):
        left = lo + 1e-2
        while not edge_small(left, probe) and left - lo > 1e-14:
            left = lo + (left - lo) / 4
    else:
        left = center - 2.0
        while not edge_small(left, probe):
            left = center - 2 * (center - left)
            if center - left > 1e4:
                raise WindowTooSmall("bound states do not decay toward -inf")
    return float(left), float(right)


def fd_eigensolve(model: PotentialModel, n_grid: int = 2000, window: Optional[tuple] = None,
                  n_levels: Optional[int] = None, extra: int = 2,
                  boundary_tol: float = 1e-8, check_window: bool = True) -> SpectrumReport:
    """Lowest eigenvalues of ``-d^2/dx^2 + V_m`` with Dirichlet ends.

    The Laplacian is the 3-point stencil on ``n_grid`` interior points.  With
    ``check_window`` the analytic bound states must fall below
    ``boundary_tol`` of their peak at both window edges.
    """
    if n_grid < 500:
        raise ValueError("n_grid must be at least 500")
    levels = target_levels(model, n_levels)
    if window is None:
        window = default_window(model, levels)
    lo, hi = map(float, window)
    dlo, dhi = model.x_domain
    if not (dlo <= lo < hi <= dhi) or lo == dlo or hi == dhi:
        raise OutOfDomain(f"window {window} not inside ({dlo}, {dhi})")
    sl = PolySystemSlice(model.sys)
    ratio = math.nan
    if check_window:
        ratio = boundary_ratio(model, sl, levels, (lo, hi))
        if not ratio < boundary_tol:
            raise WindowTooSmall(
                f"bound-state edge ratio {ratio:.2e} >= {boundary_tol:.0e} on {window}")
    h = (hi - lo) / (n_grid + 1)
    x = lo + h * np.arange(1, n_grid + 1)
    diag = 2.0 / h ** 2 + potential_V(model, x)
    off = np.full(n_grid - 1, -1.0 / h ** 2)
    k = len(levels) + extra
    evals = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, k - 1))
    analytic = [float(lambda_l(model.sys, l)) for l in levels]
    resid = [float(e - a) for e, a in zip(evals, analytic)]
    notes = []
    if extra:
        notes.append(f"{extra} eigenvalue(s) beyond the targeted levels are reported but not compared")
    return SpectrumReport(model.sys.case.value, str(model.sys.alpha), str(model.sys.beta), model.m,
                          n_grid, (lo, hi), [float(e) for e in evals], analytic, resid, levels,
                          float(ratio), notes)
