"""Command-line front end.

    hyperortho classify  --case s2 --alpha -10 --beta 2
    hyperortho polys     --case const --alpha -2 --beta 0 --lmax 2
    hyperortho assoc     --case const --alpha -2 --beta 0 --l 2 --m 1
    hyperortho check     ladder [--case ... --alpha ... --beta ...] [--lmax N]
    hyperortho potential --case s2 --alpha -6 --beta -4 --m 0 --xmin -2 --xmax 12 --n 256
    hyperortho eigen     --case const --alpha -2 --beta 0 --m 0 --window -8:8 --n 2000

Exit status: 0 success, 1 a verification failed, 2 bad usage or a domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import HyperOrthoError, NonConvergence, NumericalFailure
from .exactpoly import format_rational
from .ladder import assoc_from_phi
from .polygen import PolySystemSlice
from .schrodinger import fd_eigensolve, make_model, potential_V, superpotential_W
from .suites import SUITES, SuiteConfig, run_suite
from .system import RHO_TEXT, SIGMA_TEXT, HyperSystem, is_admissible, make_system, nu_cutoff

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# flags whose values may start with '-' (negative rationals, windows)
_VALUE_FLAGS = {"--alpha", "--beta", "--window", "--xmin", "--xmax", "--samples"}


@dataclass
class JobSpec:
    command: str
    case: Optional[str] = None
    alpha: Optional[str] = None
    beta: Optional[str] = None
    l: Optional[int] = None
    m: Optional[int] = None
    l_max: Optional[int] = None
    suite: Optional[str] = None
    options: dict = field(default_factory=dict)
    fmt: str = "json"
    out: Optional[str] = None
    tol_abs: float = 1e-10
    tol_rel: float = 1e-8
    seed: Optional[int] = None

    def system(self, strict: bool = True) -> HyperSystem:
        if self.case is None or self.alpha is None or self.beta is None:
            raise UsageError("--case, --alpha and --beta are required")
        return make_system(self.case, self.alpha, self.beta, strict=strict)


class UsageError(Exception):
    pass


def fmt_float(x: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(x), ".17g")


def _nu_text(sys: HyperSystem) -> str:
    nu = nu_cutoff(sys)
    return "inf" if nu == math.inf else format_rational(nu)


def _end_text(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return str(int(v)) if float(v).is_integer() else repr(v)


def _parse_range(text: str, with_count: bool = False):
    parts = text.split(":")
    if len(parts) != (3 if with_count else 2):
        raise UsageError(f"bad range {text!r}; expected lo:hi" + (":n" if with_count else ""))
    lo, hi = float(parts[0]), float(parts[1])
    if not lo < hi:
        raise UsageError(f"empty range {text!r}")
    if with_count:
        return lo, hi, int(parts[2])
    return lo, hi


# ----------------------------------------------------------------------------
# command bodies: each returns (payload for JSON, rows for CSV, exit code)


def classify_payload(sys: HyperSystem) -> dict:
    a, b = sys.interval
    return {**sys.to_descriptor(), "sigma": SIGMA_TEXT[sys.case],
            "tau": f"{format_rational(sys.alpha)}*s + {format_rational(sys.beta)}",
            "rho": RHO_TEXT[sys.case], "interval": f"({_end_text(a)},{_end_text(b)})",
            "nu": _nu_text(sys), "admissible": is_admissible(sys.case, sys.alpha, sys.beta)}


def cmd_classify(job: JobSpec):
    payload = classify_payload(job.system())
    return payload, [["key", "value"]] + [[k, str(v)] for k, v in payload.items()], EXIT_OK


def polys_payload(sys: HyperSystem, l_max: int, samples=None) -> dict:
    sl = PolySystemSlice.build(sys, l_max)
    payload = {"system": sys.to_descriptor(),
               "polys": [{"l": l, "coeffs": sl[l].to_strings()} for l in range(l_max + 1)]}
    if samples is not None:
        s = np.linspace(*samples)
        payload["samples"] = {"s": s.tolist(),
                              "values": [np.asarray(sl[l].eval_float(s), dtype=float).tolist()
                                         for l in range(l_max + 1)]}
    return payload


def cmd_polys(job: JobSpec):
    if job.l_max is None or job.l_max < 0:
        raise UsageError("--lmax must be a non-negative integer")
    samples = job.options.get("samples")
    payload = polys_payload(job.system(), job.l_max, samples)
    rows = [["l", "coefficients (ascending powers)"]]
    rows += [[str(p["l"])] + p["coeffs"] for p in payload["polys"]]
    if samples is not None:
        rows.append([])
        rows.append(["s"] + [f"phi_{l}" for l in range(job.l_max + 1)])
        vals = payload["samples"]
        for i, s in enumerate(vals["s"]):
            rows.append([fmt_float(s)] + [fmt_float(v[i]) for v in vals["values"]])
    return payload, rows, EXIT_OK


def assoc_payload(sys: HyperSystem, l: int, m: int, samples=None) -> dict:
    f = assoc_from_phi(PolySystemSlice(sys), l, m)
    payload = {"system": sys.to_descriptor(), "l": l, "m": m, "half_power": f.m,
               "p": f.p.to_strings()}
    if samples is not None:
        s = np.linspace(*samples)
        payload["samples"] = {"s": s.tolist(), "values": np.asarray(f.eval_float(sys, s)).tolist()}
    return payload


def cmd_assoc(job: JobSpec):
    if job.l is None or job.m is None:
        raise UsageError("--l and --m are required")
    samples = job.options.get("samples")
    payload = assoc_payload(job.system(), job.l, job.m, samples)
    rows = [["half_power", "p (ascending powers)"], [str(payload["half_power"])] + payload["p"]]
    if samples is not None:
        rows.append([])
        rows.append(["s", "value"])
        for s, v in zip(payload["samples"]["s"], payload["samples"]["values"]):
            rows.append([fmt_float(s), fmt_float(v)])
    return payload, rows, EXIT_OK


def cmd_check(job: JobSpec):
    systems = None
    if job.case is not None or job.alpha is not None or job.beta is not None:
        systems = [job.system()]
    cfg = SuiteConfig(tol_abs=job.tol_abs, tol_rel=job.tol_rel, l_max=job.l_max, seed=job.seed)
    report = run_suite(job.suite, systems, cfg)
    rows = [["case", "alpha", "beta", "check", "l", "m", "residual", "status", "note"]]
    for r in report.rows:
        res = r.residual
        if isinstance(res, float):
            res = fmt_float(res)
        rows.append([r.system["case"], r.system["alpha"], r.system["beta"], r.check,
                     "" if r.l is None else str(r.l), "" if r.m is None else str(r.m),
                     "" if res is None else str(res), r.status, r.note])
    return report.to_dict(), rows, EXIT_OK if report.passed else EXIT_FAIL


def potential_table(sys: HyperSystem, m: int, xmin: float, xmax: float, n: int):
    model = make_model(sys, m)
    x = np.linspace(xmin, xmax, n)
    return x, superpotential_W(model, x), potential_V(model, x)


def cmd_potential(job: JobSpec):
    hs = job.system(strict=False)
    if not is_admissible(hs.case, hs.alpha, hs.beta):
        print(f"warning: {hs.describe()} is not admissible; W and V are evaluated formally",
              file=sys.stderr)
    xmin, xmax, n = job.options["xmin"], job.options["xmax"], job.options["n"]
    x, w, v = potential_table(hs, job.m or 0, xmin, xmax, n)
    payload = {"system": hs.to_descriptor(), "m": job.m or 0,
               "x": x.tolist(), "W": w.tolist(), "V": v.tolist()}
    rows = [["x", "W", "V"]] + [[fmt_float(a), fmt_float(b), fmt_float(c)] for a, b, c in zip(x, w, v)]
    return payload, rows, EXIT_OK


def cmd_eigen(job: JobSpec):
    model = make_model(job.system(strict=not job.options.get("formal", False)), job.m or 0)
    rep = fd_eigensolve(model, n_grid=job.options["n"], window=job.options.get("window"),
                        n_levels=job.options.get("levels"))
    rows = [["level", "analytic", "fd", "residual"]]
    for i, e in enumerate(rep.fd_eigenvalues):
        if i < len(rep.levels):
            rows.append([str(rep.levels[i]), fmt_float(rep.analytic[i]), fmt_float(e),
                         fmt_float(rep.residuals[i])])
        else:
            rows.append(["", "", fmt_float(e), ""])
    return rep.to_dict(), rows, EXIT_OK


COMMANDS = {"classify": cmd_classify, "polys": cmd_polys, "assoc": cmd_assoc, "check": cmd_check,
            "potential": cmd_potential, "eigen": cmd_eigen}


# ----------------------------------------------------------------------------
# argument handling


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--alpha -10/1`` into ``--alpha=-10/1`` so argparse accepts it."""
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None, dest="fmt")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--tol-abs", type=float, default=1e-10)
    common.add_argument("--tol-rel", type=float, default=1e-8)
    common.add_argument("--seed", type=int, default=None,
                        help="add seeded random admissible systems to check suites")

    system = argparse.ArgumentParser(add_help=False)
    system.add_argument("--case")
    system.add_argument("--alpha", help='exact rational, e.g. "-10/1" or "-3"')
    system.add_argument("--beta")

    p = argparse.ArgumentParser(prog="hyperortho", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("classify", parents=[common, system], help="case data and cutoff")

    sp = sub.add_parser("polys", parents=[common, system], help="Phi_0 .. Phi_lmax")
    sp.add_argument("--lmax", type=int, required=True)
    sp.add_argument("--samples", help="lo:hi:n float sample grid in s")

    sp = sub.add_parser("assoc", parents=[common, system], help="associated function Phi_{l,m}")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--samples", help="lo:hi:n float sample grid in s")

    sp = sub.add_parser("check", parents=[common, system], help="run a verification suite")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--lmax", type=int, default=None)

    sp = sub.add_parser("potential", parents=[common, system], help="W_m and V_m on an x grid")
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--xmin", type=float, required=True)
    sp.add_argument("--xmax", type=float, required=True)
    sp.add_argument("--n", type=int, default=256)

    sp = sub.add_parser("eigen", parents=[common, system], help="finite-difference spectrum")
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--window", help="lo:hi in x; default chosen from the bound states")
    sp.add_argument("--n", type=int, default=2000)
    sp.add_argument("--levels", type=int, default=None)
    sp.add_argument("--formal", action="store_true",
                    help="skip the admissibility check on alpha, beta")
    return p


def parse_job(argv: Sequence[str]) -> JobSpec:
    ns = build_parser().parse_args(_join_negative_values(argv))
    default_fmt = "csv" if ns.command == "potential" else "json"
    job = JobSpec(command=ns.command, case=ns.case, alpha=ns.alpha, beta=ns.beta,
                  fmt=ns.fmt or default_fmt, out=ns.out, tol_abs=ns.tol_abs,
                  tol_rel=ns.tol_rel, seed=ns.seed)
    if ns.command in ("polys", "check"):
        job.l_max = ns.lmax
    if ns.command == "check":
        job.suite = ns.suite
    if ns.command == "assoc":
        job.l, job.m = ns.l, ns.m
    if ns.command in ("potential", "eigen"):
        job.m = ns.m
    if getattr(ns, "samples", None):
        job.options["samples"] = _parse_range(ns.samples, with_count=True)
    if ns.command == "potential":
        if not ns.xmin < ns.xmax or ns.n < 2:
            raise UsageError("need xmin < xmax and n >= 2")
        job.options.update(xmin=ns.xmin, xmax=ns.xmax, n=ns.n)
    if ns.command == "eigen":
        job.options.update(n=ns.n, levels=ns.levels, formal=ns.formal)
        if ns.window:
            job.options["window"] = _parse_range(ns.window)
    return job


def render(payload, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        job = parse_job(argv)
        payload, rows, code = COMMANDS[job.command](job)
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
    except (UsageError, TypeError, ValueError) as exc:
        # domain errors subclass ValueError; report their class name
        name = type(exc).__name__ if isinstance(exc, HyperOrthoError) else "usage"
        print(f"error: {name}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergence, NumericalFailure) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = render(payload, rows, job.fmt)
    if job.out:
        with open(job.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
