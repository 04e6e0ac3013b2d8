#!/usr/bin/env python3
"""Finite-difference spectra of the named potentials against lambda_l.

Prints one table per potential and, with ``--out``, writes the reports as
JSON.  The inadmissible Morse parameters (beta = -4) are included on
purpose: the solver runs without the bound-state window test and shows the
continuum above 49/4 instead of the levels 0, 6, 10, 12.

    python scripts/run_spectra.py [--out reports/spectra.json]
"""

import argparse
import json
import math
import time
from pathlib import Path

from hyperortho import fd_eigensolve, make_model, make_system

RUNS = [
    ("harmonic", ("const", -2, 0), dict(n_grid=2000, n_levels=3)),
    ("Morse, beta=+4", ("s2", -6, 4), dict(n_grid=4000)),
    ("Morse, beta=-4 (inadmissible)", ("s2", -6, -4),
     dict(n_grid=4000, window=(-2.0, 12.0), check_window=False)),
    ("Poschl-Teller", ("one_minus_s2", -4, 0), dict(n_grid=3000, window=(1e-6, math.pi - 1e-6), n_levels=3)),
    ("Rosen-Morse type", ("s2_plus_one", -25, 1), dict(n_grid=4000, n_levels=5)),
    ("Eckart type", ("s2_minus_one", -25, 30), dict(n_grid=4000, n_levels=5)),
    ("Morse, m=1", ("s2", -12, 3), dict(n_grid=3000, n_levels=4)),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)
    reports = {}
    for label, sys_args, kw in RUNS:
        m = 1 if "m=1" in label else 0
        model = make_model(make_system(*sys_args, strict=False), m)
        t0 = time.perf_counter()
        rep = fd_eigensolve(model, **kw)
        dt = time.perf_counter() - t0
        reports[label] = rep.to_dict()
        print(f"\n{label}: {model.sys.describe()}, m={m}, window "
              f"({rep.window[0]:.4g}, {rep.window[1]:.4g}), n={rep.n_grid}, {dt:.2f}s")
        for i, e in enumerate(rep.fd_eigenvalues):
            if i < len(rep.levels):
                print(f"  l={rep.levels[i]:2d}  lambda={rep.analytic[i]:10.4f}  fd={e:12.6f}  "
                      f"diff={rep.residuals[i]:+.2e}")
            else:
                print(f"        {'':17s}  fd={e:12.6f}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(reports, indent=2))


if __name__ == "__main__":
    main()
