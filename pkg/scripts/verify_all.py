#!/usr/bin/env python3
"""Run every verification suite on the built-in grid and write one JSON report.

    python scripts/verify_all.py --out reports/verify.json [--seed 1 --seed 3] [--lmax 6]

Exit status is 0 only if every suite passes.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from hyperortho.suites import SUITES, SuiteConfig, grid_systems, random_systems, run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("reports/verify.json"))
    ap.add_argument("--seed", type=int, action="append", default=[],
                    help="add two random admissible systems per case from this seed (repeatable)")
    ap.add_argument("--lmax", type=int, default=None, help="override each suite's default l_max")
    ap.add_argument("--suite", choices=SUITES, action="append", help="restrict to these suites")
    args = ap.parse_args(argv)

    systems = grid_systems()
    for seed in args.seed:
        systems += random_systems(seed)
    cfg = SuiteConfig(l_max=args.lmax)
    out = {"systems": [s.to_descriptor() for s in systems], "suites": {}}
    ok = True
    for name in args.suite or SUITES:
        t0 = time.perf_counter()
        rep = run_suite(name, systems, cfg)
        dt = time.perf_counter() - t0
        ok &= rep.passed
        out["suites"][name] = {**rep.to_dict(), "seconds": round(dt, 3)}
        c = rep.counts()
        print(f"{name:14s} {'pass' if rep.passed else 'FAIL'}  "
              f"{c['pass']:5d} pass {c['fail']:3d} fail {c['skipped']:3d} skipped  {dt:6.2f}s")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(out, indent=2))
    print(f"report written to {args.out}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
