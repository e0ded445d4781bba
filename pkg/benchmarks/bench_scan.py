#!/usr/bin/env python3
"""Benchmark the grid-scan kernel: compiled extension vs NumPy fallback.

The backend is chosen at import time, so the two timings run in separate
interpreter processes; the child is pinned to the fallback with
``SUBADD_PURE=1``.

Usage::

    python3 benchmarks/bench_scan.py            # compare both backends
    python3 benchmarks/bench_scan.py --single   # time the active backend only
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time


def time_scan(grid_n: int, repeats: int) -> dict:
    from subadd._backend import BACKEND_NAME
    from subadd.analytic_core import Params
    from subadd.search import ScanConfig, scan_gap_min

    params = Params(mu=1.2, sigma=0.05, alpha=0.05)
    cfg = ScanConfig(
        box=(-8.0, 8.0, -8.0, 8.0), grid_n=grid_n, refine_depth=0
    )
    scan_gap_min(2.0, params, cfg)  # warm-up (allocations, code paths)
    times = []
    report = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        report = scan_gap_min(2.0, params, cfg)
        times.append(time.perf_counter() - t0)
    best = min(times)
    return {
        "backend": BACKEND_NAME,
        "grid_n": grid_n,
        "evaluations": report.evaluations,
        "best_s": best,
        "median_s": statistics.median(times),
        "evals_per_s": report.evaluations / best,
        "min_gap": report.min_gap,
        "argmin": (report.argmin.x, report.argmin.y),
    }


def run_child(pure: bool, grid_n: int, repeats: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["SUBADD_PURE"] = "1"
    else:
        env.pop("SUBADD_PURE", None)
    out = subprocess.run(
        [
            sys.executable,
            os.path.abspath(__file__),
            "--single",
            "--grid-n",
            str(grid_n),
            "--repeats",
            str(repeats),
            "--json",
        ],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid-n", type=int, default=801, help="nodes per axis")
    ap.add_argument("--repeats", type=int, default=5, help="timed repetitions")
    ap.add_argument(
        "--single", action="store_true", help="time the active backend only"
    )
    ap.add_argument("--json", action="store_true", help="emit JSON")
    args = ap.parse_args()

    if args.single:
        result = time_scan(args.grid_n, args.repeats)
        if args.json:
            print(json.dumps(result))
        else:
            print(
                f"{result['backend']}: best {result['best_s']:.4f}s "
                f"({result['evals_per_s']:.3g} evals/s) on "
                f"{result['grid_n']}x{result['grid_n']}"
            )
        return 0

    compiled = run_child(False, args.grid_n, args.repeats)
    fallback = run_child(True, args.grid_n, args.repeats)

    print(f"grid: {args.grid_n} x {args.grid_n} over [-8, 8]^2, "
          f"best of {args.repeats}")
    for r in (compiled, fallback):
        print(
            f"  {r['backend']:>16}: {r['best_s']:.4f} s  "
            f"({r['evals_per_s']:.3g} evaluations/s)"
        )
    if compiled["backend"] == fallback["backend"]:
        print("note: compiled extension unavailable; both runs used the fallback")
    else:
        speedup = fallback["best_s"] / compiled["best_s"]
        print(f"  speedup: {speedup:.2f}x")
        same_min = compiled["min_gap"] == fallback["min_gap"]
        same_arg = compiled["argmin"] == fallback["argmin"]
        print(
            "  agreement: min_gap "
            + ("bitwise-identical" if same_min else "DIFFERS")
            + ", argmin "
            + ("identical" if same_arg else "DIFFERS")
        )
        if not (same_min and same_arg):
            print(f"    compiled: {compiled['min_gap']!r} at {compiled['argmin']}")
            print(f"    fallback: {fallback['min_gap']!r} at {fallback['argmin']}")
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
