"""Compare the numba kernels against the pure-numpy fallback.

Each backend runs in its own subprocess, since the backend is chosen at
import time from ``MEMGRAD_DISABLE_NUMBA``. Reports wall time per workload
(after a warm-up run, so compilation is excluded) and the largest
relative deviation between the two backends' ``f`` traces. Dense
mat-vecs sum in a different order under BLAS, so bitwise agreement is
only expected for the structured objectives.

    python3 benchmarks/bench_backends.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def workloads(quick: bool):
    import memgrad as mg
    from memgrad.algorithms import SolverConfig, solve
    from memgrad.harness import experiments

    n = 200 if quick else 1000
    ex1 = mg.make_ex1(n, 1e4)
    ex2 = mg.make_ex2(n)
    ros = mg.make_rosenbrock()
    c2 = ex2.claimed_class
    grid = experiments.ExperimentSpec("rastrigin-grid",
                                      {"grid_n": 5 if quick else 11, "max_iter": 1000}).settings

    def run(obj, cfg, x0, xstar="auto"):
        return solve(obj, cfg, x0, xstar=xstar).f_value

    return {
        "ex1 sigma6-re": lambda: run(ex1, SolverConfig(6, 1.0, 1e4, "restart", max_iter=2000),
                                     np.zeros(n)),
        "ex2 sigma6-ml": lambda: run(ex2, SolverConfig(6, c2.mu, c2.lip, "multileg",
                                                       max_iter=2000), np.zeros(n)),
        "rosenbrock sigma9-ml": lambda: run(ros, SolverConfig(9, 1e-5, 900.0, "multileg",
                                                              max_iter=1000),
                                            np.array([-1.0, 1.0]), None),
        "rastrigin grid": lambda: experiments.rastrigin_grid(grid)[1].ravel(),
    }


def child(repeat: int, quick: bool) -> None:
    t0 = time.perf_counter()
    import memgrad
    jobs = workloads(quick)
    out = {"backend": memgrad.BACKEND, "results": {}}
    for name, job in jobs.items():
        job()  # warm-up
        times = []
        for _ in range(repeat):
            t = time.perf_counter()
            f = job()
            times.append(time.perf_counter() - t)
        out["results"][name] = {"seconds": min(times), "f": [float(v) for v in f]}
    out["total_seconds"] = time.perf_counter() - t0
    json.dump(out, sys.stdout)


def spawn(disable: bool, repeat: int, quick: bool) -> dict:
    env = dict(os.environ, MEMGRAD_DISABLE_NUMBA="1" if disable else "0")
    cmd = [sys.executable, __file__, "--child", "--repeat", str(repeat)] + (["--quick"] if quick else [])
    proc = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller problems")
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    if args.child:
        child(args.repeat, args.quick)
        return 0

    fast = spawn(False, args.repeat, args.quick)
    slow = spawn(True, args.repeat, args.quick)
    print(f"{'workload':<24}{fast['backend']:>10}{slow['backend']:>10}{'speedup':>9}{'max rel df':>12}")
    worst = 0.0
    for name, a in fast["results"].items():
        b = slow["results"][name]
        fa, fb = np.array(a["f"]), np.array(b["f"])
        dev = float(np.max(np.abs(fa - fb) / np.maximum(1.0, np.abs(fa)))) if fa.shape == fb.shape else float("inf")
        worst = max(worst, dev)
        print(f"{name:<24}{a['seconds']:>9.3f}s{b['seconds']:>9.3f}s"
              f"{b['seconds'] / a['seconds']:>8.1f}x{dev:>12.3g}")
    print(f"process wall time incl. compilation: {fast['backend']} {fast['total_seconds']:.1f} s, "
          f"{slow['backend']} {slow['total_seconds']:.1f} s")
    print(f"max deviation between backends: {worst:.3g}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
