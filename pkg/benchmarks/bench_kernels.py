"""Compare the numba kernels with the plain-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 20000] [--repeat 3]

The fallback is selected by SPHCOLLAPSE_DISABLE_NUMBA=1 at import time, so
each backend runs in its own interpreter. Timings exclude the first call,
which for numba includes compilation (or loading the on-disk cache).
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
import sphcollapse as sc
from sphcollapse import specfun

n, repeat = int(sys.argv[1]), int(sys.argv[2])
sol_m4 = sc.solution(-4.0)
sol_p3 = sc.solution(3.0)
t = np.linspace(0.0, sol_m4.tau, n)
r = np.linspace(0.0, 1.0, n)
u = np.linspace(-10.0, 10.0, n)

def cn_loop():
    for x in u:
        specfun.jacobi_cn(float(x), 0.5)

workloads = {
    "evaluate_r(gamma=-4)": lambda: sc.evaluate_r(sol_m4, t),
    "evaluate_t(gamma=3)": lambda: sc.evaluate_t(sol_p3, r),
    "integrate_reference(gamma=-2)": lambda: sc.integrate_reference(-2.0),
    "jacobi_cn loop": cn_loop,
}
out = {"backend": sc.backend(), "timings": {}}
for name, fn in workloads.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    out["timings"][name] = best
json.dump(out, sys.stdout)
"""


def run_backend(disable, n, repeat):
    env = dict(os.environ)
    env.pop("SPHCOLLAPSE_DISABLE_NUMBA", None)
    if disable:
        env["SPHCOLLAPSE_DISABLE_NUMBA"] = "1"
    res = subprocess.run(
        [sys.executable, "-c", WORKER, str(n), str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(res.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000, help="points per vectorised workload")
    ap.add_argument("--repeat", type=int, default=3, help="timed repetitions, best is reported")
    args = ap.parse_args(argv)

    fast = run_backend(False, args.n, args.repeat)
    slow = run_backend(True, args.n, args.repeat)
    if fast["backend"] != "numba":
        print("numba is not available; both columns use the Python fallback")
    width = max(len(k) for k in fast["timings"])
    print(f"{'workload':<{width}}  {'numba [s]':>10}  {'python [s]':>10}  {'speedup':>8}")
    for name, t_fast in fast["timings"].items():
        t_slow = slow["timings"][name]
        print(f"{name:<{width}}  {t_fast:10.4f}  {t_slow:10.4f}  {t_slow / t_fast:8.1f}x")


if __name__ == "__main__":
    main()
