#!/usr/bin/env python3
"""Time the hot kernels with numba and with the pure-Python/numpy fallback.

Each backend runs in its own interpreter because the backend is fixed at
import time by RECLINDLEY_DISABLE_NUMBA. Usage:

    python benchmarks/bench_kernels.py [--draws 200000] [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
import numpy as np
from reclindley import RegParams, RngState
from reclindley._accel import USE_NUMBA
from reclindley.sampler import sample_many
from reclindley.specfun import reg_upper_gamma, digamma
from reclindley.relsim import system_reliability_mc

draws, repeat = int(sys.argv[1]), int(sys.argv[2])
p_int = RegParams(3.0, 0.05, 3)
p_frac = RegParams(2.7, 0.05, 3)
a = np.geomspace(1e-2, 1e2, 20_000)
x = np.geomspace(1e-2, 1e2, 20_000)[::-1]

def best(fn):
    fn()  # warm-up, includes compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)

out = {
    "numba": USE_NUMBA,
    "sample integer alpha": best(lambda: sample_many(p_int, draws, RngState(1))),
    "sample fractional alpha": best(lambda: sample_many(p_frac, draws, RngState(1))),
    "reg_upper_gamma 20k": best(lambda: reg_upper_gamma(a, x)),
    "digamma 20k": best(lambda: digamma(a)),
    "parallel MC": best(lambda: system_reliability_mc(p_int, [10.0, 50.0], "parallel", draws // 2, RngState(2))),
}
print(json.dumps(out))
"""


def run(disable, draws, repeat):
    env = dict(os.environ, RECLINDLEY_DISABLE_NUMBA="1" if disable else "0")
    proc = subprocess.run([sys.executable, "-c", CHILD, str(draws), str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--draws", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.draws, args.repeat)
    slow = run(True, args.draws, args.repeat)
    print(f"{'kernel':<26}{'numba [s]':>12}{'fallback [s]':>14}{'speedup':>10}")
    for key in fast:
        if key == "numba":
            continue
        print(f"{key:<26}{fast[key]:>12.4f}{slow[key]:>14.4f}{slow[key] / fast[key]:>9.1f}x")
    if not fast["numba"]:
        print("numba unavailable; both columns used the fallback")


if __name__ == "__main__":
    main()
