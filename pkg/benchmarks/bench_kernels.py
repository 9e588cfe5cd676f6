"""Time the numba kernels against their pure-numpy twins.

    python benchmarks/bench_kernels.py [--size N] [--repeat R]

Kernel timings run in-process (both variants are always importable). The
end-to-end simulation is timed in two subprocesses, one per value of
GANOVA_DISABLE_NUMBA, since the flag is read at import.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from ganova import adjust, special
from ganova.adjust import METHODS

_SIM = (
    "import time; from ganova.simulate import SimConfig, simulate_type1;"
    "simulate_type1(SimConfig(5, 20, reps=200));"
    "t = time.perf_counter(); simulate_type1(SimConfig(5, 20, reps={reps}));"
    "print(time.perf_counter() - t)"
)


def best(fn, repeat):
    fn()  # compile / warm caches
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def row(name, t_nb, t_np):
    print(f"{name:<28}{t_nb * 1e3:>12.2f}{t_np * 1e3:>12.2f}{t_np / t_nb:>10.1f}x")


def sim_seconds(disable, reps):
    env = dict(os.environ, GANOVA_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", _SIM.format(reps=reps)], env=env,
                         check=True, capture_output=True, text=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=200_000, help="elements for the incomplete beta kernel")
    ap.add_argument("--rows", type=int, default=20_000, help="rows of 10 p-values for adjustment")
    ap.add_argument("--reps", type=int, default=10_000, help="replications for the simulation")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    x = rng.uniform(0, 1, args.size)
    a = np.full(args.size, 0.5)
    b = np.full(args.size, 28.0)
    P = rng.uniform(0, 1, (args.rows, 10))

    print(f"{'kernel':<28}{'numba ms':>12}{'numpy ms':>12}{'speedup':>11}")
    row("incomplete beta", best(lambda: special._betainc_array_nb(x, a, b, True, 1e-15, 10000), args.repeat),
        best(lambda: special._betainc_array_np(x, a, b, True, 1e-15, 10000), args.repeat))
    for method in ("bh", "hommel"):
        code = METHODS.index(method)
        row(f"adjust rows ({method})", best(lambda: adjust._adjust_rows_nb(P, code), args.repeat),
            best(lambda: adjust._adjust_rows_np(P, code), args.repeat))
    row(f"simulate G=5 n=20 x{args.reps}", sim_seconds(False, args.reps), sim_seconds(True, args.reps))


if __name__ == "__main__":
    main()
