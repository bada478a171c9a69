"""Compare the compiled RK4 kernels against the pure-Python reference.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--steps N]

Reports per-step cost of the constant-drift and time-dependent integrators
for both backends, plus the speedup and the max deviation between outputs.
"""
import argparse
import time

import numpy as np

from omsim._core import _pyref

try:
    from omsim._core import _fast
except ImportError:
    _fast = None

KAPPA, GAMMA1, GAMMA2 = 1 / 2000, 1.0, 1 / 2000
DELTA, GP, GM = 1.0, 0.918 * 2.5, 2.5
W1, W2 = 10.0, 100.0
D_DIAG = np.array([KAPPA / 2, KAPPA / 2, 0.5, 0.5, GAMMA2 / 2, GAMMA2 / 2])
SIGMA0 = np.eye(6) / 2


def time_call(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return time.perf_counter() - t0, result


def bench(label, py_fn, fast_fn, args, n_steps, pick=lambda r: r):
    t_py, r_py = time_call(py_fn, *args)
    print(f"{label:14s} pure-python  {t_py / n_steps * 1e6:10.2f} us/step "
          f"({t_py:.3f} s total)")
    if fast_fn is None:
        return
    t_fast, r_fast = time_call(fast_fn, *args)
    dev = float(np.max(np.abs(np.asarray(pick(r_py), dtype=float)
                              - np.asarray(pick(r_fast), dtype=float))))
    print(f"{label:14s} compiled     {t_fast / n_steps * 1e9:10.2f} ns/step "
          f"({t_fast:.3f} s total)  speedup {t_py / t_fast:8.1f}x  "
          f"max deviation {dev:.2e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=20_000,
                        help="RK4 steps per benchmark (default 20000)")
    args = parser.parse_args()
    n = args.steps
    h = 1e-4

    if _fast is None:
        print("compiled backend unavailable; timing the fallback only\n")

    M = np.diag([-0.1] * 6) + 0.05 * np.eye(6, k=1)
    bench("evolve_const", _pyref.evolve_const,
          _fast.evolve_const if _fast else None,
          (M, D_DIAG, SIGMA0, 0.0, h, n, 1), n, pick=lambda r: r[1])

    full_args = (KAPPA, GAMMA1, GAMMA2, DELTA, GP, GM, W1, W2,
                 SIGMA0, D_DIAG, 0.0, h, n, 1)
    bench("evolve_full", _pyref.evolve_full,
          _fast.evolve_full if _fast else None,
          full_args, n, pick=lambda r: r[1])

    prop_args = (KAPPA, GAMMA1, GAMMA2, DELTA, GP, GM, W1, W2, 0.0, h, n)
    bench("propagator", _pyref.propagator_full,
          _fast.propagator_full if _fast else None, prop_args, n)


if __name__ == "__main__":
    main()
