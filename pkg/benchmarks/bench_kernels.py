"""Benchmark the numba kernels against the pure-numpy/Python fallback.

Runs every hot path under the active backend and under the fallback
implementations directly, so a single invocation compares both:

    python3 benchmarks/bench_kernels.py

Set DEMANDTIER_NO_NUMBA=1 to run the whole engine (including the sweep
timing) on the fallback path instead.
"""

import time

import numpy as np

from demandtier import LearningSpec, PreferenceSchedule, sweep
from demandtier import _kernels

COEFFS = (0.6, 0.8, 1.0, 1.2, 1.5)
ALPHA = 0.8144
E = 0.215


def timeit(fn, *args, repeat=20):
    fn(*args)  # warm-up / JIT compile
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def main():
    print(f"active backend: {_kernels.backend()}")
    grid = np.linspace(0.01, 14.0, 200_001)

    t_loop = timeit(_kernels.grid_residual_loop, grid, ALPHA, E, *COEFFS)
    t_vec = timeit(_kernels.grid_residual_numpy, grid, ALPHA, E, *COEFFS)
    label = "numba loop" if _kernels.NUMBA_ENABLED else "python loop"
    print(f"grid residual, 200k points: {label} {t_loop*1e3:8.3f} ms | numpy {t_vec*1e3:8.3f} ms")

    bisect_args = (3.5, 3.6, ALPHA, E, *COEFFS, 1e-12, 200)
    t_active = timeit(_kernels.bisect_root, *bisect_args, repeat=2000)
    print(f"bisection, one bracket:     active {t_active*1e6:8.2f} us", end="")
    if _kernels.NUMBA_ENABLED:
        t_py = timeit(_kernels.bisect_root.py_func, *bisect_args, repeat=2000)
        print(f" | python {t_py*1e6:8.2f} us")
    else:
        print()

    # 2000 periods keeps the growing productivities inside float range
    horizon = 2000
    sim_args = (1.0, 4.0, np.full(horizon, ALPHA), np.full(horizon, E), *COEFFS, horizon)
    t_active = timeit(_kernels.simulate_arrays, *sim_args, repeat=200)
    print(f"simulation, 2k periods:     active {t_active*1e3:8.3f} ms", end="")
    if _kernels.NUMBA_ENABLED:
        t_py = timeit(_kernels.simulate_arrays.py_func, *sim_args, repeat=200)
        print(f" | python {t_py*1e3:8.3f} ms")
    else:
        print()

    sched = PreferenceSchedule()
    spec = LearningSpec.cubic(nu=0.6, phi1=0.8, phi2=1.0, chi1=1.2, chi2=1.5)
    t_sweep = timeit(lambda: sweep(sched, spec), repeat=3)
    print(f"81-level education sweep:   {t_sweep*1e3:8.1f} ms under the active backend")


if __name__ == "__main__":
    main()
