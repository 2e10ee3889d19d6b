"""Compare the numba and numpy RK4 moment kernels.

    python benchmarks/bench_moments.py [--steps 20000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from gausscascade import qsde_matrices, random_pure_state, synthesize_cascade
from gausscascade.kernels import rk4_moments_numba, rk4_moments_numpy


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=20000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--modes", type=int, nargs="+", default=[1, 2, 4, 6, 10])
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    stride = max(1, args.steps // 2000)
    print(f"{'n':>3} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8} {'max diff':>10}")
    for n in args.modes:
        q = qsde_matrices(synthesize_cascade(random_pure_state(n, rng)))
        m0 = rng.standard_normal(2 * n)
        V0 = 1.5 * np.eye(2 * n)
        call = (q.A, q.noise_quadratic, m0, V0, 1e-3, args.steps, stride)
        rk4_moments_numba(*call[:5], 2, 1)  # compile
        t_np = best_of(lambda: rk4_moments_numpy(*call), args.repeat)
        t_nb = best_of(lambda: rk4_moments_numba(*call), args.repeat)
        diff = max(np.max(np.abs(a - b)) for a, b in zip(rk4_moments_numpy(*call), rk4_moments_numba(*call)))
        print(f"{n:>3} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f} {diff:>10.1e}")


if __name__ == "__main__":
    main()
