"""Time the numba kernels against their pure-numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends live in ``grushinlab.kernels`` regardless of the
GRUSHINLAB_PURE_NUMPY flag, so one process can time them side by side.
Each kernel is called once to warm up (this is where numba compiles),
then timed as the best of ``repeat`` runs.  The last column is the largest
relative difference between the two outputs.
"""

import argparse
import time

import numpy as np

from grushinlab import kernels
from grushinlab.potential import theta_rule


def cases():
    rng = np.random.default_rng(0)
    u = np.logspace(-6, 6, 200_000)
    x = rng.random(200_000) * 0.999
    theta, wtheta = theta_rule()
    u0 = np.logspace(-2, 2, 64)
    v = np.logspace(-4, 4, 400)[None, :].repeat(u0.size, axis=0)
    a = rng.standard_normal(2048) + 1j * rng.standard_normal(2048)
    samples = rng.random(1_000_000)
    return {
        "hyp2f1_diag_array": lambda k: k.hyp2f1_diag_array(1.5, x),
        "psi_array": lambda k: k.psi_array(1.5, u),
        "radial_theta_sums": lambda k: k.radial_theta_sums(1.5, u0, v, theta, wtheta),
        "linear_convolve": lambda k: k.linear_convolve(a, a),
        "alternating_fill": lambda k: k.alternating_fill(samples),
        "dirichlet_energy": lambda k: k.dirichlet_energy(samples, 1e-3, True, True),
    }


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def rel_diff(a, b):
    a, b = np.asarray(a), np.asarray(b)
    scale = np.maximum(np.abs(b), 1e-300)
    return float(np.max(np.abs(a - b) / scale))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"{'kernel':<20} {'numba [ms]':>11} {'numpy [ms]':>11} {'speedup':>8} {'max rel diff':>13}")
    for name, run in cases().items():
        t_nb = best_of(lambda: run(kernels.NUMBA), args.repeat)
        t_np = best_of(lambda: run(kernels.NUMPY), args.repeat)
        diff = rel_diff(run(kernels.NUMBA), run(kernels.NUMPY))
        print(f"{name:<20} {t_nb * 1e3:11.2f} {t_np * 1e3:11.2f} {t_np / t_nb:8.1f} {diff:13.1e}")


if __name__ == "__main__":
    main()
