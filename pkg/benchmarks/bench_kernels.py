"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from logcy import _kernels as K
from logcy.fan import hirzebruch_fan


def bench(fn, args, repeat):
    fn(*args)  # warm-up / compile
    t0 = time.perf_counter()
    for _ in range(repeat):
        out = fn(*args)
    return (time.perf_counter() - t0) / repeat, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()

    fan = hirzebruch_fan(3)
    rays = np.array(fan.rays, dtype=np.int64)
    v0, v1 = fan.rays[0], fan.rays[1]
    minv = np.array([[v1[1], -v0[1]], [-v1[0], v0[0]]], dtype=np.int64)
    bound = np.array([60, 40, 60, 40], dtype=np.int64)
    pts = (minv, rays, bound, -60, 400, -40, 400)

    rng = np.random.default_rng(0)
    cyc = np.concatenate([np.ones((40, 1), dtype=np.int64),
                          rng.integers(-3, 4, size=(40, 12), dtype=np.int64)], axis=1)

    print(f"numba available: {K.numba is not None}")
    for name, a, b, inp in [("count_points", K.count_points_numba, K.count_points_numpy, pts),
                            ("compose_twists", K.compose_numba, K.compose_numpy, (cyc,))]:
        ta, ra = bench(a, inp, args.repeat)
        tb, rb = bench(b, inp, args.repeat)
        same = np.array_equal(np.asarray(ra), np.asarray(rb))
        print(f"{name:15s} numba {ta * 1e3:8.3f} ms  numpy {tb * 1e3:8.3f} ms  agree={same}")


if __name__ == "__main__":
    main()
