"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--n 1000000] [--repeat 5]

Both backends are imported directly, so ``GHL_NUMBA`` does not matter here.
``GHL_THREADS`` still caps the numba thread count.
"""
import argparse
import time

import numpy as np

from gaugelab import _accel
from gaugelab import _kernels_numpy as npk

CODES = np.array([0, 2, 3, 4], dtype=np.int64)
P1 = np.array([1.0, 2.0, 100.0, 0.5])
P2 = np.array([0.0, 0.0, 0.1, 0.1])


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    pts = rng.uniform(-3, 3, size=(args.n, 3))
    tans = rng.normal(size=pts.shape)

    cases = {
        "potential_vectors": lambda m: m.potential_vectors(pts, CODES, P1, P2),
        "circulation_integrand": lambda m: m.circulation_integrand(pts, tans, CODES, P1, P2),
    }
    backends = {"numpy": npk}
    if _accel.HAVE_NUMBA:
        from gaugelab import _kernels_numba as nbk

        _accel.apply_thread_cap()
        for fn in cases.values():
            fn(nbk)  # compile
        backends["numba"] = nbk

    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'kernel':24s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in cases.items():
        t = {b: best_of(lambda: fn(m), args.repeat) for b, m in backends.items()}
        row = f"{name:24s}" + "".join(f"{t[b] * 1e3:10.2f}ms" for b in backends)
        if "numba" in t:
            row += f"{t['numpy'] / t['numba']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
