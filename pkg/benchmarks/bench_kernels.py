"""Time the compiled RK4 kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from coherent_qhe import _fallback

try:
    from coherent_qhe import _kernels as compiled
except ImportError:
    compiled = None


def cases():
    p0 = np.zeros(400)
    p0[0] = 1.0
    yield "rk4_mean 10^5 steps", lambda m: m.rk4_mean(0.6, 1.5, 2.0, 0.0, 1e-4, 100_000, 1e12)
    yield "rk4_chain 400 levels x 2*10^4 steps", lambda m: m.rk4_chain(p0, 0.6, 1.5, 2.0, 1e-4, 100, 200)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return
    print(f"{'kernel':<38}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, fn in cases():
        t_py = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:<38}{t_py:>12.4f}{t_c:>14.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
