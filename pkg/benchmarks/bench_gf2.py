"""Compiled vs pure-Python GF(2) row reduction.

Run:  python benchmarks/bench_gf2.py [--rows 512] [--cols 512] [--repeat 5]
"""

import argparse
import random
import time

from hetdtb import _gf2_fallback, gf2
from hetdtb.regimes import ChannelTriple
from hetdtb.schemes import build_scheme_mu0

try:
    from hetdtb import _gf2_kernel
except ImportError:
    _gf2_kernel = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_rref(kernel, rows, ncols, repeat):
    packed = gf2.pack(rows, ncols)
    return best_of(lambda: kernel.rref(packed.copy(), ncols), repeat)


def bench_decode(kernel, scheme, repeat):
    from hetdtb import sim

    saved = gf2._kernel
    gf2._kernel = kernel
    try:
        return best_of(lambda: sim.check_decodability(scheme), repeat)
    finally:
        gf2._kernel = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=512)
    ap.add_argument("--cols", type=int, default=512)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    rows = [rng.getrandbits(args.cols) for _ in range(args.rows)]
    kernels = [("python", _gf2_fallback)]
    if _gf2_kernel is not None:
        kernels.insert(0, ("compiled", _gf2_kernel))
    else:
        print("compiled kernel not built; timing the fallback only")

    print(f"rref {args.rows}x{args.cols} random, best of {args.repeat}")
    base = {}
    for name, k in kernels:
        base[name] = bench_rref(k, rows, args.cols, args.repeat)
        print(f"  {name:9s} {base[name] * 1e3:9.2f} ms")
    if len(base) == 2:
        print(f"  speedup   {base['python'] / base['compiled']:9.1f}x")

    scheme = build_scheme_mu0(ChannelTriple(3, 5, 8), 256)
    print(f"decodability of no-cache scheme on (3,5,8), L=256, T={scheme.T}")
    dec = {}
    for name, k in kernels:
        dec[name] = bench_decode(k, scheme, max(1, args.repeat // 2))
        print(f"  {name:9s} {dec[name] * 1e3:9.2f} ms")
    if len(dec) == 2:
        print(f"  speedup   {dec['python'] / dec['compiled']:9.1f}x")


if __name__ == "__main__":
    main()
