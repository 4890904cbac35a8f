#!/usr/bin/env python3
"""Compare the python and numba kernel backends on the two hot paths.

Run:  python3 benchmarks/bench_backends.py [--repeat N]

Backend selection is per call via ESSALG_BACKEND, so one process can time
both.  The numba numbers include JIT compilation on the first call; a warmup
pass is done before timing.
"""

import argparse
import os
import time

from essalg import all_posets, chain, clone_generators
from essalg import oracle
from essalg._kernels import backend_name


def bench_mask_filter():
    """Invariant-relation filtering: 65536 candidate masks per poset."""
    for p in all_posets(2):
        gens = [g.as_optable() for g in clone_generators(p)]
        oracle.brute_inv(gens, 2, 2 ** p.n)


def bench_idempotent_search():
    """Idempotent-witness search over a sample of subsets, 2-chain at l=2."""
    p = chain(2)
    for r in range(1, 1 << 16, 101):
        s = [x for x in range(16) if (r >> x) & 1]
        oracle.brute_idempotent_search(s, p, 2)


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3,
                    help="timing repetitions; best of N is reported")
    args = ap.parse_args()

    cases = [("mask filter (brute_inv, n=2)", bench_mask_filter),
             ("idempotent search (2-chain, l=2)", bench_idempotent_search)]
    results = {}
    for backend in ("python", "numba"):
        os.environ["ESSALG_BACKEND"] = backend
        if backend_name() != backend:
            print(f"backend {backend!r} unavailable, skipping")
            continue
        for name, fn in cases:
            fn()  # warmup (includes JIT compilation for numba)
            results[(backend, name)] = timed(fn, args.repeat)

    width = max(len(n) for n, _ in cases)
    print(f"{'case':<{width}}  {'python':>10}  {'numba':>10}  speedup")
    for name, _ in cases:
        py = results.get(("python", name))
        nb = results.get(("numba", name))
        py_s = f"{py:.3f}s" if py is not None else "-"
        nb_s = f"{nb:.3f}s" if nb is not None else "-"
        speed = f"{py / nb:.1f}x" if py and nb else "-"
        print(f"{name:<{width}}  {py_s:>10}  {nb_s:>10}  {speed}")


if __name__ == "__main__":
    main()
