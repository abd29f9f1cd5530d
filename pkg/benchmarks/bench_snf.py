"""Compare the compiled and pure-Python Smith normal form kernels.

    python benchmarks/bench_snf.py [--repeat N] [--seed S]

Two workloads: dense random matrices, and the sparse coboundary matrices the
cohomology engine actually feeds in (bar complexes of the standard lattices).
"""

import argparse
import random
import sys
import time

from torusclass import linalg
from torusclass.cohomology import bar_d1, bar_d2
from torusclass.groups import cyclic_group, klein_four, symmetric_group_s3
from torusclass.modules import dual_torus_module, norm_torus_module


def dense_matrices(rng, count, size, bound=50):
    return [[[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)] for _ in range(count)]


def bar_matrices():
    out = []
    for G in (cyclic_group(4), cyclic_group(6), klein_four(), symmetric_group_s3()):
        for M in (norm_torus_module(G), dual_torus_module(G)):
            out.append((f"d1 |G|={G.order} rank={M.rank}", bar_d1(G, M)))
    G = cyclic_group(3)
    out.append(("d2 |G|=3 norm", bar_d2(G, norm_torus_module(G))))
    return out


def timed(matrices, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for A in matrices:
            linalg.smith_normal_form(A, backend=backend)
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if linalg._snf_ext is None:
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
        return 1
    rng = random.Random(args.seed)
    rows = []
    for size in (4, 8, 12, 20):
        mats = dense_matrices(rng, 50, size)
        rows.append((f"dense {size}x{size} (x50)", mats))
    for name, A in bar_matrices():
        rows.append((f"{name} {len(A)}x{len(A[0])}", [A]))
    print(f"{'workload':<36} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, mats in rows:
        py = timed(mats, "python", args.repeat)
        cy = timed(mats, "cython", args.repeat)
        for A in mats:
            assert linalg.smith_normal_form(A, backend="python") == linalg.smith_normal_form(A, backend="cython")
        print(f"{name:<36} {py * 1e3:>8.1f}ms {cy * 1e3:>8.1f}ms {py / cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
