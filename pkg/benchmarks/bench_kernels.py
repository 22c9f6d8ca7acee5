"""Time each numba kernel against its pure-Python twin on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

The first JIT call (compilation, or a cache load) is reported separately.
"""

import argparse
import time

import numpy as np

from rainbow_forge import kernels
from rainbow_forge.constructions import build_blowup, build_cplus
from rainbow_forge.search import _csr, _dense_colors
from rainbow_forge.structure import _arc_arrays
from rainbow_forge.suite import random_oriented_digraph

CAP = 10**12


def undirected_case(n, ell):
    G = build_cplus(n).graph
    indptr, indices = _csr(G.adjacency)
    dense, ncolors = _dense_colors(G)

    def args():
        return (indptr, indices, dense, ell, 1, ncolors, CAP, CAP, np.zeros((1, ell), dtype=np.int64))

    return f"rainbow C{ell} count, cplus({n})", kernels.undirected_cycles_py, kernels.undirected_cycles_jit, args


def directed_case(k, ell):
    D = build_blowup((k, k, k)).graph
    indptr, indices = _csr(D.out_neighbors)
    mat = np.ascontiguousarray(D.matrix)

    def args():
        return (indptr, indices, mat, ell, CAP, CAP, np.zeros((1, ell), dtype=np.int64))

    return f"directed C{ell} count, blowup({k},{k},{k})", kernels.directed_cycles_py, kernels.directed_cycles_jit, args


def scan_case(n):
    D = random_oriented_digraph(n, 0.6, np.random.default_rng(1))
    u, v = _arc_arrays(D)
    # unreachable target forces the full 3^(n-1) scan
    need = len(D.arcs) + 1

    def args():
        return (n, u, v, need, CAP)

    return f"partition scan, n={n}", kernels.partition_scan_py, kernels.partition_scan_jit, args


def matmul_case(n):
    rng = np.random.default_rng(2)
    A = rng.random((n, n)) < 0.05

    def args():
        return (A, A)

    return f"boolean matmul, {n}x{n}", kernels._bool_matmul_numpy, kernels.bool_matmul_jit, args


def best_of(fn, make_args, repeat):
    best = float("inf")
    for _ in range(repeat):
        a = make_args()
        t0 = time.perf_counter()
        result = fn(*a)
        best = min(best, time.perf_counter() - t0)
    return best, result


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--quick", action="store_true", help="smaller inputs")
    args = p.parse_args()

    if args.quick:
        cases = [undirected_case(9, 6), directed_case(3, 6), scan_case(8), matmul_case(100)]
    else:
        cases = [undirected_case(12, 7), directed_case(4, 9), scan_case(11), matmul_case(400)]

    print(f"{'kernel':36s} {'python':>10s} {'jit':>10s} {'first jit':>10s} {'speedup':>9s}  agree")
    for name, py, jit, make_args in cases:
        t0 = time.perf_counter()
        jit(*make_args())
        first = time.perf_counter() - t0
        t_jit, r_jit = best_of(jit, make_args, args.repeat)
        t_py, r_py = best_of(py, make_args, args.repeat)
        print(f"{name:36s} {t_py:10.4f} {t_jit:10.4f} {first:10.4f} {t_py / t_jit:8.1f}x  {same(r_py, r_jit)}")


if __name__ == "__main__":
    main()
