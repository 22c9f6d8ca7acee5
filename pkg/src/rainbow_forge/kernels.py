"""Inner loops for cycle enumeration, boolean matrix products and partition scans.

Every kernel exists twice: ``*_py`` is plain Python over numpy arrays and
``*_jit`` is the numba-compiled copy of the same function. The public names
(without suffix) point at one or the other depending on ``RAINBOW_FORGE_JIT``.

Kernel status codes: 0 finished, 1 stopped at ``limit``, 2 budget exhausted.
"""

import numpy as np

from ._accel import njit, select

MODE_ALL = 0
MODE_RAINBOW = 1
MODE_PROPER = 2

DONE = 0
LIMIT = 1
OVER_BUDGET = 2


def _undirected_cycles(indptr, indices, colmat, ell, mode, ncolors, budget, limit, out):
    """Backtracking over simple ``ell``-cycles of an undirected graph.

    Each cycle is produced once, as its canonical vertex sequence: the smallest
    vertex first and the second vertex smaller than the last. ``colmat`` holds
    dense color ids (``-1`` = no edge). Returns ``(count, expansions, status)``.
    """
    n = indptr.shape[0] - 1
    cap = out.shape[0]
    path = np.zeros(ell, dtype=np.int64)
    ptr = np.zeros(ell, dtype=np.int64)
    ecol = np.zeros(ell, dtype=np.int64)  # ecol[d]: color of edge path[d-1]--path[d]
    onpath = np.zeros(n, dtype=np.bool_)
    used = np.zeros(max(ncolors, 1), dtype=np.bool_)
    count = 0
    expansions = 0
    for s in range(n):
        path[0] = s
        onpath[s] = True
        ptr[0] = indptr[s]
        depth = 0
        while depth >= 0:
            v = path[depth]
            if ptr[depth] < indptr[v + 1]:
                w = indices[ptr[depth]]
                ptr[depth] += 1
                if w <= s or onpath[w]:
                    continue
                c = colmat[v, w]
                if mode == MODE_RAINBOW and used[c]:
                    continue
                if mode == MODE_PROPER and depth > 0 and ecol[depth] == c:
                    continue
                expansions += 1
                if expansions > budget:
                    onpath[:] = False
                    return count, expansions, OVER_BUDGET
                if depth + 1 == ell - 1:
                    if path[1] >= w:
                        continue
                    cc = colmat[w, s]
                    if cc < 0:
                        continue
                    if mode == MODE_RAINBOW and (cc == c or used[cc]):
                        continue
                    if mode == MODE_PROPER and (cc == c or cc == ecol[1]):
                        continue
                    if count < cap:
                        for k in range(ell - 1):
                            out[count, k] = path[k]
                        out[count, ell - 1] = w
                    count += 1
                    if limit > 0 and count >= limit:
                        onpath[:] = False
                        return count, expansions, LIMIT
                    continue
                depth += 1
                path[depth] = w
                onpath[w] = True
                ecol[depth] = c
                if mode == MODE_RAINBOW:
                    used[c] = True
                ptr[depth] = indptr[w]
            else:
                onpath[v] = False
                if depth > 0 and mode == MODE_RAINBOW:
                    used[ecol[depth]] = False
                depth -= 1
    return count, expansions, DONE


def _directed_cycles(indptr, indices, arcmat, ell, budget, limit, out):
    """Backtracking over directed ``ell``-cycles, smallest vertex first."""
    n = indptr.shape[0] - 1
    cap = out.shape[0]
    path = np.zeros(ell, dtype=np.int64)
    ptr = np.zeros(ell, dtype=np.int64)
    onpath = np.zeros(n, dtype=np.bool_)
    count = 0
    expansions = 0
    for s in range(n):
        path[0] = s
        onpath[s] = True
        ptr[0] = indptr[s]
        depth = 0
        while depth >= 0:
            v = path[depth]
            if ptr[depth] < indptr[v + 1]:
                w = indices[ptr[depth]]
                ptr[depth] += 1
                if w <= s or onpath[w]:
                    continue
                expansions += 1
                if expansions > budget:
                    onpath[:] = False
                    return count, expansions, OVER_BUDGET
                if depth + 1 == ell - 1:
                    if not arcmat[w, s]:
                        continue
                    if count < cap:
                        for k in range(ell - 1):
                            out[count, k] = path[k]
                        out[count, ell - 1] = w
                    count += 1
                    if limit > 0 and count >= limit:
                        onpath[:] = False
                        return count, expansions, LIMIT
                    continue
                depth += 1
                path[depth] = w
                onpath[w] = True
                ptr[depth] = indptr[w]
            else:
                onpath[v] = False
                depth -= 1
    return count, expansions, DONE


def _bool_matmul(a, b):
    n = a.shape[0]
    m = b.shape[1]
    k = a.shape[1]
    out = np.zeros((n, m), dtype=np.bool_)
    for i in range(n):
        for t in range(k):
            if a[i, t]:
                for j in range(m):
                    if b[t, j]:
                        out[i, j] = True
    return out


def _bool_matmul_numpy(a, b):
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def _partition_scan(n, arc_u, arc_v, need, budget):
    """Lexicographic scan over part vectors with vertex 0 fixed in part 0.

    Keeps the three cyclic arc counts ``e(V_i, V_{i+1})`` up to date while a
    base-3 counter (last vertex least significant) advances. Returns the first
    vector where every count is at least ``need`` as ``(found, evaluated,
    status, part)``.
    """
    part = np.zeros(n, dtype=np.int64)
    counts = np.zeros(3, dtype=np.int64)
    # incident arc lists
    deg = np.zeros(n, dtype=np.int64)
    for a in range(arc_u.shape[0]):
        deg[arc_u[a]] += 1
        deg[arc_v[a]] += 1
    start = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        start[v + 1] = start[v] + deg[v]
    fill = start[:-1].copy()
    inc = np.zeros(start[n], dtype=np.int64)
    for a in range(arc_u.shape[0]):
        inc[fill[arc_u[a]]] = a
        fill[arc_u[a]] += 1
        inc[fill[arc_v[a]]] = a
        fill[arc_v[a]] += 1
    for a in range(arc_u.shape[0]):
        pu = part[arc_u[a]]
        pv = part[arc_v[a]]
        if pv == (pu + 1) % 3:
            counts[pu] += 1
    evaluated = 0
    while True:
        evaluated += 1
        if evaluated > budget:
            return False, evaluated - 1, OVER_BUDGET, part
        if counts[0] >= need and counts[1] >= need and counts[2] >= need:
            return True, evaluated, DONE, part
        # advance the counter
        v = n - 1
        while v >= 1 and part[v] == 2:
            v -= 1
        if v < 1:
            return False, evaluated, DONE, part
        for w in range(v, n):
            old = part[w]
            new = (old + 1) % 3 if w == v else 0
            if new == old:
                continue
            for t in range(start[w], start[w + 1]):
                a = inc[t]
                x = arc_u[a]
                y = arc_v[a]
                px = part[x]
                py = part[y]
                if py == (px + 1) % 3:
                    counts[px] -= 1
            part[w] = new
            for t in range(start[w], start[w + 1]):
                a = inc[t]
                x = arc_u[a]
                y = arc_v[a]
                px = part[x]
                py = part[y]
                if py == (px + 1) % 3:
                    counts[px] += 1


undirected_cycles_py = _undirected_cycles
directed_cycles_py = _directed_cycles
partition_scan_py = _partition_scan

undirected_cycles_jit = njit(_undirected_cycles)
directed_cycles_jit = njit(_directed_cycles)
bool_matmul_jit = njit(_bool_matmul)
partition_scan_jit = njit(_partition_scan)

undirected_cycles = select(undirected_cycles_py, undirected_cycles_jit)
directed_cycles = select(directed_cycles_py, directed_cycles_jit)
bool_matmul = select(_bool_matmul_numpy, bool_matmul_jit)
partition_scan = select(partition_scan_py, partition_scan_jit)
