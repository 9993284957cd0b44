# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see _pyfallback for reference
semantics)."""

from libc.stdlib cimport free, malloc

DEF INF = 1e308


def levenshtein(str a, str b):
    """Unit-cost edit distance, two-row DP over C integer buffers."""
    cdef Py_ssize_t n = len(a), m = len(b)
    cdef Py_ssize_t i, j
    cdef int best, cand
    cdef Py_UCS4 ca
    cdef int *prev
    cdef int *cur
    cdef int *tmp
    if a == b:
        return 0
    if n == 0:
        return m
    if m == 0:
        return n
    if m > n:
        a, b = b, a
        n, m = m, n
    prev = <int *> malloc((m + 1) * sizeof(int))
    cur = <int *> malloc((m + 1) * sizeof(int))
    if prev == NULL or cur == NULL:
        if prev != NULL:
            free(prev)
        if cur != NULL:
            free(cur)
        raise MemoryError()
    for j in range(m + 1):
        prev[j] = <int> j
    for i in range(1, n + 1):
        ca = a[i - 1]
        cur[0] = <int> i
        for j in range(1, m + 1):
            best = prev[j - 1] + (0 if ca == <Py_UCS4> b[j - 1] else 1)
            cand = prev[j] + 1
            if cand < best:
                best = cand
            cand = cur[j - 1] + 1
            if cand < best:
                best = cand
            cur[j] = best
        tmp = prev
        prev = cur
        cur = tmp
    best = prev[m]
    free(prev)
    free(cur)
    return best


def solve_assignment(cost) -> list:
    """Minimum-cost perfect assignment on a square matrix.

    Same augmenting-path/potentials method as the fallback. ``cost`` must
    be a C-contiguous float64 2-D buffer (numpy array).
    """
    cdef double[:, ::1] c = cost
    cdef Py_ssize_t n = c.shape[0]
    if n == 0:
        return []
    if c.shape[1] != n:
        raise ValueError("cost matrix must be square")
    cdef double *u = <double *> malloc((n + 1) * sizeof(double))
    cdef double *v = <double *> malloc((n + 1) * sizeof(double))
    cdef double *minv = <double *> malloc((n + 1) * sizeof(double))
    cdef Py_ssize_t *p = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *way = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef char *used = <char *> malloc((n + 1) * sizeof(char))
    if u == NULL or v == NULL or minv == NULL or p == NULL or way == NULL or used == NULL:
        free(u); free(v); free(minv); free(p); free(way); free(used)
        raise MemoryError()
    cdef Py_ssize_t i, j, i0, j0, j1
    cdef double delta, cur, ui0
    for j in range(n + 1):
        u[j] = 0.0
        v[j] = 0.0
        p[j] = 0
        way[j] = 0
    try:
        for i in range(1, n + 1):
            p[0] = i
            j0 = 0
            for j in range(n + 1):
                minv[j] = INF
                used[j] = 0
            while True:
                used[j0] = 1
                i0 = p[j0]
                delta = INF
                j1 = 0
                ui0 = u[i0]
                for j in range(1, n + 1):
                    if used[j]:
                        continue
                    cur = c[i0 - 1, j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
                for j in range(n + 1):
                    if used[j]:
                        u[p[j]] += delta
                        v[j] -= delta
                    else:
                        minv[j] -= delta
                j0 = j1
                if p[j0] == 0:
                    break
            while j0:
                j1 = way[j0]
                p[j0] = p[j1]
                j0 = j1
        match = [0] * n
        for j in range(1, n + 1):
            match[p[j] - 1] = j - 1
        return match
    finally:
        free(u)
        free(v)
        free(minv)
        free(p)
        free(way)
        free(used)
