"""Pure-Python implementations of the hot kernels.

Used when the compiled extension is unavailable (or when
BIRADSCHECK_PURE=1 forces it). Semantics are identical to
``_native``; the parity test suite asserts this.
"""

from __future__ import annotations

_INF = float("inf")


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance (insert/delete/substitute), two-row DP."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(b) > len(a):
        a, b = b, a
    m = len(b)
    prev = list(range(m + 1))
    cur = [0] * (m + 1)
    for i, ca in enumerate(a, 1):
        cur[0] = i
        for j in range(1, m + 1):
            best = prev[j - 1] + (ca != b[j - 1])
            if prev[j] + 1 < best:
                best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            cur[j] = best
        prev, cur = cur, prev
    return prev[m]


def solve_assignment(cost) -> list[int]:
    """Minimum-cost perfect assignment on a square matrix.

    Augmenting-path method with dual potentials, O(n^3). ``cost`` is an
    n x n matrix (anything indexable row-by-row; numpy arrays are
    converted). Returns ``match`` with ``match[i]`` = column assigned to
    row ``i``.
    """
    if hasattr(cost, "tolist"):
        cost = cost.tolist()
    n = len(cost)
    if n == 0:
        return []
    # 1-based arrays; column 0 is the virtual start of each augmenting path.
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    p = [0] * (n + 1)  # p[j] = row matched to column j (0 = unmatched)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [_INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = _INF
            j1 = 0
            row = cost[i0 - 1]
            ui0 = u[i0]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - ui0 - v[j]
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
