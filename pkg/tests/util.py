"""Shared test helpers: independent oracles kept deliberately naive."""
from __future__ import annotations

from itertools import permutations


def brute_force_min_cost(cost) -> float:
    """Minimal assignment cost by exhaustive permutation search (<= 8x8)."""
    n, m = cost.shape
    if n == 0 or m == 0:
        return 0.0
    best = float("inf")
    if n <= m:
        for perm in permutations(range(m), n):
            total = sum(cost[i, perm[i]] for i in range(n))
            best = min(best, total)
    else:
        for perm in permutations(range(n), m):
            total = sum(cost[perm[j], j] for j in range(m))
            best = min(best, total)
    return best


def naive_levenshtein(a: str, b: str) -> int:
    """Textbook full-matrix edit distance."""
    rows = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a) + 1):
        rows[i][0] = i
    for j in range(len(b) + 1):
        rows[0][j] = j
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            rows[i][j] = min(
                rows[i - 1][j] + 1,
                rows[i][j - 1] + 1,
                rows[i - 1][j - 1] + (a[i - 1] != b[j - 1]),
            )
    return rows[len(a)][len(b)]
