"""Pure-Python kernel backend.

Same contracts as the compiled extension, but generic: entries of the
flat row-major matrix may be ints, Fractions or anything totally ordered
and addable. Loop orders and tie-breaks mirror the compiled code exactly
so both backends return identical results on identical input.
"""

from itertools import permutations


def nn_tour_ints(dist, n, start):
    """Greedy nearest-unvisited cycle from `start`; ties go to the lowest index.

    Returns (order, length) where order lists n+1 indices with the start
    repeated at the end.
    """
    if n <= 0:
        raise ValueError("empty matrix")
    if not 0 <= start < n:
        raise ValueError("start out of range")
    seen = [False] * n
    seen[start] = True
    order = [start]
    total = 0
    cur = start
    for _ in range(n - 1):
        row = cur * n
        best = -1
        best_d = None
        for j in range(n):
            if not seen[j]:
                d = dist[row + j]
                if best < 0 or d < best_d:
                    best = j
                    best_d = d
        seen[best] = True
        order.append(best)
        total = total + best_d
        cur = best
    total = total + dist[cur * n + start]
    order.append(start)
    return order, total


def brute_force_ints(dist, n):
    """Exact minimum cyclic tour length with index 0 fixed first."""
    if n <= 0:
        raise ValueError("empty matrix")
    if n == 1:
        return dist[0]
    best = None
    for perm in permutations(range(1, n)):
        total = dist[perm[0]]
        prev = perm[0]
        for nxt in perm[1:]:
            total = total + dist[prev * n + nxt]
            prev = nxt
        total = total + dist[prev * n]
        if best is None or total < best:
            best = total
    return best


def triple_violations_ints(dist, n, cap):
    """Strong-triangle-inequality violations as canonical (i, j, k) triples.

    A triple is reported when d[i,k] > max(d[i,j], d[j,k]) with i < k;
    mirror images are not repeated. Emission order is (i, k, j) ascending,
    capped at `cap` findings.
    """
    if cap <= 0:
        return []
    found = []
    for i in range(n):
        row_i = i * n
        for k in range(i + 1, n):
            d_ik = dist[row_i + k]
            for j in range(n):
                if j == i or j == k:
                    continue
                if d_ik > dist[row_i + j] and d_ik > dist[j * n + k]:
                    found.append((i, j, k))
                    if len(found) == cap:
                        return found
    return found
