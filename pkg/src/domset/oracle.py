"""Brute-force reference solvers.

Nothing here shares code with the main solvers beyond reading the graph's
adjacency: predicates use plain Python sets, connectivity is decided by
trying every small vertex cut, and every optimum comes from scanning all
2**n subsets.  Keep it that way; the tests rely on the independence.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .errors import ResourceError
from .graph import Graph

ORACLE_MAX_N = 16


def _adj(g: Graph) -> dict[int, set[int]]:
    adj = {v: set() for v in range(1, g.n + 1)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def m_dominating(adj: dict[int, set[int]], b: set[int], m: int) -> bool:
    return all(len(adj[v] & b) >= m for v in adj if v not in b)


def connected(adj: dict[int, set[int]], b: set[int]) -> bool:
    if not b:
        return False
    start = min(b)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u] & b:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == b


def kappa(adj: dict[int, set[int]], b: set[int]) -> int:
    """Smallest vertex cut of G[b], found by trying every removal set."""
    if len(b) <= 1 or not connected(adj, b):
        return 0
    for size in range(1, len(b) - 1):
        for cut in combinations(sorted(b), size):
            if not connected(adj, b - set(cut)):
                return size
    return len(b) - 1


def k_connected(adj: dict[int, set[int]], b: set[int], k: int) -> bool:
    if k <= 0:
        return True
    if k == 1:
        return connected(adj, b)
    return len(b) >= 2 and kappa(adj, b) >= k


def feasible(adj, b: set[int], k: int, m: int) -> bool:
    return bool(b) and m_dominating(adj, b, m) and k_connected(adj, b, k)


def _subsets(n: int):
    if n > ORACLE_MAX_N:
        raise ResourceError(f"brute force refuses n={n} > {ORACLE_MAX_N}")
    verts = range(1, n + 1)
    for mask in range(1, 1 << n):
        yield tuple(v for v in verts if mask >> (v - 1) & 1)


def brute_min(g: Graph, k: int = 0, m: int = 1, weights=None):
    """(objective, set) of the canonical optimum, or (None, None).

    ``weights`` is a sequence indexed by vertex - 1 (ints, Fractions or
    floats).
    """
    adj = _adj(g)
    best = None
    for combo in _subsets(g.n):
        value = len(combo) if weights is None else sum(weights[v - 1] for v in combo)
        if best is not None and (value, combo) >= best:
            continue
        if feasible(adj, set(combo), k, m):
            best = (value, combo)
    return best if best is not None else (None, None)


def brute_pareto(g: Graph, rows, k: int = 0, m: int = 1) -> dict[tuple, list[tuple[int, ...]]]:
    """Every non-dominated objective vector mapped to all sets attaining it."""
    adj = _adj(g)
    vectors: dict[tuple, list] = {}
    for combo in _subsets(g.n):
        if feasible(adj, set(combo), k, m):
            vec = tuple(sum(rows[v - 1][c] for v in combo) for c in range(len(rows[0])))
            vectors.setdefault(vec, []).append(combo)

    def beaten(p, q):
        return all(a <= b for a, b in zip(p, q)) and p != q

    return {
        v: sorted(sets)
        for v, sets in vectors.items()
        if not any(beaten(u, v) for u in vectors)
    }


def interval_space(l: int, eta: int) -> list[tuple[int, ...]]:
    """All interval multisets as ascending level tuples."""
    out = []
    for ms in combinations_with_replacement(range(1, l + 1), eta):
        if set(ms) == set(range(ms[0], ms[-1] + 1)):
            out.append(ms)
    return out


def _cumulative(ms: tuple[int, ...], l: int) -> list[int]:
    return [sum(1 for x in ms if x <= level) for level in range(1, l + 1)]


def proximity_cumulative(a: tuple[int, ...], b: tuple[int, ...], l: int) -> tuple[int, int]:
    """(improvements, degradations) from cumulative counts: every unit of
    surplus mass at or below a level boundary must cross it."""
    ca, cb = _cumulative(a, l), _cumulative(b, l)
    down = sum(max(0, x - y) for x, y in zip(ca, cb))
    up = sum(max(0, y - x) for x, y in zip(ca, cb))
    return up, down


def median_cost(members: list[tuple[int, ...]], l: int, eta: int) -> int:
    return min(
        sum(sum(proximity_cumulative(c, e, l)) for e in members)
        for c in interval_space(l, eta)
    )


def brute_msest(g: Graph, level_rows, l: int, eta: int, k: int = 0, m: int = 1, objective: str = "median-cohesion"):
    """(value, set) minimizing the median objective with size then set order
    as tie-breaks.  ``level_rows`` holds each vertex's ascending level tuple."""
    adj = _adj(g)
    best = None
    for combo in _subsets(g.n):
        if not feasible(adj, set(combo), k, m):
            continue
        members = [level_rows[v - 1] for v in combo]
        if objective == "median-cohesion":
            value = median_cost(members, l, eta)
        else:
            value = Fraction(sum(x - 1 for e in members for x in e), len(combo))
        key = (value, len(combo), combo)
        if best is None or key < best:
            best = key
    return (best[0], best[2]) if best else (None, None)
