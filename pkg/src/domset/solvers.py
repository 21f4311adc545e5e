"""Single-objective dominating set solvers.

Exact subset enumeration and branch-and-bound cover the minimum (weighted,
connected, k-connected, m-dominating) dominating set problems.  Greedy and
two-phase (maximal independent set, then connectors) heuristics give fast
feasible answers; the maximum independent set and maximum-leaf spanning tree
solvers double as cross-checks.

Among optimal sets of equal objective, every exact method returns the
lexicographically smallest sorted id sequence.
"""

from __future__ import annotations

import math
import os
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InfeasibleError, InputError, ResourceError
from .graph import (
    FeasibilityCertificate,
    Graph,
    check_feasible,
    mask_of,
    meets_connectivity,
    members_of,
    subset_connectivity,
)
from .weights import WeightTable, close, less

EXACT_MAX_N = 26
MLST_MAX_N = 14
DEFAULT_NODE_BUDGET = 5_000_000

VARIANTS = ("DS", "CDS")
METHODS = {
    "exact": "exact-enum",
    "exact-enum": "exact-enum",
    "bb": "branch-bound",
    "branch-bound": "branch-bound",
    "greedy": "greedy",
    "two-phase": "two-phase",
}


def node_budget() -> int:
    raw = os.environ.get("DOMSET_NODE_BUDGET")
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"DOMSET_NODE_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError("DOMSET_NODE_BUDGET must be positive")
    return value


@dataclass
class ProblemSpec:
    variant: str = "DS"
    k: int = 1
    m: int = 1
    weights: WeightTable | None = None
    method: str = "exact-enum"

    def __post_init__(self):
        self.variant = self.variant.upper()
        if self.variant not in VARIANTS:
            raise InputError(f"unknown variant {self.variant!r}")
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}")
        self.method = METHODS[self.method]
        if not isinstance(self.k, int) or self.k < 1:
            raise InputError(f"k must be >= 1, got {self.k!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise InputError(f"m must be >= 1, got {self.m!r}")
        if self.variant == "DS" and self.k != 1:
            raise InputError("k applies only to the CDS variant")

    @property
    def connectivity(self) -> int:
        """k as seen by the feasibility rule; 0 means no connectivity demand."""
        return 0 if self.variant == "DS" else self.k


@dataclass
class SolveResult:
    best_set: tuple[int, ...] | None
    objective: int | float | None
    certificate: FeasibilityCertificate | None
    method: str
    nodes_explored: int = 0
    elapsed: float = 0.0
    feasible: bool = True
    reason: str = ""
    info: dict = field(default_factory=dict)


def _infeasible(method: str, reason: str, **info) -> SolveResult:
    return SolveResult(None, None, None, method, feasible=False, reason=reason, info=info)


def _feasible_mask(g: Graph, bm: int, k: int, m: int) -> bool:
    if m == 1:
        covered = 0
        rest = bm
        while rest:
            bit = rest & -rest
            covered |= g.closed_mask(bit.bit_length())
            rest ^= bit
        if covered != g.full_mask:
            return False
    else:
        outside = g.full_mask & ~bm
        while outside:
            bit = outside & -outside
            if (g.neighbor_mask(bit.bit_length()) & bm).bit_count() < m:
                return False
            outside ^= bit
    return meets_connectivity(g, bm, k)


def _precheck(g: Graph, k: int, method: str) -> SolveResult | None:
    """Structured infeasibility for graphs with no connected backbone at all.

    A disconnected graph has no connected dominating set.  For k >= 2 the
    whole vertex set failing the rule proves nothing (an induced subgraph
    can be better connected than G), so that case is left to the search.
    """
    if g.n == 0:
        raise InputError("graph has no vertices")
    if k >= 1:
        comps = g.components()
        if len(comps) > 1:
            a, b = members_of(comps[0])[0], members_of(comps[1])[0]
            return _infeasible(
                method,
                f"graph is disconnected: vertices {a} and {b} lie in different components",
                components=[list(members_of(c)) for c in comps],
            )
    return None


def _no_backbone(g: Graph, k: int, m: int, method: str, nodes: int) -> SolveResult:
    kappa = subset_connectivity(g, g.vertices)
    res = _infeasible(
        method,
        f"no {k}-connected {m}-dominating set exists (graph connectivity {kappa})",
        kappa=kappa,
    )
    res.nodes_explored = nodes
    return res


def _exact_enum(g: Graph, k: int, m: int, weights: WeightTable | None):
    if g.n > EXACT_MAX_N:
        raise ResourceError(f"exact enumeration refuses n={g.n} > {EXACT_MAX_N}")
    nodes = 0
    ids = list(g.vertices)
    if weights is None:
        for size in range(1, g.n + 1):
            for combo in combinations(ids, size):
                nodes += 1
                if _feasible_mask(g, mask_of(combo), k, m):
                    return combo, size, nodes
        return None, None, nodes
    best_set, best_w = None, None
    for size in range(1, g.n + 1):
        for combo in combinations(ids, size):
            nodes += 1
            w = weights.total(combo)
            if best_w is not None and less(best_w, w):
                continue
            if not _feasible_mask(g, mask_of(combo), k, m):
                continue
            if best_w is None or less(w, best_w) or combo < best_set:
                best_set, best_w = combo, w
    return best_set, best_w, nodes


def _branch_bound(g: Graph, k: int, m: int, weights: WeightTable | None, budget: int):
    """Set-cover style branch-and-bound.

    A node is (chosen set B, forbidden set X).  If some vertex v is not yet
    m-dominated, any feasible superset must add a vertex of N[v]; branch over
    those candidates, forbidding earlier candidates in later branches.  Once
    B dominates but fails connectivity, branch the same way over vertices
    adjacent to B.  Ties at the incumbent cost are explored so the canonical
    optimum is found.
    """
    full = g.full_mask
    maxcov = max(g.closed_mask(v).bit_count() for v in g.vertices)
    weight = (lambda v: 1) if weights is None else (lambda v: weights[v])
    best: list = [None, None]
    nodes = 0

    def adjacent(bm: int) -> int:
        acc = 0
        rest = bm
        while rest:
            bit = rest & -rest
            acc |= g.neighbor_mask(bit.bit_length())
            rest ^= bit
        return acc & ~bm

    def visit(bm: int, forbid: int, cost) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise ResourceError(f"branch-and-bound node budget {budget} exhausted")
        avail = full & ~bm & ~forbid
        usable = bm | avail
        unsat = []
        for v in g.vertices:
            if bm >> (v - 1) & 1:
                continue
            have = (g.neighbor_mask(v) & bm).bit_count()
            if have < m:
                if not avail >> (v - 1) & 1 and (g.neighbor_mask(v) & usable).bit_count() < m:
                    return
                unsat.append(v)
        if k >= 1 and bm:
            if not any(bm & c == bm for c in g.components(usable)):
                return
        extra = math.ceil(len(unsat) / maxcov)
        if k >= 2:
            extra = max(extra, k + 1 - bm.bit_count())
        if extra == 0 and not meets_connectivity(g, bm, k):
            extra = 1
        if extra:
            if not avail:
                return
            cheapest = min(weight(v) for v in members_of(avail))
            bound = cost + extra * cheapest
        else:
            bound = cost
        if best[1] is not None and less(best[1], bound):
            return
        if extra == 0:
            combo = members_of(bm)
            if best[1] is None or less(cost, best[1]) or (close(cost, best[1]) and combo < best[0]):
                best[0], best[1] = combo, cost
            return
        if unsat:
            cands = members_of(g.closed_mask(unsat[0]) & avail)
        else:
            cands = members_of(adjacent(bm) & avail)
        blocked = forbid
        for c in cands:
            visit(bm | 1 << (c - 1), blocked, cost + weight(c))
            blocked |= 1 << (c - 1)

    visit(0, 0, 0)
    return best[0], best[1], nodes


def solve(g: Graph, spec: ProblemSpec) -> SolveResult:
    """Dispatch a problem to the requested method."""
    k, m = spec.connectivity, spec.m
    method = spec.method
    if method == "greedy":
        if k >= 2:
            raise InputError("the greedy heuristic supports only k <= 1")
        if spec.weights is not None:
            raise InputError("the greedy heuristic is unweighted")
        if spec.variant == "DS":
            return greedy_ds(g, m)
        return greedy_cds(g, m)
    if method == "two-phase":
        if spec.variant != "CDS" or k != 1 or m != 1 or spec.weights is not None:
            raise InputError("two-phase applies only to unweighted CDS with k=1, m=1")
        return two_phase_cds(g)
    if spec.weights is not None and len(spec.weights) != g.n:
        raise InputError(f"{len(spec.weights)} weights for {g.n} vertices")
    start = time.perf_counter()
    pre = _precheck(g, k, method)
    if pre is not None:
        return pre
    if method == "exact-enum":
        combo, obj, nodes = _exact_enum(g, k, m, spec.weights)
    else:
        combo, obj, nodes = _branch_bound(g, k, m, spec.weights, node_budget())
    elapsed = time.perf_counter() - start
    if combo is None:
        return _no_backbone(g, k, m, method, nodes)
    if spec.weights is not None:
        obj = spec.weights.display(obj)
    cert = check_feasible(g, combo, k, m)
    return SolveResult(combo, obj, cert, method, nodes, elapsed)


def solve_min_ds(g: Graph, method: str = "exact") -> SolveResult:
    return solve(g, ProblemSpec("DS", method=method))


def solve_min_cds(g: Graph, method: str = "exact") -> SolveResult:
    return solve(g, ProblemSpec("CDS", method=method))


def solve_min_weighted(
    g: Graph, weights: WeightTable, variant: str = "DS", method: str = "exact"
) -> SolveResult:
    return solve(g, ProblemSpec(variant, weights=weights, method=method))


def solve_min_kmcds(
    g: Graph, k: int = 1, m: int = 1, weights: WeightTable | None = None, method: str = "exact"
) -> SolveResult:
    return solve(g, ProblemSpec("CDS", k=k, m=m, weights=weights, method=method))


# -- heuristics ---------------------------------------------------------------


def _greedy_mask(g: Graph, m: int) -> int:
    need = [0] + [m] * g.n  # remaining neighbor demand per vertex outside B
    bm = 0
    while True:
        unsat = 0
        for v in g.vertices:
            if not bm >> (v - 1) & 1 and need[v] > 0:
                unsat |= 1 << (v - 1)
        if not unsat:
            return bm
        best_v, best_gain = 0, -1
        for u in g.vertices:
            if bm >> (u - 1) & 1:
                continue
            gain = (g.closed_mask(u) & unsat).bit_count()
            if gain > best_gain:
                best_v, best_gain = u, gain
        bm |= 1 << (best_v - 1)
        for w in g.neighbors(best_v):
            need[w] -= 1


def greedy_ds(g: Graph, m: int = 1) -> SolveResult:
    """Max-coverage greedy: repeatedly add the vertex that touches the most
    vertices still short of m dominators (lowest id on ties)."""
    if g.n == 0:
        raise InputError("graph has no vertices")
    if not isinstance(m, int) or m < 1:
        raise InputError(f"m must be >= 1, got {m!r}")
    start = time.perf_counter()
    bm = _greedy_mask(g, m)
    best = members_of(bm)
    cert = check_feasible(g, best, 0, m)
    return SolveResult(best, len(best), cert, "greedy", len(best), time.perf_counter() - start)


def greedy_cds(g: Graph, m: int = 1) -> SolveResult:
    """Greedy m-dominating set followed by the two-phase connector step."""
    start = time.perf_counter()
    pre = _precheck(g, 1, "greedy")
    if pre is not None:
        return pre
    bm = _connect(g, _greedy_mask(g, m))
    best = members_of(bm)
    cert = check_feasible(g, best, 1, m)
    return SolveResult(best, len(best), cert, "greedy", len(best), time.perf_counter() - start)


def _connect(g: Graph, bm: int) -> int:
    """Merge the components of G[bm] by repeatedly adding the interior of a
    shortest connecting path; ties prefer fewer vertices, then the
    lexicographically smallest interior."""
    while True:
        comps = g.components(bm)
        if len(comps) <= 1:
            return bm
        best = None
        for comp in comps:
            # BFS through non-members from this component
            parent: dict[int, int] = {}
            q = deque()
            for v in members_of(comp):
                parent[v] = 0
                q.append(v)
            while q:
                u = q.popleft()
                for w in sorted(g.neighbors(u)):
                    if w in parent:
                        continue
                    parent[w] = u
                    if bm >> (w - 1) & 1:
                        # reached another component
                        interior = []
                        x = u
                        while parent.get(x, 0) and not comp >> (x - 1) & 1:
                            interior.append(x)
                            x = parent[x]
                        cand = (len(interior), tuple(sorted(interior)))
                        if best is None or cand < best:
                            best = cand
                        continue
                    q.append(w)
        if best is None:
            raise InfeasibleError("set cannot be connected inside this graph")
        bm |= mask_of(best[1])


def max_independent_set(g: Graph, mode: str = "exact") -> tuple[int, ...]:
    """Maximum (``exact``) or maximal (``greedy``) independent set."""
    if g.n == 0:
        raise InputError("graph has no vertices")
    if mode == "greedy":
        return members_of(_greedy_mis(g))
    if mode != "exact":
        raise InputError(f"unknown mode {mode!r}")
    if g.n > EXACT_MAX_N * 2:
        raise ResourceError(f"exact independent set refuses n={g.n}")
    best: list = [0, ()]

    def visit(chosen: int, pool: int) -> None:
        size = chosen.bit_count()
        if size + pool.bit_count() < best[0]:
            return
        if not pool:
            combo = members_of(chosen)
            if size > best[0] or (size == best[0] and combo < best[1]):
                best[0], best[1] = size, combo
            return
        low = pool & -pool
        v = low.bit_length()
        visit(chosen | low, pool & ~g.closed_mask(v))
        if g.neighbor_mask(v) & pool:
            visit(chosen, pool & ~low)

    visit(0, g.full_mask)
    return best[1]


def _greedy_mis(g: Graph) -> int:
    pool = g.full_mask
    chosen = 0
    while pool:
        pick = min(
            members_of(pool), key=lambda v: ((g.neighbor_mask(v) & pool).bit_count(), v)
        )
        chosen |= 1 << (pick - 1)
        pool &= ~g.closed_mask(pick)
    return chosen


def two_phase_cds(g: Graph) -> SolveResult:
    """Maximal independent set (min-degree greedy), then shortest-path
    connectors until the induced subgraph is connected."""
    start = time.perf_counter()
    pre = _precheck(g, 1, "two-phase")
    if pre is not None:
        return pre
    mis = _greedy_mis(g)
    bm = _connect(g, mis)
    best = members_of(bm)
    cert = check_feasible(g, best, 1, 1)
    return SolveResult(
        best,
        len(best),
        cert,
        "two-phase",
        len(best),
        time.perf_counter() - start,
        info={"independent_set": list(members_of(mis))},
    )


# -- maximum-leaf spanning tree -----------------------------------------------


def max_leaf_spanning_tree(g: Graph, max_n: int = MLST_MAX_N) -> tuple[list[tuple[int, int]], int]:
    """Spanning tree with the most leaves, by exhaustive tree growth.

    The search grows a tree from its smallest internal vertex r.  At each step
    the lowest free leaf v either becomes a fixed leaf or turns internal and
    adopts every neighbor not yet in the tree.  Adopting all of them is safe:
    re-hanging an outside neighbor under an internal v never lowers the leaf
    count.  Vertices smaller than r are forced to stay leaves.
    """
    n = g.n
    if n < 3:
        raise InputError("max-leaf spanning tree needs n >= 3")
    if n > max_n:
        raise ResourceError(f"exact max-leaf search refuses n={n} > {max_n}")
    if not g.is_connected():
        comps = g.components()
        a, b = members_of(comps[0])[0], members_of(comps[1])[0]
        raise InfeasibleError(f"graph is disconnected: {a} and {b} are in different components")
    full = g.full_mask
    best: list = [-1, None]

    def visit(tree: int, free: int, fixed: int, edges: list, internal: int) -> None:
        if tree == full:
            leaves = (free | fixed).bit_count()
            if leaves > best[0]:
                best[0], best[1] = leaves, list(edges)
            return
        if not free:
            return
        # at least one more internal vertex is needed to reach the rest
        if n - internal - 1 <= best[0]:
            return
        low = free & -free
        v = low.bit_length()
        outside = g.neighbor_mask(v) & ~tree
        if outside:
            new_edges = edges + [(v, u) for u in members_of(outside)]
            adopted_free = outside & ~forced
            visit(
                tree | outside,
                (free & ~low) | adopted_free,
                fixed | (outside & forced),
                new_edges,
                internal + 1,
            )
        visit(tree, free & ~low, fixed | low, edges, internal)

    for r in g.vertices:
        forced = (1 << (r - 1)) - 1  # vertices below r stay leaves
        nb = g.neighbor_mask(r)
        visit(
            nb | 1 << (r - 1),
            nb & ~forced,
            nb & forced,
            [(r, u) for u in members_of(nb)],
            1,
        )
    edges = sorted((min(a, b), max(a, b)) for a, b in best[1])
    return edges, best[0]
