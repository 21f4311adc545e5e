"""Pareto fronts of feasible dominating sets under vector vertex weights.

Every criterion is minimized.  Weights are strictly positive, so a proper
superset of a feasible set is always strictly worse in every coordinate; the
enumeration therefore only visits inclusion-minimal feasible sets.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import InputError, ResourceError
from .graph import Graph, check_feasible, mask_of, subset_connectivity
from .solvers import _feasible_mask, _precheck
from .weights import WeightVectorTable, less

PARETO_MAX_N = 20


def dominates(p: Sequence, q: Sequence) -> bool:
    """True iff ``p`` is no worse than ``q`` everywhere and differs somewhere."""
    if len(p) != len(q):
        raise InputError(f"objective vectors of lengths {len(p)} and {len(q)}")
    return all(not less(b, a) for a, b in zip(p, q)) and any(less(a, b) for a, b in zip(p, q))


@dataclass
class ParetoFront:
    points: list[tuple[tuple[int, ...], tuple]]
    all_sets: dict[tuple, list[tuple[int, ...]]] = field(default_factory=dict)
    feasible: bool = True
    reason: str = ""
    nodes_explored: int = 0
    elapsed: float = 0.0
    info: dict = field(default_factory=dict)

    @property
    def vectors(self) -> list[tuple]:
        return [vec for _, vec in self.points]


def pareto_front(
    g: Graph, w: WeightVectorTable, k: int = 0, m: int = 1, max_n: int = PARETO_MAX_N
) -> ParetoFront:
    """Complete Pareto front; ``k = 0`` drops connectivity, ``k >= 1`` asks for
    a k-connected backbone, ``m`` sets the domination multiplicity.

    Each efficient vector carries its lexicographically smallest set;
    ``all_sets`` maps each vector to every set attaining it.
    """
    if len(w) != g.n:
        raise InputError(f"{len(w)} weight rows for {g.n} vertices")
    if not isinstance(k, int) or k < 0:
        raise InputError(f"k must be >= 0, got {k!r}")
    if not isinstance(m, int) or m < 1:
        raise InputError(f"m must be >= 1, got {m!r}")
    if g.n > max_n:
        raise ResourceError(f"Pareto enumeration refuses n={g.n} > {max_n}")
    start = time.perf_counter()
    pre = _precheck(g, k, "pareto")
    if pre is not None:
        return ParetoFront([], feasible=False, reason=pre.reason, info=pre.info)

    minimal: list[int] = []
    found: dict[tuple, list[tuple[int, ...]]] = {}
    nodes = 0
    for size in range(1, g.n + 1):
        for combo in combinations(g.vertices, size):
            bm = mask_of(combo)
            if any(bm & f == f for f in minimal):
                continue
            nodes += 1
            if not _feasible_mask(g, bm, k, m):
                continue
            minimal.append(bm)
            found.setdefault(w.total(combo), []).append(combo)

    if not found:
        kappa = subset_connectivity(g, g.vertices)
        return ParetoFront(
            [], feasible=False, nodes_explored=nodes,
            reason=f"no {k}-connected {m}-dominating set exists (graph connectivity {kappa})",
            info={"kappa": kappa}, elapsed=time.perf_counter() - start,
        )
    vectors = list(found)
    efficient = [v for v in vectors if not any(dominates(u, v) for u in vectors)]
    efficient.sort()
    points = [(min(found[v]), w.display(v)) for v in efficient]
    all_sets = {w.display(v): sorted(found[v]) for v in efficient}
    return ParetoFront(
        points, all_sets, nodes_explored=nodes, elapsed=time.perf_counter() - start
    )


def certify(g: Graph, front: ParetoFront, k: int, m: int) -> bool:
    """Every reported set passes the feasibility checker."""
    return all(check_feasible(g, s, k, m).feasible for s, _ in front.points)
