"""Deterministic instance generators: G(n, p), unit-disk graphs, and the
backbone fixtures (clique, tree, ring, ring with 3-domination)."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import InputError
from .graph import Graph
from .msest import EstimateTable, enumerate_interval_estimates
from .weights import WeightVectorTable

FIXTURES = {
    # name: (advertised k, advertised m, minimum core size)
    "clique-backbone": (3, 1, 4),
    "tree-backbone": (1, 1, 1),
    "ring-backbone": (2, 1, 3),
    "ring-3dom": (2, 3, 3),
}


@dataclass
class InstanceBundle:
    graph: Graph
    weights: WeightVectorTable | None = None
    estimates: EstimateTable | None = None
    core: tuple[int, ...] | None = None
    k: int | None = None
    m: int | None = None
    meta: dict = field(default_factory=dict)


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    if n < 1:
        raise InputError("gnp needs n >= 1")
    if not 0 < p <= 1:
        raise InputError(f"edge probability must lie in (0, 1], got {p}")
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p])


def connected_gnp(n: int, p: float, seed: int = 0, attempts: int = 10_000) -> Graph:
    """First connected G(n, p) draw from a seeded stream."""
    if n < 1:
        raise InputError("gnp needs n >= 1")
    if not 0 < p <= 1:
        raise InputError(f"edge probability must lie in (0, 1], got {p}")
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    for _ in range(attempts):
        g = Graph(n, [e for e in pairs if rng.random() < p])
        if g.is_connected():
            return g
    raise InputError(f"no connected G({n}, {p}) within {attempts} draws")


def udg(n: int, radius: float, seed: int = 0) -> tuple[Graph, list[tuple[float, float]]]:
    """Unit-disk graph: ``n`` uniform points in the unit square, an edge
    whenever two points are within ``radius``."""
    if n < 1:
        raise InputError("udg needs n >= 1")
    if radius <= 0:
        raise InputError("udg radius must be positive")
    rng = random.Random(seed)
    pts = [(rng.random(), rng.random()) for _ in range(n)]
    edges = [
        (i + 1, j + 1)
        for i in range(n)
        for j in range(i + 1, n)
        if math.dist(pts[i], pts[j]) <= radius
    ]
    return Graph(n, edges), pts


def fixture(name: str, core: int, leaves: int) -> InstanceBundle:
    """Backbone-shaped instance: core vertices ``1..core`` form the backbone,
    ``leaves`` pendant clients hang off each core vertex."""
    if name not in FIXTURES:
        raise InputError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}")
    k, m, min_core = FIXTURES[name]
    if core < min_core:
        raise InputError(f"{name} needs at least {min_core} core vertices")
    if leaves < 0:
        raise InputError("leaf count must be nonnegative")
    edges = []
    if name == "clique-backbone":
        edges += [(u, v) for u in range(1, core + 1) for v in range(u + 1, core + 1)]
    elif name == "tree-backbone":
        edges += [(v // 2, v) for v in range(2, core + 1)]
    else:
        edges += [(v, v % core + 1) for v in range(1, core + 1)]
    nxt = core + 1
    for c in range(1, core + 1):
        for _ in range(leaves):
            if name == "ring-3dom":
                for j in range(3):
                    edges.append(((c - 1 + j) % core + 1, nxt))
            else:
                edges.append((c, nxt))
            nxt += 1
    g = Graph(nxt - 1, edges)
    return InstanceBundle(
        g, core=tuple(range(1, core + 1)), k=k, m=m,
        meta={"name": name, "core": core, "leaves": leaves},
    )


def random_weights(n: int, mu: int, seed: int = 0, low: int = 1, high: int = 9) -> WeightVectorTable:
    rng = random.Random(seed)
    return WeightVectorTable.from_rows([[rng.randint(low, high) for _ in range(mu)] for _ in range(n)])


def random_estimates(n: int, l: int, eta: int, seed: int = 0) -> EstimateTable:
    rng = random.Random(seed)
    space = enumerate_interval_estimates(l, eta)
    return EstimateTable(l, eta, tuple(rng.choice(space) for _ in range(n)))
