"""Undirected simple graphs and the feasibility predicates used by every solver.

Vertices are identified by 1-based ids ``1..n``.  Internally each vertex set is
also available as an integer bitmask where bit ``v - 1`` stands for vertex
``v``; the solvers lean on that representation for speed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def members_of(mask: int) -> tuple[int, ...]:
    """Sorted vertex ids present in ``mask``."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


class Graph:
    """Immutable undirected simple graph on vertices ``1..n``."""

    __slots__ = ("n", "edges", "_adj", "_nmask", "_cmask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {n!r}")
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        norm = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"edge ({u}, {v}) has a vertex id outside 1..{n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise InputError(f"duplicate edge {e}")
            norm.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(norm)
        self._adj = tuple(frozenset(a) for a in adj)
        self._nmask = tuple(mask_of(a) for a in adj)
        self._cmask = tuple(
            (self._nmask[v] | (1 << (v - 1))) if v else 0 for v in range(n + 1)
        )

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, ((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, ((v, v + 1) for v in range(1, n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise InputError("a cycle needs at least 3 vertices")
        return cls(n, [(v, v + 1) for v in range(1, n)] + [(n, 1)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls(leaves + 1, ((1, v) for v in range(2, leaves + 2)))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbor_mask(self, v: int) -> int:
        return self._nmask[v]

    def closed_mask(self, v: int) -> int:
        return self._cmask[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, set(self.edges) | {(min(u, v), max(u, v))})

    def subset(self, vertices: Iterable[int]) -> frozenset[int]:
        """Validate a vertex subset against this graph and freeze it."""
        out = []
        for v in vertices:
            if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= self.n:
                raise InputError(f"vertex id {v!r} outside 1..{self.n}")
            out.append(v)
        b = frozenset(out)
        if len(b) != len(out):
            raise InputError("vertex subset contains duplicates")
        return b

    def components(self, within: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``within`` (a mask),
        as masks ordered by their smallest vertex."""
        rest = self.full_mask if within is None else within
        comps = []
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    bit = f & -f
                    nxt |= self._nmask[bit.bit_length()]
                    f ^= bit
                nxt &= rest & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


# -- predicates --------------------------------------------------------------


def _as_mask(g: Graph, b: Iterable[int]) -> int:
    return mask_of(g.subset(b))


def is_dominating(g: Graph, b: Iterable[int]) -> bool:
    bm = _as_mask(g, b)
    covered = 0
    while bm:
        bit = bm & -bm
        covered |= g.closed_mask(bit.bit_length())
        bm ^= bit
    return covered == g.full_mask


def is_m_dominating(g: Graph, b: Iterable[int], m: int) -> bool:
    return not undominated(g, _as_mask(g, b), m)


def undominated(g: Graph, bm: int, m: int) -> list[int]:
    """Vertices outside ``bm`` with fewer than ``m`` neighbors inside it."""
    if not isinstance(m, int) or m < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    return [
        v
        for v in g.vertices
        if not bm >> (v - 1) & 1 and (g.neighbor_mask(v) & bm).bit_count() < m
    ]


def is_connected_subset(g: Graph, b: Iterable[int]) -> bool:
    bm = _as_mask(g, b)
    if not bm:
        raise InputError("connectivity of an empty vertex set is undefined")
    return len(g.components(bm)) == 1


def _local_connectivity(g: Graph, within: int, s: int, t: int, cap: int) -> int:
    """Maximum number of internally vertex-disjoint s-t paths in G[within],
    stopping early once ``cap`` paths are found.  ``s`` and ``t`` must be
    non-adjacent.

    Unit-capacity max-flow on the split graph: vertex v becomes v_in -> v_out
    with capacity 1 (s and t uncapped).
    """
    verts = members_of(within)
    # node ids: 2*v is v_in, 2*v+1 is v_out
    cap_map: dict[tuple[int, int], int] = {}
    out: dict[int, list[int]] = {}

    def arc(a: int, c: int, k: int) -> None:
        cap_map[(a, c)] = cap_map.get((a, c), 0) + k
        cap_map.setdefault((c, a), 0)
        out.setdefault(a, []).append(c)
        out.setdefault(c, []).append(a)

    big = len(verts) + 1
    for v in verts:
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
        for u in members_of(g.neighbor_mask(v) & within):
            arc(2 * v + 1, 2 * u, 1)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        parent = {source: source}
        q = deque([source])
        while q and sink not in parent:
            a = q.popleft()
            for c in out[a]:
                if c not in parent and cap_map[(a, c)] > 0:
                    parent[c] = a
                    q.append(c)
        if sink not in parent:
            break
        c = sink
        while c != source:
            a = parent[c]
            cap_map[(a, c)] -= 1
            cap_map[(c, a)] += 1
            c = a
        flow += 1
    return flow


def _connectivity_mask(g: Graph, bm: int, cap: int | None = None) -> int:
    verts = members_of(bm)
    t = len(verts)
    if t <= 1:
        return 0
    if len(g.components(bm)) > 1:
        return 0
    best = t - 1 if cap is None else min(t - 1, cap)
    min_deg = min((g.neighbor_mask(v) & bm).bit_count() for v in verts)
    best = min(best, min_deg)
    for i, s in enumerate(verts):
        for u in verts[i + 1 :]:
            if best == 0:
                return 0
            if g.has_edge(s, u):
                continue
            best = min(best, _local_connectivity(g, bm, s, u, best))
    return best


def subset_connectivity(g: Graph, b: Iterable[int]) -> int:
    """Vertex connectivity of the induced subgraph G[b].

    K_t gives t - 1, a singleton or a disconnected subgraph gives 0.
    """
    bm = _as_mask(g, b)
    if not bm:
        raise InputError("connectivity of an empty vertex set is undefined")
    return _connectivity_mask(g, bm)


def meets_connectivity(g: Graph, bm: int, k: int) -> bool:
    """The k-connectivity rule for a backbone mask.

    k = 1 accepts any connected set including a singleton; k >= 2 needs
    at least two vertices and kappa(G[b]) >= k.
    """
    if k <= 0:
        return True
    if k == 1:
        return len(g.components(bm)) == 1
    if bm.bit_count() < k + 1:
        return False
    return _connectivity_mask(g, bm, cap=k) >= k


@dataclass
class FeasibilityCertificate:
    dominating: bool
    m_dominating_for: int
    m_dominating: bool
    connected: bool
    connectivity: int
    k: int
    feasible: bool
    violations: list[tuple[int, str]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "dominating": self.dominating,
            "m": self.m_dominating_for,
            "m_dominating": self.m_dominating,
            "connected": self.connected,
            "connectivity": self.connectivity,
            "k": self.k,
            "feasible": self.feasible,
            "violations": [[v, r] for v, r in self.violations],
        }


def check_feasible(g: Graph, b: Iterable[int], k: int = 1, m: int = 1) -> FeasibilityCertificate:
    """Evaluate every constraint for a (k, m) backbone and explain failures.

    ``k = 0`` drops the connectivity requirement altogether (plain
    domination).
    """
    if not isinstance(k, int) or k < 0:
        raise InputError(f"k must be a nonnegative integer, got {k!r}")
    bm = _as_mask(g, b)
    if not bm:
        raise InputError("feasibility of an empty vertex set is undefined")
    short1 = undominated(g, bm, 1)
    shortm = undominated(g, bm, m) if m > 1 else short1
    violations = [(v, "not dominated") for v in short1]
    violations += [
        (v, f"fewer than {m} neighbors in set") for v in shortm if v not in short1
    ]
    comps = g.components(bm)
    connected = len(comps) == 1
    kappa = _connectivity_mask(g, bm)
    conn_ok = meets_connectivity(g, bm, k)
    if not conn_ok:
        if not connected:
            violations.append((members_of(comps[1])[0], "induced subgraph disconnected"))
        else:
            violations.append((0, f"induced connectivity {kappa} below k={k}"))
    return FeasibilityCertificate(
        dominating=not short1,
        m_dominating_for=m,
        m_dominating=not shortm,
        connected=connected,
        connectivity=kappa,
        k=k,
        feasible=not shortm and conn_ok,
        violations=violations,
    )
