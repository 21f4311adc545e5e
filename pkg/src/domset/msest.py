"""Interval multiset estimates over an ordinal scale and median-based
dominating set models.

An estimate with scale length ``l`` and cardinality ``eta`` is stored in
position form: ``counts[i]`` elements sit at level ``i + 1``.  Level 1 is the
best.  Valid estimates occupy a contiguous range of levels.

Canonical order puts more mass at better levels first, i.e. descending
lexicographic order of the position form.  It is used for enumeration order
and all tie-breaking.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError, ResourceError
from .graph import Graph, check_feasible, mask_of
from .solvers import SolveResult, _feasible_mask, _no_backbone, _precheck
from .weights import WeightVectorTable

MAX_LEVELS = 10
MAX_ETA = 10
MSEST_MAX_N = 18
OBJECTIVES = ("median-cohesion", "integrated-distance")


@dataclass(frozen=True, order=False)
class Estimate:
    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts:
            raise InputError("estimate needs at least one level")
        if any((not isinstance(c, int)) or c < 0 for c in self.counts):
            raise InputError(f"estimate counts must be nonnegative integers: {self.counts}")
        if sum(self.counts) < 1:
            raise InputError("estimate cardinality must be at least 1")

    @classmethod
    def from_levels(cls, levels: Iterable[int], l: int) -> "Estimate":
        counts = [0] * l
        for x in levels:
            if not 1 <= x <= l:
                raise InputError(f"level {x} outside 1..{l}")
            counts[x - 1] += 1
        return cls(tuple(counts))

    @property
    def l(self) -> int:
        return len(self.counts)

    @property
    def eta(self) -> int:
        return sum(self.counts)

    @property
    def levels(self) -> tuple[int, ...]:
        """Expanded ascending level sequence: (1, 0, 2) -> (1, 3, 3)."""
        out = []
        for i, c in enumerate(self.counts, 1):
            out.extend([i] * c)
        return tuple(out)

    def is_interval(self) -> bool:
        occupied = [i for i, c in enumerate(self.counts) if c]
        return occupied[-1] - occupied[0] + 1 == len(occupied)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(-c for c in self.counts)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.levels)) + "}"


@dataclass(frozen=True)
class Proximity:
    improvement: int
    degradation: int

    @property
    def magnitude(self) -> int:
        return self.improvement + self.degradation

    def __iter__(self):
        return iter((self.improvement, self.degradation))


@dataclass(frozen=True)
class EstimateTable:
    l: int
    eta: int
    rows: tuple[Estimate, ...]

    def __post_init__(self):
        for i, e in enumerate(self.rows, 1):
            if e.l != self.l or e.eta != self.eta:
                raise InputError(
                    f"estimate of vertex {i} has (l, eta)=({e.l}, {e.eta}), expected ({self.l}, {self.eta})"
                )
            if not e.is_interval():
                raise InputError(f"estimate of vertex {i} {e.counts} does not cover an interval")

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, v: int) -> Estimate:
        return self.rows[v - 1]


def multiset_coefficient(l: int, eta: int) -> int:
    """Number of multisets of size ``eta`` over ``l`` symbols."""
    if not isinstance(l, int) or not isinstance(eta, int) or l < 1 or eta < 1:
        raise InputError(f"l and eta must be positive integers, got ({l!r}, {eta!r})")
    num = 1
    for j in range(eta):
        num *= l + j
    return num // math.factorial(eta)


def _check_scale(l: int, eta: int) -> None:
    if not isinstance(l, int) or not isinstance(eta, int) or l < 1 or eta < 1:
        raise InputError(f"l and eta must be positive integers, got ({l!r}, {eta!r})")
    if l > MAX_LEVELS or eta > MAX_ETA:
        raise ResourceError(f"(l, eta)=({l}, {eta}) beyond the caps ({MAX_LEVELS}, {MAX_ETA})")


def enumerate_interval_estimates(l: int, eta: int) -> list[Estimate]:
    """All interval estimates for ``(l, eta)`` in canonical order."""
    _check_scale(l, eta)
    out = []
    for lo in range(l):
        for hi in range(lo, l):
            width = hi - lo + 1
            if width > eta:
                break
            # every level in lo..hi gets >= 1; spread the remainder freely
            for extra in _compositions(eta - width, width):
                counts = [0] * l
                for j, x in enumerate(extra):
                    counts[lo + j] = x + 1
                out.append(Estimate(tuple(counts)))
    out.sort(key=Estimate.sort_key)
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def integrate(estimates: Sequence[Estimate]) -> Estimate:
    """Componentwise sum of position forms.  The result may have gaps."""
    if not estimates:
        raise InputError("integration needs at least one estimate")
    l = estimates[0].l
    if any(e.l != l for e in estimates):
        raise InputError("integrated estimates must share the scale length")
    return Estimate(tuple(sum(col) for col in zip(*(e.counts for e in estimates))))


def _same_shape(e1: Estimate, e2: Estimate) -> None:
    if e1.l != e2.l or e1.eta != e2.eta:
        raise InputError(
            f"proximity needs equal (l, eta), got ({e1.l}, {e1.eta}) and ({e2.l}, {e2.eta})"
        )


def proximity(e1: Estimate, e2: Estimate) -> Proximity:
    """One-step level moves turning ``e1`` into ``e2``, split into improvements
    (toward level 1) and degradations."""
    _same_shape(e1, e2)
    up = down = 0
    for a, b in zip(e1.levels, e2.levels):
        if b > a:
            down += b - a
        else:
            up += a - b
    return Proximity(up, down)


def _distance(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    return sum(abs(x - y) for x, y in zip(a, b))


def generalized_median(
    estimates: Sequence[Estimate], l: int | None = None, eta: int | None = None
) -> tuple[Estimate, int]:
    """Interval estimate minimizing total proximity magnitude to ``estimates``."""
    if not estimates:
        raise InputError("median of an empty list")
    l = estimates[0].l if l is None else l
    eta = estimates[0].eta if eta is None else eta
    for e in estimates:
        if e.l != l or e.eta != eta:
            raise InputError("median inputs must share (l, eta)")
    return _best_of(enumerate_interval_estimates(l, eta), estimates)


def set_median(estimates: Sequence[Estimate]) -> tuple[Estimate, int]:
    """Like the generalized median but choosing among the inputs themselves."""
    if not estimates:
        raise InputError("median of an empty list")
    for e in estimates:
        _same_shape(estimates[0], e)
    return _best_of(sorted(set(estimates), key=Estimate.sort_key), estimates)


def _best_of(candidates: Sequence[Estimate], estimates: Sequence[Estimate]) -> tuple[Estimate, int]:
    seqs = [e.levels for e in estimates]
    best, best_cost = None, None
    for c in candidates:  # canonical order, so the first minimum wins
        s = c.levels
        cost = sum(_distance(s, t) for t in seqs)
        if best_cost is None or cost < best_cost:
            best, best_cost = c, cost
    return best, best_cost


# -- weight compression -------------------------------------------------------


def _repair(raw: Estimate) -> Estimate:
    if raw.is_interval():
        return raw
    return _best_of(enumerate_interval_estimates(raw.l, raw.eta), [raw])[0]


def quantize_weights(w: WeightVectorTable, l: int) -> EstimateTable:
    """Compress weight vectors into interval estimates with ``eta = mu``.

    Each criterion column is cut into ``l`` equal-width bins over its observed
    range; lighter weights land on better levels.  A constant column maps to
    level 1.  Gapped multisets are repaired to the nearest interval estimate,
    preferring better levels on ties.
    """
    if not isinstance(l, int) or l < 2:
        raise InputError(f"quantization needs l >= 2, got {l!r}")
    mu = w.mu
    _check_scale(l, mu)
    cols = [[Fraction(r[c]) if not isinstance(r[c], float) else r[c] for r in w.rows] for c in range(mu)]
    bins = []
    for col in cols:
        lo, hi = min(col), max(col)
        if hi == lo:
            bins.append([1] * len(col))
            continue
        bins.append([min(l, 1 + math.floor((x - lo) * l / (hi - lo))) for x in col])
    rows = []
    for i in range(len(w)):
        raw = Estimate.from_levels((bins[c][i] for c in range(mu)), l)
        rows.append(_repair(raw))
    return EstimateTable(l, mu, tuple(rows))


# -- estimate-driven dominating sets ----------------------------------------


def integrated_distance(estimates: Sequence[Estimate]) -> Fraction:
    """Distance of the per-member normalized integration of ``estimates``
    from the ideal estimate (everything at level 1)."""
    e = integrate(estimates)
    return Fraction(sum(x - 1 for x in e.levels), len(estimates))


@dataclass
class MsestResult(SolveResult):
    median: Estimate | None = None
    objective_mode: str = "median-cohesion"
    candidates: list = field(default_factory=list)


def solve_msest(
    g: Graph,
    est: EstimateTable,
    k: int = 0,
    m: int = 1,
    objective: str = "median-cohesion",
    max_n: int = MSEST_MAX_N,
) -> MsestResult:
    """Feasible set whose estimates are most cohesive.

    The default objective J(B) is the generalized-median cost of the
    estimates of B's members.  Ties on J go to the smaller set, then the
    lexicographically smallest one.  ``k = 0`` asks only for domination.
    """
    if objective not in OBJECTIVES:
        raise InputError(f"unknown objective {objective!r}")
    if len(est) != g.n:
        raise InputError(f"{len(est)} estimates for {g.n} vertices")
    if not isinstance(k, int) or k < 0:
        raise InputError(f"k must be >= 0, got {k!r}")
    if not isinstance(m, int) or m < 1:
        raise InputError(f"m must be >= 1, got {m!r}")
    if g.n > max_n:
        raise ResourceError(f"median model enumeration refuses n={g.n} > {max_n}")
    _check_scale(est.l, est.eta)
    start = time.perf_counter()
    pre = _precheck(g, k, "exact-enum")
    if pre is not None:
        return MsestResult(
            None, None, None, "exact-enum", feasible=False, reason=pre.reason,
            info=pre.info, objective_mode=objective,
        )

    space = enumerate_interval_estimates(est.l, est.eta)
    # dist[v][j]: proximity magnitude between candidate median j and e(v)
    dist = [None] + [[_distance(c.levels, e.levels) for c in space] for e in est.rows]
    columns = range(len(space))
    cohesion = objective == "median-cohesion"
    best_key, best_set = None, None
    minimal: list[int] = []
    nodes = 0
    for size in range(1, g.n + 1):
        for combo in combinations(g.vertices, size):
            bm = mask_of(combo)
            if cohesion and any(bm & f == f for f in minimal):
                # J never drops when members are added, and the set grows
                continue
            nodes += 1
            if not _feasible_mask(g, bm, k, m):
                continue
            if cohesion:
                minimal.append(bm)
                value = min(sum(dist[v][j] for v in combo) for j in columns)
            else:
                value = integrated_distance([est[v] for v in combo])
            key = (value, size, combo)
            if best_key is None or key < best_key:
                best_key, best_set = key, combo
    if best_set is None:
        res = _no_backbone(g, k, m, "exact-enum", nodes)
        return MsestResult(
            None, None, None, res.method, nodes, time.perf_counter() - start,
            feasible=False, reason=res.reason, info=res.info, objective_mode=objective,
        )
    median, cost = generalized_median([est[v] for v in best_set], est.l, est.eta)
    value = best_key[0]
    cert = check_feasible(g, best_set, k, m)
    return MsestResult(
        best_set,
        value if cohesion else _plain(value),
        cert,
        "exact-enum",
        nodes,
        time.perf_counter() - start,
        info={"median_cost": cost},
        median=median,
        objective_mode=objective,
    )


def _plain(f: Fraction):
    return f.numerator if f.denominator == 1 else float(f)
