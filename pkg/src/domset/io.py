"""Text formats for graphs, weights and estimates, plus the JSON result document.

Graph files: ``#`` comment lines, a header ``n m`` and then ``m`` lines
``u v``.  DIMACS files (``c`` comments, ``p edge n m``, ``e u v``) are
detected from the header token.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .errors import InputError
from .graph import Graph
from .msest import Estimate, EstimateTable
from .weights import WeightVectorTable, _positive

SCHEMA_VERSION = 1


def _data_lines(text: str, comment_prefixes=("#",)):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(comment_prefixes):
            continue
        yield lineno, line


def _ints(tokens, lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_graph_text(text: str) -> Graph:
    lines = list(_data_lines(text, ("#", "c ", "c\t")))
    lines = [(i, s) for i, s in lines if s != "c"]
    if not lines:
        raise InputError("graph file has no header line")
    lineno, header = lines[0]
    tokens = header.split()
    dimacs = tokens[0] == "p"
    if dimacs:
        if len(tokens) != 4:
            raise InputError(f"line {lineno}: DIMACS header must be 'p edge n m'")
        n, m = _ints(tokens[2:], lineno)
    else:
        if len(tokens) != 2:
            raise InputError(f"line {lineno}: header must be 'n m'")
        n, m = _ints(tokens, lineno)
    if n < 1 or m < 0:
        raise InputError(f"line {lineno}: invalid header values n={n} m={m}")
    edges: set[tuple[int, int]] = set()
    body = lines[1:]
    for lineno, line in body:
        tokens = line.split()
        if dimacs:
            if tokens[0] != "e" or len(tokens) != 3:
                raise InputError(f"line {lineno}: expected 'e u v'")
            tokens = tokens[1:]
        elif len(tokens) != 2:
            raise InputError(f"line {lineno}: expected 'u v'")
        u, v = _ints(tokens, lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"line {lineno}: vertex id out of range 1..{n}")
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in edges:
            raise InputError(f"line {lineno}: duplicate edge {u} {v}")
        edges.add(e)
    if len(body) != m:
        raise InputError(f"header announces {m} edges, found {len(body)}")
    return Graph(n, edges)


def parse_graph(path: str | Path) -> Graph:
    return parse_graph_text(_read(path))


def write_graph_text(g: Graph, comments: list[str] | None = None) -> str:
    out = [f"# {c}" for c in comments or []]
    out.append(f"{g.n} {len(g.edges)}")
    out.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(out) + "\n"


def write_graph(g: Graph, path: str | Path, comments: list[str] | None = None) -> None:
    Path(path).write_text(write_graph_text(g, comments))


def parse_weights_text(text: str) -> WeightVectorTable:
    rows = []
    mu = None
    for lineno, line in _data_lines(text):
        tokens = line.split()
        if mu is None:
            mu = len(tokens)
        elif len(tokens) != mu:
            raise InputError(f"line {lineno}: expected {mu} weights, got {len(tokens)}")
        for t in tokens:
            _positive(t, f"line {lineno}")
        rows.append(tokens)
    if not rows:
        raise InputError("weight file has no data lines")
    return WeightVectorTable.from_rows(rows)


def parse_weights(path: str | Path) -> WeightVectorTable:
    return parse_weights_text(_read(path))


def parse_estimates_text(text: str) -> EstimateTable:
    lines = list(_data_lines(text))
    if not lines:
        raise InputError("estimate file has no header line")
    lineno, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2:
        raise InputError(f"line {lineno}: header must be 'l eta'")
    l, eta = _ints(tokens, lineno)
    if l < 1 or eta < 1:
        raise InputError(f"line {lineno}: l and eta must be positive")
    rows = []
    for lineno, line in lines[1:]:
        counts = _ints(line.split(), lineno)
        if len(counts) != l:
            raise InputError(f"line {lineno}: expected {l} counts, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise InputError(f"line {lineno}: counts must be nonnegative")
        if sum(counts) != eta:
            raise InputError(f"line {lineno}: counts sum to {sum(counts)}, expected {eta}")
        e = Estimate(tuple(counts))
        if not e.is_interval():
            raise InputError(f"line {lineno}: occupied levels do not form an interval")
        rows.append(e)
    return EstimateTable(l, eta, tuple(rows))


def parse_estimates(path: str | Path) -> EstimateTable:
    return parse_estimates_text(_read(path))


def write_estimates_text(est: EstimateTable) -> str:
    out = [f"{est.l} {est.eta}"]
    out.extend(" ".join(map(str, e.counts)) for e in est.rows)
    return "\n".join(out) + "\n"


def write_weights_text(w: WeightVectorTable) -> str:
    return "\n".join(" ".join(str(x) for x in r) for r in w.true_rows()) + "\n"


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


# -- result documents ------------------------------------------------------------

_NUM = {"type": ["number", "null"]}

RESULT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "domset result document",
    "type": "object",
    "required": ["schema", "tool_version", "command", "status", "feasible", "sets", "timing"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "tool_version": {"type": "string"},
        "command": {"enum": ["solve", "pareto", "msest", "check", "oracle"]},
        "status": {"enum": ["ok", "infeasible", "mismatch"]},
        "feasible": {"type": "boolean"},
        "variant": {"type": ["string", "null"]},
        "k": {"type": ["integer", "null"]},
        "m": {"type": ["integer", "null"]},
        "method": {"type": ["string", "null"]},
        "objective_mode": {"type": ["string", "null"]},
        "sets": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        },
        "objective": _NUM,
        "objectives": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "all_sets": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            },
        },
        "median": {"type": ["array", "null"], "items": {"type": "integer", "minimum": 0}},
        "certificate": {
            "type": ["object", "null"],
            "required": ["dominating", "m", "m_dominating", "connected", "connectivity", "k", "feasible", "violations"],
            "additionalProperties": False,
            "properties": {
                "dominating": {"type": "boolean"},
                "m": {"type": "integer"},
                "m_dominating": {"type": "boolean"},
                "connected": {"type": "boolean"},
                "connectivity": {"type": "integer", "minimum": 0},
                "k": {"type": "integer", "minimum": 0},
                "feasible": {"type": "boolean"},
                "violations": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "prefixItems": [{"type": "integer"}, {"type": "string"}],
                        "minItems": 2,
                        "maxItems": 2,
                    },
                },
            },
        },
        "nodes_explored": {"type": "integer", "minimum": 0},
        "reason": {"type": "string"},
        "extra": {"type": "object"},
        "timing": {
            "type": "object",
            "required": ["elapsed_ms"],
            "properties": {"elapsed_ms": {"type": "number", "minimum": 0}},
        },
    },
}


@dataclass
class ResultDocument:
    command: str
    status: str = "ok"
    feasible: bool = True
    variant: str | None = None
    k: int | None = None
    m: int | None = None
    method: str | None = None
    objective_mode: str | None = None
    sets: list[list[int]] = field(default_factory=list)
    objective: int | float | None = None
    objectives: list[list] = field(default_factory=list)
    all_sets: list[list[list[int]]] = field(default_factory=list)
    median: list[int] | None = None
    certificate: dict | None = None
    nodes_explored: int = 0
    reason: str = ""
    extra: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0
    tool_version: str = __version__

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "command": self.command,
            "status": self.status,
            "feasible": self.feasible,
            "variant": self.variant,
            "k": self.k,
            "m": self.m,
            "method": self.method,
            "objective_mode": self.objective_mode,
            "sets": [sorted(s) for s in self.sets],
            "objective": self.objective,
            "objectives": [list(v) for v in self.objectives],
            "all_sets": [[sorted(s) for s in group] for group in self.all_sets],
            "median": self.median,
            "certificate": self.certificate,
            "nodes_explored": self.nodes_explored,
            "reason": self.reason,
            "extra": self.extra,
            "timing": {"elapsed_ms": round(self.elapsed_ms, 3)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ResultDocument":
        if d.get("schema") != SCHEMA_VERSION:
            raise InputError(f"unsupported result schema {d.get('schema')!r}")
        fields = {k: v for k, v in d.items() if k not in ("schema", "timing")}
        fields["elapsed_ms"] = d.get("timing", {}).get("elapsed_ms", 0.0)
        return cls(**fields)

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        return cls.from_dict(json.loads(text))
