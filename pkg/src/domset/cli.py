"""Command-line interface.

Exit codes: 0 success, 1 infeasible, 2 input error, 3 resource cap,
4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import oracle
from .errors import DomsetError, InputError
from .generate import (
    FIXTURES,
    connected_gnp,
    fixture,
    gnp,
    random_estimates,
    random_weights,
    udg,
)
from .graph import Graph, check_feasible
from .io import (
    ResultDocument,
    parse_estimates,
    parse_graph,
    parse_weights,
    write_estimates_text,
    write_graph_text,
    write_weights_text,
)
from .msest import OBJECTIVES, quantize_weights, solve_msest
from .pareto import pareto_front
from .solvers import ProblemSpec, solve
from .weights import WeightTable, WeightVectorTable

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_RESOURCE, EXIT_MISMATCH = 0, 1, 2, 3, 4


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be >= 1")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be >= 0")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_solve_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True)
    p.add_argument("--weights", help="scalar weight file (one positive number per line)")
    p.add_argument("--variant", choices=["ds", "cds"], default="ds")
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--m", type=_positive_int, default=1)
    p.add_argument("--method", choices=["exact", "bb", "greedy", "two-phase"], default="exact")
    p.add_argument("--json", action="store_true")


def _add_pareto_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--k", type=_nonneg_int, default=0, help="0 = no connectivity demand")
    p.add_argument("--m", type=_positive_int, default=1)
    p.add_argument("--all-sets", action="store_true")
    p.add_argument("--json", action="store_true")


def _add_msest_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--estimates")
    src.add_argument("--weights", help="weight vectors, compressed into estimates")
    p.add_argument("--levels", type=_positive_int, default=3, help="scale length when compressing --weights")
    p.add_argument("--k", type=_nonneg_int, default=0, help="0 = no connectivity demand")
    p.add_argument("--m", type=_positive_int, default=1)
    p.add_argument("--objective", choices=OBJECTIVES, default="median-cohesion")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="domset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_solve_args(sub.add_parser("solve", help="single-objective minimum (k,m)-(C)DS"))
    _add_pareto_args(sub.add_parser("pareto", help="Pareto front under weight vectors"))
    _add_msest_args(sub.add_parser("msest", help="median-based models over interval estimates"))

    p = sub.add_parser("check", help="feasibility certificate for a given set")
    p.add_argument("--graph", required=True)
    p.add_argument("--set", required=True, help="comma-separated vertex ids")
    p.add_argument("--k", type=_nonneg_int, default=1, help="0 = no connectivity demand")
    p.add_argument("--m", type=_positive_int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--model", choices=["gnp", "udg", "fixture"], required=True)
    p.add_argument("--n", type=_positive_int, default=10)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--connected", action="store_true", help="gnp: redraw until connected")
    p.add_argument("--radius", type=float, default=0.4)
    p.add_argument("--fixture", choices=sorted(FIXTURES), default="ring-backbone")
    p.add_argument("--core", type=_positive_int, default=6)
    p.add_argument("--leaves", type=_nonneg_int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="graph file (default: stdout)")
    p.add_argument("--weights-out")
    p.add_argument("--mu", type=_positive_int, default=2)
    p.add_argument("--estimates-out")
    p.add_argument("--levels", type=_positive_int, default=3)
    p.add_argument("--eta", type=_positive_int, default=2)

    p = sub.add_parser("oracle", help="rerun a solver by brute force and diff")
    osub = p.add_subparsers(dest="target", required=True, parser_class=_Parser)
    _add_solve_args(osub.add_parser("solve"))
    _add_pareto_args(osub.add_parser("pareto"))
    _add_msest_args(osub.add_parser("msest"))
    s = osub.add_parser("suite", help="randomized release gate")
    s.add_argument("--seeds", type=_positive_int, default=100)
    s.add_argument("--max-n", type=_positive_int, default=12)
    s.add_argument("--json", action="store_true")
    return parser


# -- helpers -------------------------------------------------------------------


def _scalar_weights(path: str | None) -> WeightTable | None:
    if path is None:
        return None
    table = parse_weights(path)
    if table.mu != 1:
        raise InputError(f"{path}: expected one weight per line, found {table.mu}")
    return table.column(0)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _cert_line(cert: dict) -> str:
    return (
        f"dominating={_yes(cert['dominating'])} "
        f"m-dominating(m={cert['m']})={_yes(cert['m_dominating'])} "
        f"connected={_yes(cert['connected'])} connectivity={cert['connectivity']} "
        f"k={cert['k']} feasible={_yes(cert['feasible'])}"
    )


def _fmt_set(s: Sequence[int]) -> str:
    return " ".join(map(str, s)) if s else "-"


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    return x


def _emit(doc: ResultDocument, as_json: bool, out) -> int:
    if as_json:
        out.write(doc.to_json() + "\n")
    else:
        out.write(_human(doc))
    if doc.status == "mismatch":
        return EXIT_MISMATCH
    return EXIT_OK if doc.feasible else EXIT_INFEASIBLE


def _human(doc: ResultDocument) -> str:
    rows = [("command", doc.command)]
    if doc.variant:
        rows.append(("variant", doc.variant))
    params = [f"{name}={val}" for name, val in (("k", doc.k), ("m", doc.m)) if val is not None]
    if params:
        rows.append(("parameters", " ".join(params)))
    if doc.method:
        rows.append(("method", doc.method))
    if doc.objective_mode:
        rows.append(("objective mode", doc.objective_mode))
    rows.append(("status", doc.status))
    if doc.reason:
        rows.append(("reason", doc.reason))
    if doc.command in ("solve", "msest", "check") and doc.sets:
        rows.append(("set", _fmt_set(doc.sets[0])))
        rows.append(("size", str(len(doc.sets[0]))))
    if doc.objective is not None:
        rows.append(("objective", str(doc.objective)))
    if doc.median is not None:
        rows.append(("median", " ".join(map(str, doc.median))))
    if doc.certificate:
        rows.append(("certificate", _cert_line(doc.certificate)))
        for v, why in doc.certificate["violations"]:
            rows.append(("violation", f"vertex {v}: {why}" if v else why))
    if doc.command in ("solve", "msest", "pareto"):
        rows.append(("nodes explored", str(doc.nodes_explored)))
    for key, val in doc.extra.items():
        if not isinstance(val, (list, dict)):
            rows.append((key.replace("_", " "), str(val)))
    width = max(len(r[0]) for r in rows)
    text = "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)
    if doc.command == "pareto" and doc.feasible:
        text += f"\n{'objective vector':<24}set\n"
        for i, (vec, s) in enumerate(zip(doc.objectives, doc.sets)):
            label = "(" + ", ".join(map(str, vec)) + ")"
            if doc.all_sets:
                text += "".join(f"{label:<24}{_fmt_set(t)}\n" for t in doc.all_sets[i])
            else:
                text += f"{label:<24}{_fmt_set(s)}\n"
    return text


# -- commands --------------------------------------------------------------------


def _solve_doc(args):
    g = parse_graph(args.graph)
    weights = _scalar_weights(args.weights)
    spec = ProblemSpec(args.variant.upper(), k=args.k, m=args.m, weights=weights, method=args.method)
    res = solve(g, spec)
    doc = ResultDocument(
        "solve",
        status="ok" if res.feasible else "infeasible",
        feasible=res.feasible,
        variant=spec.variant,
        k=spec.connectivity,
        m=spec.m,
        method=res.method,
        sets=[list(res.best_set)] if res.best_set else [],
        objective=res.objective,
        certificate=res.certificate.as_dict() if res.certificate else None,
        nodes_explored=res.nodes_explored,
        reason=res.reason,
        extra={k: v for k, v in res.info.items()},
        elapsed_ms=res.elapsed * 1000,
    )
    return doc, g, spec, res


def _pareto_doc(args):
    g = parse_graph(args.graph)
    w = parse_weights(args.weights)
    front = pareto_front(g, w, args.k, args.m)
    doc = ResultDocument(
        "pareto",
        status="ok" if front.feasible else "infeasible",
        feasible=front.feasible,
        k=args.k,
        m=args.m,
        method="exact-enum",
        sets=[list(s) for s, _ in front.points],
        objectives=[list(v) for _, v in front.points],
        all_sets=[[list(s) for s in front.all_sets[v]] for _, v in front.points] if args.all_sets else [],
        nodes_explored=front.nodes_explored,
        reason=front.reason,
        extra=dict(front.info) | {"points": len(front.points)},
        elapsed_ms=front.elapsed * 1000,
    )
    return doc, g, w, front


def _msest_doc(args):
    g = parse_graph(args.graph)
    if args.estimates:
        est = parse_estimates(args.estimates)
    else:
        est = quantize_weights(parse_weights(args.weights), args.levels)
    res = solve_msest(g, est, args.k, args.m, args.objective)
    doc = ResultDocument(
        "msest",
        status="ok" if res.feasible else "infeasible",
        feasible=res.feasible,
        k=args.k,
        m=args.m,
        method=res.method,
        objective_mode=res.objective_mode,
        sets=[list(res.best_set)] if res.best_set else [],
        objective=res.objective,
        median=list(res.median.counts) if res.median else None,
        certificate=res.certificate.as_dict() if res.certificate else None,
        nodes_explored=res.nodes_explored,
        reason=res.reason,
        extra=dict(res.info),
        elapsed_ms=res.elapsed * 1000,
    )
    return doc, g, est, res


def _check_doc(args) -> ResultDocument:
    g = parse_graph(args.graph)
    try:
        ids = [int(t) for t in args.set.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"--set must be comma-separated integers, got {args.set!r}") from None
    cert = check_feasible(g, ids, args.k, args.m)
    return ResultDocument(
        "check",
        status="ok" if cert.feasible else "infeasible",
        feasible=cert.feasible,
        k=args.k,
        m=args.m,
        sets=[sorted(ids)],
        certificate=cert.as_dict(),
    )


def _gen(args, out) -> int:
    meta = [f"generated by domset gen --model {args.model} --seed {args.seed}"]
    if args.model == "gnp":
        maker = connected_gnp if args.connected else gnp
        g = maker(args.n, args.p, args.seed)
        meta.append(f"gnp n={args.n} p={args.p}")
    elif args.model == "udg":
        g, _ = udg(args.n, args.radius, args.seed)
        meta.append(f"udg n={args.n} radius={args.radius}")
    else:
        bundle = fixture(args.fixture, args.core, args.leaves)
        g = bundle.graph
        meta.append(f"fixture {args.fixture} core={args.core} leaves={args.leaves}")
        meta.append(f"core: {','.join(map(str, bundle.core))} k={bundle.k} m={bundle.m}")
    text = write_graph_text(g, meta)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    if args.weights_out:
        with open(args.weights_out, "w") as fh:
            fh.write(write_weights_text(random_weights(g.n, args.mu, args.seed)))
    if args.estimates_out:
        with open(args.estimates_out, "w") as fh:
            fh.write(write_estimates_text(random_estimates(g.n, args.levels, args.eta, args.seed)))
    return EXIT_OK


# -- oracle ----------------------------------------------------------------------


def _same(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(float(a), float(b), rel_tol=1e-9)
    return Fraction(a) == Fraction(b)


def _true_weights(table) -> list:
    if table is None:
        return None
    return [Fraction(x, table.scale) if isinstance(x, int) else x for x in table.values]


def _true_rows(table: WeightVectorTable) -> list[tuple]:
    return [
        tuple(Fraction(x, table.scale) if isinstance(x, int) else x for x in r) for r in table.rows
    ]


def diff_solve(g: Graph, spec: ProblemSpec, res) -> list[str]:
    k, m = spec.connectivity, spec.m
    value, best = oracle.brute_min(g, k, m, _true_weights(spec.weights))
    problems = []
    if best is None:
        if res.feasible:
            problems.append("solver found a set, brute force found none")
        return problems
    if not res.feasible:
        return [f"solver reports infeasible, brute force found {list(best)}"]
    adj = oracle._adj(g)
    if not oracle.feasible(adj, set(res.best_set), k, m):
        problems.append(f"solver set {list(res.best_set)} fails the brute-force check")
    if spec.method in ("exact-enum", "branch-bound"):
        if not _same(res.objective, value):
            problems.append(f"objective {res.objective} != brute force {_num(value)}")
        elif tuple(res.best_set) != best:
            problems.append(f"set {list(res.best_set)} != canonical {list(best)}")
    elif Fraction(res.objective) < Fraction(value):
        problems.append(f"heuristic objective {res.objective} beats the optimum {_num(value)}")
    return problems


def diff_pareto(g: Graph, w: WeightVectorTable, k: int, m: int, front) -> list[str]:
    ref = oracle.brute_pareto(g, _true_rows(w), k, m)
    if not front.feasible:
        return [] if not ref else ["solver reports infeasible, brute force has a front"]
    got = {tuple(Fraction(x) for x in v): s for s, v in front.points}
    want = {tuple(Fraction(x) for x in v): sets for v, sets in ref.items()}
    problems = []
    if set(got) != set(want):
        problems.append(f"front vectors differ: solver {sorted(got)} vs brute force {sorted(want)}")
    else:
        for v, s in got.items():
            if tuple(s) != want[v][0]:
                problems.append(f"representative for {v}: {list(s)} != {list(want[v][0])}")
    return problems


def diff_msest(g: Graph, est, k: int, m: int, objective: str, res) -> list[str]:
    rows = [e.levels for e in est.rows]
    value, best = oracle.brute_msest(g, rows, est.l, est.eta, k, m, objective)
    if best is None:
        return [] if not res.feasible else ["solver found a set, brute force found none"]
    if not res.feasible:
        return [f"solver reports infeasible, brute force found {list(best)}"]
    problems = []
    if not _same(res.objective, value):
        problems.append(f"objective {res.objective} != brute force {_num(value)}")
    elif tuple(res.best_set) != best:
        problems.append(f"set {list(res.best_set)} != canonical {list(best)}")
    return problems


def run_suite(seeds: int = 100, max_n: int = 12) -> tuple[int, list[str]]:
    """Randomized cross-check of every solver against brute force.

    Returns (number of comparisons, list of mismatch descriptions).
    """
    problems: list[str] = []
    checks = 0
    for seed in range(seeds):
        rng = random.Random(seed)
        n = rng.randint(4, max(4, max_n))
        p = rng.choice([0.2, 0.4, 0.6])
        g = connected_gnp(n, p, seed)
        w = random_weights(n, 2, seed)
        tag = f"seed {seed} (n={n}, p={p})"
        specs = [
            ProblemSpec("DS", method="exact"),
            ProblemSpec("DS", method="bb"),
            ProblemSpec("CDS", method="exact"),
            ProblemSpec("CDS", method="bb"),
            ProblemSpec("DS", weights=w.column(0), method="bb"),
            ProblemSpec("CDS", weights=w.column(1), method="exact"),
            ProblemSpec("CDS", k=2, method="bb"),
            ProblemSpec("CDS", k=2, m=2, method="exact"),
            ProblemSpec("DS", m=2, method="bb"),
            ProblemSpec("DS", method="greedy"),
            ProblemSpec("CDS", method="two-phase"),
        ]
        for spec in specs:
            checks += 1
            res = solve(g, spec)
            for msg in diff_solve(g, spec, res):
                problems.append(f"{tag} solve {spec.variant} k={spec.k} m={spec.m} {spec.method}: {msg}")
        small = min(n, 10)
        sg = connected_gnp(small, p, seed)
        sw = random_weights(small, 2 + seed % 2, seed)
        for k in (0, 1):
            checks += 1
            front = pareto_front(sg, sw, k, 1)
            for msg in diff_pareto(sg, sw, k, 1, front):
                problems.append(f"{tag} pareto k={k}: {msg}")
        est = random_estimates(small, 3, 1 + seed % 3, seed)
        for k, m in ((0, 1), (1, 1)):
            checks += 1
            res = solve_msest(sg, est, k, m)
            for msg in diff_msest(sg, est, k, m, "median-cohesion", res):
                problems.append(f"{tag} msest k={k} m={m}: {msg}")
    return checks, problems


def _oracle(args, out) -> int:
    if args.target == "suite":
        checks, problems = run_suite(args.seeds, args.max_n)
        doc = ResultDocument(
            "oracle",
            status="mismatch" if problems else "ok",
            extra={"target": "suite", "seeds": args.seeds, "max_n": args.max_n,
                   "checks": checks, "mismatches": problems},
        )
    else:
        if args.target == "solve":
            doc, g, spec, res = _solve_doc(args)
            problems = diff_solve(g, spec, res)
        elif args.target == "pareto":
            doc, g, w, front = _pareto_doc(args)
            problems = diff_pareto(g, w, args.k, args.m, front)
        else:
            doc, g, est, res = _msest_doc(args)
            problems = diff_msest(g, est, args.k, args.m, args.objective, res)
        doc.extra = dict(doc.extra) | {"target": args.target, "mismatches": problems}
        doc.command = "oracle"
        if problems:
            doc.status = "mismatch"
    if args.json:
        return _emit(doc, True, out)
    mismatches = doc.extra["mismatches"]
    out.write(_human(doc))
    out.write(f"mismatches  {len(mismatches)}\n")
    for msg in mismatches:
        out.write(f"  {msg}\n")
    if mismatches:
        return EXIT_MISMATCH
    return EXIT_OK if doc.feasible else EXIT_INFEASIBLE


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "solve":
            return _emit(_solve_doc(args)[0], args.json, out)
        if args.command == "pareto":
            return _emit(_pareto_doc(args)[0], args.json, out)
        if args.command == "msest":
            return _emit(_msest_doc(args)[0], args.json, out)
        if args.command == "check":
            return _emit(_check_doc(args), args.json, out)
        if args.command == "gen":
            return _gen(args, out)
        return _oracle(args, out)
    except DomsetError as exc:
        err.write(f"domset: error: {exc}\n")
        return exc.exit_code


def run_cli(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
