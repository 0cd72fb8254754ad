"""Command-line front end: ``coopdeg {analyze,values,leastcore,partition,gen}``.

Exit codes: 0 success, 2 invalid input or domain error, 3 size guard hit,
4 disagreement between a fixed-parameter route and its oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager, nullcontext
from fractions import Fraction

from . import __version__
from .decomposition import (
    clique_tree,
    elimination_tree_decomposition,
    graphs_to_dot,
    is_chordal,
    make_nice,
    td_to_dot,
)
from .dependency import (
    Flavor,
    degrees,
    dependency_graph,
    dummy_players,
    minimal_winning_coalitions,
    veto_players,
)
from .errors import DomainError, EmptyLeastCore, GameError, InvariantViolation, OracleMismatch, SizeGuardError
from .game import Game, WeightedVotingGame, check_monotone, is_simple, members, relaxed_size_guards
from .gamefile import format_rational, load_game, serialize_game
from .instances import (
    QUOTA_RULES,
    complete_graph,
    cube_graph,
    gen_example1,
    gen_is_hypergraph,
    gen_random_simple,
    gen_random_wvg,
    gen_x3c_game,
)
from .stability import least_core_bruteforce, least_core_simple
from .structures import (
    BRUTE_FORCE_LIMIT,
    brute_optimal_cs,
    dp_optimal_cs,
    subset_dp_optimal_cs,
    wvg_optimal_cs,
)
from .values import banzhaf_fpt, banzhaf_naive, shapley_fpt, shapley_naive

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_GUARD = 3
EXIT_MISMATCH = 4

BACKENDS = {
    "WeightedVotingGame": "wvg",
    "InducedSubgraphGame": "isg",
    "HypergraphGame": "hypergraph",
    "MwcListGame": "mwc",
    "ExplicitGame": "explicit",
}


class _Timer:
    def __init__(self):
        self.stages: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.stages[name] = round(time.perf_counter() - start, 6)


def _rat(x) -> str:
    return format_rational(x)


def _vec(xs) -> list[str]:
    return [_rat(x) for x in xs]


def _summary(g: Game) -> dict:
    simple = is_simple(g)
    monotone = g._flags.get("monotone")
    if monotone is None:
        monotone = check_monotone(g)
    return {"n": g.n, "backend": BACKENDS.get(type(g).__name__, type(g).__name__), "simple": simple, "monotone": monotone}


# -- commands ------------------------------------------------------------------

def cmd_analyze(args) -> dict:
    timer = _Timer()
    with timer.stage("load"):
        g = load_game(args.file)
    with timer.stage("flags"):
        summary = _summary(g)
    with timer.stage("dependency graph"):
        full = dependency_graph(g, Flavor.FULL)
    with timer.stage("supermodular graph"):
        sup = dependency_graph(g, Flavor.SUPERMODULAR)
    per_d, d = degrees(full)
    per_p, p = degrees(sup)
    report = {
        "game": summary,
        "degrees": {"d": d, "p": p, "dependency": per_d, "supermodular": per_p},
        "edges": {"dependency": [list(e) for e in full.edges()], "supermodular": [list(e) for e in sup.edges()]},
        "dummies": sorted(dummy_players(g, full)),
        "veto": None,
        "mwcs": None,
    }
    if summary["simple"]:
        report["veto"] = sorted(veto_players(g))
        with timer.stage("minimal winning coalitions"):
            mwcs = minimal_winning_coalitions(g, sup)
        report["mwcs"] = {"count": len(mwcs), "list": [members(m) for m in mwcs]}
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(graphs_to_dot(full, sup))
        report["dot"] = args.dot
    report["timings"] = timer.stages
    return report


def cmd_values(args) -> dict:
    timer = _Timer()
    g = load_game(args.file)
    report: dict = {"game": {"n": g.n, "backend": BACKENDS.get(type(g).__name__)}, "method": args.method}
    if args.method in ("fpt", "both"):
        with timer.stage("dependency graph"):
            full = dependency_graph(g, Flavor.FULL)
        with timer.stage("fpt"):
            fpt = (shapley_fpt(g, full), banzhaf_fpt(g, full))
        report["d"] = degrees(full)[1]
    if args.method in ("naive", "both"):
        with timer.stage("naive"):
            naive = (shapley_naive(g), banzhaf_naive(g))
    chosen = fpt if args.method != "naive" else naive
    report["shapley"] = _vec(chosen[0])
    report["banzhaf"] = _vec(chosen[1])
    if args.method == "both":
        diff = [
            f"{name}[{i}]: fpt {_rat(a)} != naive {_rat(b)}"
            for name, xs, ys in (("shapley", fpt[0], naive[0]), ("banzhaf", fpt[1], naive[1]))
            for i, (a, b) in enumerate(zip(xs, ys))
            if a != b
        ]
        if diff:
            raise OracleMismatch("value vectors disagree:\n  " + "\n  ".join(diff))
        report["agreement"] = True
    report["timings"] = timer.stages
    return report


def _least_core_report(res) -> dict:
    return {
        "epsilon": _rat(res.epsilon),
        "x": _vec(res.x),
        "binding": [members(s) for s in res.binding],
    }


def cmd_leastcore(args) -> dict:
    timer = _Timer()
    g = load_game(args.file)
    report: dict = {"game": {"n": g.n, "backend": BACKENDS.get(type(g).__name__)}, "method": args.method}
    results = {}
    try:
        if args.method in ("fpt", "both"):
            if not is_simple(g):
                raise DomainError("the fpt least core needs a simple game; use --method brute")
            with timer.stage("fpt"):
                results["fpt"] = least_core_simple(g, dependency_graph(g, Flavor.SUPERMODULAR))
        if args.method in ("brute", "both"):
            with timer.stage("brute"):
                results["brute"] = least_core_bruteforce(g)
    except EmptyLeastCore as exc:
        report.update(status="empty", message=f"least core empty: {exc}")
        report["timings"] = timer.stages
        return report
    main = results.get("fpt") or results["brute"]
    report["status"] = "ok"
    report.update(_least_core_report(main))
    if args.method == "both":
        a, b = results["fpt"].epsilon, results["brute"].epsilon
        if a != b:
            raise OracleMismatch(f"least-core value disagrees: fpt {_rat(a)} != brute {_rat(b)}")
        report["agreement"] = True
    report["timings"] = timer.stages
    return report


def _fpt_partition(g: Game, dot_path: str | None):
    if isinstance(g, WeightedVotingGame):
        res = wvg_optimal_cs(g)
        ntd = make_nice(clique_tree(dependency_graph(g, Flavor.SUPERMODULAR))) if dot_path else None
    else:
        if not is_simple(g):
            raise DomainError("the fpt partition needs a simple game; use --method brute")
        sg = dependency_graph(g, Flavor.SUPERMODULAR)
        td = clique_tree(sg) if is_chordal(sg) else elimination_tree_decomposition(sg)
        ntd = make_nice(td, sg)
        res = dp_optimal_cs(g, ntd, sg)
    if dot_path:
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(td_to_dot(ntd))
    return res


def cmd_partition(args) -> dict:
    timer = _Timer()
    g = load_game(args.file)
    report: dict = {"game": {"n": g.n, "backend": BACKENDS.get(type(g).__name__)}, "method": args.method}
    results = {}
    if args.method in ("fpt", "both"):
        with timer.stage("fpt"):
            results["fpt"] = _fpt_partition(g, args.dot)
    if args.method in ("brute", "both"):
        with timer.stage("brute"):
            results["brute"] = brute_optimal_cs(g) if g.n <= BRUTE_FORCE_LIMIT else subset_dp_optimal_cs(g)
    main = results.get("fpt") or results["brute"]
    report["welfare"] = _rat(main.welfare)
    report["partition"] = main.partition()
    if "fpt" in results:
        report["dp"] = results["fpt"].stats
    if args.method == "both":
        a, b = results["fpt"].welfare, results["brute"].welfare
        if a != b:
            raise OracleMismatch(f"optimal welfare disagrees: fpt {_rat(a)} != brute {_rat(b)}")
        report["agreement"] = True
    report["timings"] = timer.stages
    return report


def _parse_triples(text: str) -> list[list[int]]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            out.append([int(x) for x in chunk.replace(",", " ").split()])
    return out


def _parse_edges(text: str) -> tuple[int, ...]:
    pairs = []
    for chunk in text.replace(",", " ").split():
        a, _, b = chunk.partition("-")
        pairs.append((int(a), int(b)))
    n = 1 + max(max(p) for p in pairs)
    adj = [0] * n
    for a, b in pairs:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return tuple(adj)


def cmd_gen(args) -> dict:
    kind = args.kind
    if kind == "example1":
        g = gen_example1()
    elif kind == "x3c":
        if args.elements is None or args.triples is None:
            raise DomainError("x3c needs --elements and --triples")
        g = gen_x3c_game(range(args.elements), _parse_triples(args.triples))
    elif kind == "is-hypergraph":
        if args.edges:
            graph = _parse_edges(args.edges)
        else:
            graph = {"k4": complete_graph(4), "cube": cube_graph()}[args.graph]
        g, _ = gen_is_hypergraph(graph)
    elif kind == "random-wvg":
        g = gen_random_wvg(args.n, args.w_max, args.quota_rule, args.seed)
    else:
        g = gen_random_simple(args.n, args.max_size, args.count, args.seed)
    text = serialize_game(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return {"written": args.out, "kind": kind, "n": g.n}
    return {"document": text}


# -- output ----------------------------------------------------------------------

def _render(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, item in value.items():
        if isinstance(item, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render(item, indent + 1))
        elif isinstance(item, list):
            lines.append(f"{pad}{key}: " + _inline(item))
        elif item is None:
            lines.append(f"{pad}{key}: -")
        else:
            lines.append(f"{pad}{key}: {item}")
    return lines


def _inline(item) -> str:
    if isinstance(item, list):
        return "[" + ", ".join(_inline(x) for x in item) + "]"
    if isinstance(item, Fraction):
        return _rat(item)
    return str(item)


def _emit(report: dict, as_json: bool) -> None:
    if "document" in report:
        sys.stdout.write(report["document"])
        return
    if as_json:
        print(json.dumps(report, indent=2, default=str))
    else:
        print("\n".join(_render(report)))


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--force", action="store_true", help="lift enumeration size guards")

    parser = argparse.ArgumentParser(prog="coopdeg", description="Solution concepts for cooperative games, parameterised by dependency degree.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="dependency structure of a game")
    p.add_argument("file")
    p.add_argument("--dot", metavar="FILE", help="write both dependency graphs as DOT")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("values", parents=[common], help="Shapley and Banzhaf values")
    p.add_argument("file")
    p.add_argument("--method", choices=("fpt", "naive", "both"), default="fpt")
    p.set_defaults(run=cmd_values)

    p = sub.add_parser("leastcore", parents=[common], help="least core value and an imputation")
    p.add_argument("file")
    p.add_argument("--method", choices=("fpt", "brute", "both"), default="fpt")
    p.set_defaults(run=cmd_leastcore)

    p = sub.add_parser("partition", parents=[common], help="welfare-maximising coalition structure")
    p.add_argument("file")
    p.add_argument("--method", choices=("fpt", "brute", "both"), default="fpt")
    p.add_argument("--dot", metavar="FILE", help="write the nice tree decomposition as DOT")
    p.set_defaults(run=cmd_partition)

    p = sub.add_parser("gen", parents=[common], help="write a game file")
    p.add_argument("kind", choices=("example1", "x3c", "is-hypergraph", "random-wvg", "random-simple"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--w-max", type=int, default=9)
    p.add_argument("--quota-rule", choices=QUOTA_RULES, default="half")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--elements", type=int, help="x3c: number of elements (players 0..k-1)")
    p.add_argument("--triples", help='x3c: e.g. "0 1 2; 3 4 5"')
    p.add_argument("--graph", choices=("k4", "cube"), default="k4")
    p.add_argument("--edges", help='is-hypergraph: custom 3-regular graph, e.g. "0-1 0-2 ..."')
    p.set_defaults(run=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.force:
        print("warning: size guards lifted; enumeration may take exponential time", file=sys.stderr)
    try:
        with relaxed_size_guards() if args.force else nullcontext():
            report = args.run(args)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except OracleMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except (GameError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(report, args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
