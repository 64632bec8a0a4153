"""Command-line entry points.

``lomax <command>`` dispatches to generate, centrality, single-lomax,
lomax-ga and experiment; ``single-lomax`` and ``lomax-ga`` are also
installed as standalone commands.

Exit codes: 0 success, 1 precondition failure (e.g. disconnected input),
2 invalid arguments or config, 3 graph generation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from lomax import ga, harness
from lomax.centrality import centrality_table, select_key_vertex
from lomax.errors import GenerationError, InvalidArgumentError, LomaxError
from lomax.generators import generate, parse_spec, summarize
from lomax.graph import Graph, format_edge_list, read_edge_list
from lomax.single import brute_force, divide_and_conquer, eliminate_then_brute_force

EXIT_OK, EXIT_PRECONDITION, EXIT_INVALID, EXIT_GENERATION = 0, 1, 2, 3


def _emit(text: str, path: str | None) -> None:
    if path and path != "-":
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_graph(path: str) -> Graph:
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read graph: {exc}") from None


def _key(g: Graph, raw: str) -> int:
    if raw == "auto":
        return select_key_vertex(g)
    try:
        k = int(raw)
    except ValueError:
        raise InvalidArgumentError(f"--key must be 'auto' or a vertex id, got {raw!r}") from None
    if k not in g:
        raise InvalidArgumentError(f"key vertex {k} not in graph")
    return k


# -- commands -----------------------------------------------------------


def cmd_generate(args) -> int:
    g = generate(parse_spec(args.gen, seed=args.seed))
    _emit(format_edge_list(g), args.out)
    if args.stats:
        s = summarize(g)
        print(
            f"density={s.density:.4f} avg_path_length={s.avg_path_length:.4f} "
            f"clustering={s.clustering_coefficient:.4f}",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_centrality(args) -> int:
    table = centrality_table(_load_graph(args.graph))
    lines = ["id,degree,betweenness,closeness,mean_rank"]
    for v, deg, btw, clo, rank in table.rows():
        lines.append(f"{v},{deg},{btw},{clo!r},{rank!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_single(args) -> int:
    g = _load_graph(args.graph)
    k = _key(g, args.key)
    started = time.perf_counter()
    if args.method == "brute":
        res = brute_force(g, k)
    elif args.method == "eliminate+brute":
        res = eliminate_then_brute_force(g, k, args.max_cut)
    else:
        res = divide_and_conquer(g, k, args.subset_size, args.top, args.seed)
    elapsed = time.perf_counter() - started
    best = res.best
    out = {
        "key": k,
        "method": args.method,
        "base_load": res.base_load,
        "best": None if best is None else {"vertex": best[0], "effect": best[1]},
        "effects": {str(v): e for v, e in sorted(res.effects.items())},
        "eliminated": [{"vertex": v, "rule": tag} for v, tag in res.eliminated.items()],
        "evaluations": res.evaluations,
        "wall_time": elapsed,
    }
    if args.method == "divide":
        out["subsets"] = [list(s) for s in res.subsets]
        out["subset_effects"] = res.subset_effects
        out["explored"] = res.explored
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_ga(args) -> int:
    g = _load_graph(args.graph)
    k = _key(g, args.key)
    stagnation = None if args.stagnation <= 0 else args.stagnation
    config = ga.GAConfig(args.pool, args.max_size, args.iters, stagnation, args.seed)
    started = time.perf_counter()
    init = ga.init_pool(g, k, args.pool, args.max_size, args.seed)
    rs = ga.random_search(g, k, config, init) if args.baseline == "random" else None
    state = ga.run(g, k, config, init)
    elapsed = time.perf_counter() - started
    out = {
        "key": k,
        "best": list(state.best_ever.canonical),
        "fitness": state.best_ever.fitness,
        "iterations": state.iteration,
        "evaluations": state.evaluations,
        "history": state.history,
        "wall_time": elapsed,
    }
    if rs is not None:
        out["baseline"] = {
            "best": list(rs.best_ever.canonical),
            "fitness": rs.best_ever.fitness,
            "history": rs.history,
        }
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    if args.history:
        lines = ["iteration,ga_best,rs_best,diff"]
        rs_hist = rs.history if rs is not None else []
        for it, x in enumerate(state.history):
            if it < len(rs_hist):
                # a run stopped by stagnation keeps its final best
                lines.append(f"{it},{x},{rs_hist[it]},{x - rs_hist[it]}")
            else:
                lines.append(f"{it},{x},,")
        Path(args.history).write_text("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_experiment(args) -> int:
    config = harness.load_config(args.config)
    if args.output:
        config.output = args.output
    if args.workers:
        config.workers = args.workers
    result = harness.run_experiment(config)
    if config.output:
        for path in result.write(config.output):
            print(path, file=sys.stderr)
    else:
        for table, entries in result.aggregates.items():
            sys.stdout.write(f"## table {table}\n")
            sys.stdout.write(harness.to_csv(entries, "n/a"))
    return EXIT_OK


# -- parsers ------------------------------------------------------------


def _add_single(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--key", default="auto", help="'auto' or a vertex id")
    p.add_argument("--method", choices=["brute", "eliminate+brute", "divide"], default="brute")
    p.add_argument("--subset-size", type=int, default=5)
    p.add_argument("--top", type=int, default=2)
    p.add_argument("--max-cut", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_single)


def _add_ga(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--key", default="auto", help="'auto' or a vertex id")
    p.add_argument("--pool", type=int, default=20)
    p.add_argument("--max-size", type=int, default=6)
    p.add_argument("--iters", type=int, default=300)
    p.add_argument("--stagnation", type=int, default=100, help="0 disables the stagnation stop")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--baseline", choices=["none", "random"], default="none")
    p.add_argument("--history", help="CSV path for iteration,ga_best,rs_best,diff")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_ga)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lomax", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="draw a random graph and print its edge list")
    p.add_argument("--gen", required=True, help="e.g. er:n=100,p=0.1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--stats", action="store_true", help="print density/path length/clustering to stderr")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("centrality", help="per-vertex centrality CSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_centrality)

    _add_single(sub.add_parser("single-lomax", help="best single vertex to delete"))
    _add_ga(sub.add_parser("lomax-ga", help="genetic algorithm for deletion subsets"))

    p = sub.add_parser("experiment", help="run a corpus experiment from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--output", help="override the config's output directory")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_experiment)
    return parser


def _dispatch(parser: argparse.ArgumentParser, argv) -> int:
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except LomaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def main(argv=None) -> int:
    return _dispatch(build_parser(), argv)


def single_main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="single-lomax")
    _add_single(parser)
    return _dispatch(parser, argv)


def ga_main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="lomax-ga")
    _add_ga(parser)
    return _dispatch(parser, argv)
