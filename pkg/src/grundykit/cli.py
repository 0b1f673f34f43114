"""Command-line entry point.

Graphs travel between subcommands as edge lists on stdin/stdout, e.g.::

    grundykit gen cycle 4 | grundykit op power --k 2 | grundykit exact grundy

Exit codes: 0 success, 1 invalid input, 2 size limit exceeded,
3 verification failed / not chordal / simulation did not converge.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import chordal, sim
from .coloring import (
    Coloring,
    ColoringKind,
    LimitExceeded,
    MalformedColoringError,
    binomial_tree,
    parameter_bounds,
    verify,
)
from .exact import exact_parameter
from .graph import (
    FAMILIES,
    PRODUCTS,
    Graph,
    GraphError,
    family,
    parse_graph,
    power_graph,
    random_graph,
    random_interval_graph,
    serialize_graph,
    sniff_format,
)

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_FAILED = 0, 1, 2, 3
KINDS = [k.value for k in ColoringKind]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which we reserve for limits
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_graph(path: str | None) -> Graph:
    text = _read_text(path)
    return parse_graph(sniff_format(text), text)


def _read_coloring(path: str) -> Coloring:
    text = _read_text(path).strip()
    if text.startswith("{"):
        data = json.loads(text)
        if "certificate" in data:
            data = data["certificate"]
        colors = data["colors"]
        if not all(isinstance(c, int) for c in colors):
            raise MalformedColoringError("colors must be integers")
        return Coloring(tuple(colors))
    pairs = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            v, c = (int(x) for x in line.split())
        except ValueError:
            raise MalformedColoringError(f"line {lineno}: expected 'vertex color', got {line!r}") from None
        pairs[v] = c
    if sorted(pairs) != list(range(len(pairs))):
        raise MalformedColoringError("coloring must list every vertex 0..n-1 exactly once")
    return Coloring(tuple(pairs[v] for v in range(len(pairs))))


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _emit_graph(args, g: Graph, colors: Sequence[int] | None = None) -> None:
    sys.stdout.write(serialize_graph(args.format, g, colors))


def _coloring_json(c: Coloring, kind: str, valid: bool) -> dict:
    return {"k": c.k, "colors": list(c.colors), "kind": kind, "valid": valid}


# -- subcommands ------------------------------------------------------------

def cmd_gen(args) -> int:
    params = args.params
    if args.family == "random":
        if len(params) != 2:
            raise GraphError("random takes n and p")
        g = random_graph(int(params[0]), float(params[1]), args.seed)
    elif args.family == "interval":
        if len(params) != 1:
            raise GraphError("interval takes n")
        g = random_interval_graph(int(params[0]), args.seed)
    else:
        try:
            ints = [int(p) for p in params]
        except ValueError:
            raise GraphError(f"{args.family} parameters must be integers, got {params}") from None
        g = family(args.family, *ints)
    _emit_graph(args, g)
    return EXIT_OK


def cmd_op(args) -> int:
    if args.operator == "power":
        if len(args.graphs) > 1:
            raise GraphError("power takes a single graph")
        g = _read_graph(args.graphs[0] if args.graphs else None)
        _emit_graph(args, power_graph(g, args.k))
        return EXIT_OK
    if len(args.graphs) != 2:
        raise GraphError(f"{args.operator} takes two graphs (use '-' for stdin)")
    if args.graphs.count("-") > 1:
        raise GraphError("only one graph can come from stdin")
    g, h = (_read_graph(p) for p in args.graphs)
    _emit_graph(args, PRODUCTS[args.operator](g, h))
    return EXIT_OK


def cmd_exact(args) -> int:
    g = _read_graph(args.graph)
    result = exact_parameter(g, args.kind, limit=args.limit)
    if args.format == "dot":
        _emit_graph(args, g, result.certificate.colors)
    else:
        _emit_json({
            "k": result.k,
            "kind": args.kind,
            "certificate": _coloring_json(result.certificate, args.kind, True),
        })
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.graph == "-" and args.coloring == "-":
        raise GraphError("graph and coloring cannot both come from stdin")
    g = _read_graph(args.graph)
    report = verify(g, _read_coloring(args.coloring), args.kind)
    _emit_json(report.as_dict())
    return EXIT_OK if report.valid else EXIT_FAILED


def cmd_witness(args) -> int:
    limit = args.limit if args.limit is not None else 16
    g, coloring = binomial_tree(args.k, limit=limit)
    report = verify(g, coloring, ColoringKind.GRUNDY)
    if args.format == "dot":
        _emit_graph(args, g, coloring.colors)
    else:
        out = _coloring_json(coloring, "grundy", report.valid)
        out["vertex_count"] = g.vertex_count
        out["edges"] = [list(e) for e in g.edges()]
        _emit_json(out)
    return EXIT_OK if report.valid else EXIT_FAILED


def cmd_bounds(args) -> int:
    _emit_json(parameter_bounds(_read_graph(args.graph)).as_dict())
    return EXIT_OK


def cmd_chordal(args) -> int:
    g = _read_graph(args.graph)
    peo = chordal.perfect_elimination_order(g)
    if isinstance(peo, chordal.NotChordal):
        _emit_json(peo.as_dict())
        return EXIT_FAILED
    if args.action == "peo":
        _emit_json({"chordal": True, "order": list(peo.order), "omega": peo.clique_number})
    else:
        result = chordal.chordal_color(g)
        if args.format == "dot":
            _emit_graph(args, g, result.coloring.colors)
        else:
            _emit_json(result.as_dict())
    return EXIT_OK


def cmd_sim(args) -> int:
    scenario = sim.scenario_from_dict(json.loads(_read_text(args.scenario)))
    result = sim.run(scenario)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="") as fh:
            fh.write(sim.trace_csv(result.trace))
    _emit_json(sim.result_to_dict(result))
    return EXIT_OK if result.converged else EXIT_FAILED


# -- parser -----------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--format", choices=["edge_list", "dimacs", "dot"], default=default("edge_list"),
                        help="graph output format (input format is detected)")
    parser.add_argument("--limit", type=int, default=default(None),
                        help="vertex limit for exact solvers (env GRUNDY_KIT_LIMIT)")
    parser.add_argument("--seed", type=int, default=default(0), help="seed for random generators")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grundykit", description="Grundy-type coloring toolkit and ad hoc network simulator.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _global_flags(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("gen", cmd_gen, "generate a graph")
    p.add_argument("family", choices=list(FAMILIES) + ["random", "interval"])
    p.add_argument("params", nargs="*")

    p = add("op", cmd_op, "apply a graph operator")
    p.add_argument("operator", choices=["power", "product", "conormal"])
    p.add_argument("graphs", nargs="*", help="input graph files ('-' or none for stdin)")
    p.add_argument("--k", type=int, default=2, help="power exponent")

    p = add("exact", cmd_exact, "exact coloring parameter with certificate")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("graph", nargs="?")

    p = add("verify", cmd_verify, "check a coloring against a coloring kind")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("graph")
    p.add_argument("coloring")

    p = add("witness", cmd_witness, "graph with a prescribed Grundy number")
    p.add_argument("which", choices=["grundy"])
    p.add_argument("k", type=int)

    p = add("bounds", cmd_bounds, "degree, clique and m-degree bounds")
    p.add_argument("graph", nargs="?")

    p = add("chordal", cmd_chordal, "perfect elimination order or chordal coloring")
    p.add_argument("action", choices=["peo", "color"])
    p.add_argument("graph", nargs="?")

    p = add("sim", cmd_sim, "run an ad hoc network scenario")
    p.add_argument("scenario")
    p.add_argument("--trace", help="write the per-round CSV trace here")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except LimitExceeded as exc:
        print(f"grundykit: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (GraphError, MalformedColoringError, sim.ScenarioError) as exc:
        print(f"grundykit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"grundykit: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
