"""Command-line front end.

Subcommands: pts, enumerate, graph, realize, sinks, forced.  All commands
are deterministic; identical inputs produce byte-identical outputs (fresh
generator names are sequential).  Exit codes: 0 ok, 2 parse/usage, 3 input
invariant violation, 4 input not adequate, 5 realization failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import platform
import sys
from pathlib import Path

from . import __version__
from .adequacy import enumerate_adequate
from .degeneration import (
    BudgetError,
    build_graph,
    enumerate_nodes,
    forced_solutions,
    graph_json_dict,
    node_ids,
    sinks,
    to_dot,
)
from .realize import NotAdequateError, RealizationError, realize, realize_all
from .scalars import MatrixFormatError, ScalarError, qmatrix_from_json
from .triples import TripleSet
from .variety import components, good_triples, ideal_generators

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_NOT_ADEQUATE = 4
EXIT_REALIZE_FAILED = 5


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _manifest(args: argparse.Namespace, inputs: list[Path], outputs: list[Path]) -> dict:
    return {
        "command": " ".join(sys.argv) if sys.argv else "qpoints",
        "inputs": [{"path": str(p), "sha256": _sha256(p)} for p in inputs],
        "outputs": [str(p) for p in outputs],
        "determinism": "seed-free; rerunning this command reproduces the outputs byte for byte",
        "versions": {
            "qpoints": __version__,
            "python": platform.python_version(),
        },
    }


def _write_manifest(args, inputs: list[Path], outputs: list[Path]) -> None:
    if not outputs:
        return
    path = outputs[0].with_suffix(outputs[0].suffix + ".manifest.json")
    path.write_text(json.dumps(_manifest(args, inputs, outputs), indent=2) + "\n")


def _load_matrix(path: str):
    return qmatrix_from_json(Path(path).read_text())


def _load_collection(path: str) -> TripleSet:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or "n" not in data or "triples" not in data:
        raise MatrixFormatError("collection JSON must have keys n and triples")
    triples = []
    for entry in data["triples"]:
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise MatrixFormatError(f"triple must have three indices: {entry!r}")
        triples.append(tuple(sorted(int(v) for v in entry)))
    return TripleSet.of(int(data["n"]), triples)


def _fmt_triple(t) -> str:
    return "P(" + ",".join(str(i) for i in t) + ")"


def cmd_pts(args) -> int:
    Q = _load_matrix(args.matrix)
    good = good_triples(Q)
    config = components(good)
    gens = ideal_generators(good)
    if args.json:
        out = config.to_json_dict()
        out["good_triples"] = [list(t) for t in good]
        out["ideal_generators"] = [list(t) for t in gens]
        print(json.dumps(out, indent=2))
        return EXIT_OK
    print("good triples:", " ".join(_fmt_triple(t) for t in good) or "(none)")
    if config.is_whole_space():
        print(f"point variety = P^{Q.n}")
    else:
        print("components:", " ".join(_fmt_triple(c) for c in config.components))
    print("type:", "(" + ",".join(str(c) for c in config.type_vector) + ")")
    print(
        "ideal generators:",
        " ".join("u%d*u%d*u%d" % t for t in gens) or "(none)",
    )
    return EXIT_OK


def cmd_enumerate(args) -> int:
    outputs: list[Path] = []
    if args.nodes:
        nodes = enumerate_nodes(args.n, long=args.long)
        ids = node_ids(nodes)
        lines = [
            json.dumps(
                {
                    "id": nid,
                    "label": node.label,
                    "type": list(node.type_vector),
                    "closed_set": [list(t) for t in node.closed_set],
                    "orbit_size": node.orbit_size,
                },
                sort_keys=True,
            )
            for node, nid in zip(nodes, ids)
        ]
        summary = f"nodes={len(nodes)}"
    else:
        catalog = enumerate_adequate(args.n)
        lines = [json.dumps(rec, sort_keys=True) for rec in catalog.records()]
        summary = f"total={catalog.total} orbits={len(catalog)}"
    body = "\n".join(lines) + "\n"
    if args.out:
        path = Path(args.out)
        path.write_text(body)
        outputs.append(path)
        _write_manifest(args, [], outputs)
    else:
        sys.stdout.write(body)
    print(summary)
    return EXIT_OK


def cmd_graph(args) -> int:
    graph = build_graph(args.n, long=args.long)
    outputs: list[Path] = []
    dot = to_dot(graph)
    if args.dot:
        path = Path(args.dot)
        path.write_text(dot)
        outputs.append(path)
    if args.json:
        body = json.dumps(graph_json_dict(graph), indent=2) + "\n"
        if args.out:
            path = Path(args.out)
            path.write_text(body)
            outputs.append(path)
        else:
            sys.stdout.write(body)
    elif not args.dot:
        sys.stdout.write(dot)
    _write_manifest(args, [], outputs)
    print(f"nodes={len(graph.nodes)} arrows={len(graph.arrows)}")
    return EXIT_OK


def cmd_realize(args) -> int:
    if args.cls is not None:
        n, index = args.cls
        catalog = enumerate_adequate(int(n))
        if str(index) == "all":
            summary = realize_all(int(n), threads=args.threads)
            for i, result in enumerate(summary.results):
                status = "ok" if result.success else "FAILED"
                print(f"class {i}: {status} ({result.method})")
            print(f"realized {summary.n_success}/{summary.n_classes}")
            return EXIT_OK if summary.n_success == summary.n_classes else EXIT_REALIZE_FAILED
        try:
            target = catalog.representatives[int(index)]
        except (ValueError, IndexError):
            print(
                f"error: class index must be 0..{len(catalog) - 1} or 'all'",
                file=sys.stderr,
            )
            return EXIT_PARSE
    else:
        target = _load_collection(args.collection)
    try:
        result = realize(target)
    except NotAdequateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ADEQUATE
    if not result.success:
        print(f"realization failed: {result.detail}", file=sys.stderr)
        return EXIT_REALIZE_FAILED
    body = result.matrix.to_json() + "\n"
    outputs: list[Path] = []
    if args.out:
        path = Path(args.out)
        path.write_text(body)
        outputs.append(path)
        _write_manifest(args, [Path(args.collection)] if args.collection else [], outputs)
    else:
        sys.stdout.write(body)
    print(
        "verified: achieved collection matches target"
        f" ({len(result.achieved)} excluded planes)"
    )
    return EXIT_OK


def cmd_sinks(args) -> int:
    found = sinks(args.n, long=args.long)
    print(f"sinks={len(found)}")
    for node in found:
        planes = " ".join(_fmt_triple(t) for t in node.closed_set)
        tv = ",".join(str(c) for c in node.type_vector)
        print(f"  type=({tv}) orbit={node.orbit_size} closed={planes}")
    return EXIT_OK


def cmd_forced(args) -> int:
    good = _load_collection(args.goodset)
    if args.pin:
        pins = []
        for chunk in args.pin.replace(";", " ").split():
            i, j = chunk.split(",")
            pins.append((int(i), int(j)))
    else:
        pins = [(i, good.n) for i in range(good.n)]
    family = forced_solutions(good, pins)
    print(f"solution set: {family.describe()}")
    if family.is_finite:
        for k, sol in enumerate(family.solutions()):
            forced = [
                f"q[{i},{j}]={sol[(i, j)]}"
                for (i, j) in sorted(sol)
                if not sol[(i, j)].is_one
            ]
            print(f"solution {k}: " + ("; ".join(forced) if forced else "all q = 1"))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpoints",
        description="Point varieties of quantum polynomial algebras: "
        "exact computation, enumeration, degeneration graphs, realization.",
    )
    parser.add_argument("--threads", type=int, default=1, help="worker processes for realize --class N all")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pts", help="point variety of a matrix JSON file")
    p.add_argument("matrix")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pts)

    p = sub.add_parser("enumerate", help="adequate collections or graph nodes")
    p.add_argument("n", type=int)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--adequate", action="store_true")
    group.add_argument("--nodes", action="store_true")
    p.add_argument("--long", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph", help="degeneration graph")
    p.add_argument("n", type=int)
    p.add_argument("--dot", help="write DOT to this path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--long", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("realize", help="realize a collection as a matrix")
    p.add_argument("collection", nargs="?")
    p.add_argument(
        "--class",
        dest="cls",
        nargs=2,
        metavar=("N", "INDEX"),
        help="realize catalog class INDEX of dimension N ('all' for every class)",
    )
    p.add_argument("--out")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("sinks", help="maximal degenerations (label-0 nodes)")
    p.add_argument("n", type=int)
    p.add_argument("--long", action="store_true")
    p.set_defaults(func=cmd_sinks)

    p = sub.add_parser("forced", help="solve b = 1 on a good set under pinning")
    p.add_argument("goodset", help="collection JSON of required good triples")
    p.add_argument("--pin", help='pairs to pin to 1, e.g. "0,5 1,5 2,5 3,5 4,5"')
    p.set_defaults(func=cmd_forced)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cls", None) is None and args.command == "realize" and not args.collection:
        parser.error("realize needs a collection file or --class")
    try:
        return args.func(args)
    except (json.JSONDecodeError, MatrixFormatError, FileNotFoundError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"error: {exc} (use --long)", file=sys.stderr)
        return EXIT_PARSE
    except (ScalarError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except RealizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ADEQUATE


if __name__ == "__main__":
    sys.exit(main())
