"""Command-line front end: build, export, decompose, dim, and check.

Exit codes: 0 success, 1 at least one failed check, 2 invalid arguments.
All output is deterministic; documents carry no timestamps.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cartan import FAMILIES, AffineSpec, kr_dimension, pairing
from .crystal_core import CrystalGraph
from .kr_builders import build_kr
from .verify import (
    SUITES,
    affine_colors,
    default_grid,
    run_suite,
    second_subset,
    zero_pairing,
)


def graph_document(build) -> dict:
    """JSON-ready dict; node ids are the builder's breadth-first indices."""
    g = build.graph
    spec = build.spec
    nodes = [
        {"id": x, "element": build.render(g.elements[x]), "weight": list(g.weights[x])}
        for x in range(len(g))
    ]
    edges = sorted(
        (x, y, i) for i in g.colors for x, y in g.f[i].items()
    )
    return {
        "family": spec.family,
        "n": spec.n,
        "r": spec.r,
        "s": spec.s,
        "nodes": nodes,
        "edges": [{"src": x, "dst": y, "color": i} for x, y, i in edges],
    }


def load_graph_document(doc: dict) -> CrystalGraph:
    """Rebuild a crystal graph from a document (elements become strings)."""
    spec = AffineSpec(doc["family"], doc["n"], doc["r"], doc["s"])
    elements = [node["element"] for node in sorted(doc["nodes"], key=lambda d: d["id"])]
    weights = [tuple(node["weight"]) for node in sorted(doc["nodes"], key=lambda d: d["id"])]
    colors = affine_colors(spec)
    f_edges = {i: {} for i in colors}
    for edge in doc["edges"]:
        f_edges[edge["color"]][edge["src"]] = edge["dst"]
    return CrystalGraph(elements, colors, f_edges, weights)


def to_dot(build) -> str:
    g = build.graph
    lines = [f'digraph "{build.spec.family} n={build.spec.n} r={build.spec.r} s={build.spec.s}" {{']
    for x in range(len(g)):
        lines.append(f'  v{x} [label="{build.render(g.elements[x])}"];')
    for x, y, i in sorted((x, y, i) for i in g.colors for x, y in g.f[i].items()):
        lines.append(f'  v{x} -> v{y} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fundamental_string(spec, subset, wt) -> str:
    """Weight as a sum of fundamental weights of the subset's colors."""
    ctype, n = spec.classical_type, spec.n
    terms = []
    for i in subset:
        c = zero_pairing(spec.family, n, wt) if i == 0 else pairing(ctype, n, wt, i)
        if c:
            coeff = "" if c == 1 else str(c)
            terms.append(f"{coeff}Λ{i}")
    return "+".join(terms) if terms else "0"


def _spec_from(args) -> AffineSpec:
    return AffineSpec(args.family, args.n, args.r, args.s)


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_build(args) -> int:
    build = build_kr(_spec_from(args))
    if args.format == "dot":
        _write(to_dot(build), args.out)
    else:
        _write(json.dumps(graph_document(build), indent=2) + "\n", args.out)
    return 0


def _cmd_decompose(args) -> int:
    spec = _spec_from(args)
    build = build_kr(spec)
    subset = spec.classical_colors if args.subset == "classical" else second_subset(spec)
    tops = build.graph.decomposition(subset)
    line = ", ".join(_fundamental_string(spec, subset, wt) for wt in reversed(tops))
    _write(line + "\n", args.out)
    return 0


def _cmd_dim(args) -> int:
    _write(str(kr_dimension(_spec_from(args))) + "\n", args.out)
    return 0


def _cmd_check(args) -> int:
    single = [args.family, args.n, args.r, args.s]
    if any(v is not None for v in single):
        if any(v is None for v in single):
            raise ValueError("check needs either all of --family/--n/--r/--s or none")
        specs = (AffineSpec(args.family, args.n, args.r, args.s),)
    else:
        specs = default_grid(
            n_values=tuple(range(2, args.n_max + 1)),
            s_values=tuple(range(1, args.s_max + 1)),
        )
    suites = SUITES if args.suite == "all" else (args.suite,)
    reports = run_suite(specs, suites)
    if args.format == "json":
        _write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n", args.out)
    else:
        _write("".join(r.line() + "\n" for r in reports), args.out)
    return 0 if all(r.passed for r in reports) else 1


def _add_spec_flags(parser, required=True):
    parser.add_argument("--family", choices=FAMILIES, required=required)
    parser.add_argument("--n", type=int, required=required)
    parser.add_argument("--r", type=int, required=required)
    parser.add_argument("--s", type=int, required=required)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a crystal and export it")
    _add_spec_flags(p_build)
    p_build.add_argument("--format", choices=("json", "dot"), default="json")
    p_build.add_argument("--out")
    p_build.set_defaults(func=_cmd_build)

    p_dec = sub.add_parser("decompose", help="print component highest weights")
    _add_spec_flags(p_dec)
    p_dec.add_argument("--subset", choices=("classical", "zero"), default="classical")
    p_dec.add_argument("--out")
    p_dec.set_defaults(func=_cmd_decompose)

    p_dim = sub.add_parser("dim", help="print the vertex count")
    _add_spec_flags(p_dim)
    p_dim.add_argument("--out")
    p_dim.set_defaults(func=_cmd_dim)

    p_check = sub.add_parser("check", help="run verification suites")
    _add_spec_flags(p_check, required=False)
    p_check.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p_check.add_argument("--n-max", type=int, default=3)
    p_check.add_argument("--s-max", type=int, default=2)
    p_check.add_argument("--format", choices=("text", "json"), default="text")
    p_check.add_argument("--out")
    p_check.set_defaults(func=_cmd_check)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"kr: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
