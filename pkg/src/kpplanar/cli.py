"""Command-line front end.

Exit codes: 0 success or yes, 1 no, 2 exhausted or inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import io
from .density import max_edges, tight_construction
from .export import export_svg, to_dot
from .graph import Graph, GraphError
from .oneplanar import Infeasible, ce_graph, gen_h, gen_hbar, is_pseudoforestal, planarize_22
from .reduction import Unsatisfied, build_reduction, forward_witness, parse_sat
from .search import (
    DEFAULT_BUDGET,
    Exhausted,
    check_fixed_clustering,
    counting_certificate,
    search_kp,
    test_41,
    test_k1,
)
from .skeleton import skeleton, wheel_skeleton

YES, NO, EXHAUSTED, BAD_INPUT = 0, 1, 2, 3


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _document(args) -> io.Document:
    return io.parse(_read(args.input))


def cmd_bound(args) -> int:
    b = max_edges(args.n, args.k, args.p)
    print(b.value)
    if b.vacuous:
        print(f"note: {b.note}", file=sys.stderr)
    return YES


def cmd_tight(args) -> int:
    g, cfg = tight_construction(args.N, args.k, args.p)
    _write(args.out or "-", io.format_document(io.Document(g, config=cfg)))
    return YES


def cmd_skeleton(args) -> int:
    doc = _document(args)
    if doc.config is None:
        raise GraphError("input has no configuration (p/port/b/a lines)")
    sk = (wheel_skeleton if args.wheel else skeleton)(doc.graph, doc.config)
    verts = sorted(sk.vertices)
    relabel = {v: i for i, v in enumerate(verts)}
    out = Graph(tuple(range(len(verts))), tuple((e, relabel[u], relabel[v]) for e, u, v in sk.edges))
    _write(args.out or "-", io.format_document(io.Document(out)))
    return YES


def cmd_family(args) -> int:
    if args.name == "hbar":
        og = gen_hbar(args.i, reversed=args.reversed)
    else:
        og = gen_h(args.h)
    _write(args.out or "-", io.format_document(io.from_one_plane(og)))
    return YES


def cmd_cegraph(args) -> int:
    og = _document(args).one_plane()
    ce = ce_graph(og)
    ok = is_pseudoforestal(og)
    print(f"ce-graph: {len(ce.vertices)} vertices, {len(ce.edges)} edges; "
          f"pseudoforestal: {'yes' if ok else 'no'}")
    for eid, u, v in ce.edges:
        print(f"e {eid} {u} {v} crosses {ce.backref[eid]}")
    return YES if ok else NO


def cmd_planarize22(args) -> int:
    og = _document(args).one_plane()
    try:
        g, cfg = planarize_22(og)
    except Infeasible as exc:
        print(f"no: {exc}")
        return NO
    _write(args.out or "-", io.format_document(io.Document(g, config=cfg)))
    return YES


def cmd_test(args) -> int:
    doc = _document(args)
    g = doc.graph
    if args.mode == "certificate":
        cert = counting_certificate(g)
        if cert is None:
            print("inconclusive: counting certificate does not fire")
            return EXHAUSTED
        print(f"not (2,p)-planar, q_min={cert.q_min} > {cert.max_pairs}")
        return NO
    if args.mode == "k1":
        ok = test_k1(g, args.k)
        print("yes" if ok else "no")
        return YES if ok else NO
    if args.mode == "41":
        ok = test_41(g, args.budget)
        print("yes" if ok else "no")
        return YES if ok else NO
    if args.clustering == "fixed":
        if doc.clustering is None:
            raise GraphError("--clustering fixed needs 'c' lines in the input")
        cfg = check_fixed_clustering(g, doc.clustering, args.p, args.budget)
        found = None if cfg is None else (doc.clustering, cfg)
    else:
        found = search_kp(g, args.k, args.p, args.budget)
    if found is None:
        print("no")
        return NO
    print("yes")
    _write(args.out, io.format_document(io.Document(g, config=found[1])))
    return YES


def _assignment(text: str, n: int) -> dict[int, bool]:
    values = [ch for ch in text if ch not in ", "]
    if len(values) != n or any(ch not in "TF10" for ch in values):
        raise GraphError(f"assignment needs {n} values from T/F/1/0, got {text!r}")
    return {i + 1: ch in "T1" for i, ch in enumerate(values)}


def cmd_reduce(args) -> int:
    phi = parse_sat(_read(args.input))
    gadget = build_reduction(phi)
    doc = io.Document(gadget.graph)
    if args.witness is not None:
        assignment = _assignment(args.witness, len(phi.variable_order))
        try:
            doc.clustering = forward_witness(phi, assignment, gadget)
        except Unsatisfied as exc:
            print(f"no: {exc}", file=sys.stderr)
            return NO
    _write(args.out or "-", io.format_document(doc))
    return YES


def cmd_export(args) -> int:
    doc = _document(args)
    if args.format == "dot":
        text = to_dot(doc.graph, doc.config, doc.clustering)
    else:
        rot = doc.rotation if not doc.crossings else None
        text = export_svg(doc.graph, doc.config, rot if doc.config is None else None)
    _write(args.out or "-", text)
    return YES


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors are input errors, not "exhausted"
        self.print_usage(sys.stderr)
        self.exit(BAD_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="kpplanar", description="(k,p)-planarity toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_io(p, out=True):
        p.add_argument("--in", dest="input", default="-", help="input file ('-' = stdin)")
        if out:
            p.add_argument("--out", default=None, help="output file ('-' = stdout)")
        return p

    p = sub.add_parser("bound", help="edge bound of (k,p)-planar graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("tight", help="edge-maximal construction for p < k")
    p.add_argument("--N", type=int, required=True, help="number of clusters")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tight)

    p = with_io(sub.add_parser("skeleton", help="skeleton of a configuration"))
    p.add_argument("--wheel", action="store_true", help="apex wheels instead of fan triangulations")
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("family", help="kite tower families")
    p.add_argument("name", choices=["hbar", "h"])
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--reversed", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_family)

    p = with_io(sub.add_parser("cegraph", help="crossing-edge graph of a 1-plane graph"), out=False)
    p.set_defaults(func=cmd_cegraph)

    p = with_io(sub.add_parser("planarize22", help="(2,2) configuration of a pseudoforestal 1-plane graph"))
    p.set_defaults(func=cmd_planarize22)

    p = with_io(sub.add_parser("test", help="decide (k,p)-planarity"))
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--clustering", choices=["fixed", "search"], default="search")
    p.add_argument("--mode", choices=["exact", "certificate", "k1", "41"], default="exact")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_test)

    p = with_io(sub.add_parser("reduce", help="compile a monotone 3-SAT instance"))
    p.add_argument("--witness", default=None, help="assignment as T/F per variable, e.g. TFT")
    p.set_defaults(func=cmd_reduce)

    p = with_io(sub.add_parser("export", help="DOT or SVG rendering"))
    p.add_argument("--format", choices=["dot", "svg"], default="dot")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exhausted as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return EXHAUSTED
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


run = main

if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
