"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 when a certificate fails
(an invariant violation; the offending certificate goes to stderr).
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import families, graphs
from .errors import InvariantViolation, ParseError, StayHomeError
from .io import (
    FAMILY_HEADER,
    MIXING_SERIES_HEADER,
    csv_text,
    decomposition_to_dict,
    dumps,
    format_edge_list,
    read_design,
    read_edge_list,
    read_oa,
    to_jsonable,
)
from .spectral import decompose, eigenvalue_support, ratio_condition, srg_recognize
from .walks import (
    average_mixing,
    cone_analysis,
    default_time_grid,
    diag_lower_from_average,
    pst_detect,
    scan_uniform_mixing,
    stay_at_home_report,
    transition_matrix,
)

DIGITS = 12

_INT_ARGS = {"complete": 1, "cycle": 1, "star": 1, "empty": 1, "oa": 2, "mkn": 2,
             "petersen": 0, "fano": 0, "ag23": 0}
_GRAPH_ARGS = {"cone": 1, "join": 2, "product": 2}


class _SpecParser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def fail(self, message):
        raise ParseError(f"bad graph spec {self.text!r}: {message}", self.pos)

    def expect(self, ch):
        if self.text[self.pos:self.pos + 1] != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def name(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        word = self.text[start:self.pos].lower()
        if word not in _INT_ARGS and word not in _GRAPH_ARGS:
            self.pos = start
            self.fail(f"unknown graph family {word!r}")
        return word

    def integer(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected an integer")
        return int(self.text[start:self.pos])

    def graph(self):
        word = self.name()
        if word in _INT_ARGS:
            arity = _INT_ARGS[word]
            args = []
            for i in range(arity):
                self.expect(":" if i == 0 else ",")
                args.append(self.integer())
            return _build(word, args)
        parts = []
        for i in range(_GRAPH_ARGS[word]):
            self.expect(":" if i == 0 else ",")
            parts.append(self.graph())
        return _build(word, parts)

    def parse(self):
        g = self.graph()
        if self.pos != len(self.text):
            self.fail("trailing characters")
        return g


def _build(word, args):
    match word:
        case "complete":
            return graphs.complete(*args)
        case "cycle":
            return graphs.cycle(*args)
        case "star":
            return graphs.star(*args)
        case "empty":
            return graphs.empty(*args)
        case "oa":
            k, n = args
            return graphs.oa_graph(graphs.oa_cyclic(k, n))
        case "mkn":
            return graphs.disjoint_copies(*args)
        case "petersen":
            return graphs.petersen()
        case "fano":
            return graphs.steiner_block_graph(graphs.fano_plane())
        case "ag23":
            return graphs.steiner_block_graph(graphs.affine_plane_ag23())
        case "cone":
            return graphs.cone(*args)
        case "join":
            return graphs.join(*args)
        case "product":
            return graphs.cartesian_product(*args)
    raise AssertionError(word)


def parse_graph_spec(text: str) -> graphs.Graph:
    """Build a graph from specs like ``cone:cycle:5``, ``join:empty:2,empty:2`` or ``oa:2,3``."""
    return _SpecParser(text.strip()).parse()


@dataclass(frozen=True)
class RunConfig:
    command: str
    graph: Optional[str] = None
    file: Optional[str] = None
    t_start: Optional[float] = None
    t_end: Optional[float] = None
    t_points: int = 512
    tol: float = 1e-9
    fmt: str = "json"
    out: Optional[str] = None

    def __post_init__(self):
        if self.t_points < 2:
            raise ParseError("--t-points must be at least 2")
        if self.t_start is not None and self.t_end is not None and not self.t_start < self.t_end:
            raise ParseError("--t-start must be smaller than --t-end")
        if self.tol <= 0:
            raise ParseError("--tol must be positive")

    def load_graph(self) -> graphs.Graph:
        if self.file:
            return read_edge_list(self.file)
        if self.graph:
            return parse_graph_spec(self.graph)
        raise ParseError("a graph is required: pass --graph SPEC or --file PATH")

    def grid(self, d) -> np.ndarray:
        default = default_time_grid(d, self.t_points)
        start = default[0] if self.t_start is None else self.t_start
        end = default[-1] if self.t_end is None else self.t_end
        if not start < end:
            raise ParseError("time grid needs start < end")
        return np.linspace(start, end, self.t_points)


def _graph_summary(g):
    srg = srg_recognize(g)
    return {
        "n": g.n,
        "edges": len(g.edges()),
        "regular": graphs.regularity(g),
        "srg": list(srg.as_tuple()) if srg else None,
        "srg_reason": None if srg else srg.reason,
    }


def cmd_graph(cfg: RunConfig, args) -> str:
    if args.oa_file:
        g = graphs.oa_graph(read_oa(args.oa_file))
    elif args.design_file:
        g = graphs.steiner_block_graph(read_design(args.design_file))
    else:
        g = cfg.load_graph()
    if args.edges:
        return format_edge_list(g)
    summary = _graph_summary(g)
    summary["edge_list"] = format_edge_list(g)
    return dumps(summary, DIGITS)


def cmd_spectrum(cfg: RunConfig, args) -> str:
    g = cfg.load_graph()
    d = decompose(g)
    out = decomposition_to_dict(d)
    supports = [eigenvalue_support(d, a) for a in range(g.n)]
    out["supports"] = supports
    verdicts = {}
    for sup in sorted(set(supports)):
        if len(sup) >= 2:
            rc = ratio_condition([d.eigenvalues[r] for r in sup])
            verdicts[",".join(map(str, sup))] = {"status": rc.status, "pattern": rc.pattern,
                                                 "witness": rc.witness}
    out["ratio_condition"] = verdicts
    return dumps(out, DIGITS)


def cmd_walk(cfg: RunConfig, args) -> str:
    g = cfg.load_graph()
    if args.t is None:
        raise ParseError("walk needs --t")
    d = decompose(g)
    U = transition_matrix(d, args.t)
    M = np.abs(U) ** 2
    if cfg.fmt == "csv":
        rows = [(a, b, U[a, b].real, U[a, b].imag, M[a, b]) for a in range(g.n) for b in range(g.n)]
        return csv_text(("a", "b", "re", "im", "prob"), rows, DIGITS)
    return dumps({"t": args.t, "U": U, "M": M}, DIGITS)


def cmd_avg(cfg: RunConfig, args) -> str:
    g = cfg.load_graph()
    d = decompose(g)
    Mhat = average_mixing(d)
    bounds = [diag_lower_from_average(d, a) for a in range(g.n)]
    if cfg.fmt == "csv":
        return csv_text(["row"] + [str(j) for j in range(g.n)],
                        ([i] + Mhat[i].tolist() for i in range(g.n)), DIGITS)
    return dumps({"average_mixing": Mhat, "diag_lower_bounds": bounds}, DIGITS)


def cmd_stayhome(cfg: RunConfig, args) -> str:
    g = cfg.load_graph()
    d = decompose(g)
    report = stay_at_home_report(d, cfg.grid(d), cfg.tol)
    if cfg.fmt == "csv":
        return csv_text(MIXING_SERIES_HEADER, report.series(), DIGITS)
    return dumps(report.summary(), DIGITS)


def cmd_uniform(cfg: RunConfig, args) -> str:
    g = cfg.load_graph()
    d = decompose(g)
    scan = scan_uniform_mixing(d, args.vertex, cfg.grid(d), cfg.tol)
    return dumps(scan, DIGITS)


def cmd_cone(cfg: RunConfig, args) -> str:
    info = cone_analysis(args.ell, args.n)
    out = to_jsonable(info)
    out["phase"] = to_jsonable(info.phase)
    return dumps(out, DIGITS)


def cmd_pst(cfg: RunConfig, args) -> str:
    g = cfg.load_graph()
    d = decompose(g)
    res = pst_detect(d, args.source, args.target, cfg.grid(d), cfg.tol)
    return dumps(res, DIGITS)


def _range(text: str) -> range:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise ParseError(f"range must look like LO:HI, got {text!r}") from None
    return range(lo, hi + 1)


def cmd_family(cfg: RunConfig, args) -> str:
    ns = _range(args.range)
    if args.family == "oa":
        rows = families.oa_sweep(args.k, [n for n in ns if n >= args.k])
    elif args.family == "steiner":
        rows = families.steiner_sweep(args.k, ns)
    else:
        rows = families.conference_sweep(ns)
    if cfg.fmt == "csv":
        return csv_text(FAMILY_HEADER, rows, DIGITS)
    return dumps([dict(zip(FAMILY_HEADER, r)) for r in rows], DIGITS)


COMMANDS = {
    "graph": cmd_graph, "spectrum": cmd_spectrum, "walk": cmd_walk, "avg": cmd_avg,
    "stayhome": cmd_stayhome, "uniform": cmd_uniform, "cone": cmd_cone, "pst": cmd_pst,
    "family": cmd_family,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="builtin graph spec, e.g. cone:cycle:5")
    common.add_argument("--file", help="edge-list file")
    common.add_argument("--t-start", type=float)
    common.add_argument("--t-end", type=float)
    common.add_argument("--t-points", type=int, default=512)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    common.add_argument("--out", help="write output here instead of stdout")

    p = _Parser(prog="stayhome", description="Continuous quantum walks on graph families.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("graph", parents=[common], help="build a graph and export its edge list")
    g.add_argument("--oa-file")
    g.add_argument("--design-file")
    g.add_argument("--edges", action="store_true", help="emit only the edge list")
    sub.add_parser("spectrum", parents=[common], help="eigenvalues, multiplicities, supports")
    w = sub.add_parser("walk", parents=[common], help="U(t) and M(t)")
    w.add_argument("--t", type=float)
    sub.add_parser("avg", parents=[common], help="average mixing matrix")
    sub.add_parser("stayhome", parents=[common], help="stay-at-home report over a time grid")
    u = sub.add_parser("uniform", parents=[common], help="scan for local uniform mixing")
    u.add_argument("--vertex", type=int, default=0)
    c = sub.add_parser("cone", parents=[common], help="apex analysis of a cone")
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    s = sub.add_parser("pst", parents=[common], help="scan for perfect state transfer")
    s.add_argument("--from", dest="source", type=int, required=True)
    s.add_argument("--to", dest="target", type=int, required=True)
    f = sub.add_parser("family", parents=[common], help="strongly regular family sweep")
    f.add_argument("family", choices=("oa", "steiner", "conference"))
    f.add_argument("--k", type=int, default=2)
    f.add_argument("--range", default="3:16")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.graph, args.file, args.t_start, args.t_end,
                        args.t_points, args.tol, args.fmt, args.out)
        text = COMMANDS[args.command](cfg, args)
    except InvariantViolation as exc:
        sys.stderr.write(f"stayhome: invariant violation: {exc}\n")
        if exc.certificate is not None:
            sys.stderr.write(dumps(exc.certificate, DIGITS))
        return 2
    except (StayHomeError, OSError) as exc:
        sys.stderr.write(f"stayhome: error: {exc}\n")
        return 1
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
