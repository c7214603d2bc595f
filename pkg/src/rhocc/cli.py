"""Command-line front end.

Subcommands: construct (family constructors), invariant (conditional
connectivity with certificate), rho (spectral radius), bound (degree bound /
spectral bracket), verify (extremality verification). Graph input is a file
path or "-" for stdin, as a graph6 line or edge-list JSON. All results go to
stdout as a single document; diagnostics go to stderr.

Exit codes: 0 success, 1 parameter infeasibility, 2 I/O or format error,
3 verification failure (a check found a counterexample).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import conn, families, spectral, verify
from .families import EDGE_KIND, VERTEX_KIND, ExtremalParams, ParameterError
from .graphs import (
    Graph,
    GraphError,
    dot_export,
    from_edge_json_obj,
    graph6_decode,
    graph6_encode,
    min_degree,
    to_edge_json_obj,
)

EXIT_OK = 0
EXIT_PARAMS = 1
EXIT_IO = 2
EXIT_COUNTEREXAMPLE = 3

THREADS_ENV = "RHOCC_THREADS"


class InputError(Exception):
    pass


def _read_graph(source: str) -> Graph:
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            text = Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    text = text.strip()
    if not text:
        raise InputError("empty graph input")
    try:
        if text.startswith("{"):
            return from_edge_json_obj(json.loads(text))
        return graph6_decode(text.splitlines()[0])
    except (GraphError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse graph: {exc}") from exc


def _emit_graph(g: Graph, fmt: str, blocks_out: str | None, fam) -> None:
    if fmt == "graph6":
        print(graph6_encode(g))
    elif fmt == "dot":
        sys.stdout.write(dot_export(g))
    else:
        print(json.dumps(to_edge_json_obj(g), sort_keys=True))
    if blocks_out and fam is not None:
        Path(blocks_out).write_text(
            json.dumps(fam.blocks_json_obj(), sort_keys=True, indent=2) + "\n"
        )


def _params_from_args(args, kind: str) -> ExtremalParams:
    value = args.kappa if kind == VERTEX_KIND else args.lam
    if value is None:
        which = "--kappa" if kind == VERTEX_KIND else "--lambda"
        raise ParameterError(f"{which} is required here")
    return ExtremalParams(args.n, args.r, args.h, args.delta, kind, value)


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def cmd_construct(args) -> int:
    fam = None
    if args.family == "g-kappa":
        fam = families.g_kappa(_params_from_args(args, VERTEX_KIND))
        g = fam.graph
    elif args.family == "b-lambda":
        fam = families.b_lambda(_params_from_args(args, EDGE_KIND))
        g = fam.graph
    elif args.family == "k-family":
        extra = _parse_attachment(args.attach)
        fam = families.k_family(_params_from_args(args, EDGE_KIND), args.t, extra)
        g = fam.graph
    else:  # f-lambda
        if args.lam is None:
            raise ParameterError("--lambda is required here")
        g = families.f_lambda(args.n, args.delta, args.lam)
    _emit_graph(g, args.format, args.blocks_out, fam)
    return EXIT_OK


def _parse_attachment(spec: str | None) -> families.Attachment:
    """'1:kh.0,3:copy0.1' -> ((1, ('kh', 0)), (3, ('copy0', 1)))."""
    if not spec:
        return ()
    out = []
    for item in spec.split(","):
        try:
            big, tgt = item.split(":")
            block, idx = tgt.rsplit(".", 1)
            out.append((int(big), (block, int(idx))))
        except ValueError as exc:
            raise ParameterError(f"bad attachment item {item!r}") from exc
    return tuple(out)


def cmd_invariant(args) -> int:
    g = _read_graph(args.graph)
    if args.kind == "kappa":
        res = conn.kappa_h_r(g, args.r, args.h)
    else:
        res = conn.lambda_h_r(g, args.r, args.h)
    print(json.dumps(res.to_json_obj(), sort_keys=True, indent=2))
    return EXIT_OK


def cmd_rho(args) -> int:
    g = _read_graph(args.graph)
    cfg = _spectral_config(args)
    pd = spectral.perron(g, cfg)
    print(json.dumps(pd.to_json_obj(), sort_keys=True, indent=2))
    return EXIT_OK


def cmd_bound(args) -> int:
    g = _read_graph(args.graph)
    cfg = _spectral_config(args)
    rho = spectral.perron(g, cfg).rho
    if args.kind == "hsf":
        bound = spectral.hsf_bound(g.n, g.edge_count, min_degree(g))
        obj = {
            "kind": "hsf",
            "n": g.n,
            "m": g.edge_count,
            "delta": min_degree(g),
            "bound": bound,
            "rho": rho,
            "satisfied": rho <= bound + cfg.comparison_epsilon,
            "equality_class": spectral.hsf_equality_class(g),
            "tight": abs(rho - bound) <= 1e-8,
        }
    else:
        upper = g.n - (args.r - 1) * (args.h + 1)
        lower = upper - 1
        obj = {
            "kind": "bracket",
            "lower": lower,
            "upper": upper,
            "rho": rho,
            "satisfied": lower + cfg.comparison_epsilon < rho < upper - cfg.comparison_epsilon,
        }
    print(json.dumps(obj, sort_keys=True, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    threads = args.threads if args.threads else _default_threads()
    cfg = _spectral_config(args)
    checkpoint = Path(args.checkpoint) if args.checkpoint else None
    if args.target == "vertex":
        p = _params_from_args(args, VERTEX_KIND)
        rep = verify.verify_vertex_extremality(
            p,
            mode=args.mode if args.mode != "randomized" else "exhaustive",
            edit_distance=args.edit_distance,
            threads=threads,
            checkpoint=checkpoint,
            long_running=args.long_running,
            cfg=cfg,
        )
    elif args.target == "edge":
        p = _params_from_args(args, EDGE_KIND)
        seeds = [int(s) for s in args.seeds.split(",")] if args.seeds else [args.seed]
        rep = verify.verify_edge_extremality(
            p,
            mode=args.mode,
            iterations=args.iterations,
            seeds=seeds,
            threads=threads,
            checkpoint=checkpoint,
            long_running=args.long_running,
            cfg=cfg,
        )
    elif args.target == "family-max":
        p = _params_from_args(args, EDGE_KIND)
        rep = verify.verify_family_maximum(p, cfg=cfg)
    else:  # bracket
        if args.lam is None:
            raise ParameterError("--lambda is required here")
        out = verify.bracket_sweep([(args.lam, args.h, args.r, args.n)], cfg=cfg)
        print(json.dumps(out, sort_keys=True, indent=2))
        return EXIT_OK if out["ok"] else EXIT_COUNTEREXAMPLE
    print(rep.to_json())
    return EXIT_COUNTEREXAMPLE if rep.counterexample_found else EXIT_OK


def _spectral_config(args) -> spectral.SpectralConfig:
    return spectral.SpectralConfig(
        tolerance=args.tolerance, comparison_epsilon=args.epsilon
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rhocc",
        description="Conditional connectivity, spectral radii, and extremal verification",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_common(p, graph_arg=False):
        p.add_argument("--tolerance", type=float, default=1e-12)
        p.add_argument("--epsilon", type=float, default=1e-9,
                       help="strict-inequality comparison margin")
        if graph_arg:
            p.add_argument("graph", nargs="?", default="-",
                           help="graph file (graph6 or edge JSON), or - for stdin")

    def add_params(p, kappa=True, lam=True):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--r", type=int, default=2)
        p.add_argument("--h", type=int, default=1)
        p.add_argument("--delta", type=int, default=1)
        if kappa:
            p.add_argument("--kappa", type=int, default=None)
        if lam:
            p.add_argument("--lambda", dest="lam", type=int, default=None)

    pc = sub.add_parser("construct", help="build a named family member")
    pc.add_argument("--family", required=True,
                    choices=["g-kappa", "b-lambda", "k-family", "f-lambda"])
    add_params(pc)
    pc.add_argument("--t", type=int, default=1, help="pendant edge count (k-family)")
    pc.add_argument("--attach", default=None,
                    help="extra edges for k-family, e.g. '1:kh.0,3:copy0.1'")
    pc.add_argument("--format", choices=["graph6", "dot", "json"], default="graph6")
    pc.add_argument("--blocks-out", default=None,
                    help="write the block map JSON sidecar here")
    add_common(pc)
    pc.set_defaults(fn=cmd_construct)

    pi = sub.add_parser("invariant", help="conditional connectivity with certificate")
    pi.add_argument("--kind", choices=["kappa", "lambda"], required=True)
    pi.add_argument("--r", type=int, default=2)
    pi.add_argument("--h", type=int, default=0)
    add_common(pi, graph_arg=True)
    pi.set_defaults(fn=cmd_invariant)

    pr = sub.add_parser("rho", help="spectral radius and Perron vector")
    add_common(pr, graph_arg=True)
    pr.set_defaults(fn=cmd_rho)

    pb = sub.add_parser("bound", help="degree bound or spectral bracket")
    pb.add_argument("--kind", choices=["hsf", "bracket"], required=True)
    pb.add_argument("--r", type=int, default=2)
    pb.add_argument("--h", type=int, default=1)
    add_common(pb, graph_arg=True)
    pb.set_defaults(fn=cmd_bound)

    pv = sub.add_parser("verify", help="extremality verification")
    pv.add_argument("--target", required=True,
                    choices=["vertex", "edge", "family-max", "bracket"])
    add_params(pv)
    pv.add_argument("--mode", default=None,
                    choices=["exhaustive", "restricted", "randomized", "adversary"])
    pv.add_argument("--edit-distance", type=int, default=2)
    pv.add_argument("--iterations", type=int, default=100_000)
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--seeds", default=None, help="comma-separated seed list")
    pv.add_argument("--threads", type=int, default=None,
                    help=f"shard workers (default ${THREADS_ENV} or 1)")
    pv.add_argument("--checkpoint", default=None, help="JSONL shard checkpoint path")
    pv.add_argument("--long-running", action="store_true",
                    help="confirm exhaustive sweeps beyond 2^24 masks")
    add_common(pv)
    pv.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "mode", None) is None and args.cmd == "verify":
        args.mode = "exhaustive" if args.target == "vertex" else "randomized"
    try:
        return args.fn(args)
    except (ParameterError, families.SelfCheckError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GraphError as exc:
        print(f"graph error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
