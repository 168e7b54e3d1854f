"""Command-line front end.

Subcommands: check (combinatorial checker), oracle (exact polytope oracle),
certify (construction certificate for positive instances), generate (run a
construction), sweep (exhaustive small-graph cross-validation).  Verdicts are
JSON on stdout; DOT drawings are optional side outputs.

Exit codes: 0 verdict produced, 1 parse error, 2 resource guard exceeded,
3 certify on a non-Gorenstein input, 4 typed input error (e.g. the base
checker on a multigraph).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .baseck import base_verdict, weight_function
from .construct import (
    Seed,
    attach_cycle,
    blow_up,
    cert_to_dict,
    collide,
    decompose_base,
    glue,
    replay,
    replay_matches,
    subdivide,
)
from .errors import (
    ConstructionError,
    GorcheckError,
    GuardExceeded,
    NotTwoConnected,
    ParseError,
    SimpleGraphRequired,
    WeightConflict,
)
from .graph import Multigraph, blocks, format_edge_list, normalize, parse_graph
from .indepck import indep_verdict, recognize_cycle_construction
from .oracle import (
    gorenstein_search,
    hstar,
    lattice_points,
    normality_probe,
    polytope_of,
)
from .smallgraphs import two_connected_graphs

VERDICT_SCHEMA = "gorcheck.verdict/1"
CERT_SCHEMA = "gorcheck.cert/1"

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_GUARD = 2
EXIT_NOT_GORENSTEIN = 3
EXIT_INPUT = 4


def _load_graph(path: str) -> Multigraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def _graph_summary(G: Multigraph) -> dict:
    return {
        "vertices": G.n,
        "edges": G.m,
        "loops_removed": G.loops_removed,
        "simple": G.is_simple(),
        "blocks": len(blocks(normalize(G))),
    }


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def _dot(G: Multigraph, delta=None) -> str:
    """DOT export; edges colored by weight (1 vs delta-1) when delta is given."""
    lines = ["graph G {"]
    weights = {}
    if delta is not None:
        try:
            for b in blocks(normalize(G)):
                if b.m >= 2:
                    weights.update(weight_function(b, delta).as_dict())
        except GorcheckError:
            weights = {}
    for eid, u, v in sorted(G.edges):
        attrs = []
        if eid in weights:
            w = weights[eid]
            color = "black" if w == 1 else "red"
            attrs.append(f'color={color}, label="{w}"')
        attr = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{u}" -- "{v}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _maybe_dot(args, G: Multigraph, delta=None) -> None:
    if getattr(args, "dot", None):
        with open(args.dot, "w") as fh:
            fh.write(_dot(G, delta))


def cmd_check(args) -> int:
    G = _load_graph(args.file)
    t0 = time.perf_counter()
    if args.kind == "base":
        v = base_verdict(G)
        extra = {}
    else:
        v = indep_verdict(G)
        extra = {"m": v.multiplicity}
    report = {
        "schema": VERDICT_SCHEMA,
        "command": "check",
        "kind": args.kind,
        "input": _graph_summary(G),
        "status": v.status,
        "delta": v.delta,
        **extra,
        "witness": v.witness.as_dict() if v.witness else None,
        "elapsed_s": round(time.perf_counter() - t0, 6),
    }
    _emit(report)
    _maybe_dot(args, G, v.delta)
    return EXIT_OK


def cmd_oracle(args) -> int:
    G = _load_graph(args.file)
    t0 = time.perf_counter()
    kind = "independence" if args.kind == "indep" else "base"
    P = polytope_of(G, kind)
    facets = P.require_facets()
    witness = gorenstein_search(P)
    if witness is not None and args.max_delta and witness.delta > args.max_delta:
        witness = None
    report = {
        "schema": VERDICT_SCHEMA,
        "command": "oracle",
        "kind": args.kind,
        "input": _graph_summary(G),
        "polytope": {
            "vertices": len(P.vertices),
            "dim": P.dim,
            "facets": len(facets),
            "lattice_saturated": P.lattice_saturated,
        },
        "status": "gorenstein" if witness else "not_gorenstein",
        "delta": witness.delta if witness else None,
        "witness_point": list(witness.v) if witness else None,
    }
    if args.hstar:
        h = hstar(P)
        report["hstar"] = {
            "coefficients": list(h.coefficients),
            "palindromic": h.palindromic,
        }
    if args.normality:
        bad = normality_probe(P, args.normality)
        report["normality"] = (
            "pass" if bad is None else {"k": bad[0], "point": list(bad[1])}
        )
    report["elapsed_s"] = round(time.perf_counter() - t0, 6)
    _emit(report)
    _maybe_dot(args, G)
    return EXIT_OK


def cmd_certify(args) -> int:
    G = _load_graph(args.file)
    if args.kind == "base":
        v = base_verdict(G)
    else:
        v = indep_verdict(G)
    if not v.is_gorenstein:
        _emit(
            {
                "schema": VERDICT_SCHEMA,
                "command": "certify",
                "kind": args.kind,
                "input": _graph_summary(G),
                "status": v.status,
                "witness": v.witness.as_dict() if v.witness else None,
            }
        )
        return EXIT_NOT_GORENSTEIN
    G = normalize(G)
    certs = []
    for b in blocks(G):
        if args.kind == "base":
            if b.n == 2:
                cert = Seed("k2")
            else:
                cert = decompose_base(b, v.delta)
            matched, method = replay_matches(cert, b)
        else:
            from .graph import blow_up_factor

            f = blow_up_factor(b)
            cert = recognize_cycle_construction(f.base_graph, v.delta)
            from .construct import BlowUp

            cert = BlowUp(cert, f.multiplicity) if f.multiplicity > 1 else cert
            matched, method = replay_matches(cert, b)
        if not matched:
            raise GorcheckError("certificate replay does not match the input block")
        certs.append(
            {
                "schema": CERT_SCHEMA,
                "root": cert_to_dict(cert),
                "replay_matched": matched,
                "replay_check": method,
            }
        )
    _emit(
        {
            "schema": VERDICT_SCHEMA,
            "command": "certify",
            "kind": args.kind,
            "input": _graph_summary(G),
            "status": v.status,
            "delta": v.delta,
            "certificates": certs,
        }
    )
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.op == "seed":
        if args.cycle:
            G = replay(Seed("cycle", args.cycle))
        elif args.k4:
            G = replay(Seed("k4"))
        else:
            G = replay(Seed("k2"))
    elif args.op == "glue":
        parts = [_load_graph(p) for p in args.inputs]
        chosen = []
        for g in parts:
            w = weight_function(g, args.delta)
            heavy = [e for e, wt in sorted(w.as_dict().items()) if wt == args.delta - 1]
            if not heavy:
                raise ConstructionError("part has no weight-(delta-1) edge to glue on")
            chosen.append((g, w, heavy[0]))
        G = glue(chosen, args.delta)
    elif args.op == "subdivide":
        g = _load_graph(args.inputs[0])
        w = weight_function(g, args.delta)
        light = [e for e, wt in sorted(w.as_dict().items()) if wt == 1]
        if not light:
            raise ConstructionError("no weight-1 edge to subdivide")
        G = subdivide(g, w, light[0], args.delta)
    elif args.op == "collide":
        g1, g2 = (_load_graph(p) for p in args.inputs[:2])
        G = collide(g1, sorted(g1.edge_by_id)[0], g2, sorted(g2.edge_by_id)[0])
    elif args.op == "attach":
        g = _load_graph(args.inputs[0])
        G = attach_cycle(g, sorted(g.edge_by_id)[0], args.delta)
    elif args.op == "blowup":
        g = _load_graph(args.inputs[0])
        G = blow_up(g, args.m)
    else:
        raise ValueError(f"unknown op {args.op!r}")
    text = format_edge_list(G)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    v = base_verdict(G) if G.is_simple() else indep_verdict(G)
    sys.stderr.write(f"verdict: {v.status} delta={v.delta}\n")
    _maybe_dot(args, G, v.delta)
    return EXIT_OK


def _sweep_one(payload):
    """Classify one graph; must stay top-level picklable for process pools."""
    idx, edges, kind, cross = payload
    G = Multigraph.build(sorted({x for _, u, v in edges for x in (u, v)}), [
        (u, v) for _, u, v in edges
    ])
    row = {"index": idx, "edges": [[u, v] for _, u, v in edges]}
    if kind == "indep-equivalence":
        from .indepck import check_chordal_k4free, check_club

        agreements = []
        for d in range(2, 9):
            club = check_club(G, d) is None
            ch = check_chordal_k4free(G, d) is None
            rec = recognize_cycle_construction(G, d) is not None
            agreements.append(club == ch == rec)
        row["three_way_agree"] = all(agreements)
        row["mismatch"] = not row["three_way_agree"]
        return row
    v = base_verdict(G) if kind == "base" else indep_verdict(G)
    row["status"] = v.status
    row["delta"] = v.delta
    row["mismatch"] = False
    if cross:
        P = polytope_of(G, "base" if kind == "base" else "independence")
        w = gorenstein_search(P)
        odelta = w.delta if w else None
        cdelta = v.delta
        if v.is_gorenstein and cdelta is None:
            cdelta = odelta  # point polytope: compatible with the oracle's delta
        row["oracle_delta"] = odelta
        row["mismatch"] = (v.is_gorenstein, cdelta) != (w is not None, odelta)
    return row


def cmd_sweep(args) -> int:
    limit = 6 if args.cross_validate else 7
    if args.max_vertices > limit:
        raise GuardExceeded(
            f"sweep guarded at {limit} vertices"
            + (" with cross-validation" if args.cross_validate else "")
        )
    graphs = two_connected_graphs(args.max_vertices)
    payloads = [
        (i, list(g.edges), args.kind, args.cross_validate)
        for i, g in enumerate(graphs)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_one, payloads))
    else:
        rows = [_sweep_one(p) for p in payloads]
    rows.sort(key=lambda r: r["index"])  # deterministic regardless of --jobs
    census: dict = {}
    multi = []
    for row in rows:
        if "delta" in row:
            if row.get("status") != "gorenstein":
                key = "none"
            elif row["delta"] is None:
                key = "any"  # point polytope, Gorenstein at every index
            else:
                key = str(row["delta"])
            census[key] = census.get(key, 0) + 1
    mismatches = [r for r in rows if r["mismatch"]]
    _emit(
        {
            "schema": VERDICT_SCHEMA,
            "command": "sweep",
            "kind": args.kind,
            "max_vertices": args.max_vertices,
            "graphs": len(rows),
            "census_by_delta": dict(sorted(census.items())),
            "mismatches": len(mismatches),
            "mismatch_rows": mismatches,
            "multi_delta": multi,
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gorcheck",
        description="Gorenstein classification of graphic matroid polytopes",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--dot", help="write a DOT drawing to this path")

    c = sub.add_parser("check", help="combinatorial checker")
    c.add_argument("kind", choices=["base", "indep"])
    c.add_argument("file")
    add_common(c)
    c.set_defaults(func=cmd_check)

    o = sub.add_parser("oracle", help="exact lattice-polytope oracle")
    o.add_argument("kind", choices=["base", "indep"])
    o.add_argument("file")
    o.add_argument("--max-delta", type=int, default=None)
    o.add_argument("--hstar", action="store_true")
    o.add_argument("--normality", type=int, default=None, metavar="KMAX")
    o.add_argument("--guard-nodes", type=int, default=None)
    add_common(o)
    o.set_defaults(func=cmd_oracle)

    ct = sub.add_parser("certify", help="construction certificate")
    ct.add_argument("kind", choices=["base", "indep"])
    ct.add_argument("file")
    add_common(ct)
    ct.set_defaults(func=cmd_certify)

    g = sub.add_parser("generate", help="run a construction")
    g.add_argument(
        "op", choices=["seed", "glue", "subdivide", "collide", "attach", "blowup"]
    )
    g.add_argument("inputs", nargs="*")
    g.add_argument("--delta", type=int, default=3)
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--cycle", type=int, default=None)
    g.add_argument("--k4", action="store_true")
    g.add_argument("--output", "-o", default=None)
    add_common(g)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("sweep", help="exhaustive small-graph verification")
    s.add_argument("--max-vertices", type=int, default=6)
    s.add_argument(
        "--kind", choices=["base", "indep", "indep-equivalence"], default="base"
    )
    s.add_argument("--cross-validate", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except GuardExceeded as exc:
        sys.stderr.write(f"guard exceeded: {exc}\n")
        return EXIT_GUARD
    except (SimpleGraphRequired, NotTwoConnected, WeightConflict, ConstructionError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except FileNotFoundError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
