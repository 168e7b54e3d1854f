"""Generative operations, replayable certificates, and their inverses.

A certificate is a tree of construction steps.  Replay is deterministic:
every node's output uses canonical integer vertex labels and re-assigned edge
ids, so an edge reference (id plus orientation flag) inside a node always
refers to the replayed child, keeping certificates self-contained.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .baseck import check_spade, weight_function
from .errors import ConstructionError, GuardExceeded, InternalContradiction
from .flats import good_flats
from .graph import (
    Multigraph,
    blocks,
    components,
    ears,
    is_isomorphic,
    is_two_connected,
    label_key,
)

SCHEMA = "gorcheck.cert/1"


@dataclass(frozen=True)
class EdgeRef:
    """Edge of a replayed child: id plus whether the stored endpoint order is reversed."""

    edge_id: int
    flipped: bool = False


@dataclass(frozen=True)
class Seed:
    kind: str  # "cycle" | "k4" | "k2"
    n: Optional[int] = None  # cycle length


@dataclass(frozen=True)
class Glue:
    delta: int
    children: tuple
    refs: tuple  # one EdgeRef per child


@dataclass(frozen=True)
class Subdivide:
    delta: int
    child: "Cert"
    ref: EdgeRef


@dataclass(frozen=True)
class Collide:
    children: tuple  # exactly 2
    refs: tuple


@dataclass(frozen=True)
class AttachCycle:
    delta: int
    child: "Cert"
    ref: EdgeRef


@dataclass(frozen=True)
class BlowUp:
    child: "Cert"
    m: int


Cert = Union[Seed, Glue, Subdivide, Collide, AttachCycle, BlowUp]


# -- replay ------------------------------------------------------------------


def _finish(temp_vertices, temp_pairs):
    """Relabel to 0..n-1 and re-id edges deterministically.

    Returns (graph, temp-label -> int map).
    """
    order = sorted(temp_vertices)
    lab = {t: i for i, t in enumerate(order)}
    pairs = sorted(
        (min(lab[u], lab[v]), max(lab[u], lab[v])) for u, v in temp_pairs
    )
    return Multigraph.build(range(len(order)), pairs), lab


def _oriented(G: Multigraph, ref: EdgeRef):
    if ref.edge_id not in G.edge_by_id:
        raise ConstructionError(f"certificate references missing edge {ref.edge_id}")
    u, v = G.endpoints(ref.edge_id)
    return (v, u) if ref.flipped else (u, v)


def _merge_along(graphs, oriented_edges, drop_merged_edge: bool):
    """Disjoint union with one oriented edge per part identified into a single edge.

    Returns (graph, embeddings) where embeddings[i] maps part i's vertex
    labels into the result.
    """
    temp_maps = []
    temp_vertices = [("g", 0), ("g", 1)]
    temp_pairs = []
    for i, (g, (eid, u, v)) in enumerate(zip(graphs, oriented_edges)):
        t = {}
        for x in g.vertices:
            if x == u:
                t[x] = ("g", 0)
            elif x == v:
                t[x] = ("g", 1)
            else:
                t[x] = ("c", i, label_key(x))
                temp_vertices.append(t[x])
        for e, a, b in g.edges:
            if e != eid:
                temp_pairs.append((t[a], t[b]))
        temp_maps.append(t)
    if not drop_merged_edge:
        temp_pairs.append((("g", 0), ("g", 1)))
    G, lab = _finish(temp_vertices, temp_pairs)
    embeddings = [{x: lab[t[x]] for x in t} for t in temp_maps]
    return G, embeddings


def replay_detail(cert: Cert):
    """Replay a certificate; returns (graph, child embedding maps)."""
    if isinstance(cert, Seed):
        if cert.kind == "cycle":
            n = cert.n
            if n is None or n < 2:
                raise ConstructionError("cycle seed needs length >= 2")
            G, _ = _finish(range(n), [(i, (i + 1) % n) for i in range(n)])
        elif cert.kind == "k4":
            G, _ = _finish(range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)])
        elif cert.kind == "k2":
            G, _ = _finish(range(2), [(0, 1)])
        else:
            raise ConstructionError(f"unknown seed kind {cert.kind!r}")
        return G, []

    if isinstance(cert, Glue):
        if len(cert.children) != cert.delta - 1 or len(cert.refs) != len(cert.children):
            raise ConstructionError(
                f"glue at delta={cert.delta} needs exactly {cert.delta - 1} children"
            )
        reps = [replay_detail(c)[0] for c in cert.children]
        oriented = [
            (r.edge_id,) + _oriented(g, r) for g, r in zip(reps, cert.refs)
        ]
        return _merge_along(reps, oriented, drop_merged_edge=False)

    if isinstance(cert, Collide):
        if len(cert.children) != 2 or len(cert.refs) != 2:
            raise ConstructionError("collide needs exactly 2 children")
        reps = [replay_detail(c)[0] for c in cert.children]
        oriented = [
            (r.edge_id,) + _oriented(g, r) for g, r in zip(reps, cert.refs)
        ]
        return _merge_along(reps, oriented, drop_merged_edge=True)

    if isinstance(cert, Subdivide):
        rep = replay_detail(cert.child)[0]
        if cert.delta < 2:
            raise ConstructionError("subdivide needs delta >= 2")
        if cert.delta == 2:
            # a path of delta-1 = 1 edge: the identity
            return rep, [{x: x for x in rep.vertices}]
        u, v = _oriented(rep, cert.ref)
        n = rep.n
        fresh = list(range(n, n + cert.delta - 2))
        pairs = [(a, b) for e, a, b in rep.edges if e != cert.ref.edge_id]
        chain = [u] + fresh + [v]
        pairs.extend(zip(chain, chain[1:]))
        G, lab = _finish(range(n + cert.delta - 2), pairs)
        return G, [{x: lab[x] for x in rep.vertices}]

    if isinstance(cert, AttachCycle):
        rep = replay_detail(cert.child)[0]
        if cert.delta < 2:
            raise ConstructionError("attach_cycle needs delta >= 2")
        u, v = _oriented(rep, cert.ref)
        n = rep.n
        fresh = list(range(n, n + cert.delta - 1))
        pairs = [(a, b) for _, a, b in rep.edges]
        chain = [u] + fresh + [v]
        pairs.extend(zip(chain, chain[1:]))
        G, lab = _finish(range(n + cert.delta - 1), pairs)
        return G, [{x: lab[x] for x in rep.vertices}]

    if isinstance(cert, BlowUp):
        rep = replay_detail(cert.child)[0]
        if cert.m < 1:
            raise ConstructionError("blow-up multiplicity must be >= 1")
        pairs = [(a, b) for _, a, b in rep.edges for _ in range(cert.m)]
        G, lab = _finish(range(rep.n), pairs)
        return G, [{x: lab[x] for x in rep.vertices}]

    raise ConstructionError(f"unknown certificate node {cert!r}")


def replay(cert: Cert) -> Multigraph:
    """Deterministic reconstruction of the graph a certificate describes."""
    return replay_detail(cert)[0]


# -- forward construction operations ----------------------------------------


def _spade_or_raise(G: Multigraph, delta: int, what: str):
    viol = check_spade(G, delta)
    if viol is not None:
        raise ConstructionError(
            f"{what} must satisfy the good-flat equalities at delta={delta}; "
            f"violation: {viol.as_dict()}"
        )


def glue(parts, delta: int) -> Multigraph:
    """Glue delta-1 graphs along one weight-(delta-1) edge each.

    parts is a list of (graph, weight assignment or None, edge id); the
    chosen edges are identified into a single edge of the result (its weight
    becomes 1).  Output labels are canonical integers.
    """
    if delta < 3:
        raise ConstructionError("glue is a delta > 2 construction")
    if len(parts) != delta - 1:
        raise ConstructionError(
            f"glue at delta={delta} needs exactly {delta - 1} parts, got {len(parts)}"
        )
    oriented = []
    graphs = []
    for g, w, eid in parts:
        _spade_or_raise(g, delta, "every glued part")
        w = w if w is not None else weight_function(g, delta)
        if w.as_dict()[eid] != delta - 1:
            raise ConstructionError(
                f"glued edge {eid} has weight {w.as_dict()[eid]}, needs {delta - 1}"
            )
        graphs.append(g)
        oriented.append((eid,) + g.endpoints(eid))
    G, _ = _merge_along(graphs, oriented, drop_merged_edge=False)
    return G


def subdivide(G: Multigraph, w, eid: int, delta: int) -> Multigraph:
    """Replace a weight-1 edge by a path of delta-1 edges (identity at delta=2)."""
    _spade_or_raise(G, delta, "the subdivided graph")
    w = w if w is not None else weight_function(G, delta)
    if w.as_dict()[eid] != 1:
        raise ConstructionError(
            f"subdivision target {eid} has weight {w.as_dict()[eid]}, needs 1"
        )
    if delta == 2:
        return G
    u, v = G.endpoints(eid)
    fresh = _fresh_labels(G, delta - 2)
    H = G.without_edges([eid])
    chain = [u] + fresh + [v]
    for x in fresh:
        H = Multigraph(H.vertices + (x,), H.edges, H.loops_removed)
    for a, b in zip(chain, chain[1:]):
        H, _ = H.with_edge(a, b)
    return H


def collide(G1: Multigraph, e1: int, G2: Multigraph, e2: int) -> Multigraph:
    """Glue two graphs along the given edges, then remove the identified edge."""
    for g in (G1, G2):
        _spade_or_raise(g, 2, "every collided part")
    G, _ = _merge_along(
        [G1, G2], [(e1,) + G1.endpoints(e1), (e2,) + G2.endpoints(e2)],
        drop_merged_edge=True,
    )
    return G


def attach_cycle(H: Multigraph, eid: int, delta: int) -> Multigraph:
    """Add a fresh path of delta edges between the endpoints of an existing edge.

    Together with the edge this creates a new (delta+1)-cycle.
    """
    if not H.is_simple():
        raise ConstructionError("attach_cycle requires a simple graph")
    if eid not in H.edge_by_id:
        raise KeyError(f"unknown edge id {eid}")
    if delta < 2:
        raise ConstructionError("attach_cycle needs delta >= 2")
    u, v = H.endpoints(eid)
    fresh = _fresh_labels(H, delta - 1)
    G = H
    for x in fresh:
        G = Multigraph(G.vertices + (x,), G.edges, G.loops_removed)
    chain = [u] + fresh + [v]
    for a, b in zip(chain, chain[1:]):
        G, _ = G.with_edge(a, b)
    return G


def blow_up(H: Multigraph, m: int) -> Multigraph:
    """Replace every edge by m parallel copies."""
    if m < 1:
        raise ConstructionError("blow-up multiplicity must be >= 1")
    return Multigraph.build(
        H.vertices, [(u, v) for _, u, v in sorted(H.edges) for _ in range(m)],
        H.loops_removed,
    )


def _fresh_labels(G: Multigraph, count: int) -> list:
    used = set(G.vertices)
    if all(isinstance(v, int) for v in G.vertices):
        start = max(used, default=-1) + 1
        return list(range(start, start + count))
    out = []
    i = 0
    while len(out) < count:
        cand = f"w{i}"
        if cand not in used:
            out.append(cand)
        i += 1
    return out


# -- decomposition (inverse construction) ------------------------------------


def _is_cycle_graph(G: Multigraph) -> bool:
    return (
        G.n == G.m
        and G.n >= 3
        and all(G.degree(v) == 2 for v in G.vertices)
        and is_two_connected(G)
    )


def _cycle_cert(G: Multigraph):
    walk = [min(G.vertices, key=label_key)]
    nbrs = sorted((w for _, w in G.adjacency[walk[0]]), key=label_key)
    walk.append(nbrs[0])
    while len(walk) < G.n:
        a, b = walk[-2], walk[-1]
        nxt = next(w for _, w in G.adjacency[b] if w != a)
        walk.append(nxt)
    vmap = {v: i for i, v in enumerate(walk)}
    return Seed("cycle", G.n), vmap


def _child_edge_ref(cert_child: Cert, vmap_child: dict, u, v) -> EdgeRef:
    rep = replay(cert_child)
    a, b = vmap_child[u], vmap_child[v]
    eid = rep.edge_between(a, b)
    if eid is None:
        raise InternalContradiction("replayed child lost a referenced edge")
    return EdgeRef(eid, flipped=rep.endpoints(eid)[0] != a)


def _decompose(G: Multigraph, delta: int, top: bool):
    viol = check_spade(G, delta)
    if viol is not None:
        if top:
            raise ConstructionError(
                f"input fails the good-flat equalities at delta={delta}: "
                f"{viol.as_dict()}"
            )
        raise InternalContradiction(
            f"decomposition produced a part violating the equalities at "
            f"delta={delta}: {viol.as_dict()}"
        )

    if delta == 2:
        return _decompose_delta2(G)

    if _is_cycle_graph(G):
        if G.n != delta:
            raise InternalContradiction(
                f"a cycle satisfying the equalities at delta={delta} must be a "
                f"{delta}-cycle, got C{G.n}"
            )
        return _cycle_cert(G)

    w = weight_function(G, delta).as_dict()
    light = sorted(
        (eid for eid, wt in w.items() if wt == 1),
        key=lambda e: (tuple(sorted(label_key(x) for x in G.endpoints(e))), e),
    )
    if light:
        eid = light[0]
        u, v = sorted(G.endpoints(eid), key=label_key)
        comps = components(G.without_vertices([u, v]))
        if len(comps) != delta - 1:
            raise InternalContradiction(
                f"weight-1 edge split gave {len(comps)} parts, expected {delta - 1}"
            )
        certs, refs, parts = [], [], []
        for comp in comps:
            part = G.induced(set(comp) | {u, v})
            cert_i, vmap_i = _decompose(part, delta, top=False)
            certs.append(cert_i)
            refs.append(_child_edge_ref(cert_i, vmap_i, u, v))
            parts.append((part, vmap_i))
        cert = Glue(delta, tuple(certs), tuple(refs))
        _, embeds = replay_detail(cert)
        vmap = {}
        for (part, vmap_i), emb in zip(parts, embeds):
            for x in part.vertices:
                vmap[x] = emb[vmap_i[x]]
        return cert, vmap

    scan = ears(G)
    candidates = [e for e in scan.ears if e.length == delta - 1]
    if not candidates:
        raise InternalContradiction(
            f"no ({delta - 1})-ear in an all-heavy graph that is not a {delta}-cycle"
        )
    ear = candidates[0]
    v0, vs = ear.path[0], ear.path[-1]
    if G.has_edge(v0, vs):
        raise InternalContradiction(
            "ear endpoints are adjacent; its replacement would not be simple"
        )
    shrunk, _ = G.without_vertices(ear.inner).with_edge(v0, vs)
    cert_c, vmap_c = _decompose(shrunk, delta, top=False)
    ref = _child_edge_ref(cert_c, vmap_c, v0, vs)
    cert = Subdivide(delta, cert_c, ref)
    rep_child = replay(cert_c)
    _, embeds = replay_detail(cert)
    vmap = {x: embeds[0][vmap_c[x]] for x in shrunk.vertices}
    base = rep_child.n
    for j, x in enumerate(ear.inner):
        vmap[x] = base + j
    return cert, vmap


def _decompose_delta2(G: Multigraph):
    pair = None
    verts = G.sorted_vertices
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if len(components(G.without_vertices([verts[i], verts[j]]))) > 1:
                pair = (verts[i], verts[j])
                break
        if pair:
            break
    if pair is None:
        if not (G.n == 4 and G.m == 6 and G.is_simple()):
            raise InternalContradiction(
                "a 3-connected graph satisfying the delta=2 equalities must be K4"
            )
        vmap = {v: i for i, v in enumerate(sorted(G.vertices, key=label_key))}
        return Seed("k4"), vmap
    v1, v2 = pair
    comps = components(G.without_vertices([v1, v2]))
    if len(comps) != 2:
        raise InternalContradiction(
            f"separating pair leaves {len(comps)} components, expected 2"
        )
    if G.has_edge(v1, v2):
        raise InternalContradiction("separating pair joined by an edge")
    certs, refs, parts = [], [], []
    for comp in comps:
        part, _ = G.induced(set(comp) | {v1, v2}).with_edge(v1, v2)
        cert_i, vmap_i = _decompose(part, 2, top=False)
        certs.append(cert_i)
        refs.append(_child_edge_ref(cert_i, vmap_i, v1, v2))
        parts.append((part, vmap_i))
    cert = Collide(tuple(certs), tuple(refs))
    _, embeds = replay_detail(cert)
    vmap = {}
    for (part, vmap_i), emb in zip(parts, embeds):
        for x in part.vertices:
            vmap[x] = emb[vmap_i[x]]
    return cert, vmap


def decompose_base(G: Multigraph, delta: int) -> Cert:
    """Certificate for a 2-connected simple graph satisfying the equalities at delta.

    Replaying the result yields a graph isomorphic to G.  Hitting a state the
    classification theorems exclude raises InternalContradiction.
    """
    if not is_two_connected(G):
        raise ConstructionError("decompose_base requires a 2-connected graph")
    if not G.is_simple():
        raise ConstructionError("decompose_base requires a simple graph")
    cert, _ = _decompose(G, delta, top=True)
    return cert


# -- fingerprints and replay checks ------------------------------------------


def fingerprint(G: Multigraph) -> tuple:
    """Invariant summary for graphs too large for brute-force isomorphism."""
    blks = blocks(G)
    flat_census = None
    if is_two_connected(G) and G.n <= 16:
        flat_census = tuple(
            sorted((len(f.S), len(f.induced_edges)) for f in good_flats(G))
        )
    return (
        G.n,
        G.m,
        tuple(sorted(G.degree(v) for v in G.vertices)),
        tuple(sorted((b.n, b.m) for b in blks)),
        flat_census,
    )


def replay_matches(cert: Cert, G: Multigraph) -> tuple:
    """Compare replay(cert) with G; returns (matched, method).

    Brute-force isomorphism up to 10 vertices, invariant fingerprint beyond
    (reported via method = "fingerprint").
    """
    H = replay(cert)
    try:
        return is_isomorphic(H, G), "isomorphism"
    except GuardExceeded:
        return fingerprint(H) == fingerprint(G), "fingerprint"


# -- serialization ------------------------------------------------------------


def cert_to_dict(cert: Cert) -> dict:
    if isinstance(cert, Seed):
        out = {"op": "seed", "seed": cert.kind}
        if cert.n is not None:
            out["n"] = cert.n
        return out
    if isinstance(cert, Glue):
        return {
            "op": "glue",
            "delta": cert.delta,
            "children": [cert_to_dict(c) for c in cert.children],
            "refs": [{"edge": r.edge_id, "flip": r.flipped} for r in cert.refs],
        }
    if isinstance(cert, Subdivide):
        return {
            "op": "subdivide",
            "delta": cert.delta,
            "child": cert_to_dict(cert.child),
            "ref": {"edge": cert.ref.edge_id, "flip": cert.ref.flipped},
        }
    if isinstance(cert, Collide):
        return {
            "op": "collide",
            "children": [cert_to_dict(c) for c in cert.children],
            "refs": [{"edge": r.edge_id, "flip": r.flipped} for r in cert.refs],
        }
    if isinstance(cert, AttachCycle):
        return {
            "op": "attach_cycle",
            "delta": cert.delta,
            "child": cert_to_dict(cert.child),
            "ref": {"edge": cert.ref.edge_id, "flip": cert.ref.flipped},
        }
    if isinstance(cert, BlowUp):
        return {"op": "blow_up", "m": cert.m, "child": cert_to_dict(cert.child)}
    raise ConstructionError(f"unknown certificate node {cert!r}")


def cert_from_dict(d: dict) -> Cert:
    op = d.get("op")
    if op == "seed":
        return Seed(d["seed"], d.get("n"))
    if op == "glue":
        return Glue(
            d["delta"],
            tuple(cert_from_dict(c) for c in d["children"]),
            tuple(EdgeRef(r["edge"], r.get("flip", False)) for r in d["refs"]),
        )
    if op == "subdivide":
        return Subdivide(
            d["delta"],
            cert_from_dict(d["child"]),
            EdgeRef(d["ref"]["edge"], d["ref"].get("flip", False)),
        )
    if op == "collide":
        return Collide(
            tuple(cert_from_dict(c) for c in d["children"]),
            tuple(EdgeRef(r["edge"], r.get("flip", False)) for r in d["refs"]),
        )
    if op == "attach_cycle":
        return AttachCycle(
            d["delta"],
            cert_from_dict(d["child"]),
            EdgeRef(d["ref"]["edge"], d["ref"].get("flip", False)),
        )
    if op == "blow_up":
        return BlowUp(cert_from_dict(d["child"]), d["m"])
    raise ConstructionError(f"unknown certificate op {op!r}")


def cert_to_json(cert: Cert) -> str:
    return json.dumps({"schema": SCHEMA, "root": cert_to_dict(cert)}, indent=2)


def cert_from_json(text: str) -> Cert:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ConstructionError(f"unsupported certificate schema {doc.get('schema')!r}")
    return cert_from_dict(doc["root"])
