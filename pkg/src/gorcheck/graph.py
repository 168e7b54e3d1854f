"""Exact multigraph representation and the primitives everything else consumes.

Vertices are arbitrary hashable labels (strings from the parser, ints for
internally built graphs).  Edge ids are small ints, unique within a graph and
stable under deletion.  All graphs are immutable; every operation returns a
new graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

from .errors import GuardExceeded, ParseError

DEFAULT_GUARD = 10**6


def label_key(x):
    """Total order on mixed-type vertex labels (ints and strs never compare)."""
    return (x.__class__.__name__, x)


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple
    edges: tuple  # of (edge_id, u, v)
    loops_removed: int = 0

    @classmethod
    def build(cls, vertices, pairs, loops_removed: int = 0) -> "Multigraph":
        """Build a graph from endpoint pairs, assigning edge ids 0..m-1."""
        vs = tuple(vertices)
        seen = set()
        for v in vs:
            if v in seen:
                raise ValueError(f"duplicate vertex label {v!r}")
            seen.add(v)
        edges = []
        for i, (u, v) in enumerate(pairs):
            if u not in seen or v not in seen:
                raise ValueError(f"edge ({u!r}, {v!r}) uses undeclared vertex")
            edges.append((i, u, v))
        return cls(vs, tuple(edges), loops_removed)

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_by_id(self) -> dict:
        return {eid: (u, v) for eid, u, v in self.edges}

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for eid, u, v in self.edges:
            adj[u].append((eid, v))
            if u != v:
                adj[v].append((eid, u))
        return adj

    def endpoints(self, eid: int):
        return self.edge_by_id[eid]

    def degree(self, v) -> int:
        # loops count twice
        return sum(2 if w == v else 1 for _, w in self.adjacency[v])

    @cached_property
    def sorted_vertices(self) -> tuple:
        return tuple(sorted(self.vertices, key=label_key))

    def has_edge(self, u, v) -> bool:
        return any(w == v for _, w in self.adjacency[u])

    def edge_between(self, u, v) -> Optional[int]:
        """Some edge id joining u and v, smallest id first; None if absent."""
        ids = [eid for eid, w in self.adjacency[u] if w == v]
        return min(ids) if ids else None

    @cached_property
    def parallel_classes(self) -> dict:
        """Map frozenset({u, v}) -> sorted tuple of edge ids (loops excluded)."""
        classes: dict = {}
        for eid, u, v in self.edges:
            if u == v:
                continue
            classes.setdefault(frozenset((u, v)), []).append(eid)
        return {k: tuple(sorted(v)) for k, v in classes.items()}

    def is_simple(self) -> bool:
        if any(u == v for _, u, v in self.edges):
            return False
        return all(len(c) == 1 for c in self.parallel_classes.values())

    # -- derived graphs ----------------------------------------------------

    def without_edges(self, eids) -> "Multigraph":
        drop = set(eids)
        unknown = drop - set(self.edge_by_id)
        if unknown:
            raise KeyError(f"unknown edge ids {sorted(unknown)}")
        return Multigraph(
            self.vertices,
            tuple(e for e in self.edges if e[0] not in drop),
            self.loops_removed,
        )

    def without_vertices(self, vs) -> "Multigraph":
        drop = set(vs)
        return Multigraph(
            tuple(v for v in self.vertices if v not in drop),
            tuple(e for e in self.edges if e[1] not in drop and e[2] not in drop),
            self.loops_removed,
        )

    def induced(self, S) -> "Multigraph":
        keep = set(S)
        return Multigraph(
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e[1] in keep and e[2] in keep),
            self.loops_removed,
        )

    def with_edge(self, u, v) -> tuple:
        """Add an edge with a fresh id; returns (graph, new_edge_id)."""
        eid = max(self.edge_by_id, default=-1) + 1
        return (
            Multigraph(self.vertices, self.edges + ((eid, u, v),), self.loops_removed),
            eid,
        )

    def contract(self, eids) -> tuple:
        """Contract the given edges; returns (graph, old-vertex -> merged-vertex map).

        Merged classes keep their smallest label.  Resulting loops are removed
        and counted into loops_removed; parallel edges are kept.
        """
        contract_set = set(eids)
        unknown = contract_set - set(self.edge_by_id)
        if unknown:
            raise KeyError(f"unknown edge ids {sorted(unknown)}")
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for eid in contract_set:
            u, v = self.edge_by_id[eid]
            ru, rv = find(u), find(v)
            if ru != rv:
                keep, gone = sorted((ru, rv), key=label_key)
                parent[gone] = keep
        mapping = {v: find(v) for v in self.vertices}
        new_vertices = tuple(v for v in self.vertices if mapping[v] == v)
        new_edges = []
        loops = self.loops_removed
        for eid, u, v in self.edges:
            if eid in contract_set:
                continue
            mu, mv = mapping[u], mapping[v]
            if mu == mv:
                loops += 1
                continue
            new_edges.append((eid, mu, mv))
        return Multigraph(new_vertices, tuple(new_edges), loops), mapping

    def relabeled(self, mapping) -> "Multigraph":
        return Multigraph(
            tuple(mapping[v] for v in self.vertices),
            tuple((eid, mapping[u], mapping[v]) for eid, u, v in self.edges),
            self.loops_removed,
        )


# -- parsing and formatting ----------------------------------------------


def parse_graph(text: str) -> Multigraph:
    """Parse the shared edge-list format.

    One edge per line: "u v" or "u v m" with m >= 1 parallel copies.  '#'
    starts a comment; vertex labels are arbitrary non-whitespace tokens.
    """
    vertices: list = []
    seen = set()
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 'u v' or 'u v m', got {line!r}", lineno)
        u, v = tokens[0], tokens[1]
        mult = 1
        if len(tokens) == 3:
            try:
                mult = int(tokens[2])
            except ValueError:
                raise ParseError(f"multiplicity {tokens[2]!r} is not an integer", lineno)
            if mult < 1:
                raise ParseError(f"multiplicity must be >= 1, got {mult}", lineno)
        for w in (u, v):
            if w not in seen:
                seen.add(w)
                vertices.append(w)
        pairs.extend([(u, v)] * mult)
    if not pairs:
        raise ParseError("document contains no edges", 1)
    return Multigraph.build(vertices, pairs)


def format_edge_list(G: Multigraph) -> str:
    """Inverse of parse_graph; parallel classes collapse to a multiplicity column."""
    lines = []
    for pair, eids in sorted(
        G.parallel_classes.items(),
        key=lambda kv: tuple(sorted((label_key(x) for x in kv[0]))),
    ):
        u, v = sorted(pair, key=label_key)
        if len(eids) == 1:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {len(eids)}")
    return "\n".join(lines) + "\n"


def normalize(G: Multigraph) -> Multigraph:
    """Strip loops (they never affect Gorensteinness); count them."""
    loops = [eid for eid, u, v in G.edges if u == v]
    if not loops:
        return G
    return Multigraph(
        G.vertices,
        tuple(e for e in G.edges if e[0] not in set(loops)),
        G.loops_removed + len(loops),
    )


# -- connectivity ----------------------------------------------------------


def is_connected(G: Multigraph) -> bool:
    if G.n == 0:
        return False
    seen = {G.vertices[0]}
    stack = [G.vertices[0]]
    while stack:
        v = stack.pop()
        for _, w in G.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n


def components(G: Multigraph) -> list:
    """Connected components as sorted vertex tuples, sorted by first vertex."""
    seen: set = set()
    out = []
    for v in G.sorted_vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for _, w in G.adjacency[x]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(tuple(sorted(comp, key=label_key)))
    return out


def is_two_connected(G: Multigraph) -> bool:
    """Connected, >= 2 vertices, no cut vertex.

    K2 and the 2-cycle count as 2-connected; a single vertex never does.
    """
    if G.n < 2 or not is_connected(G):
        return False
    if G.n == 2:
        return G.m >= 1
    return all(is_connected(G.without_vertices([v])) for v in G.vertices)


def blocks(G: Multigraph) -> list:
    """Biconnected components; bridges appear as K2 blocks, isolated vertices drop.

    Deterministic order: sorted by each block's sorted edge-id tuple.
    """
    disc: dict = {}
    low: dict = {}
    stack: list = []  # edge ids
    out: list = []
    counter = itertools.count()

    def emit_from(marker_eid):
        comp = []
        while True:
            eid = stack.pop()
            comp.append(eid)
            if eid == marker_eid:
                break
        out.append(tuple(sorted(comp)))

    def dfs(root):
        # iterative DFS keeping per-vertex iterator state
        disc[root] = low[root] = next(counter)
        work = [(root, None, iter(sorted(G.adjacency[root])))]
        while work:
            v, in_eid, it = work[-1]
            advanced = False
            for eid, w in it:
                if eid == in_eid:
                    continue
                if w not in disc:
                    stack.append(eid)
                    disc[w] = low[w] = next(counter)
                    work.append((w, eid, iter(sorted(G.adjacency[w]))))
                    advanced = True
                    break
                elif disc[w] < disc[v]:
                    stack.append(eid)
                    low[v] = min(low[v], disc[w])
            if not advanced:
                work.pop()
                if work:
                    p = work[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] >= disc[p]:
                        emit_from(in_eid)

    for v in G.sorted_vertices:
        if v not in disc and G.adjacency[v]:
            dfs(v)

    result = []
    for comp in sorted(out):
        vs = []
        vset = set()
        for eid in comp:
            for x in G.edge_by_id[eid]:
                if x not in vset:
                    vset.add(x)
                    vs.append(x)
        edges = tuple((eid,) + G.edge_by_id[eid] for eid in comp)
        result.append(Multigraph(tuple(sorted(vs, key=label_key)), edges))
    return result


def minor_op(G: Multigraph, eid: int, kind: str) -> Multigraph:
    """Single-edge minor operation: kind is "delete" or "contract"."""
    if eid not in G.edge_by_id:
        raise KeyError(f"unknown edge id {eid}")
    if kind == "delete":
        return G.without_edges([eid])
    if kind == "contract":
        H, _ = G.contract([eid])
        return H
    raise ValueError(f"kind must be 'delete' or 'contract', got {kind!r}")


# -- ears ------------------------------------------------------------------


@dataclass(frozen=True)
class Ear:
    """Path whose inner vertices have degree 2 in the host graph."""

    path: tuple  # vertex sequence (v_0, ..., v_s)
    edge_ids: tuple

    @property
    def length(self) -> int:
        return len(self.path) - 1

    @property
    def inner(self) -> tuple:
        return self.path[1:-1]


@dataclass(frozen=True)
class EarScan:
    is_cycle: bool
    ears: tuple


def ears(G: Multigraph) -> EarScan:
    """All maximal ears of a 2-connected graph, pairwise edge-disjoint.

    A cycle has no ears in this sense and is flagged via is_cycle instead.
    Only ears with at least one inner vertex (length >= 2) are reported.
    """
    deg = {v: G.degree(v) for v in G.vertices}
    if all(d == 2 for d in deg.values()):
        return EarScan(is_cycle=True, ears=())
    used_edges: set = set()
    found = []
    anchors = [v for v in G.sorted_vertices if deg[v] != 2]
    for a in anchors:
        for eid, w in sorted(G.adjacency[a]):
            if eid in used_edges or deg[w] != 2:
                continue
            path = [a, w]
            eids = [eid]
            prev_eid, cur = eid, w
            while deg[cur] == 2:
                nxt = next(
                    (e, x) for e, x in sorted(G.adjacency[cur]) if e != prev_eid
                )
                prev_eid, cur = nxt
                path.append(cur)
                eids.append(prev_eid)
            if any(e in used_edges for e in eids):
                continue
            used_edges.update(eids)
            keyed = tuple(label_key(v) for v in path)
            if tuple(reversed(keyed)) < keyed:
                path.reverse()
                eids.reverse()
            found.append(Ear(tuple(path), tuple(eids)))
    found.sort(key=lambda e: tuple(label_key(v) for v in e.path))
    return EarScan(is_cycle=False, ears=tuple(found))


# -- cycles ----------------------------------------------------------------


def induced_cycles(G: Multigraph, guard: int = 10**5) -> list:
    """All chordless cycles of a simple graph, as vertex tuples in cycle order.

    A subset of vertices induces a chordless cycle exactly when its induced
    subgraph is connected with all degrees 2; enumeration is over subsets.
    """
    if not G.is_simple():
        raise ValueError("induced_cycles requires a simple graph")
    cycles = []
    verts = G.sorted_vertices
    for r in range(3, G.n + 1):
        for S in itertools.combinations(verts, r):
            sset = set(S)
            degs_ok = True
            local_adj = {}
            for v in S:
                nb = [w for _, w in G.adjacency[v] if w in sset]
                if len(nb) != 2:
                    degs_ok = False
                    break
                local_adj[v] = nb
            if not degs_ok:
                continue
            # connected + all degree 2 => a single cycle
            order = [S[0], local_adj[S[0]][0]]
            while True:
                a, b = order[-2], order[-1]
                nxt = local_adj[b][0] if local_adj[b][0] != a else local_adj[b][1]
                if nxt == order[0]:
                    break
                order.append(nxt)
            if len(order) != r:
                continue
            cycles.append(tuple(order))
            if len(cycles) > guard:
                raise GuardExceeded(f"more than {guard} chordless cycles")
    return cycles


def chordless_cycles(
    G: Multigraph, guard: int = 10**5, include_two_cycles: bool = False
) -> list:
    """Lengths of all chordless cycles.

    Parallel-edge pairs count as 2-cycles only when include_two_cycles is set;
    in that mode the simple-graph requirement applies to the underlying graph.
    """
    lengths = []
    if include_two_cycles:
        for eids in G.parallel_classes.values():
            k = len(eids)
            lengths.extend([2] * (k * (k - 1) // 2))
        simple = Multigraph.build(
            G.vertices, [tuple(sorted(p, key=label_key)) for p in G.parallel_classes]
        )
        lengths.extend(len(c) for c in induced_cycles(simple, guard))
    else:
        lengths.extend(len(c) for c in induced_cycles(G, guard))
    if len(lengths) > guard:
        raise GuardExceeded(f"more than {guard} chordless cycles")
    return sorted(lengths)


# -- K4 minors -------------------------------------------------------------


def _sp_reducible(block: Multigraph) -> bool:
    """Series-parallel reduction of a single block down to K2 (or smaller)."""
    # edge multiset keyed by endpoint pair; loops dropped immediately
    count: dict = {}
    for _, u, v in block.edges:
        if u != v:
            count[frozenset((u, v))] = 1  # parallel classes merge on entry
    verts = set(block.vertices)
    changed = True
    while changed:
        changed = False
        deg: dict = {v: 0 for v in verts}
        for pair in count:
            for v in pair:
                deg[v] += 1
        for v in sorted(verts, key=label_key):
            if deg[v] <= 1:
                for pair in [p for p in count if v in p]:
                    del count[pair]
                verts.discard(v)
                changed = True
                break
            if deg[v] == 2:
                a, b = sorted((x for p in count if v in p for x in p if x != v),
                              key=label_key)
                for pair in [p for p in count if v in p]:
                    del count[pair]
                verts.discard(v)
                if a != b:
                    count[frozenset((a, b))] = 1
                changed = True
                break
    return len(verts) <= 2


def is_k4_minor_free(G: Multigraph) -> bool:
    """True iff G has no K4 minor; series-parallel reduction per block."""
    return all(_sp_reducible(b) for b in blocks(G))


def has_k4_minor_bruteforce(G: Multigraph) -> bool:
    """Independent oracle: search for 4 disjoint connected, pairwise-adjacent sets.

    Restricted-growth enumeration over branch-set assignments; intended for
    graphs with at most ~8 vertices.
    """
    verts = G.sorted_vertices
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * n
    for eid, u, v in G.edges:
        if u != v:
            nbr[idx[u]] |= 1 << idx[v]
            nbr[idx[v]] |= 1 << idx[u]

    def mask_connected(mask: int) -> bool:
        if mask == 0:
            return False
        start = mask & -mask
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                m ^= b
                nxt |= nbr[b.bit_length() - 1]
            frontier = nxt & mask & ~seen
            seen |= frontier
        return seen == mask

    def rec(i: int, classes: list, used: int) -> bool:
        if n - i < 4 - used:
            return False
        if i == n:
            if used < 4:
                return False
            for a in range(4):
                if not mask_connected(classes[a]):
                    return False
            adj = [0] * 4
            for a in range(4):
                m = classes[a]
                acc = 0
                while m:
                    b = m & -m
                    m ^= b
                    acc |= nbr[b.bit_length() - 1]
                adj[a] = acc
            return all(
                adj[a] & classes[b]
                for a in range(4)
                for b in range(a + 1, 4)
            )
        bit = 1 << i
        for c in range(min(used + 1, 4)):
            classes[c] |= bit
            if rec(i + 1, classes, max(used, c + 1)):
                classes[c] ^= bit
                return True
            classes[c] ^= bit
        return rec(i + 1, classes, used)

    return rec(0, [0, 0, 0, 0], 0)


# -- matroid bases and independent sets ------------------------------------


def graphic_rank(G: Multigraph, F) -> int:
    """|V(F)| minus the number of components of (V(F), F): graphic-matroid rank."""
    F = set(F)
    verts = set()
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = 0
    for eid in F:
        u, v = G.edge_by_id[eid]
        for x in (u, v):
            if x not in verts:
                verts.add(x)
                parent[x] = x
                comps += 1
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return len(verts) - comps


def _full_rank(G: Multigraph) -> int:
    parent = {v: v for v in G.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = G.n
    for _, u, v in G.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return G.n - comps


def bases_and_forests(
    G: Multigraph, kind: str, guard: int = DEFAULT_GUARD
) -> Iterator[frozenset]:
    """Enumerate spanning forests ("spanning_trees") or all forests ("forests").

    spanning_trees yields all maximal forests (one spanning tree per
    component); forests yields every acyclic edge subset including the empty
    one.  Raises GuardExceeded past `guard` yields.
    """
    if kind not in ("spanning_trees", "forests"):
        raise ValueError(f"kind must be 'spanning_trees' or 'forests', got {kind!r}")
    edges = sorted(G.edges)
    target = _full_rank(G)
    parent = {v: v for v in G.vertices}
    size = {v: 1 for v in G.vertices}
    count = 0

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru == rv:
            return None
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        return (ru, rv)

    def undo(op):
        ru, rv = op
        parent[rv] = rv
        size[ru] -= size[rv]

    chosen: list = []

    def rec(i: int):
        nonlocal count
        if kind == "spanning_trees":
            if len(chosen) == target:
                count += 1
                if count > guard:
                    raise GuardExceeded(f"more than {guard} spanning forests")
                yield frozenset(chosen)
                return
            if len(chosen) + (len(edges) - i) < target:
                return
        if i == len(edges):
            if kind == "forests":
                count += 1
                if count > guard:
                    raise GuardExceeded(f"more than {guard} forests")
                yield frozenset(chosen)
            return
        eid, u, v = edges[i]
        if u != v:
            op = union(u, v)
            if op is not None:
                chosen.append(eid)
                yield from rec(i + 1)
                chosen.pop()
                undo(op)
        yield from rec(i + 1)

    yield from rec(0)


# -- blow-ups ---------------------------------------------------------------


@dataclass(frozen=True)
class BlowUpFactor:
    multiplicity: int
    base_graph: Multigraph


def blow_up_factor(G: Multigraph) -> Optional[BlowUpFactor]:
    """Factor G as the m-fold parallel blow-up of a simple graph, if uniform."""
    if G.m == 0:
        raise ValueError("blow_up_factor requires at least one edge")
    if any(u == v for _, u, v in G.edges):
        raise ValueError("blow_up_factor requires a normalized (loop-free) graph")
    mults = {len(eids) for eids in G.parallel_classes.values()}
    if len(mults) != 1:
        return None
    (m,) = mults
    H = Multigraph.build(
        G.vertices,
        [tuple(sorted(pair, key=label_key)) for pair in sorted(
            G.parallel_classes, key=lambda p: tuple(sorted(label_key(x) for x in p))
        )],
    )
    return BlowUpFactor(m, H)


# -- isomorphism ------------------------------------------------------------


def _adj_mult(G: Multigraph) -> dict:
    out: dict = {v: {} for v in G.vertices}
    for _, u, v in G.edges:
        out[u][v] = out[u].get(v, 0) + 1
        if u != v:
            out[v][u] = out[v].get(u, 0) + 1
    return out


def is_isomorphic(G1: Multigraph, G2: Multigraph, guard: int = 10) -> bool:
    """Brute-force multigraph isomorphism, guarded at `guard` vertices."""
    if G1.n != G2.n or G1.m != G2.m:
        return False
    if G1.n > guard:
        raise GuardExceeded(f"isomorphism guarded at {guard} vertices")
    inv1 = sorted(
        (sorted(len(c) for c in G1.parallel_classes.values()),
         sorted(G1.degree(v) for v in G1.vertices))
    )
    inv2 = sorted(
        (sorted(len(c) for c in G2.parallel_classes.values()),
         sorted(G2.degree(v) for v in G2.vertices))
    )
    if inv1 != inv2:
        return False
    a1, a2 = _adj_mult(G1), _adj_mult(G2)
    vs1 = sorted(G1.vertices, key=lambda v: (-G1.degree(v), label_key(v)))
    by_deg: dict = {}
    for v in G2.vertices:
        by_deg.setdefault(G2.degree(v), []).append(v)

    mapping: dict = {}
    used: set = set()

    def rec(i: int) -> bool:
        if i == len(vs1):
            return True
        v = vs1[i]
        for w in sorted(by_deg.get(G1.degree(v), []), key=label_key):
            if w in used:
                continue
            ok = True
            for x, cnt in a1[v].items():
                if x in mapping and a2[w].get(mapping[x], 0) != cnt:
                    ok = False
                    break
            if ok:
                # reverse direction: mapped neighbors of w must match
                for x, cnt in a2[w].items():
                    pre = [y for y in mapping if mapping[y] == x]
                    if pre and a1[v].get(pre[0], 0) != cnt:
                        ok = False
                        break
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            if rec(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return rec(0)
