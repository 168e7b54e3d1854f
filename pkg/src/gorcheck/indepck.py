"""Combinatorial decision procedure for Gorensteinness of the independence polytope.

A graph qualifies exactly when it is the uniform (delta-1)-fold parallel
blow-up of a simple graph whose 2-connected blocks all satisfy the flat
equality (delta-1)|E(S)| + 1 = delta(|S|-1).  Three equivalent views of that
block condition are implemented and cross-run against each other: the flat
equalities, delta-chordality without a K4 minor, and constructibility from K2
by repeatedly attaching (delta+1)-cycles to edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .baseck import Witness
from .construct import AttachCycle, Cert, EdgeRef, Seed, replay, replay_detail
from .errors import InternalContradiction, NotTwoConnected
from .flats import indecomposable_flats, induced_edge_ids
from .graph import (
    Multigraph,
    blocks,
    blow_up_factor,
    induced_cycles,
    is_k4_minor_free,
    is_two_connected,
    label_key,
    normalize,
)


def _require_simple_block(H: Multigraph):
    if not H.is_simple():
        raise ValueError("checker requires a simple graph")
    if not is_two_connected(H):
        raise NotTwoConnected("checker requires a 2-connected graph")


def check_club(H: Multigraph, delta: int) -> Optional[Witness]:
    """Verify (delta-1)|E(S)|+1 = delta(|S|-1) over all indecomposable flats.

    S = V is included; K2 passes for every delta.  None means pass, otherwise
    the first failing flat in deterministic enumeration order is reported.
    """
    _require_simple_block(H)
    if delta < 2:
        raise ValueError("delta must be >= 2")
    for S in indecomposable_flats(H):
        lhs = (delta - 1) * len(induced_edge_ids(H, S)) + 1
        rhs = delta * (len(S) - 1)
        if lhs != rhs:
            return Witness("club_violated", flat=S, lhs=lhs, rhs=rhs)
    return None


def check_chordal_k4free(H: Multigraph, delta: int) -> Optional[Witness]:
    """Structural equivalent of the flat equalities: chordality plus no K4 minor.

    H must have no K4 minor, every chordless cycle must have length delta+1,
    and the number of chordless cycles must equal the cycle rank |E|-|V|+1.
    The count condition is needed for the equivalence: each cycle attachment
    raises the cycle rank by one and contributes exactly one new chordless
    cycle, so any excess chordless cycle (e.g. the three 4-cycles of K_{2,3},
    whose rank is 2) betrays a graph that is not constructible.  K2 passes
    vacuously.  The minor check runs first, so K4 itself reports
    k4_minor_found rather than its wrong triangles.
    """
    _require_simple_block(H)
    if delta < 2:
        raise ValueError("delta must be >= 2")
    if not is_k4_minor_free(H):
        return Witness("k4_minor_found")
    cycles = induced_cycles(H)
    for cyc in cycles:
        if len(cyc) != delta + 1:
            return Witness("wrong_chordless_cycle", lhs=len(cyc), rhs=delta + 1)
    rank = H.m - H.n + 1
    if len(cycles) != rank:
        return Witness("excess_chordless_cycles", lhs=len(cycles), rhs=rank)
    return None


def recognize_cycle_construction(H: Multigraph, delta: int) -> Optional[Cert]:
    """Certificate building H from K2 by attaching (delta+1)-cycles, or None.

    Inverse search: find a chordless (delta+1)-cycle whose delta-1 freshly
    attached vertices appear as a run of consecutive degree-2 vertices, remove
    them, recurse; backtracks over the choice of cycle with a failure memo.
    """
    _require_simple_block(H)
    if delta < 2:
        raise ValueError("delta must be >= 2")
    dead: set = set()

    def search(G: Multigraph):
        if G.n == 2 and G.m == 1:
            vmap = {v: i for i, v in enumerate(sorted(G.vertices, key=label_key))}
            return Seed("k2"), vmap
        key = frozenset(G.vertices)
        if key in dead:
            return None
        for cyc in induced_cycles(G):
            if len(cyc) != delta + 1:
                continue
            doubled = cyc + cyc
            for direction in (doubled, tuple(reversed(doubled))):
                for start in range(delta + 1):
                    window = direction[start : start + delta - 1]
                    if any(G.degree(x) != 2 for x in window):
                        continue
                    v = direction[(start - 1) % (delta + 1)]
                    u = direction[(start + delta - 1) % (delta + 1)]
                    rest = G.without_vertices(window)
                    if not is_two_connected(rest):
                        continue
                    got = search(rest)
                    if got is None:
                        continue
                    cert_c, vmap_c = got
                    rep = replay(cert_c)
                    a, b = vmap_c[u], vmap_c[v]
                    eid = rep.edge_between(a, b)
                    if eid is None:
                        raise InternalContradiction(
                            "replayed child lost the attachment edge"
                        )
                    ref = EdgeRef(eid, flipped=rep.endpoints(eid)[0] != a)
                    cert = AttachCycle(delta, cert_c, ref)
                    _, embeds = replay_detail(cert)
                    vmap = {x: embeds[0][vmap_c[x]] for x in rest.vertices}
                    base = rep.n
                    # fresh labels run along the new path from u to v
                    for j, x in enumerate(reversed(window)):
                        vmap[x] = base + j
                    return cert, vmap
        dead.add(key)
        return None

    got = search(H)
    return got[0] if got is not None else None


@dataclass(frozen=True)
class IndepVerdict:
    status: str  # "gorenstein" | "not_gorenstein"
    delta: Optional[int]
    multiplicity: Optional[int]
    per_block: tuple  # of (block, simple base graph H or None)
    witness: Optional[Witness] = None

    @property
    def is_gorenstein(self) -> bool:
        return self.status == "gorenstein"


def indep_verdict(G: Multigraph) -> IndepVerdict:
    """Classify P(M(G)) for a multigraph.

    Every block must be the m-fold blow-up of a simple graph for one shared m;
    delta = m+1 is forced, and every base block must pass check_club at that
    delta.  The other two block characterizations are cross-run as assertions;
    disagreement raises InternalContradiction.
    """
    G = normalize(G)
    blks = blocks(G)
    factored = []
    for b in blks:
        f = blow_up_factor(b)
        if f is None:
            return IndepVerdict(
                "not_gorenstein",
                None,
                None,
                tuple((bb, None) for bb in blks),
                Witness("non_uniform_multiplicity"),
            )
        factored.append(f)
    mults = {f.multiplicity for f in factored}
    per_block = tuple((b, f.base_graph) for b, f in zip(blks, factored))
    if len(mults) > 1:
        return IndepVerdict(
            "not_gorenstein", None, None, per_block,
            Witness("non_uniform_multiplicity"),
        )
    m = mults.pop()
    delta = m + 1
    for b, f in zip(blks, factored):
        H = f.base_graph
        club = check_club(H, delta)
        chordal = check_chordal_k4free(H, delta)
        cert = recognize_cycle_construction(H, delta)
        ok = club is None
        if (chordal is None) != ok or (cert is not None) != ok:
            raise InternalContradiction(
                f"block characterizations disagree at delta={delta}: "
                f"club={club}, chordal={chordal}, constructible={cert is not None}"
            )
        if not ok:
            # prefer the structural witness; fall back to the flat equality
            witness = chordal if chordal is not None else club
            if witness is None:
                witness = Witness("not_constructible")
            return IndepVerdict("not_gorenstein", None, m, per_block, witness)
    return IndepVerdict("gorenstein", delta, m, per_block)
