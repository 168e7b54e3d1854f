"""Flat families quantified over by the polytope equality systems.

Good flats index the second facet family of the base polytope; vertex sets
inducing 2-connected subgraphs index the independence-polytope equalities and
the k(S)-corrected base equalities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import GuardExceeded, NotTwoConnected
from .graph import Multigraph, blocks, is_connected, is_two_connected, label_key

SUBSET_GUARD_VERTICES = 24


@dataclass(frozen=True)
class GoodFlat:
    """Vertex set S whose restriction and whose E(S)-contraction are 2-connected."""

    S: tuple
    induced_edges: tuple  # sorted edge ids of E(S)
    weight_sum: Optional[int] = None  # filled by the base checker


def _iter_subsets(G: Multigraph, min_size: int, max_size: int):
    if G.n > SUBSET_GUARD_VERTICES:
        raise GuardExceeded(
            f"subset enumeration guarded at {SUBSET_GUARD_VERTICES} vertices"
        )
    verts = G.sorted_vertices
    for r in range(min_size, max_size + 1):
        yield from itertools.combinations(verts, r)


def induced_edge_ids(G: Multigraph, S) -> tuple:
    keep = set(S)
    return tuple(sorted(eid for eid, u, v in G.edges if u in keep and v in keep))


def good_flats(G: Multigraph) -> list:
    """All good flats of a 2-connected graph, sorted by size then lexicographically.

    S = V is excluded: contracting everything leaves a single vertex, which is
    not 2-connected.
    """
    if not is_two_connected(G):
        raise NotTwoConnected("good_flats requires a 2-connected graph")
    out = []
    for S in _iter_subsets(G, 2, G.n - 1):
        eids = induced_edge_ids(G, S)
        if not eids:
            continue
        if not is_two_connected(G.induced(S)):
            continue
        contracted, _ = G.contract(eids)
        if is_two_connected(contracted):
            out.append(GoodFlat(S, eids))
    return out


def indecomposable_flats(G: Multigraph) -> list:
    """All S with |S| >= 2 inducing a 2-connected subgraph; S = V is allowed."""
    return [
        S
        for S in _iter_subsets(G, 2, G.n)
        if is_two_connected(G.induced(S))
    ]


def block_count_after_contraction(G: Multigraph, S) -> int:
    """Number of blocks of G with all of E(S) contracted (S merged to a point).

    Returns 0 for S = V, matching the convention k(V) = 0.
    """
    S = tuple(sorted(S, key=label_key))
    if len(S) >= 2 and not is_connected(G.induced(S)):
        raise ValueError("S must induce a connected subgraph")
    if len(S) == G.n:
        return 0
    eids = induced_edge_ids(G, S)
    contracted, _ = G.contract(eids)
    return len(blocks(contracted))
