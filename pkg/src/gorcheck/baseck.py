"""Combinatorial decision procedure for Gorensteinness of the base polytope.

The check is block-wise: each 2-connected block must carry the forced weight
function w: E -> {1, delta-1} (weight 1 when deleting the edge keeps the block
2-connected, delta-1 when contracting does) and satisfy the good-flat
equalities, all at one shared delta.  Bridges contribute point polytopes and
are compatible with every delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    InternalContradiction,
    NotTwoConnected,
    SimpleGraphRequired,
    WeightConflict,
)
from .flats import good_flats, indecomposable_flats, block_count_after_contraction, induced_edge_ids
from .graph import Multigraph, blocks, is_two_connected, normalize


class AllDeltas:
    """Sentinel candidate set for blocks whose base polytope is a point."""

    def __repr__(self):
        return "ALL_DELTAS"

    def __contains__(self, item):
        return True


ALL_DELTAS = AllDeltas()


@dataclass(frozen=True)
class WeightAssignment:
    delta: int
    weights: tuple  # sorted (edge_id, weight) pairs

    def as_dict(self) -> dict:
        return dict(self.weights)

    def total(self) -> int:
        return sum(w for _, w in self.weights)

    def sum_over(self, eids) -> int:
        d = self.as_dict()
        return sum(d[e] for e in eids)


@dataclass(frozen=True)
class Witness:
    """Replayable violation: kind plus the offending object and both sides."""

    kind: str  # no_candidate_delta | weight_conflict | total_weight_mismatch
    #          | flat_equality_violated
    edge: Optional[int] = None
    flat: Optional[tuple] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None

    def as_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.edge is not None:
            out["edge"] = self.edge
        if self.flat is not None:
            out["flat"] = list(self.flat)
        if self.lhs is not None:
            out["lhs"] = self.lhs
            out["rhs"] = self.rhs
        return out


@dataclass(frozen=True)
class BaseVerdict:
    status: str  # "gorenstein" | "not_gorenstein"
    delta: Optional[int]
    per_block: tuple  # of (block, candidate set, WeightAssignment or None)
    witness: Optional[Witness] = None

    @property
    def is_gorenstein(self) -> bool:
        return self.status == "gorenstein"


def _require_block(G: Multigraph):
    if not is_two_connected(G):
        raise NotTwoConnected("checker operations require a 2-connected graph")
    if not G.is_simple():
        raise SimpleGraphRequired(
            "base checker requires a simple graph; use the oracle for multigraphs"
        )


def edge_facet_profile(G: Multigraph) -> dict:
    """Per edge: (deletion stays 2-connected, contraction stays 2-connected).

    For a 2-connected simple graph with >= 2 edges at least one flag holds for
    every edge; both flags failing is an internal contradiction.
    """
    _require_block(G)
    if G.m < 2:
        raise ValueError("edge_facet_profile requires at least 2 edges")
    profile = {}
    for eid, _, _ in sorted(G.edges):
        del_ok = is_two_connected(G.without_edges([eid]))
        con_ok = is_two_connected(G.contract([eid])[0])
        if not (del_ok or con_ok):
            raise InternalContradiction(
                f"edge {eid}: neither deletion nor contraction is 2-connected"
            )
        profile[eid] = (del_ok, con_ok)
    return profile


def weight_function(G: Multigraph, delta: int) -> WeightAssignment:
    """The forced weight assignment at delta, or WeightConflict.

    An edge whose deletion and contraction are both 2-connected is forced to
    weight 1 and to weight delta-1 simultaneously, which is consistent only
    for delta = 2.
    """
    if delta < 2:
        raise ValueError("delta must be >= 2")
    profile = edge_facet_profile(G)
    weights = []
    for eid, (del_ok, con_ok) in sorted(profile.items()):
        if del_ok and con_ok and delta != 2:
            raise WeightConflict(eid, delta)
        weights.append((eid, 1 if del_ok else delta - 1))
    return WeightAssignment(delta, tuple(weights))


def candidate_deltas(G: Multigraph, max_delta: Optional[int] = None) -> Union[frozenset, AllDeltas]:
    """All delta in [2, |E|+1] admitting a weight function with the right total.

    A K2 block has a point polytope and returns the ALL_DELTAS sentinel.
    The upper bound |E|+1 comes from w(E) <= (delta-1)|E| and
    w(E) = delta(|V|-1).
    """
    if G.n == 2 and G.m == 1:
        return ALL_DELTAS
    _require_block(G)
    hi = max_delta if max_delta is not None else G.m + 1
    found = []
    for delta in range(2, hi + 1):
        try:
            w = weight_function(G, delta)
        except WeightConflict:
            continue
        if w.total() == delta * (G.n - 1):
            found.append(delta)
    return frozenset(found)


def check_spade(G: Multigraph, delta: int) -> Optional[Witness]:
    """Verify the good-flat equality system at delta; None means pass.

    Checks w(E) = delta(|V|-1) and w(E(S)) + 1 = delta(|S|-1) for every good
    flat S, reporting the first failure in deterministic enumeration order.
    """
    w = weight_function(G, delta)
    total = w.total()
    if total != delta * (G.n - 1):
        return Witness(
            "total_weight_mismatch", lhs=total, rhs=delta * (G.n - 1)
        )
    for flat in good_flats(G):
        lhs = w.sum_over(flat.induced_edges) + 1
        rhs = delta * (len(flat.S) - 1)
        if lhs != rhs:
            return Witness("flat_equality_violated", flat=flat.S, lhs=lhs, rhs=rhs)
    return None


def check_heart(G: Multigraph, delta: int) -> Optional[Witness]:
    """Verify w(E(S)) + k(S) = delta(|S|-1) over all 2-connected S (S = V included)."""
    w = weight_function(G, delta)
    for S in indecomposable_flats(G):
        k = block_count_after_contraction(G, S)
        lhs = w.sum_over(induced_edge_ids(G, S)) + k
        rhs = delta * (len(S) - 1)
        if lhs != rhs:
            return Witness("flat_equality_violated", flat=S, lhs=lhs, rhs=rhs)
    return None


def base_verdict(G: Multigraph) -> BaseVerdict:
    """Classify B(M(G)) for a simple graph, block by block.

    Gorenstein iff one delta works for every block simultaneously; K2 blocks
    are wildcards.  delta is None when every block is a wildcard (the polytope
    is a point, Gorenstein at every index).
    """
    G = normalize(G)
    if not G.is_simple():
        raise SimpleGraphRequired(
            "base checker requires a simple graph; use the oracle for multigraphs"
        )
    blks = blocks(G)
    candidates = []
    for b in blks:
        candidates.append(candidate_deltas(b))
    real = [
        (b, c) for b, c in zip(blks, candidates) if not isinstance(c, AllDeltas)
    ]
    if not real:
        per_block = tuple((b, c, None) for b, c in zip(blks, candidates))
        return BaseVerdict("gorenstein", None, per_block)
    common = frozenset.intersection(*(c for _, c in real))
    if not common:
        per_block = tuple((b, c, None) for b, c in zip(blks, candidates))
        return BaseVerdict(
            "not_gorenstein", None, per_block, Witness("no_candidate_delta")
        )
    first_witness = None
    for delta in sorted(common):
        assignments = {}
        witness = None
        for b, _ in real:
            witness = check_spade(b, delta)
            if witness is not None:
                break
            assignments[id(b)] = weight_function(b, delta)
        if witness is None:
            per_block = tuple(
                (b, c, assignments.get(id(b))) for b, c in zip(blks, candidates)
            )
            return BaseVerdict("gorenstein", delta, per_block)
        if first_witness is None:
            first_witness = witness
    per_block = tuple((b, c, None) for b, c in zip(blks, candidates))
    return BaseVerdict("not_gorenstein", None, per_block, first_witness)
