"""Exact lattice-polytope oracle: the ground truth the checkers are tested against.

Polytopes are built straight from their definition (indicator vectors of
spanning forests / forests), the affine lattice is computed from vertex
differences, facets come from an exact dual-cone double description, and the
Gorenstein witness, Ehrhart counts, h*-vector, and normality probe all work in
exact integer/rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Optional

from .errors import GuardExceeded, NotTwoConnected
from .graph import Multigraph, bases_and_forests, graphic_rank, is_two_connected, normalize
from .linalg import (
    coords_in_basis,
    dual_extreme_rays,
    hnf_rows,
    primitive,
    solve_unique,
)

FACET_VERTEX_GUARD = 512
POINT_NODE_GUARD = 10**7


@dataclass(frozen=True, order=True)
class Facet:
    """Primitive functional h(c, t) = a . c + b t on the cone, in lattice coordinates.

    h >= 0 on the cone over the polytope and h vanishes on a facet; the gcd of
    (a, b) is 1, so h maps the cone lattice onto Z.
    """

    a: tuple
    b: int

    def value(self, coords, t: int = 1) -> int:
        return sum(x * y for x, y in zip(self.a, coords)) + self.b * t


@dataclass(frozen=True)
class GorensteinWitness:
    delta: int
    v: tuple  # ambient integer vector in delta * P


@dataclass(frozen=True)
class HStarVector:
    coefficients: tuple

    @property
    def palindromic(self) -> bool:
        return self.coefficients == tuple(reversed(self.coefficients))


@dataclass
class LatticePolytope:
    kind: str  # "base" | "independence" | "product"
    ambient_dim: int
    vertices: tuple  # ambient integer vectors
    dim: int
    lattice_basis: tuple  # HNF rows spanning the affine lattice of differences
    vertex_coords: tuple  # each vertex as lattice coordinates relative to vertices[0]
    lattice_saturated: bool  # affine lattice == ambient lattice on the affine hull
    facets: Optional[tuple] = field(default=None)

    @property
    def origin(self) -> tuple:
        return self.vertices[0]

    def to_ambient(self, coords, t: int = 1):
        out = [t * x for x in self.origin]
        for c, row in zip(coords, self.lattice_basis):
            for j, x in enumerate(row):
                out[j] += c * x
        return tuple(out)

    def require_facets(self) -> tuple:
        if self.facets is None:
            self.facets = facets_bruteforce(self)
        return self.facets


def _polytope_from_vertices(kind: str, verts: list) -> LatticePolytope:
    verts = sorted(set(tuple(v) for v in verts))
    ambient = len(verts[0])
    v0 = verts[0]
    diffs = [[a - b for a, b in zip(v, v0)] for v in verts[1:]]
    basis = hnf_rows(diffs)
    coords = tuple(
        tuple(coords_in_basis(basis, [a - b for a, b in zip(v, v0)]))
        for v in verts
    )
    # saturation: the HNF of the differences has all pivots 1 exactly when the
    # affine lattice equals the full ambient lattice restricted to the hull
    saturated = all(
        row[next(i for i, x in enumerate(row) if x)] == 1 for row in basis
    )
    return LatticePolytope(
        kind=kind,
        ambient_dim=ambient,
        vertices=tuple(verts),
        dim=len(basis),
        lattice_basis=tuple(tuple(r) for r in basis),
        vertex_coords=coords,
        lattice_saturated=saturated,
    )


def polytope_of(G: Multigraph, kind: str, guard: int = 10**6) -> LatticePolytope:
    """B(M(G)) or P(M(G)) as an explicit lattice polytope."""
    G = normalize(G)
    if kind == "base":
        sets = bases_and_forests(G, "spanning_trees", guard=guard)
    elif kind == "independence":
        sets = bases_and_forests(G, "forests", guard=guard)
    else:
        raise ValueError(f"unknown polytope kind {kind!r}")
    order = sorted(G.edge_by_id)
    pos = {eid: i for i, eid in enumerate(order)}
    verts = []
    for s in sets:
        vec = [0] * len(order)
        for eid in s:
            vec[pos[eid]] = 1
        verts.append(tuple(vec))
    return _polytope_from_vertices(kind, verts)


def product_polytope(parts) -> LatticePolytope:
    """Cartesian product with concatenated coordinates."""
    verts = [()]
    for p in parts:
        verts = [v + w for v in verts for w in p.vertices]
    return _polytope_from_vertices("product", verts)


def facets_bruteforce(P: LatticePolytope) -> tuple:
    """Facets from the polytope alone: extreme rays of the dual of the cone over P.

    Vertices are homogenized to height 1 in lattice coordinates; an exact
    double description yields the primitive facet functionals.
    """
    if len(P.vertices) > FACET_VERTEX_GUARD:
        raise GuardExceeded(
            f"facet computation guarded at {FACET_VERTEX_GUARD} vertices"
        )
    points = [c + (1,) for c in P.vertex_coords]
    rays = dual_extreme_rays(points)
    return tuple(sorted(Facet(tuple(r[:-1]), r[-1]) for r in rays))


def facets_from_cor33(G: Multigraph, P: Optional[LatticePolytope] = None) -> tuple:
    """The two explicit facet families of the base polytope of a 2-connected graph.

    Type (1): x_e >= 0 whenever G minus e stays 2-connected.  Type (2):
    (|S|-1) sum_E x - (|V|-1) sum_{E(S)} x >= 0 for every good flat S.  Both
    are converted to primitive functionals in the polytope's own lattice
    coordinates, so the output is directly comparable with facets_bruteforce.
    """
    from .flats import good_flats, induced_edge_ids

    if not is_two_connected(G):
        raise NotTwoConnected("facets_from_cor33 requires a 2-connected graph")
    if P is None:
        P = polytope_of(G, "base")
    if P.dim == 0:
        # single-edge graph: the polytope is a point and the only facet of its
        # cone is the height functional
        return (Facet((), 1),)
    order = sorted(G.edge_by_id)
    pos = {eid: i for i, eid in enumerate(order)}
    rank = graphic_rank(G, G.edge_by_id)
    functionals = []
    for eid in order:
        if is_two_connected(G.without_edges([eid])):
            u = [0] * len(order)
            u[pos[eid]] = 1
            functionals.append(u)
    for flat in good_flats(G):
        s = len(flat.S) - 1
        u = [s] * len(order)
        for eid in flat.induced_edges:
            u[pos[eid]] -= rank
        functionals.append(u)
    out = []
    for u in functionals:
        a = tuple(
            sum(x * y for x, y in zip(u, row)) for row in P.lattice_basis
        )
        b = sum(x * y for x, y in zip(u, P.origin))
        vec = primitive(a + (b,))
        out.append(Facet(vec[:-1], vec[-1]))
    return tuple(sorted(out))


def gorenstein_search(P: LatticePolytope) -> Optional[GorensteinWitness]:
    """First (delta, v) with h(v) = 1 for every facet, delta <= dim + 1, if any.

    For each delta the system "every facet equals 1" is linear with at most
    one solution (the facet normals span); the codegree bound dim + 1 makes
    the search complete for normal polytopes.
    """
    facets = P.require_facets()
    if P.dim == 0:
        # point polytope: the lone facet of its cone is the height functional
        return GorensteinWitness(1, P.origin)
    rows = [list(f.a) for f in facets]
    for delta in range(1, P.dim + 2):
        rhs = [1 - f.b * delta for f in facets]
        sol = solve_unique(rows, rhs)
        if sol is None:
            continue
        if all(x.denominator == 1 for x in sol):
            coords = [int(x) for x in sol]
            return GorensteinWitness(delta, P.to_ambient(coords, t=delta))
    return None


def lattice_points(P: LatticePolytope, k: int, node_guard: int = POINT_NODE_GUARD):
    """All lattice points of k*P, in lattice coordinates, by pruned box recursion."""
    if k < 0:
        raise ValueError("k must be >= 0")
    facets = P.require_facets()
    d = P.dim
    if d == 0:
        return [()]
    lo = [k * min(c[i] for c in P.vertex_coords) for i in range(d)]
    hi = [k * max(c[i] for c in P.vertex_coords) for i in range(d)]
    out = []
    nodes = [0]

    def rec(prefix):
        nodes[0] += 1
        if nodes[0] > node_guard:
            raise GuardExceeded(f"point enumeration guarded at {node_guard} nodes")
        i = len(prefix)
        # interval-arithmetic prune: every facet must remain satisfiable
        for f in facets:
            best = sum(x * y for x, y in zip(f.a, prefix)) + f.b * k
            for j in range(i, d):
                best += f.a[j] * (hi[j] if f.a[j] > 0 else lo[j])
            if best < 0:
                return
        if i == d:
            out.append(tuple(prefix))
            return
        for x in range(lo[i], hi[i] + 1):
            rec(prefix + [x])

    rec([])
    return out


def hstar(P: LatticePolytope) -> HStarVector:
    """Ehrhart h*-vector via the binomial transform of the counts L(0..d)."""
    d = P.dim
    counts = [len(lattice_points(P, k)) for k in range(d + 1)]
    coeffs = []
    for j in range(d + 1):
        coeffs.append(
            sum(
                (-1) ** i * comb(d + 1, i) * counts[j - i]
                for i in range(j + 1)
            )
        )
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    h = HStarVector(tuple(coeffs))
    assert h.coefficients[0] == 1, "h*_0 must be 1"
    assert all(c >= 0 for c in h.coefficients), "h* entries must be nonnegative"
    return h


def normality_probe(P: LatticePolytope, kmax: int):
    """Check every point of kP (k <= kmax) is a sum of k points of P.

    Returns None on pass, otherwise the first non-decomposable point as
    (k, ambient vector).  A failure would contradict the normality theorem for
    matroid polytopes, so tests treat it as a hard failure.
    """
    if kmax < 2:
        raise ValueError("kmax must be >= 2")
    ones = set(lattice_points(P, 1))
    sums = set(ones)
    for k in range(2, kmax + 1):
        sums = {
            tuple(a + b for a, b in zip(p, q)) for p in sums for q in ones
        }
        for pt in lattice_points(P, k):
            if pt not in sums:
                return (k, P.to_ambient(list(pt), t=k))
    return None


def dump_polytope(P: LatticePolytope) -> str:
    """Debug text format: vertices, then facet coefficient rows after %facets."""
    lines = [" ".join(str(x) for x in v) for v in P.vertices]
    lines.append("%facets")
    for f in P.require_facets():
        lines.append(" ".join(str(x) for x in f.a + (f.b,)))
    return "\n".join(lines) + "\n"
