import itertools

import pytest

from conftest import complete, cycle
from gorcheck.errors import GuardExceeded
from gorcheck.graph import Multigraph
from gorcheck.linalg import coords_in_basis, dual_extreme_rays, hnf_rows, primitive
from gorcheck.oracle import (
    Facet,
    dump_polytope,
    facets_bruteforce,
    facets_from_cor33,
    gorenstein_search,
    hstar,
    lattice_points,
    normality_probe,
    polytope_of,
    product_polytope,
)
from gorcheck.smallgraphs import two_connected_graphs


def test_hnf_basics():
    assert hnf_rows([[2, 0], [0, 2], [1, 1]]) == [[1, 1], [0, 2]]
    assert hnf_rows([[0, 0]]) == []
    basis = hnf_rows([[1, 2, 3], [4, 5, 6]])
    coords = coords_in_basis(basis, [5, 7, 9])
    recon = [sum(c * row[j] for c, row in zip(coords, basis)) for j in range(3)]
    assert recon == [5, 7, 9]
    with pytest.raises(ValueError):
        coords_in_basis(hnf_rows([[2, 0]]), [1, 0])


def test_primitive():
    assert primitive([2, 4, -6]) == (1, 2, -3)
    assert primitive([0, 0]) == (0, 0)


def test_dual_rays_square():
    # cone over the unit square: 4 facets
    pts = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    rays = dual_extreme_rays(pts)
    assert sorted(rays) == [(-1, 0, 1), (0, -1, 1), (0, 1, 0), (1, 0, 0)]


def test_polytope_of_c3(c3):
    P = polytope_of(c3, "base")
    assert sorted(P.vertices) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert P.dim == 2 and P.lattice_saturated
    assert len(P.require_facets()) == 3


def test_polytope_of_k2_indep(k2):
    P = polytope_of(k2, "independence")
    assert sorted(P.vertices) == [(0,), (1,)]
    assert P.dim == 1
    assert len(P.require_facets()) == 2


def test_polytope_of_k4(k4):
    P = polytope_of(k4, "base")
    assert len(P.vertices) == 16 and P.dim == 5
    assert len(P.require_facets()) == 16


def test_base_polytope_invariants(k4):
    P = polytope_of(k4, "base")
    r = k4.n - 1
    assert all(sum(v) == r for v in P.vertices)
    assert P.dim == k4.m - 1
    # adjacent-looking vertex pairs differ by e_i - e_j
    for a, b in itertools.combinations(P.vertices, 2):
        d = [x - y for x, y in zip(a, b)]
        if sum(abs(x) for x in d) == 2:
            assert sorted(d) == [-1, 0, 0, 0, 0, 1]


def test_facet_dual_routes_agree_exhaustively():
    for G in two_connected_graphs(5):
        P = polytope_of(G, "base")
        assert set(facets_from_cor33(G, P)) == set(P.require_facets()), G.edges


def test_cor33_facet_census(c3, c4, k4):
    from gorcheck.graph import is_two_connected

    def census(G):
        facets = facets_from_cor33(G, polytope_of(G, "base"))
        type1 = sum(
            1 for eid in G.edge_by_id
            if is_two_connected(G.without_edges([eid]))
        )
        return len(facets), type1

    assert census(c3) == (3, 0)
    assert census(c4) == (4, 0)
    assert census(k4) == (16, 6)


def test_gorenstein_search(c3, k2, c5_chord):
    w = gorenstein_search(polytope_of(c3, "base"))
    assert (w.delta, w.v) == (3, (2, 2, 2))
    w2 = gorenstein_search(polytope_of(k2, "independence"))
    assert (w2.delta, w2.v) == (2, (1,))
    assert gorenstein_search(polytope_of(c5_chord, "base")) is None


def test_witness_equals_weight_vector(k4_minus_e):
    from gorcheck.baseck import weight_function

    P = polytope_of(k4_minus_e, "base")
    w = gorenstein_search(P)
    weights = weight_function(k4_minus_e, 3).as_dict()
    assert w.v == tuple(weights[e] for e in sorted(weights))


def test_lattice_points(c3, k2):
    B = polytope_of(c3, "base")
    assert len(lattice_points(B, 1)) == 3
    assert len(lattice_points(B, 2)) == 6
    assert len(lattice_points(B, 0)) == 1
    P = polytope_of(k2, "independence")
    assert len(lattice_points(P, 3)) == 4


def test_lattice_point_guard(k4):
    with pytest.raises(GuardExceeded):
        lattice_points(polytope_of(k4, "base"), 3, node_guard=10)


def test_hstar(c3, k2, c5_chord):
    assert hstar(polytope_of(c3, "base")).coefficients == (1,)
    assert hstar(polytope_of(k2, "independence")).coefficients == (1,)
    h = hstar(polytope_of(c5_chord, "base"))
    assert not h.palindromic


def test_normality(c3, k4):
    assert normality_probe(polytope_of(c3, "base"), 3) is None
    assert normality_probe(polytope_of(k4, "base"), 2) is None
    assert normality_probe(polytope_of(c3, "independence"), 2) is None


def test_product_polytope(c3, k2):
    P = product_polytope([polytope_of(c3, "base"), polytope_of(k2, "base")])
    assert P.ambient_dim == 4
    # the K2 factor is a point: the product is lattice-isomorphic to B(C3)
    w = gorenstein_search(P)
    assert w.delta == 3


def test_dump_format(c3):
    text = dump_polytope(polytope_of(c3, "base"))
    head, facets = text.split("%facets\n")
    assert len(head.strip().splitlines()) == 3
    assert len(facets.strip().splitlines()) == 3


def test_facet_guard():
    P = polytope_of(complete(5), "base")  # 125 vertices
    import gorcheck.oracle as om

    old = om.FACET_VERTEX_GUARD
    om.FACET_VERTEX_GUARD = 10
    try:
        with pytest.raises(GuardExceeded):
            facets_bruteforce(P)
    finally:
        om.FACET_VERTEX_GUARD = old
