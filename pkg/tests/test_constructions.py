import random

import pytest

from conftest import complete, cycle
from gorcheck.baseck import base_verdict, check_spade, weight_function
from gorcheck.construct import (
    AttachCycle,
    BlowUp,
    Collide,
    EdgeRef,
    Glue,
    Seed,
    Subdivide,
    attach_cycle,
    blow_up,
    cert_from_json,
    cert_to_json,
    collide,
    decompose_base,
    fingerprint,
    glue,
    replay,
    replay_matches,
    subdivide,
)
from gorcheck.errors import ConstructionError
from gorcheck.graph import Multigraph, blow_up_factor, is_isomorphic
from gorcheck.indepck import indep_verdict
from gorcheck.smallgraphs import two_connected_graphs


def test_replay_seeds():
    assert is_isomorphic(replay(Seed("cycle", 5)), cycle(5))
    assert is_isomorphic(replay(Seed("k4")), complete(4))
    assert replay(Seed("k2")).m == 1


def test_glue_c3_c3_is_k4_minus_e(c3, k4_minus_e):
    w = weight_function(c3, 3)
    G = glue([(c3, w, 0), (c3, w, 0)], 3)
    assert is_isomorphic(G, k4_minus_e)
    # edge-order independence
    G2 = glue([(c3, w, 1), (c3, w, 2)], 3)
    assert is_isomorphic(G, G2)
    assert check_spade(G, 3) is None


def test_glue_arity_error(c3):
    w = weight_function(c3, 3)
    with pytest.raises(ConstructionError):
        glue([(c3, w, 0)] * 3, 3)


def test_glue_rejects_failing_part(c4):
    w = weight_function(c4, 3)
    with pytest.raises(ConstructionError):
        glue([(c4, w, 0), (c4, w, 0)], 3)  # C4 fails the equalities at 3


def test_subdivide_makes_g5(k4_minus_e):
    w = weight_function(k4_minus_e, 3)
    G5 = subdivide(k4_minus_e, w, 0, 3)  # edge ab has weight 1
    assert (G5.n, G5.m) == (5, 6)
    assert base_verdict(G5).delta == 3
    assert all(wt == 2 for wt in weight_function(G5, 3).as_dict().values())


def test_subdivide_rejects_heavy_edge(c3):
    w = weight_function(c3, 3)
    with pytest.raises(ConstructionError):
        subdivide(c3, w, 0, 3)  # all C3 edges have weight 2


def test_subdivide_delta2_identity(k4):
    w = weight_function(k4, 2)
    assert subdivide(k4, w, 0, 2) is k4


def test_collide(k4, c3):
    G = collide(k4, 0, k4, 0)
    assert (G.n, G.m) == (6, 10)
    assert check_spade(G, 2) is None
    G2 = collide(k4, 0, G, 0)
    assert (G2.n, G2.m) == (8, 14)
    assert check_spade(G2, 2) is None
    with pytest.raises(ConstructionError):
        collide(k4, 0, c3, 0)


def test_attach_cycle(k2, c4):
    assert is_isomorphic(attach_cycle(k2, 0, 3), c4)
    assert is_isomorphic(attach_cycle(k2, 0, 2), cycle(3))
    G = attach_cycle(c4, 0, 3)
    assert (G.n, G.m) == (6, 7)


def test_blow_up_roundtrip(c4):
    doubled = blow_up(c4, 2)
    assert doubled.m == 8
    f = blow_up_factor(doubled)
    assert f.multiplicity == 2 and is_isomorphic(f.base_graph, c4)
    assert blow_up(c4, 1).m == c4.m


def test_decompose_named(k4, k4_minus_e):
    assert decompose_base(k4, 2) == Seed("k4")
    cert = decompose_base(k4_minus_e, 3)
    assert isinstance(cert, Glue)
    assert all(c == Seed("cycle", 3) for c in cert.children)
    w = weight_function(k4_minus_e, 3)
    G5 = subdivide(k4_minus_e, w, 0, 3)
    cert5 = decompose_base(G5, 3)
    assert isinstance(cert5, Subdivide) and isinstance(cert5.child, Glue)
    assert replay_matches(cert5, G5) == (True, "isomorphism")


def test_decompose_collide(k4):
    G = collide(k4, 0, k4, 0)
    cert = decompose_base(G, 2)
    assert isinstance(cert, Collide)
    assert cert.children == (Seed("k4"), Seed("k4"))
    assert replay_matches(cert, G)[0]


def test_decompose_rejects_negative(c5_chord):
    with pytest.raises(ConstructionError):
        decompose_base(c5_chord, 4)


def test_decompose_completeness_small():
    # every checker-positive 2-connected graph <= 6 vertices decomposes and
    # replays isomorphically (7 vertices covered by the acceptance run)
    for G in two_connected_graphs(6, min_vertices=3):
        v = base_verdict(G)
        if v.is_gorenstein:
            cert = decompose_base(G, v.delta)
            assert replay_matches(cert, G)[0], G.edges


def random_cert(rng, depth, delta):
    """Random certificate of bounded depth; base kinds for delta, indep via attach."""
    if depth == 0 or rng.random() < 0.3:
        if delta == 2:
            return Seed("k4")
        return Seed("cycle", delta)
    if delta == 2:
        kids = [random_cert(rng, depth - 1, 2) for _ in range(2)]
        refs = []
        for c in kids:
            rep = replay(c)
            # collide needs a glued edge; any edge of a spade-positive graph works
            refs.append(EdgeRef(rng.choice(sorted(rep.edge_by_id))))
        return Collide(tuple(kids), tuple(refs))
    kind = rng.choice(["glue", "subdivide"])
    if kind == "glue":
        kids = [random_cert(rng, depth - 1, delta) for _ in range(delta - 1)]
        refs = []
        for c in kids:
            rep = replay(c)
            heavy = [
                e for e, wt in weight_function(rep, delta).as_dict().items()
                if wt == delta - 1
            ]
            refs.append(EdgeRef(rng.choice(heavy)))
        return Glue(delta, tuple(kids), tuple(refs))
    child = random_cert(rng, depth - 1, delta)
    rep = replay(child)
    light = [
        e for e, wt in weight_function(rep, delta).as_dict().items() if wt == 1
    ]
    if not light:
        return child  # seeds have no weight-1 edge to subdivide
    return Subdivide(delta, child, EdgeRef(rng.choice(light)))


def test_random_certificate_closure():
    rng = random.Random(20240817)
    checked = 0
    for _ in range(200):
        delta = rng.randint(2, 5)
        cert = random_cert(rng, rng.randint(1, 3), delta)
        G = replay(cert)
        while G.n > 14:  # keep flat enumeration tractable
            cert = random_cert(rng, 1, delta)
            G = replay(cert)
        if rng.random() < 0.3:
            m = rng.randint(2, 3)
            v = indep_verdict(blow_up(replay(Seed("cycle", m)), m))
            # independence-side closure: blow-ups of attach chains
            H = replay(AttachCycle(m + 1, Seed("k2"), EdgeRef(0)))
            vi = indep_verdict(blow_up(H, m))
            assert vi.is_gorenstein and vi.delta == m + 1
        if G.n <= 12:
            v = base_verdict(G)
            assert v.is_gorenstein and v.delta == delta, (cert, v.status)
        else:
            assert check_spade(G, delta) is None
        checked += 1
    assert checked == 200


def test_cert_json_roundtrip(k4_minus_e):
    cert = decompose_base(k4_minus_e, 3)
    text = cert_to_json(cert)
    assert cert_from_json(text) == cert
    with pytest.raises(ConstructionError):
        cert_from_json('{"schema": "bogus/9", "root": {}}')


def test_fingerprint_large_replay():
    # 4 pentagons glued along one edge: 14 vertices, beyond the isomorphism guard
    c5g = cycle(5)
    w = weight_function(c5g, 5)
    G = glue([(c5g, w, 0)] * 4, 5)
    cert = decompose_base(G, 5)
    matched, method = replay_matches(cert, G)
    assert matched and method == "fingerprint"
    assert fingerprint(G)[0] == 14
