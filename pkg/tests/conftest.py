import pytest

from gorcheck.graph import Multigraph


def cycle(n, labels=None):
    labels = list(labels) if labels is not None else list(range(n))
    return Multigraph.build(
        labels, [(labels[i], labels[(i + 1) % n]) for i in range(n)]
    )


def complete(n):
    return Multigraph.build(
        range(n), [(a, b) for a in range(n) for b in range(a + 1, n)]
    )


@pytest.fixture
def k2():
    return Multigraph.build(range(2), [(0, 1)])


@pytest.fixture
def c3():
    return cycle(3)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5, labels=[1, 2, 3, 4, 5])


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def k4_minus_e():
    # vertices a,b,c,d with cd missing
    return Multigraph.build(
        "abcd", [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]
    )


@pytest.fixture
def c5_chord(c5):
    # C5 on 1..5 plus the chord {1,3}
    G, _ = c5.with_edge(1, 3)
    return G


@pytest.fixture
def k23():
    return Multigraph.build(range(5), [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
