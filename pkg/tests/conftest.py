import itertools

import pytest
from hypothesis import strategies as st

from stabgraph import StabilizerGraph


def one_based(*edges):
    return [(j - 1, k - 1) for j, k in edges]


@pytest.fixture
def cluster4():
    """Four-qubit cluster state: nodes 1..4 clockwise, a 4-cycle."""
    return StabilizerGraph(4, one_based((1, 2), (2, 3), (3, 4), (4, 1)))


@pytest.fixture
def cluster2x3():
    """2x3 cluster state, nodes clockwise from the upper left (1 2 3 / 6 5 4)."""
    return StabilizerGraph(6, one_based((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (2, 5)))


@st.composite
def graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    nodes = st.lists(st.integers(0, n - 1), unique=True)
    return StabilizerGraph(n, edges, draw(nodes), draw(nodes), draw(nodes))


@st.composite
def graph_and_node(draw, min_n=1, max_n=6):
    g = draw(graphs(min_n, max_n))
    return g, draw(st.integers(0, g.n - 1))
