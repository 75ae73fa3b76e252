import pytest

from cpuniq.digraph import MultiDigraph
from cpuniq.fintop import make_space


@pytest.fixture
def sierpinski_space():
    return make_space(2, [[0]])


@pytest.fixture
def sierpinski_graph(sierpinski_space):
    # the loop sits at the closed point, which also feeds the open point
    return MultiDigraph.from_edges(sierpinski_space, [(1, 0), (1, 1)])
