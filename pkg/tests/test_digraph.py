import pytest

from cpuniq.digraph import (
    MultiDigraph,
    concat,
    graph_of_map,
    has_past,
    infinite_path_range,
    is_continuous_graph,
    make_path,
    max_nonreturning_length,
    mv_map,
    no_entrance_cycles,
    preimage_vertices,
    restricted_graph,
)
from cpuniq.errors import InvalidInput, NotOpen
from cpuniq.fintop import discrete_space, to_mask, to_points

TWO_CYCLE = [(0, 1), (1, 0)]


def pairs(g):
    return sorted((e.src, e.rng) for e in g.edges)


def test_restricted_graph_filters_edges():
    g = MultiDigraph.from_edges(2, TWO_CYCLE)
    assert pairs(restricted_graph(g, to_mask([0]), to_mask([0, 1]))) == [(0, 1)]


def test_restricted_sierpinski_has_no_edges(sierpinski_graph):
    assert restricted_graph(sierpinski_graph, 1, 1).edges == ()


def test_restricted_to_everything_is_identity(sierpinski_graph):
    full = sierpinski_graph.space.full
    assert pairs(restricted_graph(sierpinski_graph, full, full)) == pairs(sierpinski_graph)


def test_mv_map_collapses_duplicates():
    f = mv_map(MultiDigraph.from_edges(2, [(0, 1), (0, 1), (1, 0)]))
    assert [to_points(t) for t in f.targets] == [[1], [0]]


def test_mv_map_sierpinski(sierpinski_graph):
    f = mv_map(sierpinski_graph)
    assert to_points(f(1)) == [0, 1]
    assert f(0) == 0


def test_mv_map_of_empty_graph():
    assert mv_map(MultiDigraph.from_edges(3, [])).targets == (0, 0, 0)


def test_graph_of_map_round_trip(sierpinski_graph):
    f = mv_map(sierpinski_graph)
    assert mv_map(graph_of_map(f)) == f


def test_preimage_vertices(sierpinski_graph):
    assert preimage_vertices(MultiDigraph.from_edges(2, TWO_CYCLE), 1) == to_mask([1])
    assert preimage_vertices(sierpinski_graph, 1) == to_mask([1])
    assert preimage_vertices(MultiDigraph.from_edges(3, [(0, 1), (1, 2)]), 1) == 0


def test_continuity(sierpinski_space, sierpinski_graph):
    assert is_continuous_graph(MultiDigraph.from_edges(3, [(0, 1), (2, 0)]))
    assert not is_continuous_graph(sierpinski_graph)
    assert is_continuous_graph(MultiDigraph.from_edges(sierpinski_space, [(0, 0)]))


def test_infinite_path_range(sierpinski_graph):
    assert infinite_path_range(MultiDigraph.from_edges(2, [(0, 0), (0, 1)])) == 0b11
    assert infinite_path_range(MultiDigraph.from_edges(3, [(0, 1), (1, 2)])) == 0
    assert infinite_path_range(sierpinski_graph) == 0b11


def test_has_past():
    assert has_past(MultiDigraph.from_edges(2, [(0, 1)]), 0b11, 0b10)
    assert not has_past(MultiDigraph.from_edges(2, [(0, 1)]), 0b10, 0b10)
    assert has_past(MultiDigraph.from_edges(2, TWO_CYCLE), 0b11, 0b01)


def test_has_past_needs_open_u(sierpinski_graph):
    with pytest.raises(NotOpen):
        has_past(sierpinski_graph, 0b10, 0b10)


def test_no_entrance_cycles():
    (loop,) = no_entrance_cycles(MultiDigraph.from_edges(1, [(0, 0)]), 1)
    assert loop.vertices == (0,) and loop.mask == 1
    assert no_entrance_cycles(MultiDigraph.from_edges(1, [(0, 0), (0, 0)]), 1) == ()
    assert no_entrance_cycles(MultiDigraph.from_edges(2, TWO_CYCLE + [(0, 0)]), 0b11) == ()


def test_no_entrance_cycle_reports_edges_in_path_order():
    g = MultiDigraph.from_edges(3, [(1, 2), (0, 1), (2, 0)])
    (cyc,) = no_entrance_cycles(g, 0b111)
    assert cyc.vertices == (0, 1, 2)
    path = make_path(g, cyc.edge_ids)
    assert path.source == path.range == 0


def test_make_path_checks_composition():
    g = MultiDigraph.from_edges(3, [(0, 1), (1, 2)])
    p = make_path(g, [1, 0])
    assert (p.source, p.range, p.length) == (0, 2, 2)
    with pytest.raises(InvalidInput):
        make_path(g, [0, 1])
    assert make_path(g, [], vertex=2).length == 0


def test_concat():
    g = MultiDigraph.from_edges(3, [(0, 1), (1, 2)])
    p = concat(make_path(g, [1]), make_path(g, [0]))
    assert p == make_path(g, [1, 0])


def test_max_nonreturning_length():
    chain = MultiDigraph.from_edges(3, [(0, 1), (1, 2)])
    assert max_nonreturning_length(chain, 0b100) == 2
    assert max_nonreturning_length(MultiDigraph.from_edges(1, [(0, 0), (0, 0)]), 1) is None


def test_edges_outside_vertex_set_rejected():
    with pytest.raises(InvalidInput):
        MultiDigraph.from_edges(2, [(0, 2)])


def test_from_matrix_orientation():
    g = MultiDigraph.from_matrix(discrete_space(2), [[0, 1], [2, 0]])
    assert pairs(g) == [(0, 1), (0, 1), (1, 0)]
