import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from cpuniq.conditions import (
    is_strongly_topologically_free_on,
    is_topologically_aperiodic_on,
    is_topologically_free_on,
    is_weakly_topologically_aperiodic_on,
)
from cpuniq.corr import (
    FinCorr,
    cyclic_period,
    image_ideal,
    is_j_acyclic,
    is_positively_invariant,
    j_acyclic_by_enumeration,
    jx,
    ker_phi,
    positively_invariant_ideals,
    preimage_ideal,
    restrict,
    t_pairs,
    tensor_power,
)
from cpuniq.digraph import (
    MultiDigraph,
    concat,
    has_past,
    infinite_path_range,
    make_path,
    mv_map,
    no_entrance_cycles,
    preimage_vertices,
)
from cpuniq.fintop import interior, is_subset, make_space
from cpuniq.oracles import oracle_condition, stabilization_bound
from cpuniq.verdict import AnalysisReport, simplicity_verdict, uniqueness_verdict

FAST = {
    "tf": is_topologically_free_on,
    "strong_tf": is_strongly_topologically_free_on,
    "aperiodic": is_topologically_aperiodic_on,
    "weak_aperiodic": is_weakly_topologically_aperiodic_on,
}


@st.composite
def spaces(draw, max_points=4):
    n = draw(st.integers(1, max_points))
    gens = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=4))
    return make_space(n, [[i for i in range(n) if g >> i & 1] for g in gens])


@st.composite
def graphs(draw, max_points=4, max_edges=7):
    space = draw(spaces(max_points))
    n = space.n_points
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    return MultiDigraph.from_edges(space, pairs)


@st.composite
def graph_and_open(draw, **kw):
    g = draw(graphs(**kw))
    return g, draw(st.sampled_from(g.space.opens))


@st.composite
def correspondences(draw, max_k=3, max_mult=2):
    k = draw(st.integers(1, max_k))
    mult = draw(st.lists(st.lists(st.integers(0, max_mult), min_size=k, max_size=k), min_size=k, max_size=k))
    dims = draw(st.lists(st.integers(1, 4), min_size=k, max_size=k))
    return FinCorr.of(mult, dims)


def _union(targets, s):
    out = 0
    for x in range(len(targets)):
        if s >> x & 1:
            out |= targets[x]
    return out


def walks_ending(g, v, n):
    """Vertex sets visited by walks of exactly ``n`` edges ending at ``v``."""
    layer = {(v, 1 << v)}
    for _ in range(n):
        layer = {(e.src, seen | 1 << e.src) for (x, seen) in layer for e in g.edges if e.rng == x}
    return layer


# ------------------------------------------------------------------ spaces


@given(spaces(), st.integers(0, 15))
def test_interior_is_largest_open_inside(space, s):
    s &= space.full
    inner = interior(space, s)
    assert space.is_open(inner) and is_subset(inner, s)
    assert all(not is_subset(o, s) or is_subset(o, inner) for o in space.opens)


@given(spaces())
def test_make_space_is_idempotent(space):
    again = make_space(space.n_points, [[i for i in range(space.n_points) if o >> i & 1] for o in space.opens])
    assert sorted(again.opens) == sorted(space.opens)


# ------------------------------------------------------------------ graphs


@given(graphs(), st.data())
def test_path_concatenation_is_associative(g, data):
    if not g.edges:
        return
    ids = [data.draw(st.sampled_from(g.edges)).id]  # newest edge first
    for _ in range(data.draw(st.integers(2, 5))):
        nxt = [f for f in g.edges if f.src == g.edge_by_id[ids[0]].rng]
        if not nxt:
            return
        ids.insert(0, data.draw(st.sampled_from(nxt)).id)
    a, b, c = make_path(g, ids[:1]), make_path(g, ids[1:2]), make_path(g, ids[2:3])
    assert concat(concat(a, b), c) == concat(a, concat(b, c)) == make_path(g, ids[:3])


@given(graph_and_open())
def test_no_entrance_cycles_match_brute_force(gu):
    g, u = gu
    dg = nx.MultiDiGraph()
    dg.add_nodes_from(range(g.space.n_points))
    dg.add_edges_from((e.src, e.rng) for e in g.edges)
    expected = set()
    for cyc in nx.simple_cycles(nx.DiGraph(dg)):
        verts = set(cyc)
        inside = all(u >> x & 1 for x in verts)
        lonely = all(dg.in_degree(x) == 1 for x in verts)
        if inside and lonely:
            expected.add(frozenset(verts))
    assert {frozenset(c.vertices) for c in no_entrance_cycles(g, u)} == expected


@given(graphs())
def test_infinite_path_range_is_long_walk_ends(g):
    n = g.space.n_points
    ends = 0
    for v in range(n):
        if walks_ending(g, v, n + 1):
            ends |= 1 << v
    assert infinite_path_range(g) == ends


@given(graph_and_open(), st.integers(0, 15))
def test_has_past_matches_per_length_enumeration(gu, v):
    g, u = gu
    v &= u
    ok = all(is_subset(seen, u) for n in range(g.space.n_points + 1)
             for x in range(g.space.n_points) if v >> x & 1 for (_, seen) in walks_ending(g, x, n))
    assert has_past(g, u, v) == ok


@settings(max_examples=300, deadline=None)
@given(graph_and_open(max_points=3, max_edges=6))
def test_fast_checkers_match_oracles(gu):
    g, u = gu
    for kind, fast in FAST.items():
        n_max = stabilization_bound(kind, g.space.n_points)
        assert fast(g, u).holds == oracle_condition(g, u, kind, n_max).holds, kind


@given(graph_and_open())
def test_condition_lattice(gu):
    g, u = gu
    tf = is_topologically_free_on(g, u).holds
    assert not is_strongly_topologically_free_on(g, u).holds or tf
    assert not is_weakly_topologically_aperiodic_on(g, u).holds or tf
    assert not is_topologically_aperiodic_on(g, u).holds or is_weakly_topologically_aperiodic_on(g, u).holds


# ------------------------------------------------------------------ correspondences


@given(correspondences(), st.integers(1, 4))
def test_dual_map_of_tensor_power_is_composition(c, n):
    f = mv_map(c.dual_graph).targets
    composed = tuple(1 << v for v in range(c.k))
    for _ in range(n):
        composed = tuple(_union(f, s) for s in composed)
    assert mv_map(tensor_power(c, n).dual_graph).targets == composed


@given(correspondences(max_k=4))
def test_negative_invariance_duality(c):
    for s in range(c.full + 1):
        assert is_positively_invariant(c, s) == is_subset(preimage_vertices(c.dual_graph, s), s)


@given(correspondences(), st.lists(st.integers(1, 5), min_size=3, max_size=3))
def test_every_output_ignores_dims(c, other):
    d = FinCorr.of(c.mult, other[: c.k])
    assert (ker_phi(c), jx(c)) == (ker_phi(d), jx(d))
    for s in range(c.full + 1):
        assert image_ideal(c, s) == image_ideal(d, s)
        assert preimage_ideal(c, s) == preimage_ideal(d, s)
    assert positively_invariant_ideals(c) == positively_invariant_ideals(d)
    for s in positively_invariant_ideals(c):
        if s:
            assert cyclic_period(c, s) == cyclic_period(d, s)
    assert t_pairs(c, jx(c)) == t_pairs(d, jx(d))
    assert simplicity_verdict(c).flags == simplicity_verdict(d).flags


@given(correspondences(max_k=4), st.data())
def test_acyclicity_fast_path_matches_enumeration(c, data):
    j = data.draw(st.integers(0, jx(c))) & jx(c)
    assert is_j_acyclic(c, j).holds == j_acyclic_by_enumeration(c, j).holds


@given(correspondences())
def test_cyclic_ideals_are_permutation_blocks(c):
    for s in positively_invariant_ideals(c):
        if s and cyclic_period(c, s) is not None:
            m = restrict(c, s).mult
            assert all(sum(row) == 1 for row in m)
            assert all(sum(row[j] for row in m) == 1 for j in range(len(m)))


@given(correspondences(), st.data())
def test_verdict_invariants_and_round_trip(c, data):
    j = data.draw(st.integers(0, c.full)) & jx(c)
    r = uniqueness_verdict(c, j)
    f = r.flags
    assert f["uniqueness"] == f["j_acyclic"] == f["topologically_free_on_j"]
    assert not f["weakly_aperiodic"] or f["uniqueness"]
    assert not f["strongly_topologically_free_on_j"] or f["uniqueness"]
    assert AnalysisReport.from_json(r.to_json()).to_dict() == r.to_dict()
    assert uniqueness_verdict(c, j).to_json() == r.to_json()
