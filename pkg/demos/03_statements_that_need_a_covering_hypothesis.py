"""Two implications that fail as literally stated, and the hypothesis that repairs them.

With an injective source map, topological freeness is claimed to give weak aperiodicity.
A vertex of u with no incoming edge breaks this. A cycle may have an entrance from such a
vertex, which keeps the graph free, but the entrance cannot be extended backwards, so every
long enough path into the cycle stays on it and returns. Requiring every vertex of u to
receive an edge (u inside the range of r) restores the implication.
"""
from cpuniq import MultiDigraph, is_topologically_free_on, is_weakly_topologically_aperiodic_on
from cpuniq.digraph import MultivaluedMap
from cpuniq.fintop import discrete_space, make_space
from cpuniq.sweeps import graph_lattice_sweep

# The smallest counterexample found by the exhaustive sweep.
space = make_space(3, [[2]])
g = MultiDigraph.from_edges(space, [(1, 2), (2, 2)])
print("free:", is_topologically_free_on(g, space.full).holds)
print("weak:", is_weakly_topologically_aperiodic_on(g, space.full))

# The constant map on two discrete points: every long path into {1} returns to 1.
const = MultivaluedMap(discrete_space(2), (0b10, 0b10))
print("constant map weak:", is_weakly_topologically_aperiodic_on(const, 0b11))

# Literal and covered forms over every graph on at most two points.
t = graph_lattice_sweep(2, 2)
for name in sorted(t.checked):
    if "injective" in name or "partial_map" in name:
        print(f"{name:45s} {t.checked[name]:5d} checked {t.failed[name]:4d} failed")
