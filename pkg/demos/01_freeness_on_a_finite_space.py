"""Freeness conditions on the two-point Sierpinski space.

The open point 0 is fed by a loop sitting at the closed point 1. Every cycle meets the
closed point, whose singleton is not open, so the graph is topologically free. Yet every
long path ending at 0 passes back through its own source, so strong freeness fails.
"""
from cpuniq import (
    MultiDigraph,
    is_strongly_topologically_free_on,
    is_topologically_aperiodic_on,
    is_topologically_free_on,
    is_weakly_topologically_aperiodic_on,
    make_space,
    oracle_condition,
)
from cpuniq.digraph import infinite_path_range, is_continuous_graph, max_nonreturning_length
from cpuniq.fintop import to_points

space = make_space(2, [[0]])
g = MultiDigraph.from_edges(space, [(1, 0), (1, 1)])
u = space.full

print("opens:", [to_points(o) for o in space.opens])
print("continuous:", is_continuous_graph(g))
print("ends of infinite paths:", to_points(infinite_path_range(g)))
print("longest non-returning path into {0}:", max_nonreturning_length(g, 0b01))
print()

for name, check in [
    ("topologically free", is_topologically_free_on),
    ("strongly topologically free", is_strongly_topologically_free_on),
    ("aperiodic", is_topologically_aperiodic_on),
    ("weakly aperiodic", is_weakly_topologically_aperiodic_on),
]:
    flag = check(g, u)
    print(f"{name:28s} {flag.holds!s:5s}  witness={flag.witness}")

# The truncated literal definitions say the same thing.
print()
for kind in ("tf", "strong_tf"):
    print(f"oracle {kind:10s}", oracle_condition(g, u, kind, n_max=6).holds)
