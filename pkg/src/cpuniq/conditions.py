"""Fast decision procedures for freeness and aperiodicity conditions on an open set ``u``.

Each "for every nonempty open V" quantifier is evaluated on minimal opens only: every
condition here is preserved when V shrinks, and each open is a union of minimal ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Any, Union

from .digraph import (
    MultiDigraph,
    MultivaluedMap,
    _check_open,
    backward_closure,
    graph_of_map,
    max_nonreturning_length,
    no_entrance_cycles,
    reach_closure,
)
from .fintop import iter_bits, to_points


@dataclass(frozen=True)
class ConditionFlag:
    holds: bool
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.holds


MapOrGraph = Union[MultivaluedMap, MultiDigraph]


def _as_graph(f: MapOrGraph) -> MultiDigraph:
    return f if isinstance(f, MultiDigraph) else graph_of_map(f)


def _cycle_witness(c) -> dict:
    return {"vertices": list(c.vertices), "edges": list(c.edge_ids)}


def is_topologically_free_on(g: MultiDigraph, u: int) -> ConditionFlag:
    cycles = no_entrance_cycles(g, u)
    if not cycles:
        return ConditionFlag(True)
    base = 0
    for c in cycles:
        base |= c.mask
    for p, m in enumerate(g.space.min_opens):
        if base >> p & 1 and m & ~base == 0:
            cyc = next(c for c in cycles if c.mask >> p & 1)
            return ConditionFlag(False, {"point": p, "open": to_points(m), "cycle": _cycle_witness(cyc)})
    return ConditionFlag(True)


def _valid_opens(g: MultiDigraph, u: int):
    """Minimal opens V with V inside the infinite-path range and with a past in ``u``."""
    rinf = g.skel.range_inf
    seen = set()
    for m in g.space.min_opens:
        if m in seen:
            continue
        seen.add(m)
        if m & ~rinf == 0 and backward_closure(g, m) & ~u == 0:
            yield m


def is_strongly_topologically_free_on(g: MultiDigraph, u: int) -> ConditionFlag:
    _check_open(g, u)
    pump = g.skel.pumpable_ends
    for v in sorted(_valid_opens(g, u)):
        if not v & pump:
            longest = max_nonreturning_length(g, v)
            return ConditionFlag(False, {"open": to_points(v), "n": longest + 1})
    return ConditionFlag(True)


def _restricted_succ(g: MultiDigraph, u: int) -> list[int]:
    succ = g.skel.succ
    return [succ[v] & u if u >> v & 1 else 0 for v in range(g.n_points)]


def _shortest_return(succ: list[int], v: int) -> int:
    frontier, seen, n = succ[v], 0, 1
    while frontier:
        if frontier >> v & 1:
            return n
        seen |= frontier
        nxt = 0
        for w in iter_bits(frontier):
            nxt |= succ[w]
        frontier = nxt & ~seen
        n += 1
    raise ValueError("vertex is not on a cycle")


def is_topologically_aperiodic_on(f: MapOrGraph, u: int) -> ConditionFlag:
    g = _as_graph(f)
    _check_open(g, u)
    succ = _restricted_succ(g, u)
    reach = reach_closure(succ)
    periodic = 0
    for v in iter_bits(u):
        if reach[v] >> v & 1:
            periodic |= 1 << v
    if not periodic:
        return ConditionFlag(True)
    for p, m in enumerate(g.space.min_opens):
        if periodic >> p & 1 and m & ~periodic == 0:
            n = 1
            for v in iter_bits(m):
                n = lcm(n, _shortest_return(succ, v))
            return ConditionFlag(False, {"point": p, "open": to_points(m), "n": n})
    return ConditionFlag(True)


def _avoiding_sequence_fails(g: MultiDigraph, v_mask: int) -> int | None:
    """First n >= 1 at which no v in ``v_mask`` ends a length-n path that never leaves v; None if none."""
    pred = g.skel.pred
    verts = list(iter_bits(v_mask))
    state = tuple(1 << v for v in verts)
    seen = {state}
    n = 0
    while True:
        n += 1
        nxt = []
        for v, s in zip(verts, state):
            out = 0
            for x in iter_bits(s):
                out |= pred[x]
            nxt.append(out & ~(1 << v))
        state = tuple(nxt)
        if not any(state):
            return n
        if state in seen:
            return None
        seen.add(state)


def is_weakly_topologically_aperiodic_on(f: MapOrGraph, u: int) -> ConditionFlag:
    g = _as_graph(f)
    _check_open(g, u)
    for v in sorted(_valid_opens(g, u)):
        n = _avoiding_sequence_fails(g, v)
        if n is not None:
            return ConditionFlag(False, {"open": to_points(v), "n": n})
    return ConditionFlag(True)

