"""Reference evaluators that follow the literal per-n definitions.

Every open set (not only the minimal ones) is scanned, and the "for every n" quantifiers
are truncated at ``n_max``. Path families are tracked as frontier sets, one per length,
so the work grows with ``n_max`` times the number of edges rather than with the number
of paths. A step counter guards against runaway inputs.

Per-n data that does not depend on the topology is memoized on the graph skeleton, so
sweeping one graph over many topologies pays for the path enumeration once.
"""
from __future__ import annotations

from math import lcm

from .conditions import ConditionFlag, MapOrGraph, _as_graph
from .digraph import MultiDigraph, _check_open
from .errors import BudgetExceeded, InvalidInput
from .fintop import iter_bits, to_points

KINDS = ("tf", "strong_tf", "aperiodic", "periodic_paths", "weak_aperiodic")
DEFAULT_STEP_CAP = 10**7


class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.cap:
            raise BudgetExceeded(f"enumeration exceeded {self.cap} steps; lower n_max")


def stabilization_bound(kind: str, n_points: int) -> int:
    """Smallest ``n_max`` at which the truncated oracle is known to agree with the fast checker."""
    k = n_points
    if kind in ("tf", "aperiodic"):
        return max(lcm(*range(1, k + 1)), 2 * k)
    return 2 * k


def _memo(g: MultiDigraph, key, compute):
    cache = g.skel.cache
    full_key = ("oracle",) + key
    if full_key not in cache:
        cache[full_key] = compute()
    return cache[full_key]


def _interior_witness(g: MultiDigraph, s: int) -> int:
    """Union of all nonempty opens inside ``s``, found by scanning every open; 0 if none."""
    best = 0
    for o in g.space.opens:
        if o and o & ~s == 0:
            best |= o
    return best


def _entranceless_base_points(g: MultiDigraph, u: int, n_max: int, budget: _Budget) -> list[int]:
    """Entry n: base points of length-n closed walks in the u-graph with no entrances in g."""
    into: dict[int, list] = {}
    for e in g.edges:
        into.setdefault(e.rng, []).append(e)
    out = [0]
    for n in range(1, n_max + 1):
        base = 0
        # a closed walk without entrances is fixed by its end vertex: each step back is
        # forced, so every such walk of length n is visited exactly once here
        for v in iter_bits(u):
            walk = 1 << v
            x = v
            ok = True
            for _ in range(n):
                budget.spend()
                ins = into.get(x, ())
                if len(ins) != 1 or not u >> ins[0].src & 1:
                    ok = False
                    break
                x = ins[0].src
                walk |= 1 << x
            if ok and x == v:
                base |= walk
        out.append(base)
    return out


def _tf(g: MultiDigraph, u: int, n_max: int, budget: _Budget) -> ConditionFlag:
    bases = _memo(g, ("tf", u, n_max), lambda: _entranceless_base_points(g, u, n_max, budget))
    for n in range(1, n_max + 1):
        inner = _interior_witness(g, bases[n])
        if inner:
            return ConditionFlag(False, {"n": n, "open": to_points(inner)})
    return ConditionFlag(True)


def _ends_of_length(g: MultiDigraph, n: int, budget: _Budget, edges) -> int:
    w = g.space.full
    for _ in range(n):
        nxt = 0
        for e in edges:
            budget.spend()
            if w >> e.src & 1:
                nxt |= 1 << e.rng
        w = nxt
    return w


def _past_in(g: MultiDigraph, u: int, v: int, n_max: int, budget: _Budget) -> bool:
    """Paths of every length up to n_max that end in v stay inside the u-graph."""
    frontier = v
    for _ in range(n_max + 1):
        if not frontier & ~u == 0:
            return False
        nxt = 0
        for e in g.edges:
            budget.spend()
            if frontier >> e.rng & 1:
                nxt |= 1 << e.src
        frontier = nxt
    return True


def _valid_opens(g: MultiDigraph, u: int, n_max: int, budget: _Budget):
    rinf = _memo(g, ("rinf", n_max), lambda: _ends_of_length(g, n_max, budget, g.edges))
    for o in g.space.nonempty_opens:
        if o & ~rinf == 0 and _memo(g, ("past", u, o, n_max), lambda: _past_in(g, u, o, n_max, budget)):
            yield o


def _nonreturning_ends(g: MultiDigraph, top: int, budget: _Budget) -> list[int]:
    """Entry m: ranges of non-returning paths of length m."""
    ends = [0] * (top + 1)
    for e1 in g.edges:
        rest = [e for e in g.edges if e.id != e1.id]
        frontier = 1 << e1.rng
        for m in range(1, top + 1):
            ends[m] |= frontier
            nxt = 0
            for e in rest:
                budget.spend()
                if frontier >> e.src & 1:
                    nxt |= 1 << e.rng
            frontier = nxt
    return ends


def _strong_tf(g: MultiDigraph, u: int, n_max: int, budget: _Budget) -> ConditionFlag:
    # lengths are searched in the window [n_max, n_max + k - 1]: any unbounded family of
    # non-returning lengths is eventually periodic with period at most k
    top = n_max + g.n_points - 1
    ends = _memo(g, ("nonret", top), lambda: _nonreturning_ends(g, top, budget))
    late = 0
    for m in range(n_max, top + 1):
        late |= ends[m]
    for o in _valid_opens(g, u, n_max, budget):
        if not o & late:
            longest = max((m for m in range(1, top + 1) if ends[m] & o), default=0)
            return ConditionFlag(False, {"open": to_points(o), "n": longest + 1})
    return ConditionFlag(True)


def _periodic_points(g: MultiDigraph, u: int, n_max: int, budget: _Budget) -> list[int]:
    """Entry n: points v of u with v in f^n(v) for the map restricted to u."""
    succ = [0] * g.n_points
    for e in g.edges:
        if u >> e.src & 1 and u >> e.rng & 1:
            succ[e.src] |= 1 << e.rng
    images = {v: 1 << v for v in iter_bits(u)}
    out = [0]
    for _ in range(n_max):
        periodic = 0
        for v, img in images.items():
            nxt = 0
            for w in iter_bits(img):
                budget.spend()
                nxt |= succ[w]
            images[v] = nxt
            if nxt >> v & 1:
                periodic |= 1 << v
        out.append(periodic)
    return out


def _aperiodic(g: MultiDigraph, u: int, n_max: int, budget: _Budget) -> ConditionFlag:
    periodic = _memo(g, ("per", u, n_max), lambda: _periodic_points(g, u, n_max, budget))
    for n in range(1, n_max + 1):
        inner = _interior_witness(g, periodic[n])
        if inner:
            return ConditionFlag(False, {"n": n, "open": to_points(inner)})
    return ConditionFlag(True)


def _source_visits(edges, v: int, n_max: int, budget: _Budget) -> list[tuple[bool, bool]]:
    """Entry n, over length-n paths ending at v: (one avoids v as a source, one passes v as a source)."""
    frontier = {(v, False)}  # (current start vertex, some source so far equals v)
    out = [(True, False)]
    for _ in range(n_max):
        nxt = set()
        for x, hit in frontier:
            for e in edges:
                budget.spend()
                if e.rng == x:
                    nxt.add((e.src, hit or e.src == v))
        frontier = nxt
        out.append((any(not h for _, h in frontier), any(h for _, h in frontier)))
    return out


def _periodic_paths(g: MultiDigraph, u: int, n_max: int, budget: _Budget) -> ConditionFlag:
    in_u = [e for e in g.edges if u >> e.src & 1 and u >> e.rng & 1]
    rinf = _memo(g, ("rinf_u", u, n_max), lambda: _ends_of_length(g, n_max, budget, in_u))
    visits = {}
    for o in g.space.nonempty_opens:
        if not o & ~rinf == 0:
            continue
        for n in range(1, n_max + 1):
            good = False
            for v in iter_bits(o):
                if v not in visits:
                    visits[v] = _memo(g, ("visits_u", u, v, n_max), lambda: _source_visits(in_u, v, n_max, budget))
                if not visits[v][n][1]:
                    good = True
                    break
            if not good:
                return ConditionFlag(False, {"open": to_points(o), "n": n})
    return ConditionFlag(True)


def _weak_aperiodic(g: MultiDigraph, u: int, n_max: int, budget: _Budget) -> ConditionFlag:
    visits = {}
    for o in _valid_opens(g, u, n_max, budget):
        for n in range(1, n_max + 1):
            found = False
            for v in iter_bits(o):
                if v not in visits:
                    visits[v] = _memo(g, ("visits", v, n_max), lambda: _source_visits(g.edges, v, n_max, budget))
                if visits[v][n][0]:
                    found = True
                    break
            if not found:
                return ConditionFlag(False, {"open": to_points(o), "n": n})
    return ConditionFlag(True)


_DISPATCH = {
    "tf": _tf,
    "strong_tf": _strong_tf,
    "aperiodic": _aperiodic,
    "periodic_paths": _periodic_paths,
    "weak_aperiodic": _weak_aperiodic,
}


def oracle_condition(
    g: MapOrGraph, u: int, kind: str, n_max: int, max_steps: int = DEFAULT_STEP_CAP
) -> ConditionFlag:
    """Literal evaluation of one condition on ``u`` with ``n`` ranging over ``1..n_max``.

    ``kind`` is one of ``tf``, ``strong_tf``, ``aperiodic``, ``periodic_paths``
    (the path form of aperiodicity: some point of each open ends only paths that never
    start an edge at it) or ``weak_aperiodic``. A map and its graph are interchangeable.
    """
    if kind not in _DISPATCH:
        raise InvalidInput(f"unknown condition kind {kind!r}")
    if n_max < 1:
        raise InvalidInput("n_max must be at least 1")
    graph = _as_graph(g)
    _check_open(graph, u)
    return _DISPATCH[kind](graph, u, n_max, _Budget(max_steps))
