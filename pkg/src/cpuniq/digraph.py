"""Directed multigraphs over a finite topological space of vertices.

Parallel edges realize multiplicities. Paths are written in the order
``(e_n, ..., e_1)``: the first edge traversed is last in the tuple.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidInput, NotOpen
from .fintop import FinTopSpace, discrete_space, is_subset, iter_bits, to_points


class Edge(NamedTuple):
    id: int
    src: int
    rng: int


def reach_closure(succ: Sequence[int]) -> list[int]:
    """``out[v]`` = vertices reachable from ``v`` by a path of length >= 1."""
    reach = list(succ)
    changed = True
    while changed:
        changed = False
        for v, r in enumerate(reach):
            new = r
            for w in iter_bits(r):
                new |= reach[w]
            if new != r:
                reach[v] = new
                changed = True
    return reach


class _Skeleton:
    """Topology-free data of a multigraph, shared by every space carrying the same edges."""

    def __init__(self, n: int, edges: tuple[Edge, ...]):
        self.n = n
        self.edges = edges
        succ = [0] * n
        pred = [0] * n
        in_deg = [0] * n
        in_edges: list[list[Edge]] = [[] for _ in range(n)]
        pair_count: dict[tuple[int, int], int] = {}
        for e in edges:
            succ[e.src] |= 1 << e.rng
            pred[e.rng] |= 1 << e.src
            in_deg[e.rng] += 1
            in_edges[e.rng].append(e)
            pair_count[e.src, e.rng] = pair_count.get((e.src, e.rng), 0) + 1
        self.out_deg = tuple(sum(1 for e in edges if e.src == v) for v in range(n))
        self.succ = tuple(succ)
        self.pred = tuple(pred)
        self.in_deg = tuple(in_deg)
        self.in_edges = tuple(tuple(x) for x in in_edges)
        self.pair_count = pair_count
        self.cache: dict = {}

    @cached_property
    def reach(self) -> tuple[int, ...]:
        return tuple(reach_closure(self.succ))

    @cached_property
    def back(self) -> tuple[int, ...]:
        return tuple(reach_closure(self.pred))

    @cached_property
    def range_inf(self) -> int:
        w = (1 << self.n) - 1
        for _ in range(self.n):
            nxt = 0
            for v in iter_bits(w):
                nxt |= self.succ[v]
            w = nxt
        return w

    def succ_without(self, e: Edge) -> list[int]:
        succ = list(self.succ)
        if self.pair_count[e.src, e.rng] == 1:
            succ[e.src] &= ~(1 << e.rng)
        return succ

    @cached_property
    def pumpable_ends(self) -> int:
        """Vertices where non-returning paths of unbounded length end.

        For each first edge e1, walk in the graph without e1 from r(e1) to a vertex on a
        cycle, then on to the target; the cycle can be pumped without reusing e1.
        """
        out = 0
        for e in self.edges:
            succ = self.succ_without(e)
            reach = reach_closure(succ)
            start = 1 << e.rng | reach[e.rng]
            for c in iter_bits(start):
                if reach[c] >> c & 1:
                    out |= 1 << c | reach[c]
        return out


@lru_cache(maxsize=8192)
def _skeleton(n: int, edges: tuple[Edge, ...]) -> _Skeleton:
    return _Skeleton(n, edges)


@dataclass(frozen=True)
class MultiDigraph:
    space: FinTopSpace
    edges: tuple[Edge, ...]

    def __post_init__(self):
        n = self.space.n_points
        seen = set()
        for e in self.edges:
            if not (0 <= e.src < n and 0 <= e.rng < n):
                raise InvalidInput(f"edge {e.id} has an endpoint outside the vertex set")
            if e.id in seen:
                raise InvalidInput(f"duplicate edge id {e.id}")
            seen.add(e.id)

    @classmethod
    def from_edges(cls, space: FinTopSpace | int, pairs: Iterable[tuple[int, int]]) -> "MultiDigraph":
        """Build from ``(src, rng)`` pairs; ids are assigned in order. An int space means discrete."""
        if isinstance(space, int):
            space = discrete_space(space)
        return cls(space, tuple(Edge(i, s, r) for i, (s, r) in enumerate(pairs)))

    @classmethod
    def from_matrix(cls, space: FinTopSpace | int, m: Sequence[Sequence[int]]) -> "MultiDigraph":
        """``m[r][s]`` parallel edges from ``s`` to ``r``."""
        if isinstance(space, int):
            space = discrete_space(space)
        pairs = [(s, r) for r, row in enumerate(m) for s, k in enumerate(row) for _ in range(k)]
        return cls.from_edges(space, pairs)

    def with_space(self, space: FinTopSpace) -> "MultiDigraph":
        if space.n_points != self.space.n_points:
            raise InvalidInput("vertex count mismatch")
        g = _trusted(space, self.edges)
        if "skel" in self.__dict__:
            g.__dict__["skel"] = self.skel
        return g

    @cached_property
    def skel(self) -> _Skeleton:
        return _skeleton(self.space.n_points, self.edges)

    @property
    def n_points(self) -> int:
        return self.space.n_points

    @cached_property
    def multiplicity(self) -> tuple[tuple[int, ...], ...]:
        n = self.n_points
        m = [[0] * n for _ in range(n)]
        for e in self.edges:
            m[e.rng][e.src] += 1
        return tuple(map(tuple, m))

    @cached_property
    def edge_by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}


@dataclass(frozen=True)
class Path:
    edge_ids: tuple[int, ...]
    source: int
    range: int

    @property
    def length(self) -> int:
        return len(self.edge_ids)


def make_path(g: MultiDigraph, edge_ids: Sequence[int], vertex: int | None = None) -> Path:
    """Validate ``(e_n, ..., e_1)`` against the composition rule ``r(e_k) = s(e_{k+1})``.

    A length-0 path is a vertex and needs ``vertex``.
    """
    ids = tuple(edge_ids)
    if not ids:
        if vertex is None:
            raise InvalidInput("a length-0 path needs its vertex")
        return Path((), vertex, vertex)
    es = [g.edge_by_id[i] for i in ids]
    for later, earlier in zip(es, es[1:]):
        if earlier.rng != later.src:
            raise InvalidInput(f"edges {earlier.id} and {later.id} do not compose")
    return Path(ids, es[-1].src, es[0].rng)


def concat(p: Path, q: Path) -> Path:
    """``p`` after ``q``; requires ``q.range == p.source``."""
    if q.range != p.source:
        raise InvalidInput("paths do not compose")
    return Path(p.edge_ids + q.edge_ids, q.source, p.range)


@dataclass(frozen=True)
class MultivaluedMap:
    space: FinTopSpace
    targets: tuple[int, ...]

    def __post_init__(self):
        if len(self.targets) != self.space.n_points:
            raise InvalidInput("need one target set per point")
        full = self.space.full
        for t in self.targets:
            if t & ~full:
                raise InvalidInput("target set outside the space")

    def __call__(self, v: int) -> int:
        return self.targets[v]

    def image(self, s: int) -> int:
        out = 0
        for v in iter_bits(s):
            out |= self.targets[v]
        return out


def graph_of_map(f: MultivaluedMap) -> MultiDigraph:
    """The graph E_f: one edge v -> w for each w in f(v)."""
    pairs = [(v, w) for v in range(f.space.n_points) for w in iter_bits(f.targets[v])]
    return MultiDigraph.from_edges(f.space, pairs)


def mv_map(g: MultiDigraph) -> MultivaluedMap:
    return MultivaluedMap(g.space, g.skel.succ)


def _trusted(space: FinTopSpace, edges: tuple[Edge, ...]) -> MultiDigraph:
    # edges already validated against a space with the same points
    g = object.__new__(MultiDigraph)
    object.__setattr__(g, "space", space)
    object.__setattr__(g, "edges", edges)
    return g


def restricted_graph(g: MultiDigraph, v_src: int, w_rng: int) -> MultiDigraph:
    """Edges with source in ``v_src`` and range in ``w_rng``; vertices unchanged."""
    cache = g.skel.cache
    key = ("restrict", v_src, w_rng)
    hit = cache.get(key)
    if hit is None:
        keep = tuple(e for e in g.edges if v_src >> e.src & 1 and w_rng >> e.rng & 1)
        hit = cache[key] = _trusted(g.space, keep)
    if hit.space is g.space:
        return hit
    return hit.with_space(g.space)


def preimage_vertices(g: MultiDigraph, v: int) -> int:
    out = 0
    pred = g.skel.pred
    for x in iter_bits(v):
        out |= pred[x]
    return out


def is_continuous_graph(g: MultiDigraph) -> bool:
    return all(g.space.is_open(preimage_vertices(g, o)) for o in g.space.opens)


def infinite_path_range(g: MultiDigraph) -> int:
    """Ranges of infinite paths: vertices at the end of a path of length ``n_points``."""
    return g.skel.range_inf


def backward_closure(g: MultiDigraph, v: int) -> int:
    """``v`` together with every vertex that has a path into ``v``."""
    cache = g.skel.cache
    key = ("back", v)
    out = cache.get(key)
    if out is None:
        out = v
        back = g.skel.back
        for x in iter_bits(v):
            out |= back[x]
        cache[key] = out
    return out


def _check_open(g: MultiDigraph, u: int) -> None:
    if not g.space.is_open(u):
        raise NotOpen(f"{to_points(u)} is not open")


def has_past(g: MultiDigraph, u: int, v: int) -> bool:
    """Every path ending in ``v`` lies inside the graph restricted to ``u``."""
    _check_open(g, u)
    return is_subset(backward_closure(g, v), u)


class Cycle(NamedTuple):
    vertices: tuple[int, ...]  # traversal order from the least vertex
    edge_ids: tuple[int, ...]  # path order (e_n, ..., e_1), e_1 leaving vertices[0]

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m


def no_entrance_cycles(g: MultiDigraph, u: int) -> tuple[Cycle, ...]:
    """Simple cycles inside the ``u``-restricted graph whose vertices all have in-degree 1 in ``g``."""
    _check_open(g, u)
    skel = g.skel
    key = ("nec", u)
    hit = skel.cache.get(key)
    if hit is not None:
        return hit
    into: dict[int, Edge] = {}
    for x in iter_bits(u):
        if skel.in_deg[x] == 1:
            e = skel.in_edges[x][0]
            if u >> e.src & 1:
                into[x] = e
    cycles = []
    done = 0
    for x in sorted(into):
        if done >> x & 1:
            continue
        walk = [x]
        y = into[x].src
        while y in into and y != x and len(walk) <= len(into):
            walk.append(y)
            y = into[y].src
        if y != x:
            continue
        # walk follows edges backwards: x <- walk[1] <- ... ; reverse to traversal order
        verts = [x] + walk[:0:-1]
        edge_order = [into[verts[(i + 1) % len(verts)]].id for i in range(len(verts))]
        cycles.append(Cycle(tuple(verts), tuple(reversed(edge_order))))
        for v in verts:
            done |= 1 << v
    out = tuple(cycles)
    skel.cache[key] = out
    return out


def no_entrance_cycle_base_points(g: MultiDigraph, u: int) -> int:
    m = 0
    for c in no_entrance_cycles(g, u):
        m |= c.mask
    return m


def max_nonreturning_length(g: MultiDigraph, v: int) -> int | None:
    """Longest non-returning path ending in ``v``; ``None`` when unbounded."""
    if g.skel.pumpable_ends & v:
        return None
    skel = g.skel
    best = 0
    for e in g.edges:
        succ = skel.succ_without(e)
        memo: dict[int, int] = {}

        def longest(x: int) -> int:
            # longest walk from x ending in v; graph restricted here is acyclic
            if x in memo:
                return memo[x]
            memo[x] = -1  # guards against revisits; cannot be on a cycle reaching v
            r = 0 if v >> x & 1 else -1
            for y in iter_bits(succ[x]):
                sub = longest(y)
                if sub >= 0:
                    r = max(r, 1 + sub)
            memo[x] = r
            return r

        tail = longest(e.rng)
        if tail >= 0:
            best = max(best, 1 + tail)
    return best
