"""Exhaustive and seeded-random verification sweeps.

Each ``*_checks`` function evaluates every applicable statement on one instance and
returns ``{statement name: holds}``. The sweep drivers enumerate instances, tally the
results and keep the first counterexample per statement.

Two statements are known to be false as literally stated for inputs whose open set is
not covered by edge ranges; they are listed in ``LITERAL_FORMS`` and paired with a
``*_covered`` variant carrying the extra hypothesis, which is expected to hold.
"""
from __future__ import annotations

import itertools
import os
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator

from .conditions import (
    is_strongly_topologically_free_on,
    is_topologically_aperiodic_on,
    is_topologically_free_on,
    is_weakly_topologically_aperiodic_on,
)
from .corr import (
    FinCorr,
    compress_mask,
    cyclic_period,
    image_ideal,
    is_j_acyclic,
    is_positively_invariant,
    j_acyclic_by_enumeration,
    j_of_ideal,
    jx,
    ker_phi,
    positively_invariant_ideals,
    preimage_ideal,
    restrict,
    t_pairs,
    tensor_power,
)
from .digraph import (
    MultiDigraph,
    is_continuous_graph,
    mv_map,
    preimage_vertices,
    restricted_graph,
)
from .errors import CpUniqError, InternalInconsistency
from .fintop import FinTopSpace, all_topologies, discrete_space, interior, is_subset, iter_bits, random_space
from .oracles import oracle_condition, stabilization_bound
from .verdict import (
    EndoSystem,
    FinQuiver,
    from_endomorphism,
    quiver_tf_pair,
    simplicity_verdict,
    toeplitz_verdict,
    uniqueness_verdict,
)

LITERAL_FORMS = frozenset({"s_injective_tf_implies_weak", "partial_map_weak_iff_free_outside", "endo_tf_iff_free_outside_index_one"})


def worker_count() -> int:
    env = os.environ.get("CK_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class Tally:
    instances: int = 0
    checked: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    examples: dict[str, Any] = field(default_factory=dict)

    def record(self, results: dict[str, bool], instance: Callable[[], Any]) -> None:
        """``instance`` builds the JSON document lazily, only when something fails."""
        self.instances += 1
        self.checked.update(results.keys())
        if not all(results.values()):
            doc = instance()
            for name, ok in results.items():
                if not ok:
                    self.failed[name] += 1
                    self.examples.setdefault(name, doc)

    def merge(self, other: "Tally") -> "Tally":
        self.instances += other.instances
        self.checked.update(other.checked)
        self.failed.update(other.failed)
        for k, v in other.examples.items():
            self.examples.setdefault(k, v)
        return self

    def violations(self, include_literal: bool = False) -> dict[str, int]:
        return {k: v for k, v in sorted(self.failed.items()) if include_literal or k not in LITERAL_FORMS}


# ---------------------------------------------------------------- graphs on a space


def _is_partial_map(g: MultiDigraph) -> bool:
    """Every vertex has at most one outgoing edge."""
    return max(g.skel.out_deg, default=0) <= 1


def free_outside(g: MultiDigraph, y: int) -> bool:
    """Partial-map form: periodic points whose orbits avoid ``y`` and have no entrance have empty interior.

    ``g`` must be the graph of a partial map: the edge out of x goes to phi(x).
    """
    phi = {e.src: e.rng for e in g.edges}
    bad = 0
    for x in phi:
        orbit, z = 1 << x, phi[x]
        while z != x and z in phi and not orbit >> z & 1:
            orbit |= 1 << z
            z = phi[z]
        if z != x or orbit & y:
            continue
        entrance = any(phi[w] in iter_bits(orbit) and not orbit >> w & 1 for w in phi)
        if not entrance:
            bad |= orbit
    return interior(g.space, bad) == 0


def lattice_checks(g: MultiDigraph, u: int, oracles: bool = True) -> dict[str, bool]:
    k = g.n_points
    tf = is_topologically_free_on(g, u).holds
    stf = is_strongly_topologically_free_on(g, u).holds
    ap = is_topologically_aperiodic_on(g, u).holds
    wa = is_weakly_topologically_aperiodic_on(g, u).holds
    res = {
        "strong_tf_implies_tf": not stf or tf,
        "aperiodic_implies_weak": not ap or wa,
        "weak_implies_tf": not wa or tf,
    }
    gu = restricted_graph(g, u, u)
    if is_continuous_graph(gu):
        res["continuous_tf_iff_strong_tf"] = tf == stf
    # r injective on edges ending in u: every vertex of u has in-degree <= 1
    if all(g.skel.in_deg[v] <= 1 for v in iter_bits(u)):
        res["r_injective_tf_implies_aperiodic"] = not tf or ap
    if _is_partial_map(gu):
        res["s_injective_tf_implies_weak"] = not tf or wa
        covered = all(g.skel.in_deg[v] >= 1 for v in iter_bits(u))
        if covered:
            res["s_injective_covered_tf_implies_weak"] = not tf or wa
    w = u | preimage_vertices(g, u)
    gw = restricted_graph(g, w, w)
    res["restriction_preserves_tf"] = is_topologically_free_on(gw, u).holds == tf
    res["restriction_preserves_strong_tf"] = is_strongly_topologically_free_on(gw, u).holds == stf
    if _is_partial_map(g) and all(c <= 1 for c in g.skel.pair_count.values()):
        outside = free_outside(g, g.space.full & ~u)
        res["partial_map_tf_iff_free_outside"] = tf == outside
        res["partial_map_weak_iff_free_outside"] = wa == outside
        if all(g.skel.in_deg[v] >= 1 for v in iter_bits(u)):
            res["partial_map_covered_weak_iff_free_outside"] = wa == outside
    if oracles:
        for kind, fast in (("tf", tf), ("strong_tf", stf), ("aperiodic", ap), ("weak_aperiodic", wa)):
            res["oracle_" + kind] = oracle_condition(g, u, kind, stabilization_bound(kind, k)).holds == fast
        res["oracle_periodic_paths"] = oracle_condition(g, u, "periodic_paths", stabilization_bound("periodic_paths", k)).holds == ap
    return res


def _graph_doc(g: MultiDigraph, u: int) -> dict[str, Any]:
    from .fintop import to_points

    return {
        "kind": "graph",
        "points": g.n_points,
        "opens": [to_points(o) for o in g.space.opens],
        "edges": [[e.src, e.rng] for e in g.edges],
        "u": to_points(u),
    }


def all_multigraphs(n_points: int, max_mult: int) -> Iterator[MultiDigraph]:
    """Every multigraph on ``n_points`` discrete vertices with multiplicities up to ``max_mult``."""
    space = discrete_space(n_points)
    for ent in itertools.product(range(max_mult + 1), repeat=n_points * n_points):
        m = [ent[r * n_points:(r + 1) * n_points] for r in range(n_points)]
        yield MultiDigraph.from_matrix(space, m)


def graph_lattice_sweep(n_points: int, max_mult: int, oracles: bool = True, shard: tuple[int, int] = (0, 1)) -> Tally:
    """Every multigraph on 1..``n_points`` points, under every topology, for every open ``u``."""
    tally = Tally()
    idx, count = shard
    graphs = itertools.chain.from_iterable(all_multigraphs(n, max_mult) for n in range(1, n_points + 1))
    tops = {}
    for pos, g0 in enumerate(graphs):
        if pos % count != idx:
            continue
        n = g0.n_points
        if n not in tops:
            tops[n] = all_topologies(n)
        for space in tops[n]:
            g = g0.with_space(space)
            for u in space.opens:
                tally.record(lattice_checks(g, u, oracles), lambda: _graph_doc(g, u))
    return tally


def random_graph(rng: random.Random, n_points: int, max_edges: int) -> MultiDigraph:
    space = random_space(n_points, rng)
    pairs = [(rng.randrange(n_points), rng.randrange(n_points)) for _ in range(rng.randint(0, max_edges))]
    return MultiDigraph.from_edges(space, pairs)


def random_lattice_sweep(count: int, seed: int, n_points: int = 5, max_edges: int = 8, oracles: bool = True) -> Tally:
    rng = random.Random(seed)
    tally = Tally()
    for _ in range(count):
        g = random_graph(rng, n_points, max_edges)
        for u in g.space.opens:
            tally.record(lattice_checks(g, u, oracles), lambda: _graph_doc(g, u))
    return tally


# ---------------------------------------------------------------- correspondences


def _corr_doc(c: FinCorr, j: int | None = None) -> dict[str, Any]:
    from .fintop import to_points

    doc = {"kind": "correspondence", "dims": list(c.dims), "mult": [list(r) for r in c.mult]}
    if j is not None:
        doc["ideal"] = to_points(j)
    return doc


def _bool_power(m, n):
    k = len(m)
    out = [[i == j for j in range(k)] for i in range(k)]
    for _ in range(n):
        out = [[any(out[i][t] and m[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
    return out


def verdict_checks(c: FinCorr) -> dict[str, bool]:
    """Uniqueness-theorem statements for every admissible J; cheap enough for the full sweep."""
    res: dict[str, bool] = {"equivalence": True, "sufficiency": True}
    x = jx(c)
    for j in range(c.full + 1):
        if not is_subset(j, x):
            continue
        try:
            r = uniqueness_verdict(c, j)
        except InternalInconsistency as exc:
            name = "sufficiency" if "holds but" in str(exc) else "equivalence"
            res[name] = False
            continue
        f = r.flags
        res["equivalence"] &= f["uniqueness"] == f["j_acyclic"] == f["topologically_free_on_j"]
        res["sufficiency"] &= (not f["weakly_aperiodic"] or f["uniqueness"]) and (
            not f["strongly_topologically_free_on_j"] or f["uniqueness"]
        )
    return res


def correspondence_checks(c: FinCorr, explicit: bool = True) -> dict[str, bool]:
    from .bimodule import ExplicitCorrespondence

    res = verdict_checks(c)
    k = c.k
    x = jx(c)
    g = c.dual_graph
    try:
        simplicity_verdict(c)
        toeplitz_verdict(c)
        res["simplicity_cross_checks"] = True
    except InternalInconsistency:
        res["simplicity_cross_checks"] = False
    inv = positively_invariant_ideals(c)
    res["negative_invariance_duality"] = all(
        is_positively_invariant(c, s) == is_subset(preimage_vertices(g, s), s) for s in range(c.full + 1)
    )
    f = mv_map(g)
    dual_ok = True
    for n in range(1, 5):
        p = tensor_power(c, n).mult
        b = _bool_power(c.mult, n)
        dual_ok &= all((p[i][j] > 0) == b[i][j] for i in range(k) for j in range(k))
    res["dual_map_of_tensor_power"] = dual_ok and all(f.targets[v] == mv_map(tensor_power(c, 1).dual_graph).targets[v] for v in range(k))
    period_ok = True
    for s in inv:
        if s:
            p = cyclic_period(c, s)
            if p is not None:
                rc = restrict(c, s)
                rows = all(any(r) for r in rc.mult)
                cols = all(any(rc.mult[i][j] for i in range(rc.k)) for j in range(rc.k))
                period_ok &= rows and cols and tensor_power(rc, p).mult == tensor_power(rc, 0).mult
    res["cyclic_ideal_is_full_and_nondegenerate"] = period_ok
    restriction_ok = True
    oracle_ok = {kind: True for kind in ("tf", "strong_tf", "aperiodic", "periodic_paths", "weak_aperiodic")}
    enum_ok = True
    for j in range(c.full + 1):
        if not is_subset(j, x):
            continue
        uj = is_j_acyclic(c, j).holds
        enum_ok &= j_acyclic_by_enumeration(c, j).holds == uj
        for s in inv:
            if s and uj:
                rc = restrict(c, s)
                jr = compress_mask(s, j) & jx(rc)
                restriction_ok &= is_j_acyclic(rc, jr).holds
        kmask = j | image_ideal(c, j)
        gk = restricted_graph(g, kmask, kmask)
        fast = {
            "tf": is_topologically_free_on(gk, j).holds,
            "strong_tf": is_strongly_topologically_free_on(gk, j).holds,
            "aperiodic": is_topologically_aperiodic_on(g, j).holds,
            "weak_aperiodic": is_weakly_topologically_aperiodic_on(g, j).holds,
        }
        fast["periodic_paths"] = fast["aperiodic"]
        for kind in oracle_ok:
            target = gk if kind in ("tf", "strong_tf") else g
            oracle_ok[kind] &= oracle_condition(target, j, kind, stabilization_bound(kind, k)).holds == fast[kind]
    res["restriction_keeps_uniqueness"] = restriction_ok
    res["acyclicity_by_enumeration"] = enum_ok
    for kind, ok in oracle_ok.items():
        res["oracle_" + kind] = ok
    if explicit and k <= 2 and c.linear_dim <= 24:
        e = ExplicitCorrespondence(c)
        ok = all(e.dual_multiplicity(i, j) == c.mult[i][j] for i in range(k) for j in range(k))
        ok &= e.ker_phi() == ker_phi(c)
        for s in range(c.full + 1):
            ok &= e.image_ideal(s) == image_ideal(c, s) and e.preimage_ideal(s) == preimage_ideal(c, s)
            if is_positively_invariant(c, s):
                ok &= e.j_of_ideal(s) == j_of_ideal(c, s)
        if c.linear_dim <= 12:
            ok &= e.tensor_square_dim() == tensor_power(c, 2).linear_dim
        res["explicit_bimodule"] = ok
    return res


def all_correspondences(k: int, max_mult: int, dims: tuple[int, ...] | None = None) -> Iterator[FinCorr]:
    for ent in itertools.product(range(max_mult + 1), repeat=k * k):
        yield FinCorr.of([ent[r * k:(r + 1) * k] for r in range(k)], dims)


def correspondence_sweep(
    size: int, max_mult: int, full: bool = True, shard: tuple[int, int] = (0, 1)
) -> Tally:
    tally = Tally()
    idx, count = shard
    pos = 0
    for k in range(1, size + 1):
        for c in all_correspondences(k, max_mult):
            pos += 1
            if pos % count != idx:
                continue
            res = correspondence_checks(c) if full else verdict_checks(c)
            tally.record(res, lambda: _corr_doc(c))
    return tally


def verdict_signature(c: FinCorr) -> Any:
    """Every dims-independent output for ``c``: flags, witnesses and counts of all verdicts,
    plus the ideal calculus."""
    x = jx(c)
    out = []
    for j in range(c.full + 1):
        if is_subset(j, x):
            r = uniqueness_verdict(c, j)
            out.append((j, r.flags, r.witnesses, r.counts))
    s = simplicity_verdict(c)
    out.append(("simple", s.flags, s.witnesses, s.counts))
    out.append(("toeplitz", toeplitz_verdict(c).flags))
    out.append(("ker", ker_phi(c), x))
    out.append(("ideals", [(image_ideal(c, s), preimage_ideal(c, s)) for s in range(c.full + 1)]))
    inv = positively_invariant_ideals(c)
    out.append(("invariant", inv, [j_of_ideal(c, s) for s in inv], [cyclic_period(c, s) for s in inv if s]))
    out.append(("tensor", [tensor_power(c, n).mult for n in range(4)]))
    return out


def random_dims_triples(count: int, seed: int, max_k: int = 4, max_mult: int = 2, max_dim: int = 5):
    rng = random.Random(seed)
    for _ in range(count):
        k = rng.randint(1, max_k)
        m = [[rng.randint(0, max_mult) for _ in range(k)] for _ in range(k)]
        d1 = tuple(rng.randint(1, max_dim) for _ in range(k))
        d2 = tuple(rng.randint(1, max_dim) for _ in range(k))
        yield m, d1, d2


def dimension_invariance_sweep(count: int, seed: int) -> Tally:
    tally = Tally()
    for m, d1, d2 in random_dims_triples(count, seed):
        a, b = FinCorr.of(m, d1), FinCorr.of(m, d2)
        tally.record({"dimension_invariance": verdict_signature(a) == verdict_signature(b)}, lambda: _corr_doc(a) | {"alt_dims": list(b.dims)})
    return tally


# ---------------------------------------------------------------- quivers and endomorphisms


def all_quivers(max_vertices: int, max_edges: int) -> Iterator[FinQuiver]:
    """Quivers with all weights 1; weights do not enter the dual graph beyond positivity."""
    for n in range(1, max_vertices + 1):
        pairs = [(s, r) for s in range(n) for r in range(n)]
        for m in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(pairs, m):
                yield FinQuiver.of(n, [(s, r, 1) for s, r in combo])


def quiver_sweep(max_vertices: int = 3, max_edges: int = 4) -> Tally:
    tally = Tally()
    for q in all_quivers(max_vertices, max_edges):
        a, b = quiver_tf_pair(q)
        doc = {"kind": "quiver", "vertices": q.n_vertices,
               "edges": [{"src": e.src, "rng": e.rng, "weight": str(e.weight)} for e in q.edges]}
        tally.record({"quiver_tf_equivalence": a == b}, lambda: doc)
    return tally


def all_endomorphisms(n_points: int, max_index: int) -> Iterator[EndoSystem]:
    for dom in range(1 << n_points):
        xs = list(iter_bits(dom))
        for targets in itertools.product(range(n_points), repeat=len(xs)):
            for idx in itertools.product(range(1, max_index + 1), repeat=len(xs)):
                yield EndoSystem(n_points, dict(zip(xs, targets)), dict(zip(xs, idx)))


def endomorphism_checks(e: EndoSystem) -> dict[str, bool]:
    c = from_endomorphism(e)
    space = discrete_space(e.n_points)
    phi_graph = MultiDigraph.from_edges(space, [(x, y) for x, y in sorted(e.phi.items())])
    big = sum(1 << x for x, n in e.index.items() if n > 1)
    one = sum(1 << x for x, n in e.index.items() if n == 1)
    x = jx(c)
    res = {"endo_tf_iff_free_outside_index_above_one": True, "endo_tf_iff_free_outside_index_one": True,
           "endo_weak_iff_free_outside": True}
    for j in range(c.full + 1):
        if not is_subset(j, x):
            continue
        r = uniqueness_verdict(c, j)
        y = c.full & ~j
        res["endo_tf_iff_free_outside_index_above_one"] &= r.flags["uniqueness"] == free_outside(phi_graph, y | big)
        res["endo_tf_iff_free_outside_index_one"] &= r.flags["uniqueness"] == free_outside(phi_graph, y | one)
        res["endo_weak_iff_free_outside"] &= r.flags["weakly_aperiodic"] == free_outside(phi_graph, y)
    return res


def endomorphism_sweep(max_points: int = 3, max_index: int = 2) -> Tally:
    tally = Tally()
    for n in range(1, max_points + 1):
        for e in all_endomorphisms(n, max_index):
            doc = {"kind": "endomorphism", "points": n, "phi": {str(a): str(b) for a, b in e.phi.items()},
                   "index": {str(a): v for a, v in e.index.items()}}
            tally.record(endomorphism_checks(e), lambda: doc)
    return tally
