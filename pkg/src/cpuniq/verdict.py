"""Uniqueness and simplicity verdicts for correspondences, plus quiver and endomorphism inputs."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, NamedTuple

from .conditions import (
    is_strongly_topologically_free_on,
    is_topologically_aperiodic_on,
    is_topologically_free_on,
    is_weakly_topologically_aperiodic_on,
)
from .corr import (
    FinCorr,
    TPair,
    image_ideal,
    is_j_acyclic,
    jx,
    ker_phi,
    quasi_nilpotent,
    t_pairs,
)
from .digraph import MultiDigraph, restricted_graph
from .errors import InternalInconsistency, InvalidInput, NotAQuiver
from .fintop import discrete_space, to_points

FLAG_NAMES = (
    "topologically_free_on_j",
    "strongly_topologically_free_on_j",
    "aperiodic",
    "weakly_aperiodic",
    "j_acyclic",
    "uniqueness",
    "quasi_nilpotent",
    "gauge_trivial",
    "simple",
)

MINIMALITY_NOTE = (
    "minimality is reported only as gauge triviality of the T-pair lattice; "
    "X-invariance in the minimality sense has no local definition to check against"
)


@dataclass
class AnalysisReport:
    kind: str
    subject: dict[str, Any]
    flags: dict[str, bool | None] = field(default_factory=lambda: dict.fromkeys(FLAG_NAMES))
    witnesses: dict[str, Any] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "subject": self.subject,
            "flags": {k: self.flags.get(k) for k in sorted(self.flags)},
            "witnesses": self.witnesses,
            "counts": self.counts,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "AnalysisReport":
        return cls(
            kind=d["kind"],
            subject=dict(d["subject"]),
            flags=dict(d["flags"]),
            witnesses=dict(d["witnesses"]),
            counts=dict(d["counts"]),
            notes=list(d["notes"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        lines = [f"kind: {self.kind}"]
        for k, v in sorted(self.subject.items()):
            lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
        lines.append("flags:")
        for k in FLAG_NAMES:
            if k in self.flags and self.flags[k] is not None:
                lines.append(f"  {k:34s} {str(self.flags[k]).lower()}")
        for k in sorted(set(self.flags) - set(FLAG_NAMES)):
            if self.flags[k] is not None:
                lines.append(f"  {k:34s} {str(self.flags[k]).lower()}")
        if self.counts:
            lines.append("counts:")
            lines.extend(f"  {k}: {v}" for k, v in sorted(self.counts.items()))
        if self.witnesses:
            lines.append("witnesses:")
            lines.extend(f"  {k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(self.witnesses.items()))
        if self.notes:
            lines.append("notes:")
            lines.extend(f"  - {n}" for n in self.notes)
        return "\n".join(lines)


def _pairs_json(pairs: list[TPair]) -> list[list[list[int]]]:
    return [[to_points(p.i), to_points(p.i_prime)] for p in pairs]


def _fail(msg: str, c: FinCorr, j: int):
    raise InternalInconsistency(f"{msg} (mult={c.mult}, j={to_points(j)})")


def uniqueness_verdict(c: FinCorr, j: int) -> AnalysisReport:
    ja = is_j_acyclic(c, j)  # raises IdealNotInJX first
    g = c.dual_graph
    k_mask = j | image_ideal(c, j)
    gk = restricted_graph(g, k_mask, k_mask)
    tf = is_topologically_free_on(gk, j)
    stf = is_strongly_topologically_free_on(gk, j)
    ap = is_topologically_aperiodic_on(g, j)
    wa = is_weakly_topologically_aperiodic_on(g, j)
    pairs = t_pairs(c, j)
    gauge_trivial = [(p.i, p.i_prime) for p in pairs] == [(0, j), (c.full, c.full)]
    uniq = ja.holds
    if tf.holds != uniq:
        _fail("J-acyclicity and topological freeness on J disagree", c, j)
    if wa.holds and not uniq:
        _fail("weak aperiodicity holds but uniqueness fails", c, j)
    if stf.holds and not uniq:
        _fail("strong topological freeness holds but uniqueness fails", c, j)
    if ap.holds and not wa.holds:
        _fail("aperiodicity holds but weak aperiodicity fails", c, j)

    r = AnalysisReport("correspondence", {"dims": list(c.dims), "mult": [list(x) for x in c.mult], "ideal": to_points(j)})
    r.flags.update(
        topologically_free_on_j=tf.holds,
        strongly_topologically_free_on_j=stf.holds,
        aperiodic=ap.holds,
        weakly_aperiodic=wa.holds,
        j_acyclic=ja.holds,
        uniqueness=uniq,
        quasi_nilpotent=quasi_nilpotent(c),
        gauge_trivial=gauge_trivial,
        simple=gauge_trivial and uniq,
    )
    for name, flag in (("no_entrance_cycle", tf), ("returning_open", stf), ("periodic_open", ap),
                       ("returning_paths", wa), ("cyclic_ideal", ja)):
        if flag.witness is not None:
            r.witnesses[name] = flag.witness
    r.witnesses["t_pairs"] = _pairs_json(pairs)
    r.counts["gauge_ideal_count"] = len(pairs)
    r.notes += [
        "uniqueness: J-acyclicity, equivalent to topological freeness on J because finite-dimensional coefficients are liminal",
        "topologically_free_on_j: dual graph restricted to J + X(J), cycles without entrances in that graph",
        "weakly_aperiodic, strongly_topologically_free_on_j: sufficient conditions for uniqueness",
        "simple: gauge triviality of the T-pair lattice together with uniqueness; " + MINIMALITY_NOTE,
    ]
    if j != jx(c):
        r.notes.append("J is strictly smaller than J_X, so (0, J) and (0, J_X) are distinct T-pairs and the algebra is not simple")
    return r


def toeplitz_verdict(c: FinCorr) -> AnalysisReport:
    r = uniqueness_verdict(c, 0)
    if not r.flags["uniqueness"]:
        _fail("the zero ideal must always have the uniqueness property", c, 0)
    r.notes.append("Toeplitz case: with J = 0 the uniqueness condition is vacuous")
    return r


def _is_partial_bijection(c: FinCorr) -> bool:
    k = c.k
    if any(x > 1 for row in c.mult for x in row):
        return False
    rows_ok = all(sum(row) <= 1 for row in c.mult)
    cols_ok = all(sum(c.mult[i][j] for i in range(k)) <= 1 for j in range(k))
    return rows_ok and cols_ok


def _is_permutation(c: FinCorr) -> bool:
    k = c.k
    return all(sorted(row) == [0] * (k - 1) + [1] for row in c.mult) and all(
        sum(c.mult[i][j] for i in range(k)) == 1 for j in range(k)
    )


def simplicity_verdict(c: FinCorr) -> AnalysisReport:
    j = jx(c)
    r = uniqueness_verdict(c, j)
    f = r.flags
    if ker_phi(c) and _is_partial_bijection(c):
        r.notes.append("cross-check: non-injective left action and partial-bijection dual graph; simple iff gauge trivial and quasi-nilpotent")
        if f["simple"] != (f["gauge_trivial"] and f["quasi_nilpotent"]):
            _fail("simplicity disagrees with the quasi-nilpotent criterion", c, j)
    no_zero_cols = all(any(c.mult[i][jj] for i in range(c.k)) for jj in range(c.k))
    if not ker_phi(c) and no_zero_cols:
        r.notes.append("cross-check: injective left action and no zero columns; under gauge triviality, uniqueness iff no power of N is the identity")
        if f["gauge_trivial"] and f["uniqueness"] != (not _is_permutation(c)):
            _fail("uniqueness disagrees with the non-periodicity criterion", c, j)
    return r


class QuiverEdge(NamedTuple):
    id: int
    src: int
    rng: int
    weight: Fraction


@dataclass(frozen=True)
class FinQuiver:
    n_vertices: int
    edges: tuple[QuiverEdge, ...]

    def __post_init__(self):
        if self.n_vertices < 1:
            raise InvalidInput("a quiver needs at least one vertex")
        for e in self.edges:
            if not (0 <= e.src < self.n_vertices and 0 <= e.rng < self.n_vertices):
                raise InvalidInput(f"edge {e.id} has an endpoint outside the vertex set")
            if e.weight < 0:
                raise InvalidInput(f"edge {e.id} has a negative weight")

    @classmethod
    def of(cls, n: int, edges) -> "FinQuiver":
        """``edges`` as ``(src, rng, weight)``; weights may be ints, Fractions or decimal strings."""
        return cls(n, tuple(QuiverEdge(i, s, r, Fraction(w)) for i, (s, r, w) in enumerate(edges)))

    @property
    def is_quiver(self) -> bool:
        return all(e.weight > 0 for e in self.edges)

    def graph(self) -> MultiDigraph:
        return MultiDigraph.from_edges(discrete_space(self.n_vertices), [(e.src, e.rng) for e in self.edges])


def from_quiver(q: FinQuiver) -> tuple[FinCorr, int]:
    k = q.n_vertices
    m = [[0] * k for _ in range(k)]
    jxm = 0
    for e in q.edges:
        if e.weight > 0:
            m[e.rng][e.src] += 1
            jxm |= 1 << e.rng
    return FinCorr.of(m), jxm


def quiver_tf_pair(q: FinQuiver) -> tuple[bool, bool]:
    """TF of the quiver's own graph, and TF of the dual graph on J_X."""
    if not q.is_quiver:
        raise NotAQuiver("some edge has weight 0")
    g = q.graph()
    c, j = from_quiver(q)
    return is_topologically_free_on(g, g.space.full).holds, is_topologically_free_on(c.dual_graph, j).holds


def quiver_tf_equivalence(q: FinQuiver) -> bool:
    a, b = quiver_tf_pair(q)
    return a == b


@dataclass(frozen=True)
class EndoSystem:
    n_points: int
    phi: Mapping[int, int]
    index: Mapping[int, int]

    def __post_init__(self):
        if self.n_points < 1:
            raise InvalidInput("need at least one point")
        if set(self.phi) != set(self.index):
            raise InvalidInput("phi and index must share the same domain")
        for x, y in self.phi.items():
            if not (0 <= x < self.n_points and 0 <= y < self.n_points):
                raise InvalidInput(f"phi({x}) = {y} is out of range")
            if self.index[x] < 1:
                raise InvalidInput(f"index at {x} must be at least 1")

    @property
    def domain(self) -> int:
        return sum(1 << x for x in self.phi)


def from_endomorphism(e: EndoSystem) -> FinCorr:
    k = e.n_points
    m = [[0] * k for _ in range(k)]
    for x, y in e.phi.items():
        m[y][x] = e.index[x]
    return FinCorr.of(m)
