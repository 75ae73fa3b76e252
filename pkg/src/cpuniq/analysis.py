"""Per-kind dispatch behind the ``check`` and ``oracle`` commands."""
from __future__ import annotations

from dataclasses import dataclass

from .conditions import (
    is_strongly_topologically_free_on,
    is_topologically_aperiodic_on,
    is_topologically_free_on,
    is_weakly_topologically_aperiodic_on,
)
from .corr import image_ideal, is_j_acyclic, j_acyclic_by_enumeration, j_of_ideal, ker_phi, preimage_ideal, is_positively_invariant, tensor_power
from .digraph import is_continuous_graph, restricted_graph
from .errors import InvalidInput
from .fintop import to_points
from .instances import InstanceDoc
from .oracles import oracle_condition, stabilization_bound
from .verdict import AnalysisReport, quiver_tf_pair, simplicity_verdict, uniqueness_verdict
from .corr import jx

GRAPH_FLAGS = ("topologically_free", "strongly_topologically_free", "aperiodic", "weakly_aperiodic", "continuous")


def _graph_report(doc: InstanceDoc) -> AnalysisReport:
    g = doc.graph()
    u = doc.u
    r = AnalysisReport(doc.kind, {"points": g.n_points, "opens": [to_points(o) for o in g.space.opens],
                                  "edges": [[e.src, e.rng] for e in g.edges], "u": to_points(u)}, flags={})
    checks = (
        ("topologically_free", is_topologically_free_on(g, u), "no_entrance_cycle"),
        ("strongly_topologically_free", is_strongly_topologically_free_on(g, u), "returning_open"),
        ("aperiodic", is_topologically_aperiodic_on(g, u), "periodic_open"),
        ("weakly_aperiodic", is_weakly_topologically_aperiodic_on(g, u), "returning_paths"),
    )
    for name, flag, wname in checks:
        r.flags[name] = flag.holds
        if flag.witness is not None:
            r.witnesses[wname] = flag.witness
    r.flags["continuous"] = is_continuous_graph(g)
    r.notes.append("all conditions are evaluated on u; aperiodicity refers to the multivalued map of the graph")
    return r


def check_instance(doc: InstanceDoc) -> AnalysisReport:
    if doc.kind in ("graph", "mvmap"):
        return _graph_report(doc)
    c, j = doc.correspondence()
    r = simplicity_verdict(c) if j == jx(c) else uniqueness_verdict(c, j)
    r.kind = doc.kind
    if doc.kind == "quiver":
        q = doc.obj
        r.subject["quiver_edges"] = [[e.src, e.rng, str(e.weight)] for e in q.edges]
        if q.is_quiver:
            a, b = quiver_tf_pair(q)
            r.flags["quiver_graph_topologically_free"] = a
            r.flags["quiver_tf_equivalence"] = a == b
        else:
            r.notes.append("some weight is 0, so this is not a quiver; the graph comparison is skipped")
    if doc.kind == "endomorphism":
        e = doc.obj
        r.subject["phi"] = {str(k): v for k, v in sorted(e.phi.items())}
        r.subject["index"] = {str(k): v for k, v in sorted(e.index.items())}
    return r


@dataclass
class OracleRow:
    condition: str
    fast: bool
    reference: bool
    n_max: int
    bound: int

    @property
    def agree(self) -> bool:
        return self.fast == self.reference


def oracle_rows(doc: InstanceDoc, n_max: int, max_steps: int = 10**7) -> list[OracleRow]:
    rows: list[OracleRow] = []
    if doc.kind in ("graph", "mvmap"):
        g, u = doc.graph(), doc.u
        fast = {
            "tf": is_topologically_free_on(g, u).holds,
            "strong_tf": is_strongly_topologically_free_on(g, u).holds,
            "aperiodic": is_topologically_aperiodic_on(g, u).holds,
            "weak_aperiodic": is_weakly_topologically_aperiodic_on(g, u).holds,
        }
        fast["periodic_paths"] = fast["aperiodic"]
        for kind, val in fast.items():
            ref = oracle_condition(g, u, kind, n_max, max_steps).holds
            rows.append(OracleRow(kind, val, ref, n_max, stabilization_bound(kind, g.n_points)))
        return rows
    c, j = doc.correspondence()
    g = c.dual_graph
    kmask = j | image_ideal(c, j)
    gk = restricted_graph(g, kmask, kmask)
    fast = {
        "tf": is_topologically_free_on(gk, j).holds,
        "strong_tf": is_strongly_topologically_free_on(gk, j).holds,
        "aperiodic": is_topologically_aperiodic_on(g, j).holds,
        "weak_aperiodic": is_weakly_topologically_aperiodic_on(g, j).holds,
    }
    fast["periodic_paths"] = fast["aperiodic"]
    for kind, val in fast.items():
        target = gk if kind in ("tf", "strong_tf") else g
        ref = oracle_condition(target, j, kind, n_max, max_steps).holds
        rows.append(OracleRow(kind, val, ref, n_max, stabilization_bound(kind, c.k)))
    if c.k <= 16:
        rows.append(OracleRow("j_acyclic", is_j_acyclic(c, j).holds, j_acyclic_by_enumeration(c, j).holds, 0, 0))
    if c.k <= 2 and c.linear_dim <= 24:
        from .bimodule import ExplicitCorrespondence

        e = ExplicitCorrespondence(c)
        k = c.k
        rows.append(OracleRow("explicit_dual_multiplicities", True,
                              all(e.dual_multiplicity(a, b) == c.mult[a][b] for a in range(k) for b in range(k)), 0, 0))
        rows.append(OracleRow("explicit_ker_phi", True, e.ker_phi() == ker_phi(c), 0, 0))
        rows.append(OracleRow("explicit_ideal_maps", True, all(
            e.image_ideal(s) == image_ideal(c, s) and e.preimage_ideal(s) == preimage_ideal(c, s)
            for s in range(c.full + 1)), 0, 0))
        rows.append(OracleRow("explicit_j_of_ideal", True, all(
            e.j_of_ideal(s) == j_of_ideal(c, s) for s in range(c.full + 1) if is_positively_invariant(c, s)), 0, 0))
        if c.linear_dim <= 12:
            rows.append(OracleRow("explicit_tensor_square", True,
                                  e.tensor_square_dim() == tensor_power(c, 2).linear_dim, 0, 0))
    return rows


def require_kind(doc: InstanceDoc, *kinds: str) -> None:
    if doc.kind not in kinds:
        raise InvalidInput(f"this command needs a {' or '.join(kinds)} document, got {doc.kind}")
