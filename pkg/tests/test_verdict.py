import pytest

from cpuniq.corr import FinCorr
from cpuniq.errors import IdealNotInJX, NotAQuiver
from cpuniq.verdict import (
    AnalysisReport,
    EndoSystem,
    FinQuiver,
    from_endomorphism,
    from_quiver,
    quiver_tf_pair,
    simplicity_verdict,
    toeplitz_verdict,
    uniqueness_verdict,
)

SWAP = FinCorr.of([[0, 1], [1, 0]])


def test_uniqueness_examples():
    assert uniqueness_verdict(FinCorr.of([[2]]), 1).flags["uniqueness"]
    r = uniqueness_verdict(FinCorr.of([[1]]), 1)
    assert not r.flags["uniqueness"]
    assert r.witnesses["cyclic_ideal"] == {"ideal": [0], "period": 1}
    assert r.witnesses["no_entrance_cycle"]["cycle"]["vertices"] == [0]
    assert not uniqueness_verdict(SWAP, 0b11).flags["uniqueness"]
    assert uniqueness_verdict(SWAP, 0).flags["uniqueness"]


def test_uniqueness_rejects_ideal_outside_jx():
    with pytest.raises(IdealNotInJX):
        uniqueness_verdict(FinCorr.of([[0, 1], [0, 0]]), 0b10)


@pytest.mark.parametrize("mult", [[[1]], [[2]], [[0, 1], [1, 0]], [[0]]])
def test_toeplitz_always_unique(mult):
    r = toeplitz_verdict(FinCorr.of(mult))
    assert r.flags["uniqueness"]
    assert r.flags == uniqueness_verdict(FinCorr.of(mult), 0).flags


def test_simplicity_examples():
    f = simplicity_verdict(FinCorr.of([[2]])).flags
    assert f["simple"] and f["gauge_trivial"]
    f = simplicity_verdict(FinCorr.of([[1]])).flags
    assert f["gauge_trivial"] and not f["uniqueness"] and not f["simple"]


def test_source_to_sink_edge_is_simple():
    # the invariant ideal {1} has J({1}) = {1}, which cannot hold J_X = {0}: no extra T-pair
    r = simplicity_verdict(FinCorr.of([[0, 1], [0, 0]]))
    assert r.counts["gauge_ideal_count"] == 2
    assert r.flags["gauge_trivial"] and r.flags["quasi_nilpotent"] and r.flags["simple"]


def test_smaller_ideal_is_never_simple():
    r = uniqueness_verdict(FinCorr.of([[2]]), 0)
    assert not r.flags["gauge_trivial"]
    assert r.counts["gauge_ideal_count"] == 3


def test_report_json_round_trip():
    r = simplicity_verdict(FinCorr.of([[1, 1], [0, 1]]))
    again = AnalysisReport.from_json(r.to_json())
    assert again.to_json() == r.to_json()
    assert again.to_dict() == r.to_dict()


class TestQuivers:
    def test_counting_measure_two_cycle_is_its_own_dual(self):
        q = FinQuiver.of(2, [(0, 1, 1), (1, 0, 1)])
        c, j = from_quiver(q)
        assert c.mult == ((0, 1), (1, 0))
        assert j == 0b11
        assert quiver_tf_pair(q) == (False, False)

    def test_zero_weight_edges_vanish(self):
        c, _ = from_quiver(FinQuiver.of(2, [(0, 1, "0.5"), (1, 0, 0)]))
        assert c.mult == ((0, 0), (1, 0))

    def test_empty_quiver(self):
        c, j = from_quiver(FinQuiver.of(2, []))
        assert c.dual_graph.edges == () and j == 0

    def test_two_loops_and_chain(self):
        assert quiver_tf_pair(FinQuiver.of(1, [(0, 0, 1), (0, 0, "1/3")])) == (True, True)
        assert quiver_tf_pair(FinQuiver.of(2, [(0, 1, 2)])) == (True, True)

    def test_zero_weight_is_not_a_quiver(self):
        with pytest.raises(NotAQuiver):
            quiver_tf_pair(FinQuiver.of(2, [(0, 1, 0)]))


class TestEndomorphisms:
    @pytest.mark.parametrize("index", [1, 2, 3, 4, 5])
    def test_single_point_index(self, index):
        c = from_endomorphism(EndoSystem(1, {0: 0}, {0: index}))
        assert c.mult == ((index,),)
        assert simplicity_verdict(c).flags["uniqueness"] == (index > 1)

    def test_empty_domain(self):
        assert from_endomorphism(EndoSystem(2, {}, {})).mult == ((0, 0), (0, 0))
