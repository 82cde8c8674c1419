"""
Tests for peak enumeration, ascent-graph exploration and the gadget peak table
"""

import pytest

from src import oracle
from src.constructions import (
    BridgeConvention,
    CdParams,
    GadgetBoundary,
    build_cd_gadget,
    cd_end,
    cd_start,
)
from src.errors import BudgetExceeded, TooLarge
from src.oracle import (
    enumerate_peaks,
    explore_ascent_graph,
    printed_peaks,
    verify_peak_table,
)
from src.search import audit_uniqueness, run_ascent
from src.vcsp import Assignment, is_local_peak

from .conftest import unary_instance

# Peaks of gadget 2 in a chain with n = 4, with x(k-1,1) = 0
TRUE_PEAKS = {
    (0, 0, 0): ["00000000", "01100101"],
    (0, 0, 1): ["00000000", "01100101"],
    (0, 1, 0): ["00000011"],
    (0, 1, 1): ["00000011"],
    (1, 0, 0): ["11100100", "11111001"],
    (1, 0, 1): ["11111001"],
    (1, 1, 0): ["11111010"],
    (1, 1, 1): ["11111011"],
}


class TestEnumeratePeaks:
    def test_unaries_only(self, smooth3):
        assert enumerate_peaks(smooth3) == [Assignment.zeros(3)]
        assert enumerate_peaks(unary_instance([2, 1])) == [Assignment.from_string("11")]

    def test_every_peak_is_local(self):
        gadget = build_cd_gadget(4, 2, GadgetBoundary(P=1))
        peaks = enumerate_peaks(gadget)
        assert peaks
        assert all(is_local_peak(gadget, x) for x in peaks)
        assert [p.to_int() for p in peaks] == sorted(p.to_int() for p in peaks)

    def test_limit(self, chain2):
        with pytest.raises(TooLarge) as info:
            enumerate_peaks(chain2, limit=15)
        assert info.value.exit_code == 3

    def test_workers_agree(self, monkeypatch):
        monkeypatch.setattr(oracle, "BLOCK_SIZE", 16)
        gadget = build_cd_gadget(4, 2, GadgetBoundary(P=1, R=1))
        assert enumerate_peaks(gadget, workers=2) == enumerate_peaks(gadget)

    def test_designated_endpoints_are_peaks(self, chain2, chain2_reverse):
        params = CdParams.square(2)
        assert cd_end(params) in enumerate_peaks(chain2)
        assert cd_start(params) in enumerate_peaks(chain2_reverse)

    def test_ascents_end_at_peaks(self):
        gadget = build_cd_gadget(3, 2, GadgetBoundary(P=1, Q=1))
        peaks = set(enumerate_peaks(gadget))
        for code in range(0, 256, 7):
            trace = run_ascent(gadget, Assignment.from_int(code, 8), max_steps=1000)
            assert trace.end in peaks


class TestExplore:
    def test_forward_chain_has_one_path(self, chain2):
        report = explore_ascent_graph(chain2, Assignment.zeros(16))
        assert report.unique_maximal_path
        assert report.path_length == 30
        assert report.peaks_reached == [cd_end(CdParams.square(2))]
        assert report.max_out_degree == 1
        assert report.longest_ascent == report.shortest_ascent == 30

    def test_reverse_chain_has_one_path(self, chain2_reverse):
        start = cd_start(CdParams.from_meta(chain2_reverse.meta))
        report = explore_ascent_graph(chain2_reverse, start)
        assert report.unique_maximal_path
        assert report.path_length == 30
        assert report.peaks_reached == [Assignment.zeros(16)]

    def test_interleavable_flips(self, two_positive):
        report = explore_ascent_graph(two_positive, Assignment.zeros(2))
        assert report.reachable_count == 4
        assert report.max_out_degree == 2
        assert not report.unique_maximal_path
        assert report.path_length is None
        assert report.longest_ascent == report.shortest_ascent == 2
        assert report.to_dict()["peaks_reached"] == ["11"]

    def test_agrees_with_audit(self):
        gadget = build_cd_gadget(3, 2, GadgetBoundary(P=1))
        start = Assignment.zeros(8)
        unique, trace = audit_uniqueness(gadget, start)
        report = explore_ascent_graph(gadget, start)
        if unique:
            assert report.unique_maximal_path
            assert report.path_length == trace.length
        assert trace.end in report.peaks_reached

    def test_node_limit(self, chain2):
        with pytest.raises(BudgetExceeded):
            explore_ascent_graph(chain2, Assignment.zeros(16), node_limit=5)


class TestPeakTable:
    def test_printed_rows_resolve_b_bit(self):
        assert printed_peaks(1, 0, 1) == ["11100101", "11111001"]
        assert printed_peaks(0, 0, 1) == ["00000000", "01100101"]

    def test_true_peaks(self):
        report = verify_peak_table(4, 2)
        found = {(row.P, row.Q, row.R): row.found for row in report.rows}
        assert found == TRUE_PEAKS

    def test_mismatches_are_explained(self):
        report = verify_peak_table(4, 2)
        assert not report.all_match
        matching = {(row.P, row.Q, row.R) for row in report.rows if row.matches}
        assert matching == {(0, 0, 0), (0, 0, 1), (1, 0, 0)}
        for row in report.mismatches():
            assert set(row.disqualified) == set(row.missing)
            for _, delta in row.disqualified.values():
                assert delta > 0

    def test_selected_contexts(self):
        report = verify_peak_table(4, 2, BridgeConvention.A_SIDE, contexts=[(1, 1, 1)])
        (row,) = report.rows
        assert row.unexpected == ["11111011"]
        assert report.to_dict()["assumption"].startswith("S")

    @pytest.mark.parametrize("convention", list(BridgeConvention))
    @pytest.mark.parametrize("n, k", [(3, 2), (5, 3), (4, 1), (6, 3)])
    def test_true_peaks_at_other_scales(self, n, k, convention):
        report = verify_peak_table(n, k, convention)
        found = {(row.P, row.Q, row.R): row.found for row in report.rows}
        assert found == TRUE_PEAKS
        matching = {(row.P, row.Q, row.R) for row in report.rows if row.matches}
        assert matching == {(0, 0, 0), (0, 0, 1), (1, 0, 0)}


class TestPeakTableLastGadget:
    """With n = k the bridge scale is zero and the A-side bridge-out weight is -2"""

    # R = 1 rows when the bridge scale is zero
    A_SIDE_R1 = {
        (0, 0, 1): ["00000000"],
        (0, 1, 1): ["00000010"],
        (1, 0, 1): ["11100100", "11111000"],
        (1, 1, 1): ["11111010"],
    }
    B_SIDE_R1 = {
        (0, 0, 1): ["00000000", "01100101"],
        (0, 1, 1): ["00000011"],
        (1, 0, 1): ["11100100", "11111001"],
        (1, 1, 1): ["11111010"],
    }

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_a_side(self, k):
        report = verify_peak_table(k, k, BridgeConvention.A_SIDE)
        found = {(row.P, row.Q, row.R): row.found for row in report.rows}
        for context, peaks in found.items():
            expected = self.A_SIDE_R1 if context[2] else TRUE_PEAKS
            assert peaks == expected[context], context
        matching = {(row.P, row.Q, row.R) for row in report.rows if row.matches}
        assert matching == {(0, 0, 0), (1, 0, 0)}

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_b_side(self, k):
        report = verify_peak_table(k, k, BridgeConvention.B_SIDE)
        found = {(row.P, row.Q, row.R): row.found for row in report.rows}
        for context, peaks in found.items():
            expected = self.B_SIDE_R1 if context[2] else TRUE_PEAKS
            assert peaks == expected[context], context

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_zero_bridge_rows_match_three_gadgets_later(self, k):
        last = verify_peak_table(k, k).rows
        later = verify_peak_table(k + 3, k).rows
        for a, b in zip(last, later):
            if a.R == 0:
                assert a.found == b.found
        assert {(r.P, r.Q, r.R): r.found for r in later} == TRUE_PEAKS
