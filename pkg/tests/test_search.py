"""Witness certificates, per-order checks, and the downward threshold scan."""

from __future__ import annotations

import json
import math

import pytest

from gallai.canonical import MODE_VERTEX_AND_COLOR, canonical_form
from gallai.constructions import sporadic
from gallai.graphs import ColoredComplete, TargetGraph, UnsupportedSizeError, parse_hspec
from gallai.search import (
    STATUS_ALL_GOOD,
    STATUS_BAD,
    STATUS_NO_EXACT,
    WitnessFailure,
    brute_force_colorings,
    check_n,
    compute_gr,
    rainbow_p5free_classes,
    replay_certificate,
    verify_witness,
)
from gallai.structure import enumerate_p5free


class TestVerifyWitness:
    def test_accepts_valid(self):
        cert = verify_witness(sporadic("F3"), parse_hspec("S4^1"), label="F3")
        assert cert.order == 5
        assert cert.rainbow_absent
        assert cert.mono_absent == (1, 2, 3, 4)
        assert cert.label == "F3"

    def test_rejects_rainbow(self):
        from gallai.detectors import RAINBOW_PATH

        c = ColoredComplete(5, 10, tuple(range(1, 11)))
        with pytest.raises(WitnessFailure) as exc:
            verify_witness(c, TargetGraph.complete(6))
        assert "rainbow" in str(exc.value)
        assert exc.value.embedding.kind == RAINBOW_PATH

    def test_rejects_mono_copy(self):
        # two colors cannot make a rainbow 4-edge path, so the mono triangle
        # is the only possible failure
        c = ColoredComplete.constant(5, 2, 1).recolored(3, 4, 2)
        with pytest.raises(WitnessFailure) as exc:
            verify_witness(c, TargetGraph.complete(3))
        assert exc.value.embedding.color == 1
        assert len(exc.value.embedding.vertices) == 3

    def test_rejects_inexact(self):
        c = ColoredComplete.constant(5, 3, 1)
        with pytest.raises(ValueError, match="all 3 colors"):
            verify_witness(c, TargetGraph.complete(7))

    def test_json_replay_round_trip(self):
        cert = verify_witness(sporadic("F3"), parse_hspec("S4^1"), label="F3")
        blob = json.dumps(cert.to_json_dict())
        replayed = replay_certificate(json.loads(blob))
        assert replayed == cert

    def test_replay_rejects_tampered(self):
        cert = verify_witness(sporadic("F3"), parse_hspec("S4^1"))
        data = cert.to_json_dict()
        # flatten every edge to color 1: no longer exact in 4 colors
        data["coloring"]["edges"] = [
            [i, j, 1] for i, j, _ in data["coloring"]["edges"]
        ]
        with pytest.raises((WitnessFailure, ValueError)):
            replay_certificate(data)


class TestBruteForce:
    def test_count_matches_surjection_formula(self):
        """Exact colorings of C(n,2) edges with k colors, counted by
        inclusion-exclusion: sum (-1)^i C(k,i) (k-i)^m."""
        for n, k in ((3, 2), (4, 2), (4, 3), (5, 2)):
            m = n * (n - 1) // 2
            want = sum(
                (-1) ** i * math.comb(k, i) * (k - i) ** m for i in range(k + 1)
            )
            got = sum(1 for _ in brute_force_colorings(n, k))
            assert got == want

    def test_refuses_oversized(self):
        with pytest.raises(UnsupportedSizeError):
            list(brute_force_colorings(8, 9))


class TestGroundTruthOracle:
    def test_matches_guided_enumeration(self):
        for k in (4, 5, 6):
            want = rainbow_p5free_classes(5, k)
            got = {
                canonical_form(c, MODE_VERTEX_AND_COLOR)
                for c in enumerate_p5free(5, k)
            }
            assert got == want

    def test_supports_only_order_five(self):
        with pytest.raises(UnsupportedSizeError):
            rainbow_p5free_classes(6, 4)
        with pytest.raises(ValueError):
            rainbow_p5free_classes(4, 4)

    def test_empty_when_colors_exceed_edges(self):
        assert rainbow_p5free_classes(5, 11) == frozenset()


class TestCheckN:
    def test_no_exact_colorings(self):
        out = check_n(parse_hspec("S4^1"), 7, 3)
        assert out.status == STATUS_NO_EXACT
        assert out.examined == 0

    def test_bad_at_small_order(self):
        out = check_n(parse_hspec("S4^1"), 4, 5)
        assert out.status == STATUS_BAD
        assert out.witness is not None
        assert out.witness.order == 5

    def test_bad_witness_is_canonically_smallest(self):
        """The reported witness must be the first bad class in canonical-key
        order, independent of scan schedule."""
        out1 = check_n(parse_hspec("S4^1"), 4, 5, threads=1)
        out8 = check_n(parse_hspec("S4^1"), 4, 5, threads=8)
        assert out1.witness.coloring == out8.witness.coloring
        bad_keys = [
            canonical_form(c, MODE_VERTEX_AND_COLOR)
            for c in enumerate_p5free(5, 4)
            if __import__("gallai.detectors", fromlist=["find_mono_copy"]).find_mono_copy(
                c, parse_hspec("S4^1")
            )
            is None
        ]
        assert (
            canonical_form(out1.witness.coloring, MODE_VERTEX_AND_COLOR)
            == min(bad_keys)
        )

    def test_sporadic_class_among_bad_witnesses(self):
        """The 5-vertex sporadic coloring is bad for this target, so its
        class must appear among the bad classes at this order."""
        from gallai.detectors import find_mono_copy

        H = parse_hspec("S4^1")
        bad = {
            canonical_form(c, MODE_VERTEX_AND_COLOR)
            for c in enumerate_p5free(5, 4)
            if find_mono_copy(c, H) is None
        }
        assert canonical_form(sporadic("F3"), MODE_VERTEX_AND_COLOR) in bad

    def test_all_good_case(self):
        out = check_n(parse_hspec("S4^1"), 4, 6)
        assert out.status == STATUS_ALL_GOOD
        assert out.witness is None
        assert out.examined > 0

    def test_small_order_brute_force_path(self):
        # K4 admits no 4-edge path, so exactness is the only filter
        out = check_n(parse_hspec("S4^1"), 5, 4)
        assert out.status == STATUS_BAD
        out6 = check_n(parse_hspec("K2"), 6, 4)
        assert out6.status == STATUS_ALL_GOOD  # K2 embeds in any edge

    def test_rejects_k_up_to_three(self):
        with pytest.raises(ValueError):
            check_n(parse_hspec("S4^1"), 3, 6)


class TestComputeGr:
    def test_values_match_formulas_on_small_stars(self):
        """Search agrees with the closed forms for k in [4, 8] where the
        search space is within reach."""
        from gallai.formulas import evaluate

        for spec, k in (
            ("S4^1", 4), ("S4^1", 5), ("S4^1", 6), ("S4^1", 7), ("S4^1", 8),
            ("S5^1", 4), ("S5^1", 5), ("S5^1", 6), ("S5^1", 7),
        ):
            H = parse_hspec(spec)
            want = evaluate(H, k).value
            got = compute_gr(H, k, n_max=8)
            assert got.status == "exact"
            assert got.value == want, (spec, k)

    def test_trivial_target_reduces_to_color_capacity(self):
        """Any target contained in a single edge forces the threshold to the
        least order carrying k colors."""
        got = compute_gr(parse_hspec("K2"), 7, n_max=8)
        assert got.value == 5  # C(5,2) = 10 >= 7 > C(4,2)

    def test_inconclusive_when_top_is_bad(self):
        res = compute_gr(parse_hspec("K9"), 4, n_max=6)
        assert res.status == "inconclusive"
        assert res.value is None
        assert res.outcomes[0].status == STATUS_BAD

    def test_outcomes_run_downward_contiguously(self):
        res = compute_gr(parse_hspec("S4^1"), 4, n_max=8)
        orders = [o.n for o in res.outcomes]
        assert orders == [8, 7, 6, 5]
        assert [o.status for o in res.outcomes] == [
            STATUS_ALL_GOOD, STATUS_ALL_GOOD, STATUS_ALL_GOOD, STATUS_BAD,
        ]
        assert res.value == 6

    def test_json_report_shape(self):
        res = compute_gr(parse_hspec("S4^1"), 5, n_max=6)
        d = res.to_json_dict()
        assert d["value"] == 5
        assert d["status"] == "exact"
        assert len(d["outcomes"]) == len(res.outcomes)
