"""Structure classification, reduced partitions, and guided enumeration."""

from __future__ import annotations

import random

import pytest

from gallai.canonical import MODE_VERTEX_AND_COLOR, canonical_form
from gallai.constructions import sporadic
from gallai.detectors import find_rainbow_path
from gallai.graphs import ColoredComplete, UnsupportedSizeError, edge_count
from gallai.structure import (
    classify_p4free,
    classify_p5free,
    enumerate_p5free,
    find_gallai_partition,
    parallel_map,
    resolve_threads,
    verify_gallai_partition,
)


def _random_coloring(rng, n_min, n_max, k_min=2, k_max=8):
    n = rng.randint(n_min, n_max)
    k = rng.randint(k_min, k_max)
    colors = tuple(rng.randint(1, k) for _ in range(edge_count(n)))
    return ColoredComplete(n, k, colors)


class TestClassifyP4:
    def test_two_colors_case_a(self):
        c = ColoredComplete.constant(5, 2, 1)
        rep = classify_p4free(c)
        assert rep.case == "a" and rep.rainbow is None

    def test_three_one_factors_case_b(self):
        c = ColoredComplete.from_edge_triples(
            4,
            3,
            ((0, 1, 1), (2, 3, 1), (0, 2, 2), (1, 3, 2), (0, 3, 3), (1, 2, 3)),
        )
        rep = classify_p4free(c)
        assert rep.case == "b"

    def test_rainbow_when_unstructured(self):
        c = ColoredComplete.from_edge_triples(
            4,
            3,
            ((0, 1, 1), (2, 3, 1), (0, 2, 2), (1, 3, 3), (0, 3, 3), (1, 2, 2)),
        )
        rep = classify_p4free(c)
        assert rep.case is None
        assert rep.rainbow is not None

    def test_conformance_2000(self):
        """Exactly one of: a structure case applies, or a rainbow 3-edge
        path exists."""
        rng = random.Random(1009)
        for _ in range(2000):
            c = _random_coloring(rng, 4, 8)
            rep = classify_p4free(c)
            assert (rep.case is not None) == (rep.rainbow is None)


class TestClassifyP5:
    def test_three_colors_case_a(self):
        c = ColoredComplete.constant(6, 3, 2)
        rep = classify_p5free(c)
        assert "a" in rep.cases
        assert rep.rainbow is None

    def test_sporadic_is_case_f_only(self):
        rep = classify_p5free(sporadic("TW-case-f"))
        assert rep.cases == frozenset({"f"})

    def test_dominant_color_case_b(self):
        # two disjoint red K2s inside an otherwise blue K6, plus one green edge
        triples = []
        special = {(0, 1): 2, (2, 3): 2, (4, 5): 3}
        for i in range(6):
            for j in range(i + 1, 6):
                triples.append((i, j, special.get((i, j), 1)))
        rep = classify_p5free(ColoredComplete.from_edge_triples(6, 3, triples))
        assert "a" in rep.cases  # only 3 colors used
        assert "b" in rep.cases
        assert rep.witnesses["b"][0] == 1  # dominant color

    def test_apex_case_c(self):
        # K6 in color 1 plus an apex with rainbow spokes
        triples = [(i, j, 1) for i in range(6) for j in range(i + 1, 6)]
        triples += [(i, 6, i + 2) for i in range(6)]
        rep = classify_p5free(ColoredComplete.from_edge_triples(7, 7, triples))
        assert "c" in rep.cases
        apex, _ = rep.witnesses["c"]
        assert apex == 6

    def test_triangle_case_d(self):
        # E2={ab}, E3={ac}, E4={bc} plus one extra color-4 edge at a
        special = {(0, 1): 2, (0, 2): 3, (1, 2): 4, (0, 3): 4}
        triples = []
        for i in range(6):
            for j in range(i + 1, 6):
                triples.append((i, j, special.get((i, j), 1)))
        rep = classify_p5free(ColoredComplete.from_edge_triples(6, 4, triples))
        assert "d" in rep.cases

    def test_matchings_case_e(self):
        # on {0,1,2,3}: color 2 = {01, 23}, color 3 = {02, 13}, color 4 = {03, 12}
        special = {
            (0, 1): 2, (2, 3): 2,
            (0, 2): 3, (1, 3): 3,
            (0, 3): 4, (1, 2): 4,
        }
        triples = []
        for i in range(6):
            for j in range(i + 1, 6):
                triples.append((i, j, special.get((i, j), 1)))
        rep = classify_p5free(ColoredComplete.from_edge_triples(6, 4, triples))
        assert "e" in rep.cases

    def test_conformance_2000(self):
        rng = random.Random(40320)
        for _ in range(2000):
            c = _random_coloring(rng, 5, 9)
            rep = classify_p5free(c)  # internally cross-checked
            assert bool(rep.cases) == (rep.rainbow is None)

    def test_requires_five_vertices(self):
        with pytest.raises(ValueError):
            classify_p5free(ColoredComplete.constant(4, 2))


class TestGallaiPartition:
    def test_two_coloring_has_partition(self):
        rng = random.Random(12)
        for _ in range(100):
            c = _random_coloring(rng, 3, 7, k_min=2, k_max=2)
            blocks = find_gallai_partition(c)
            assert blocks is not None
            assert verify_gallai_partition(c, blocks)

    def test_rainbow_triangle_has_none(self):
        c = ColoredComplete.from_edge_triples(3, 3, ((0, 1, 1), (0, 2, 2), (1, 2, 3)))
        assert find_gallai_partition(c) is None

    def test_verify_rejects_bad_partition_shape(self):
        c = ColoredComplete.constant(4, 2)
        with pytest.raises(ValueError):
            verify_gallai_partition(c, (frozenset({0, 1, 2, 3}),))
        with pytest.raises(ValueError):
            verify_gallai_partition(c, (frozenset({0}), frozenset({1})))

    def test_found_partitions_verify_2000(self):
        """Whenever the search returns blocks, they pass the checker; when
        it returns None, no bipartition into singleton blocks works either
        (spot-checked via a rainbow triangle witness)."""
        rng = random.Random(999)
        found = 0
        for _ in range(2000):
            c = _random_coloring(rng, 3, 7, k_min=2, k_max=5)
            blocks = find_gallai_partition(c)
            if blocks is not None:
                found += 1
                assert verify_gallai_partition(c, blocks)
        assert found > 0

    def test_size_cap(self):
        with pytest.raises(UnsupportedSizeError):
            find_gallai_partition(ColoredComplete.constant(11, 2))


class TestEnumerate:
    def test_counts_at_order_five(self):
        assert len(enumerate_p5free(5, 4)) == 8
        assert len(enumerate_p5free(5, 5)) == 1

    def test_all_emitted_are_sound(self):
        """Every representative is exact, canonical, and rainbow-free."""
        for n, k in ((5, 4), (6, 4), (5, 5), (6, 5), (5, 6)):
            reps = enumerate_p5free(n, k)
            keys = [canonical_form(c, MODE_VERTEX_AND_COLOR) for c in reps]
            assert keys == sorted(keys)
            assert len(set(keys)) == len(keys)
            for c in reps:
                assert c.n == n and c.k == k
                assert c.exact
                assert find_rainbow_path(c, 4) is None

    def test_structure_cases_cover_enumeration(self):
        from gallai.structure import classify_p5free as classify

        for c in enumerate_p5free(6, 4):
            assert classify(c).cases

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            enumerate_p5free(4, 4)
        with pytest.raises(ValueError):
            enumerate_p5free(5, 3)
        with pytest.raises(UnsupportedSizeError):
            enumerate_p5free(10, 4)
        with pytest.raises(UnsupportedSizeError):
            enumerate_p5free(5, 13)

    def test_thread_count_does_not_change_output(self):
        one = enumerate_p5free(6, 5, threads=1)
        many = enumerate_p5free(6, 5, threads=8)
        assert one == many


class TestParallelHelpers:
    def test_resolve_threads_explicit_wins(self, monkeypatch):
        monkeypatch.setenv("GALLAI_THREADS", "3")
        assert resolve_threads(2) == 2
        assert resolve_threads(None) == 3

    def test_resolve_threads_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            resolve_threads(0)

    def test_resolve_threads_env_invalid(self, monkeypatch):
        monkeypatch.setenv("GALLAI_THREADS", "zero")
        with pytest.raises(ValueError):
            resolve_threads(None)

    def test_parallel_map_preserves_order(self):
        items = list(range(100))
        assert parallel_map(lambda x: x * x, items, 4) == [x * x for x in items]
        assert parallel_map(lambda x: x * x, items, 1) == [x * x for x in items]
