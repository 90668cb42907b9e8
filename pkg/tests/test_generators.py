from collections import Counter
from itertools import combinations
from math import comb, sqrt

import numpy as np
import pytest
from conftest import sets_to_masks
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from randcomplex import (
    AdmissiblePair,
    check_admissible,
    decompose_bundles,
    free_sets,
    has_complete_skeleton,
    mask_of,
    sample_admissible_pair,
    sample_pure_random,
    sample_uniform_layer,
)
from randcomplex.generators import AdmissibilityError, bernoulli_indices, size_bound


class TestBundles:
    def test_two_bundles(self):
        fam = sets_to_masks([(1, 2), (2, 3), (4, 5)])
        got = sorted(sorted(b) for b in decompose_bundles(fam))
        assert got == sorted([sorted(sets_to_masks([(1, 2), (2, 3)])), [mask_of((4, 5))]])

    def test_transitive(self):
        assert len(decompose_bundles(sets_to_masks([(1, 2), (2, 3), (3, 4)]))) == 1

    def test_empty(self):
        assert decompose_bundles([]) == []

    def test_mixed_sizes(self):
        with pytest.raises(ValueError):
            decompose_bundles(sets_to_masks([(1, 2), (1, 2, 3)]))


class TestAdmissible:
    def test_vacuous(self):
        assert check_admissible(8, 4, [], [])

    def test_containment(self):
        report = check_admissible(6, 3, [mask_of((1, 2))], [mask_of((1, 2, 3, 4))])
        assert not report and any("clause 4" in v for v in report.violations)

    def test_three_bundle(self):
        a = sets_to_masks([(1, 2), (2, 3), (3, 4)])
        report = check_admissible(10, 3, a, [])
        assert not report and any("clause 5" in v for v in report.violations)

    def test_sizes(self):
        a = [mask_of(s) for s in list(combinations(range(1, 7), 2))[:9]]
        assert not check_admissible(6, 3, a, [])  # 9 > 2^3

    def test_zero_sizes(self):
        pair = sample_admissible_pair(8, 4, rng=np.random.default_rng(0))
        assert pair.A == () and pair.B == ()

    def test_one_two_bundle(self):
        pair = sample_admissible_pair(12, 6, size_a=2, pairs_a=1, rng=np.random.default_rng(1))
        assert len(pair.A) == 2
        assert [len(b) for b in decompose_bundles(pair.A)] == [2]
        assert check_admissible(12, 6, pair.A, pair.B)

    def test_size_bound_exceeded(self):
        with pytest.raises(AdmissibilityError):
            sample_admissible_pair(8, 4, size_a=int(size_bound(8)) + 1)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(0, 4), st.integers(0, 4))
    def test_sampled_pairs_are_admissible(self, seed, sa, sb):
        pair = sample_admissible_pair(10, 5, sa, sb, sa // 2, sb // 2, np.random.default_rng(seed))
        assert check_admissible(10, 5, pair.A, pair.B)
        assert (len(pair.A), len(pair.B)) == (sa, sb)


class TestFreeSets:
    def test_all_triples(self):
        assert len(free_sets(AdmissiblePair(6, 3))) == 20

    def test_none_free(self):
        pair = AdmissiblePair(4, 2, (mask_of([1]),), (mask_of((2, 3, 4)),))
        assert free_sets(pair) == []

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_count_lower_bound(self, seed):
        n, t = 10, 5
        pair = sample_admissible_pair(n, t, 3, 3, 1, 1, np.random.default_rng(seed))
        free = free_sets(pair)
        assert len(free) >= comb(n, t) - (n - t + 1) * len(pair.A) - (t + 1) * len(pair.B)
        brute = [sum(1 << i for i in s) for s in combinations(range(n), t)]
        brute = [s for s in brute if not any(s & a == a for a in pair.A)
                 and not any(s & b == s for b in pair.B)]
        assert sorted(free) == sorted(brute)


class _AllHeads:
    def __init__(self, value):
        self.value = value

    def random(self, size):
        return np.full(size, self.value)


class TestUniformLayer:
    def test_all_chosen(self):
        cx = sample_uniform_layer(AdmissiblePair(6, 3), _AllHeads(0.0))
        assert cx.facet_count == 20 and has_complete_skeleton(cx, 3)

    def test_none_chosen(self):
        cx = sample_uniform_layer(AdmissiblePair(6, 3), _AllHeads(0.99))
        assert not cx.faces

    def test_edges_uniform_chi_square(self):
        rng = np.random.default_rng(20240601)
        pair = AdmissiblePair(4, 2)
        free = free_sets(pair)
        counts = Counter(sample_uniform_layer(pair, rng, free).facets for _ in range(100_000))
        edges = list(combinations(range(4), 2))
        all_graphs = []
        for bits in range(64):
            chosen = [sum(1 << v for v in edges[i]) for i in range(6) if bits >> i & 1]
            all_graphs.append(tuple(sorted(chosen)))
        observed = [counts.get(g, 0) for g in all_graphs]
        assert sum(observed) == 100_000  # every outcome is a graph on [4]
        assert chisquare(observed).pvalue > 1e-3

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_structure(self, seed):
        rng = np.random.default_rng(seed)
        pair = sample_admissible_pair(8, 4, 2, 3, 1, 1, rng)
        cx = sample_uniform_layer(pair, rng)
        facets = set(cx.facets)
        assert set(pair.A) <= facets and set(pair.B) <= facets
        free = set(free_sets(pair))
        assert all(f in free for f in facets - set(pair.A) - set(pair.B))
        assert set(cx.faces_of_size(5)) == set(pair.B)
        assert cx.dim_size <= 5


class TestPureRandom:
    def test_p_one(self):
        cx = sample_pure_random(7, 3, 1.0, np.random.default_rng(0))
        assert cx.facet_count == comb(7, 3) and has_complete_skeleton(cx, 3)

    def test_p_zero(self):
        assert sample_pure_random(7, 3, 0.0, np.random.default_rng(0)).facet_count == 0

    def test_mean_facet_count(self):
        rng = np.random.default_rng(5)
        n, t, p = 20, 3, 0.1
        counts = [sample_pure_random(n, t, p, rng).facet_count for _ in range(1000)]
        mu = p * comb(n, t)
        sigma = sqrt(comb(n, t) * p * (1 - p) / 1000)
        assert abs(np.mean(counts) - mu) < 3 * sigma

    def test_reproducible(self):
        a = sample_pure_random(12, 4, 0.3, np.random.default_rng(9))
        b = sample_pure_random(12, 4, 0.3, np.random.default_rng(9))
        assert a == b

    @given(st.integers(0, 2**32 - 1), st.floats(0, 1), st.floats(0, 1))
    def test_monotone_coupling(self, seed, p1, p2):
        lo, hi = sorted((p1, p2))
        a = set(sample_pure_random(9, 3, lo, np.random.default_rng(seed)).facets)
        b = set(sample_pure_random(9, 3, hi, np.random.default_rng(seed)).facets)
        assert a <= b

    def test_bad_probability(self):
        with pytest.raises(ValueError):
            bernoulli_indices(10, 1.5, np.random.default_rng(0))
