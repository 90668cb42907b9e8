from functools import lru_cache
from itertools import combinations

import pytest
from conftest import complexes, monotone_by_filter
from hypothesis import given, settings
from hypothesis import strategies as st

from randcomplex import SimplicialComplex, alexander_dual, mask_of
from randcomplex.boolean import (
    ArityBudgetError,
    MonotoneBooleanFunction,
    NonMonotoneError,
    complex_of_function,
    decision_tree_complexity,
    enumerate_monotone,
    evasive_census,
    function_of_complex,
    is_evasive,
    kss_consistency,
)


def count_up_sets(n):
    """Count antichains of the cube (equivalently up-sets) by include/exclude recursion."""
    elems = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))

    def comparable(a, b):
        return a & b in (a, b)

    def rec(i, chosen):
        if i == len(elems):
            return 1
        total = rec(i + 1, chosen)
        if not any(comparable(elems[i], c) for c in chosen):
            total += rec(i + 1, chosen + [elems[i]])
        return total

    return rec(0, [])


def depth_by_assignments(n, table):
    """D(f) as a minimax over partial assignments, independent of truth-table restriction."""

    @lru_cache(maxsize=None)
    def solve(fixed_mask, fixed_vals):
        free = [i for i in range(n) if not fixed_mask >> i & 1]
        outputs = set()
        for bits in range(1 << len(free)):
            x = fixed_vals
            for j, i in enumerate(free):
                if bits >> j & 1:
                    x |= 1 << i
            outputs.add(table >> x & 1)
            if len(outputs) > 1:
                break
        if len(outputs) == 1:
            return 0
        return min(1 + max(solve(fixed_mask | 1 << i, fixed_vals),
                           solve(fixed_mask | 1 << i, fixed_vals | 1 << i)) for i in free)

    return solve(0, 0)


def fn(n, predicate):
    return MonotoneBooleanFunction(n, sum(1 << x for x in range(1 << n) if predicate(x)))


def OR(n):
    return fn(n, lambda x: x != 0)


def AND(n):
    return fn(n, lambda x: x == (1 << n) - 1)


def proj(n, i):
    return fn(n, lambda x: x >> i & 1)


class TestValidation:
    def test_non_monotone(self):
        with pytest.raises(NonMonotoneError) as err:
            MonotoneBooleanFunction(2, 0b0010)  # f(x1=1)=1, f(x1=x2=1)=0
        assert err.value.pair == ((1,), (1, 2))

    def test_width(self):
        with pytest.raises(ValueError):
            MonotoneBooleanFunction(1, 0b100)

    def test_hex_roundtrip(self):
        f = AND(3)
        assert MonotoneBooleanFunction.from_hex(3, f.to_hex()) == f

    def test_call(self):
        f = fn(3, lambda x: bin(x).count("1") >= 2)
        assert f([1, 1, 0]) == 1 and f([0, 0, 1]) == 0


class TestComplexBridge:
    def test_or_gives_empty_complex(self):
        cx = complex_of_function(OR(4))
        assert not cx.faces and not cx.void

    def test_and_gives_boundary(self):
        cx = complex_of_function(AND(4))
        assert set(cx.facets) == {mask_of(s) for s in combinations(range(1, 5), 3)}

    def test_projection(self):
        assert complex_of_function(proj(3, 0)).facets == (mask_of((2, 3)),)

    def test_constant_one_is_void(self):
        assert complex_of_function(MonotoneBooleanFunction(3, 0xFF)).void

    def test_empty_complex_gives_or(self):
        assert function_of_complex(SimplicialComplex(3)) == OR(3)

    def test_full_simplex_gives_zero(self):
        assert function_of_complex(SimplicialComplex.full_simplex(3)).table == 0

    def test_roundtrip_all_n4(self):
        for f in enumerate_monotone(4):
            assert function_of_complex(complex_of_function(f)) == f

    @given(complexes(max_n=6))
    def test_roundtrip_complexes(self, cx):
        assert complex_of_function(function_of_complex(cx)) == cx

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_dual_matches_alexander(self, n):
        for f in enumerate_monotone(n):
            assert complex_of_function(f.dual()) == alexander_dual(complex_of_function(f))


class TestDecisionTrees:
    def test_constant(self):
        assert decision_tree_complexity(MonotoneBooleanFunction(3, 0)).depth == 0

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_projection(self, n):
        stats = decision_tree_complexity(proj(n, n - 1))
        assert stats.depth == 1 and not stats.evasive

    def test_and(self):
        stats = decision_tree_complexity(AND(4))
        assert stats.depth == 4 and stats.evasive

    def test_arity_guard(self):
        with pytest.raises(ArityBudgetError):
            decision_tree_complexity(AND(7))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_against_assignment_minimax(self, n):
        for f in enumerate_monotone(n):
            assert decision_tree_complexity(f).depth == depth_by_assignments(n, f.table)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(list(enumerate_monotone(4))))
    def test_against_assignment_minimax_n4(self, f):
        assert decision_tree_complexity(f).depth == depth_by_assignments(4, f.table)

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from(list(enumerate_monotone(4))), st.permutations(range(4)))
    def test_invariant_under_relabelling(self, f, perm):
        assert decision_tree_complexity(f.permuted(perm)).depth == decision_tree_complexity(f).depth

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from(list(enumerate_monotone(4))))
    def test_dual_has_same_depth(self, f):
        assert decision_tree_complexity(f.dual()).depth == decision_tree_complexity(f).depth


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(0, 2), (1, 3), (2, 6), (3, 20), (4, 168), (5, 7581)])
    def test_counts(self, n, count):
        assert sum(1 for _ in enumerate_monotone(n)) == count

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_filter(self, n):
        assert sorted(f.table for f in enumerate_monotone(n)) == monotone_by_filter(n)

    def test_n5_by_up_sets(self):
        assert count_up_sets(5) == 7581

    def test_refuses_six(self):
        with pytest.raises(ArityBudgetError, match="7,828,354"):
            list(enumerate_monotone(6))


class TestCensus:
    def test_n1(self):
        rep = evasive_census(1)
        assert (rep.total, rep.evasive, rep.constants) == (3, 1, 2)

    def test_n3_fast(self):
        import time
        start = time.perf_counter()
        rep = evasive_census(3)
        assert time.perf_counter() - start < 1.0
        assert rep.total == 20

    def test_anchors(self):
        assert (evasive_census(4).evasive, evasive_census(4).total) == (102, 168)
        rep = evasive_census(5)
        assert (rep.evasive, rep.total, rep.kss_violations) == (6114, 7581, 0)

    def test_projection_consistent(self):
        f = proj(3, 0)
        assert not is_evasive(f) and kss_consistency(f)

    def test_and_consistent(self):
        assert kss_consistency(AND(4))

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            kss_consistency(MonotoneBooleanFunction(2, 0))

    def test_depth_histogram_sums(self):
        rep = evasive_census(4)
        assert sum(rep.depth_histogram.values()) == rep.total
        assert rep.depth_histogram[4] == rep.evasive


def test_evasive_example_by_hand():
    # x1 or (x2 and x3): query x1, then x2, then x3 in the worst case
    f = fn(3, lambda x: x & 1 or (x & 6) == 6)
    assert is_evasive(f)
