import math
from fractions import Fraction
from itertools import combinations
from math import comb, log

import pytest
from hypothesis import given
from hypothesis import strategies as st

from randcomplex import SimplicialComplex, euler_characteristic
from randcomplex import predictions as pred


class TestEntropy:
    def test_half(self):
        assert pred.entropy(0.5) == pytest.approx(log(2))

    def test_endpoints(self):
        assert pred.entropy(0) == 0 and pred.entropy(1) == 0

    def test_quarter(self):
        assert pred.entropy(0.25) == pytest.approx(0.5623, abs=1e-4)
        n = 10_000
        growth = (math.lgamma(n + 1) - math.lgamma(n // 4 + 1) - math.lgamma(3 * n // 4 + 1)) / n
        assert growth == pytest.approx(pred.entropy(0.25), abs=1e-3)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            pred.entropy(1.5)


class TestBinomAsymptotic:
    def test_hundred(self):
        assert abs(pred.binom_asymptotic(100, 0.5) / comb(100, 50) - 1) < 0.01

    def test_twenty_quarter(self):
        assert abs(pred.binom_asymptotic(20, 0.25) / comb(20, 5) - 1) < 0.05

    def test_monotone_convergence(self):
        errs = [abs(pred.binom_asymptotic(n, 0.5) / comb(n, n // 2) - 1) for n in (20, 50, 100, 200)]
        assert errs == sorted(errs, reverse=True)


class TestSkeletonThresholds:
    def test_linear_k2(self):
        for n in (24, 100):
            hi, lo = pred.skeleton_threshold_linear(pred.ThresholdSpec(n, 0.5, 2, 0.0))
            assert hi.value == pytest.approx(8 * log(2) / n)
            assert lo.value == pytest.approx(hi.value)

    def test_linear_k1(self):
        hi, lo = pred.skeleton_threshold_linear(pred.ThresholdSpec(50, 0.5, 1, 0.0))
        assert hi.value == pytest.approx(0.75) and lo.value == pytest.approx(0.75)

    def test_divergent(self):
        hi, lo = pred.skeleton_threshold_linear(pred.ThresholdSpec(50, 0.5, 2, math.inf))
        assert hi.divergent and not hi.is_probability

    def test_slack_orders(self):
        hi, lo = pred.skeleton_threshold_linear(pred.ThresholdSpec(50, 0.3, 3, 2.0))
        assert lo.value < hi.value

    @pytest.mark.parametrize("kw", [dict(c=0), dict(c=1), dict(k=0), dict(q=-1)])
    def test_invalid(self, kw):
        args = dict(n=20, c=0.5, k=2, q=0.0) | kw
        with pytest.raises(ValueError):
            pred.ThresholdSpec(**args)

    def test_constant_t(self):
        n = math.exp(10)
        assert pred.skeleton_threshold_constant_t(n, 3, 2) == pytest.approx(20 / n)
        assert pred.skeleton_threshold_constant_t(1000, 2, 1) == pytest.approx(log(1000) / 1000)
        assert pred.skeleton_threshold_constant_t(300, 3, 2) == pytest.approx(2 * log(300) / 300)

    def test_constant_t_invalid(self):
        with pytest.raises(ValueError):
            pred.skeleton_threshold_constant_t(100, 2, 2)

    def test_incomplete_omega(self):
        assert pred.incomplete_side_omega(3, 2) == pytest.approx(-1.0)
        assert pred.incomplete_side_omega(4, 1) == pytest.approx(-6.0)


class TestMeans:
    def test_expected_holes_middle(self):
        assert pred.expected_holes(12, 6, 0.5) == 6.1875

    def test_expected_holes_zero(self):
        assert pred.expected_holes(10, 4, 0) == 0

    def test_expected_holes_small(self):
        assert pred.expected_holes(10, 2, 0.3) == pytest.approx(3.24)

    def test_scales(self):
        assert pred.euler_scale(12) == 12 * 64
        assert pred.point_mass_scale(16) == pytest.approx(2 / 256)
        assert pred.induced_copy_scale(10) == pytest.approx(16 / math.sqrt(10))


class TestAlternatingBinomial:
    def test_examples(self):
        assert pred.alternating_binomial(6, 3) == -9
        assert pred.alternating_binomial(10, 5) == -125
        assert pred.alternating_binomial(7, 1) == 0

    @given(st.integers(1, 60), st.data())
    def test_identity(self, n, data):
        j = data.draw(st.integers(1, n))
        lhs = sum((-1) ** (i - 1) * comb(n, i) for i in range(1, j))
        assert pred.alternating_binomial(n, j) == lhs
        assert lhs == (-1) ** j * Fraction(j * comb(n, j), n) + 1

    def test_invalid(self):
        with pytest.raises(ValueError):
            pred.alternating_binomial(5, 0)


class TestEulerCenter:
    @pytest.mark.parametrize("n,t", [(8, 4), (6, 3), (5, 2), (9, 4), (9, 5)])
    def test_half_layer_complex(self, n, t):
        """Complete (t-1)-skeleton plus exactly half of the t-sets."""
        tsets = [sum(1 << i for i in s) for s in combinations(range(n), t)]
        below = [sum(1 << i for i in s) for s in combinations(range(n), t - 1)]
        cx = SimplicialComplex(n, below + tsets[: len(tsets) // 2])
        assert euler_characteristic(cx) == pred.euler_center(n, t)

    def test_even_middle_is_one(self):
        assert pred.euler_center(12, 6) == 1


class TestSignThreshold:
    def test_values(self):
        assert pred.h_t_sign_threshold(200, 4) == 0.02
        assert pred.h_t_sign_threshold(12, 6) == 0.5

    def test_invalid(self):
        with pytest.raises(ValueError):
            pred.h_t_sign_threshold(10, 1)


def test_variance_bound_sum():
    assert pred.covariance_variance_bound(3.0, 1.5) == 4.5


def test_evaluate_dispatch():
    assert pred.evaluate("expected_holes", n=12, t=6, p=0.5) == 6.1875
    assert pred.evaluate("skeleton_threshold_linear", n=24, c=0.5, k=2, q=0.0)[0] == pytest.approx(
        8 * log(2) / 24)
    with pytest.raises(ValueError):
        pred.evaluate("nope")
