"""Closed-form theory curves: entropy, binomial asymptotics, thresholds, means.

All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, log


@dataclass(frozen=True)
class PredictionValue:
    value: float
    formula: str

    @property
    def divergent(self) -> bool:
        return not math.isfinite(self.value)

    @property
    def is_probability(self) -> bool:
        return 0.0 <= self.value <= 1.0


@dataclass(frozen=True)
class ThresholdSpec:
    """Parameters for the skeleton threshold of RP(n, t, p) with t = c n."""

    n: int
    c: float
    k: int
    q: float = 2.0

    def __post_init__(self):
        if not 0 < self.c < 1:
            raise ValueError(f"layer ratio c={self.c} must lie in (0, 1)")
        if self.k < 1:
            raise ValueError(f"skeleton gap k={self.k} must be >= 1")
        if self.q < 0:
            raise ValueError("slack q must be nonnegative")


def entropy(c: float) -> float:
    """-c ln c - (1-c) ln(1-c), with the endpoints set to 0."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"entropy argument {c} outside [0, 1]")
    if c in (0.0, 1.0):
        return 0.0
    return -c * log(c) - (1 - c) * log(1 - c)


def binom_asymptotic(n: int, c: float) -> float:
    """Leading-order estimate of C(n, cn).

    The estimate is evaluated at the ratio k/n with k = round(c n), so it
    is directly comparable with the exact C(n, k).
    """
    if not 0 < c < 1:
        raise ValueError("c must lie in (0, 1)")
    k = round(c * n)
    if not 0 < k < n:
        raise ValueError(f"c*n rounds to {k}, outside (0, {n})")
    c = k / n
    return math.exp(entropy(c) * n - 0.5 * log(2 * (1 - c) * c * n * math.pi))


def skeleton_threshold_linear(spec: ThresholdSpec) -> tuple[PredictionValue, PredictionValue]:
    """(upper, lower) probabilities around the complete (t-k)-skeleton threshold.

    Above ``upper`` the skeleton is complete whp; below ``lower`` it is not.
    """
    c, k, q, n = spec.c, spec.k, spec.q, spec.n
    a = entropy(c)
    if k > 1:
        base = a * factorial(k) / (1 - c) ** k
        slack = q * (1 - c) ** (-k) * factorial(k) * log(n) / n
        scale = n ** (k - 1)
        return (PredictionValue((base + slack) / scale, "linear-k>1-upper"),
                PredictionValue((base - slack) / scale, "linear-k>1-lower"))
    slack = q * log(n) / ((1 - c) * n)
    return (PredictionValue(1 - math.exp(-a / (1 - c) - slack), "linear-k=1-upper"),
            PredictionValue(1 - math.exp(-a / (1 - c) + slack), "linear-k=1-lower"))


def skeleton_threshold_constant_t(n: float, t: int, t_prime: int, omega: float = 0.0) -> float:
    """(1 + omega) t' (t - t')! ln n / n^(t - t') for constant t."""
    if t_prime >= t:
        raise ValueError(f"need t' < t, got t'={t_prime}, t={t}")
    if t_prime < 1:
        raise ValueError("t' must be at least 1")
    return (1 + omega) * t_prime * factorial(t - t_prime) * log(n) / n ** (t - t_prime)


def incomplete_side_omega(t: int, t_prime: int) -> float:
    """Slack below which the constant-t skeleton is incomplete whp: -2(t/t' - 1)."""
    return -2 * (t / t_prime - 1)


def expected_holes(n: int, t: int, p: float) -> float:
    """E(X) = C(n, t+1) p^(t+1), the mean number of (t+1)-set holes in RP(n, t, p)."""
    if not 0 <= p <= 1:
        raise ValueError(f"p={p} is not a probability")
    return comb(n, t + 1) * p ** (t + 1)


def hole_count_scale(n: int) -> float:
    """Leading-order mean hole count 2^((n-1)/2) / sqrt(pi n) for U(n) with n even."""
    return 2 ** ((n - 1) / 2) / math.sqrt(math.pi * n)


def induced_copy_scale(n: int) -> float:
    """Copy-count scale 2^(n/2 - 1) / sqrt(n) for pure patterns on n/2 + 1 vertices."""
    return 2 ** (n / 2 - 1) / math.sqrt(n)


class IdentityBreach(AssertionError):
    pass


def alternating_binomial(n: int, j: int) -> int:
    """sum_{i=1}^{j-1} (-1)^(i-1) C(n, i), checked against (-1)^j (j/n) C(n, j) + 1."""
    if not 1 <= j <= n:
        raise ValueError(f"need 1 <= j <= n, got j={j}, n={n}")
    lhs = sum((-1) ** (i - 1) * comb(n, i) for i in range(1, j))
    rhs = (-1) ** j * Fraction(j * comb(n, j), n) + 1
    if rhs != lhs:
        raise IdentityBreach(f"alternating binomial identity fails at n={n}, j={j}")
    return lhs


def h_t_sign_threshold(n: int, t: int) -> float:
    if t < 2:
        raise ValueError("t must be at least 2")
    return t / n


def euler_center(n: int, t: int) -> float:
    """Euler characteristic when layers below t are complete and half the t-sets are present.

    Equals 1 + (-1)^t C(n, t) (t/n - 1/2), which is 1 at t = n/2.
    """
    if not 1 <= t <= n:
        raise ValueError(f"need 1 <= t <= n, got t={t}, n={n}")
    return float(alternating_binomial(n, t) + (-1) ** (t - 1) * Fraction(comb(n, t), 2))


def euler_scale(n: int) -> float:
    return n * 2 ** (n / 2)


def point_mass_scale(n: int) -> float:
    return n ** 0.25 * 2 ** (-n / 2)


def covariance_variance_bound(mean: float, covariance_sum: float) -> float:
    """Var(X) <= E(X) + sum_{i != j} Cov(X_i, X_j) for a sum of indicators."""
    return mean + covariance_sum


FORMULAS = {
    "entropy": entropy,
    "binom_asymptotic": binom_asymptotic,
    "skeleton_threshold_constant_t": skeleton_threshold_constant_t,
    "incomplete_side_omega": incomplete_side_omega,
    "expected_holes": expected_holes,
    "alternating_binomial": alternating_binomial,
    "h_t_sign_threshold": h_t_sign_threshold,
    "euler_center": euler_center,
    "euler_scale": euler_scale,
    "point_mass_scale": point_mass_scale,
    "hole_count_scale": hole_count_scale,
    "induced_copy_scale": induced_copy_scale,
}


def evaluate(formula: str, **params) -> float | list[float]:
    """Dispatch by name; used by the ``predict`` subcommand."""
    if formula == "skeleton_threshold_linear":
        hi, lo = skeleton_threshold_linear(ThresholdSpec(**params))
        return [hi.value, lo.value]
    try:
        fn = FORMULAS[formula]
    except KeyError:
        known = sorted([*FORMULAS, "skeleton_threshold_linear"])
        raise ValueError(f"unknown formula {formula!r}; known: {known}") from None
    return fn(**params)
