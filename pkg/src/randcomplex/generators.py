"""Samplers for the uniform-layer model U(n, t, A, B) and the pure model RP(n, t, p).

U(n, t, A, B) is the uniform distribution on complexes whose facets are A
(size t-1), B (size t+1), and otherwise only t-sets.  Such a complex is a
free choice of a subset of the *free sets* (t-sets containing no member of
A and contained in no member of B), each taken with probability 1/2.

Randomness comes from ``numpy.random.Generator`` objects.  Every sampler
draws one uniform double per candidate set and keeps the set when the
double is below the inclusion probability, so a fixed seed gives the same
complex on every platform, and raising p only ever adds facets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable

import numpy as np

from .complex import (
    SimplicialComplex,
    all_sets_of_size,
    bits_of,
    labels_of,
    popcount,
    unrank_colex,
)

RETRY_BUDGET = 10_000
_CHUNK = 1 << 22


class AdmissibilityError(ValueError):
    pass


def decompose_bundles(family: Iterable[int]) -> list[list[int]]:
    """Connected components of the 'intersect in k-1 elements' graph.

    Members are masks of a common size k.  Components and their members are
    returned sorted.
    """
    members = sorted(set(family))
    if not members:
        return []
    sizes = {popcount(m) for m in members}
    if len(sizes) != 1:
        raise ValueError(f"mixed set sizes {sorted(sizes)} in a bundle family")
    parent = {m: m for m in members}

    def find(m):
        while parent[m] != m:
            parent[m] = parent[parent[m]]
            m = parent[m]
        return m

    # two k-sets meet in k-1 elements iff they share a (k-1)-subset
    by_ridge: dict[int, int] = {}
    for m in members:
        for b in bits_of(m):
            ridge = m ^ b
            if ridge in by_ridge:
                ra, rb = find(by_ridge[ridge]), find(m)
                if ra != rb:
                    parent[rb] = ra
            else:
                by_ridge[ridge] = m
    groups: dict[int, list[int]] = {}
    for m in members:
        groups.setdefault(find(m), []).append(m)
    return sorted(groups.values())


def size_bound(n: int) -> float:
    return 2.0 ** (n / 2)


@dataclass(frozen=True)
class AdmissiblePair:
    n: int
    t: int
    A: tuple[int, ...] = ()
    B: tuple[int, ...] = ()

    @property
    def bundles_a(self) -> list[list[int]]:
        return decompose_bundles(self.A)

    @property
    def bundles_b(self) -> list[list[int]]:
        return decompose_bundles(self.B)


@dataclass
class AdmissibilityReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_admissible(n: int, t: int, A: Iterable[int], B: Iterable[int]) -> AdmissibilityReport:
    """Check the admissible-pair clauses; violations are returned, not raised.

    Size clauses use |A|, |B| <= 2^(n/2) and the containment clause forbids
    a subset of b for a in A, b in B.
    """
    A = list(A)
    B = list(B)
    bad: list[str] = []
    if not 1 <= t <= n:
        bad.append(f"layer: need 1 <= t <= n, got t={t}, n={n}")
    if any(popcount(a) != t - 1 or a >> n for a in A):
        bad.append(f"clause 1: A must consist of ({t - 1})-subsets of [{n}]")
    if any(popcount(b) != t + 1 or b >> n for b in B):
        bad.append(f"clause 1: B must consist of ({t + 1})-subsets of [{n}]")
    if len(A) > size_bound(n):
        bad.append(f"clause 2: |A|={len(A)} exceeds 2^(n/2)")
    if len(B) > size_bound(n):
        bad.append(f"clause 3: |B|={len(B)} exceeds 2^(n/2)")
    for a in A:
        for b in B:
            if a & b == a:
                bad.append(f"clause 4: {labels_of(a)} is contained in {labels_of(b)}")
    cap = 16 * n**4
    for name, fam in (("A", A), ("B", B)):
        if any(popcount(m) != popcount(fam[0]) for m in fam):
            continue
        bundles = decompose_bundles(fam)
        big = [bd for bd in bundles if len(bd) > 2]
        if big:
            bad.append(f"clause 5: {name} has a bundle of size {len(big[0])}")
        if sum(1 for bd in bundles if len(bd) == 2) > cap:
            bad.append(f"clause 5: {name} has more than 16n^4 two-element bundles")
    return AdmissibilityReport(not bad, bad)


def _random_set(n: int, k: int, rng: np.random.Generator) -> int:
    m = 0
    for c in rng.choice(n, size=k, replace=False):
        m |= 1 << int(c)
    return m


def _random_neighbour(m: int, n: int, rng: np.random.Generator) -> int:
    """A set meeting m in all but one element (same size)."""
    inside = list(bits_of(m))
    outside = [1 << i for i in range(n) if not m >> i & 1]
    drop = inside[int(rng.integers(len(inside)))]
    add = outside[int(rng.integers(len(outside)))]
    return m ^ drop ^ add


def _sample_family(n: int, k: int, size: int, pairs: int, rng) -> list[int]:
    if k < 1 or k > n:
        raise AdmissibilityError(f"cannot draw {k}-subsets of [{n}]")
    fam: list[int] = []
    for _ in range(pairs):
        m = _random_set(n, k, rng)
        fam += [m, _random_neighbour(m, n, rng)]
    for _ in range(size - 2 * pairs):
        fam.append(_random_set(n, k, rng))
    return fam


def sample_admissible_pair(n: int, t: int, size_a: int = 0, size_b: int = 0,
                           pairs_a: int = 0, pairs_b: int = 0,
                           rng: np.random.Generator | None = None,
                           retries: int = RETRY_BUDGET) -> AdmissiblePair:
    """Rejection-sample an admissible pair with the requested family sizes.

    Families are made of ``pairs_*`` two-element bundles and singletons drawn
    uniformly.  This is *a* distribution over admissible pairs; it does not
    weight pairs by their number of free sets.
    """
    rng = rng if rng is not None else np.random.default_rng()
    for name, size, pairs in (("A", size_a, pairs_a), ("B", size_b, pairs_b)):
        if size > size_bound(n):
            raise AdmissibilityError(f"|{name}|={size} exceeds 2^(n/2)={size_bound(n):g}")
        if 2 * pairs > size:
            raise AdmissibilityError(f"{pairs} two-element bundles do not fit in |{name}|={size}")
        if pairs > 16 * n**4:
            raise AdmissibilityError(f"too many two-element bundles in {name}")
    if size_a == 0 and size_b == 0:
        return AdmissiblePair(n, t)
    last: list[str] = []
    for _ in range(retries):
        A = _sample_family(n, t - 1, size_a, pairs_a, rng) if size_a else []
        B = _sample_family(n, t + 1, size_b, pairs_b, rng) if size_b else []
        if len(set(A)) != len(A) or len(set(B)) != len(B):
            last = ["duplicate members"]
            continue
        report = check_admissible(n, t, A, B)
        if not report.ok:
            last = report.violations
            continue
        # bundle structure must come out exactly as requested
        if (sum(len(bd) == 2 for bd in decompose_bundles(A)) != pairs_a
                or sum(len(bd) == 2 for bd in decompose_bundles(B)) != pairs_b):
            last = ["bundle structure differs from request"]
            continue
        return AdmissiblePair(n, t, tuple(sorted(A)), tuple(sorted(B)))
    raise AdmissibilityError(
        f"no admissible pair for n={n}, t={t}, |A|={size_a}, |B|={size_b}, "
        f"pairs=({pairs_a},{pairs_b}) after {retries} tries; last: {last[:2]}")


def free_sets(pair: AdmissiblePair) -> list[int]:
    """t-sets containing no a in A and contained in no b in B, in lex order."""
    out = []
    for s in all_sets_of_size(pair.n, pair.t):
        if any(s & a == a for a in pair.A):
            continue
        if any(s & b == s for b in pair.B):
            continue
        out.append(s)
    return out


def sample_uniform_layer(pair: AdmissiblePair, rng: np.random.Generator,
                         free: list[int] | None = None) -> SimplicialComplex:
    """One draw from U(n, t, A, B); the facets are exactly A, B and the chosen free sets."""
    free = free_sets(pair) if free is None else free
    coins = np.asarray(rng.random(len(free))) < 0.5
    chosen = [s for s, keep in zip(free, coins) if keep]
    return SimplicialComplex(pair.n, [*pair.A, *pair.B, *chosen])


def bernoulli_indices(count: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Sorted indices in range(count), each kept independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} is not a probability")
    parts = []
    for start in range(0, count, _CHUNK):
        stop = min(count, start + _CHUNK)
        keep = np.flatnonzero(rng.random(stop - start) < p)
        parts.append(keep + start)
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(parts).astype(np.int64)


def sample_pure_random(n: int, t: int, p: float, rng: np.random.Generator) -> SimplicialComplex:
    """One draw from RP(n, t, p): each t-set is a facet independently with prob. p.

    t-sets are indexed by colex rank; facets are held as an index array until
    a mask view is needed.
    """
    if not 1 <= t <= n:
        raise ValueError(f"need 1 <= t <= n, got t={t}, n={n}")
    ranks = bernoulli_indices(comb(n, t), p, rng)
    return SimplicialComplex.from_pure_rows(n, unrank_colex(ranks, n, t))


__all__ = [
    "AdmissiblePair",
    "AdmissibilityError",
    "AdmissibilityReport",
    "bernoulli_indices",
    "check_admissible",
    "decompose_bundles",
    "free_sets",
    "sample_admissible_pair",
    "sample_pure_random",
    "sample_uniform_layer",
]
