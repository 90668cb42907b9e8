"""Simplicial homology over prime fields, plus the hole-counting certificate.

Dimensions are face sizes minus one: the k-chains are spanned by faces of
size k+1.  Boundaries carry the usual alternating signs, (-1)^i on the
deletion of the i-th smallest vertex; over GF(2) the signs vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .complex import (
    ResourceError,
    SimplicialComplex,
    bits_of,
    labels_of,
    mask_of,
    popcount,
)

DEFAULT_BUDGET = 10**8  # matrix entries


class CertificateError(AssertionError):
    """A theorem-backed inequality failed; this signals a bug, not mathematics."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def _check_field(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"field characteristic {q} is not prime")


def _sorted_faces(cx: SimplicialComplex, size: int) -> list[int]:
    return sorted(cx.faces_of_size(size))


@dataclass
class FieldMatrix:
    """Dense matrix over GF(q) with row and column labels (face masks)."""

    q: int
    data: np.ndarray
    row_faces: tuple[int, ...] = ()
    col_faces: tuple[int, ...] = ()

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.int64) % self.q

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def rank(self) -> int:
        if self.q == 2:
            vecs = []
            for col in self.data.T:
                v = 0
                for i in np.flatnonzero(col):
                    v |= 1 << int(i)
                vecs.append(v)
            return gf2_rank(vecs)
        return gfp_rank(self.data, self.q)

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.q != other.q:
            raise ValueError("field mismatch")
        prod = (self.data @ other.data) % self.q
        return FieldMatrix(self.q, prod, self.row_faces, other.col_faces)

    def apply(self, chain: dict[int, int]) -> dict[int, int]:
        """Image of a chain given as {column face: coefficient}."""
        vec = np.zeros(len(self.col_faces), dtype=np.int64)
        index = {f: i for i, f in enumerate(self.col_faces)}
        for face, coef in chain.items():
            vec[index[face]] = coef
        out = (self.data @ vec) % self.q
        return {self.row_faces[i]: int(out[i]) for i in np.flatnonzero(out)}


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of int-bitset vectors, eliminating on the leading bit."""
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            lead = v.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                break
            v ^= p
    return len(pivots)


def gfp_rank(matrix: np.ndarray, q: int) -> int:
    a = np.array(matrix, dtype=np.int64) % q
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), q - 2, q) % q
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % q
        r += 1
    return r


def _guard(rows: int, cols: int, budget: int) -> None:
    if rows * cols > budget:
        raise ResourceError(f"boundary matrix {rows}x{cols} exceeds budget of {budget} entries")


def boundary_matrix(cx: SimplicialComplex, k: int, q: int = 2,
                    budget: int = DEFAULT_BUDGET) -> FieldMatrix:
    """Matrix of the boundary map from k-faces (columns) to (k-1)-faces (rows)."""
    _check_field(q)
    if k < 0:
        raise ValueError("dimension must be nonnegative")
    cols = _sorted_faces(cx, k + 1)
    rows = _sorted_faces(cx, k) if k >= 1 else []
    _guard(len(rows), len(cols), budget)
    data = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if k >= 1:
        index = {f: i for i, f in enumerate(rows)}
        for j, face in enumerate(cols):
            for i, b in enumerate(bits_of(face)):
                data[index[face ^ b], j] = 1 if i % 2 == 0 else q - 1
    return FieldMatrix(q, data, tuple(rows), tuple(cols))


def boundary_rank(cx: SimplicialComplex, k: int, q: int = 2,
                  budget: int = DEFAULT_BUDGET) -> int:
    """Rank of the k-th boundary map; bitset elimination over GF(2)."""
    _check_field(q)
    if k < 1:
        return 0
    cols = cx.faces_of_size(k + 1)
    if not cols:
        return 0
    rows = cx.faces_of_size(k)
    _guard(len(rows), len(cols), budget)
    if q != 2:
        return boundary_matrix(cx, k, q, budget).rank()
    index = {f: i for i, f in enumerate(sorted(rows))}
    vecs = []
    for face in cols:
        v = 0
        for b in bits_of(face):
            v |= 1 << index[face ^ b]
        vecs.append(v)
    return gf2_rank(vecs)


@dataclass(frozen=True)
class BettiProfile:
    """Betti numbers by dimension (index k is the rank of H_k).

    For the reduced profile of the empty complex, whose only face is the
    empty set, ``minus_one`` records the nonzero class in degree -1.
    """

    q: int
    betti: tuple[int, ...]
    reduced: bool = False
    minus_one: int = 0
    void: bool = False

    def is_trivial(self) -> bool:
        return self.minus_one == 0 and not any(self.betti)


def betti_number(cx: SimplicialComplex, k: int, q: int = 2,
                 budget: int = DEFAULT_BUDGET) -> int:
    if k < 0:
        raise ValueError("dimension must be nonnegative")
    f = cx.layer_count(k + 1)
    if f == 0:
        return 0
    return f - boundary_rank(cx, k, q, budget) - boundary_rank(cx, k + 1, q, budget)


def betti_numbers(cx: SimplicialComplex, q: int = 2, reduced: bool = False,
                  budget: int = DEFAULT_BUDGET) -> BettiProfile:
    _check_field(q)
    top = cx.dim_size
    ranks = [boundary_rank(cx, k, q, budget) for k in range(top + 1)] + [0]
    betti = [cx.layer_count(k + 1) - ranks[k] - ranks[k + 1] for k in range(top)]
    betti += [0] * (max(cx.n, top) - len(betti))
    minus_one = 0
    if reduced:
        if top > 0:
            betti[0] -= 1
        elif not cx.void:
            minus_one = 1
    return BettiProfile(q, tuple(betti), reduced, minus_one, cx.void)


def euler_from_betti(profile: BettiProfile) -> int:
    """Alternating Betti sum, reported as the unreduced Euler characteristic."""
    total = sum((-1) ** k * b for k, b in enumerate(profile.betti))
    if profile.reduced and not profile.void:
        total += 1 - profile.minus_one
    return total


# -- holes ------------------------------------------------------------------

@dataclass(frozen=True)
class HoleCertificate:
    """Holes of size s: non-faces whose (s-1)-subsets are all faces.

    ``shared`` counts holes meeting another hole in s-1 elements; the rest
    carry cycles with pairwise disjoint supports.
    """

    s: int
    holes: int
    shared: int
    witnesses: tuple[int, ...] = field(default=(), repr=False)
    shared_witnesses: frozenset[int] = field(default=frozenset(), repr=False)

    @property
    def lower_bound(self) -> int:
        return self.holes - self.shared

    def as_dict(self) -> dict:
        return {"s": self.s, "X": self.holes, "Y": self.shared, "lower_bound": self.lower_bound}


def count_holes(cx: SimplicialComplex, s: int,
                candidates: Iterable[int] | None = None) -> HoleCertificate:
    """Count holes of size s, optionally among a restricted candidate family."""
    if not 2 <= s <= cx.n:
        raise ValueError(f"hole size s={s} outside [2, {cx.n}]")
    ridges = cx.faces_of_size(s - 1)
    faces = cx.faces_of_size(s)
    if candidates is None:
        everything = (1 << cx.n) - 1
        pool: set[int] = set()
        for y in ridges:
            for b in bits_of(everything & ~y):
                pool.add(y | b)
    else:
        pool = {c for c in candidates if popcount(c) == s}
    holes = sorted(x for x in pool
                   if x not in faces and all(x ^ b in ridges for b in bits_of(x)))
    uses: dict[int, int] = {}
    for x in holes:
        for b in bits_of(x):
            uses[x ^ b] = uses.get(x ^ b, 0) + 1
    shared = frozenset(x for x in holes if any(uses[x ^ b] > 1 for b in bits_of(x)))
    return HoleCertificate(s, len(holes), len(shared), tuple(holes), shared)


def hole_chain(x: Iterable[int] | int, q: int = 2) -> dict[int, int]:
    """The chain sum_i (-1)^i (x minus its i-th vertex), coefficients mod q."""
    m = mask_of(x)
    if popcount(m) < 2:
        raise ValueError("a hole chain needs at least two vertices")
    return {m ^ b: (1 if i % 2 == 0 else q - 1) % q for i, b in enumerate(bits_of(m))}


def chain_boundary(chain: dict[int, int], q: int = 2) -> dict[int, int]:
    """Boundary of a chain computed face by face (matrix-free)."""
    out: dict[int, int] = {}
    for face, coef in chain.items():
        for i, b in enumerate(bits_of(face)):
            sign = 1 if i % 2 == 0 else -1
            key = face ^ b
            out[key] = (out.get(key, 0) + sign * coef) % q
    return {f: c for f, c in out.items() if c}


@dataclass(frozen=True)
class LowerBoundReport:
    s: int
    q: int
    betti: int
    certificate: HoleCertificate
    applicable: bool

    def as_dict(self) -> dict:
        return {"s": self.s, "q": self.q, "betti": self.betti,
                "applicable": self.applicable, **self.certificate.as_dict()}


def verify_lower_bound(cx: SimplicialComplex, s: int, q: int = 2,
                       candidates: Iterable[int] | None = None,
                       budget: int = DEFAULT_BUDGET) -> LowerBoundReport:
    """Compare the rank of H_(s-2) with the hole certificate X - Y.

    The bound is asserted when no face of size s contains an (s-1)-subset
    of an unshared hole; then those cycles cannot meet any boundary.
    """
    cert = count_holes(cx, s, candidates)
    beta = betti_number(cx, s - 2, q, budget)
    lonely = [x for x in cert.witnesses if x not in cert.shared_witnesses]
    support = {x ^ b for x in lonely for b in bits_of(x)}
    applicable = not any(f ^ b in support
                         for f in cx.faces_of_size(s) for b in bits_of(f))
    if applicable and beta < cert.lower_bound:
        raise CertificateError(
            f"rank H_{s - 2} = {beta} < X - Y = {cert.lower_bound} "
            f"(first hole {labels_of(cert.witnesses[0]) if cert.witnesses else ()})")
    return LowerBoundReport(s, q, beta, cert, applicable)
