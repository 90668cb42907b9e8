"""Face-level data model for simplicial complexes on the ground set [n].

Vertex sets are plain Python ints used as bitmasks: vertex ``v`` (1-based)
is bit ``v - 1``.  Helpers convert to and from label tuples.

A complex is stored by its facet antichain.  The full face set is derived
on demand and cached.  Internally every complex is a down-set of the
Boolean lattice, so the empty set is a member unless the complex is *void*;
the external API (faces, f-vector) only ever reports nonempty faces.
"""

from __future__ import annotations

import itertools
import warnings
from collections import defaultdict
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np


class ResourceError(RuntimeError):
    """Raised when an exact computation would exceed its configured budget."""


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_of(labels: Iterable[int] | int) -> int:
    """Bitmask for a collection of 1-based vertex labels (ints pass through)."""
    if isinstance(labels, (int, np.integer)):
        return int(labels)
    mask = 0
    for v in labels:
        v = int(v)
        if v < 1:
            raise ValueError(f"vertex label {v} is not positive")
        mask |= 1 << (v - 1)
    return mask


def labels_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def bits_of(mask: int) -> Iterator[int]:
    """Yield the single-bit masks of ``mask`` in ascending vertex order."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def subsets_of_size(mask: int, k: int) -> Iterator[int]:
    bits = list(bits_of(mask))
    for combo in itertools.combinations(bits, k):
        yield sum(combo)


def all_sets_of_size(n: int, k: int) -> Iterator[int]:
    """All k-subsets of [n] as masks, in lexicographic order of labels."""
    for combo in itertools.combinations(range(n), k):
        m = 0
        for c in combo:
            m |= 1 << c
        yield m


def full_mask(n: int) -> int:
    return (1 << n) - 1


def maximal_sets(masks: Iterable[int]) -> list[int]:
    """Antichain of maximal members, sorted by (size, mask)."""
    uniq = sorted(set(masks), key=lambda m: (-popcount(m), m))
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return sorted(kept, key=lambda m: (popcount(m), m))


# -- vectorised helpers for large pure complexes -------------------------

def _binom_table(n: int, kmax: int) -> np.ndarray:
    """table[c, j] = C(c, j) for 0 <= c <= n, 0 <= j <= kmax (int64)."""
    if comb(n, min(kmax, n // 2)) >= 2**62:
        raise ResourceError(f"binomial coefficients for n={n} overflow int64")
    table = np.zeros((n + 1, kmax + 1), dtype=np.int64)
    for c in range(n + 1):
        for j in range(min(c, kmax) + 1):
            table[c, j] = comb(c, j)
    return table


def unrank_colex(ranks: np.ndarray, n: int, t: int) -> np.ndarray:
    """Rows of 0-based ascending vertex indices for colex ranks of t-subsets."""
    ranks = np.asarray(ranks, dtype=np.int64).copy()
    out = np.empty((ranks.size, t), dtype=np.int64)
    table = _binom_table(n, t)
    for j in range(t, 0, -1):
        col = table[:n, j]
        c = np.searchsorted(col, ranks, side="right") - 1
        out[:, j - 1] = c
        ranks -= col[c]
    return out


def rank_colex(rows: np.ndarray, n: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    k = rows.shape[1]
    table = _binom_table(n, k)
    acc = np.zeros(rows.shape[0], dtype=np.int64)
    for j in range(k):
        acc += table[rows[:, j], j + 1]
    return acc


def _walk_ranks(cols, table, k: int, i: int, j: int, acc):
    t = len(cols)
    if j == k:
        yield acc
        return
    if t - i < k - j:
        return
    term = table[cols[i], j + 1]
    yield from _walk_ranks(cols, table, k, i + 1, j + 1, term if acc is None else acc + term)
    yield from _walk_ranks(cols, table, k, i + 1, j, acc)


def _subset_rank_streams(rows: np.ndarray, n: int, k: int) -> Iterator[np.ndarray]:
    """Colex ranks of every k-subset of every row, one array per position pattern.

    Partial sums are shared along common prefixes of the position pattern.
    The walk is a plain module-level generator, not a recursive closure, so
    no reference cycle keeps the column copies alive after use.
    """
    dtype = np.int32 if comb(n, k) < 2**31 else np.int64
    if k == 0:
        yield np.zeros(rows.shape[0], dtype=dtype)
        return
    table = _binom_table(n, k).astype(dtype)
    cols = [np.ascontiguousarray(rows[:, i]) for i in range(rows.shape[1])]
    yield from _walk_ranks(cols, table, k, 0, 0, None)


DEFAULT_LAYER_BUDGET = 400_000_000


def covered_layer(rows: np.ndarray, n: int, k: int,
                  budget: int = DEFAULT_LAYER_BUDGET) -> np.ndarray:
    """Boolean array over colex ranks of k-subsets of [n]: True if inside some row."""
    size = comb(n, k)
    if size > budget:
        raise ResourceError(f"layer C({n},{k}) = {size} exceeds budget {budget}")
    marks = np.zeros(size, dtype=bool)
    if rows.shape[0] == 0:
        return marks
    for ranks in _subset_rank_streams(rows, n, k):
        marks[ranks] = True
    return marks


def rows_to_masks(rows: np.ndarray) -> list[int]:
    if rows.shape[0] == 0:
        return []
    if rows.max() < 62:
        packed = np.zeros(rows.shape[0], dtype=np.int64)
        for j in range(rows.shape[1]):
            packed |= np.left_shift(np.int64(1), rows[:, j])
        return packed.tolist()
    return [sum(1 << int(c) for c in row) for row in rows]


class SimplicialComplex:
    """Immutable simplicial complex on [n], canonically held as its facets.

    ``void`` marks the down-set that does not even contain the empty set.
    It has no nonempty faces, like the empty complex, but the two differ
    under Alexander duality and under the Boolean-function correspondence.
    """

    def __init__(self, n: int, facets: Iterable[int] = (), *, void: bool = False,
                 _rows: np.ndarray | None = None):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        self.void = void
        self._rows = _rows
        if _rows is None:
            fs = maximal_sets(facets)
            if any(f == 0 for f in fs):
                raise ValueError("the empty set cannot be listed as a facet")
            if any(f >> n for f in fs):
                raise ValueError("facet uses a vertex outside [n]")
            if void and fs:
                raise ValueError("a void complex has no facets")
            self._facets: tuple[int, ...] | None = tuple(fs)
        else:
            self._facets = None

    @classmethod
    def from_pure_rows(cls, n: int, rows: np.ndarray) -> "SimplicialComplex":
        """Pure complex from an array of distinct, ascending 0-based index rows."""
        return cls(n, _rows=np.asarray(rows, dtype=np.int64))

    @classmethod
    def full_simplex(cls, n: int) -> "SimplicialComplex":
        return cls(n, [full_mask(n)] if n else [])

    # -- facets and faces ---------------------------------------------------

    @property
    def facets(self) -> tuple[int, ...]:
        if self._facets is None:
            masks = rows_to_masks(self._rows)
            self._facets = tuple(sorted(masks))
        return self._facets

    @property
    def facet_count(self) -> int:
        if self._rows is not None:
            return int(self._rows.shape[0])
        return len(self.facets)

    @property
    def dim_size(self) -> int:
        """Size of the largest face (0 for empty or void complexes)."""
        if self._rows is not None:
            return self._rows.shape[1] if self._rows.shape[0] else 0
        return max((popcount(f) for f in self.facets), default=0)

    def is_pure(self) -> bool:
        if self._rows is not None:
            return True
        return len({popcount(f) for f in self.facets}) <= 1

    @property
    def contains_empty_face(self) -> bool:
        return not self.void

    @cached_property
    def _layers(self) -> list[frozenset[int]]:
        top = self.dim_size
        by_size: dict[int, set[int]] = defaultdict(set)
        for f in self.facets:
            by_size[popcount(f)].add(f)
        layers: list[set[int]] = [set() for _ in range(top + 1)]
        for k in range(top, 0, -1):
            cur = layers[k]
            cur |= by_size.get(k, set())
            if k > 1:
                below = layers[k - 1]
                for f in cur:
                    m = f
                    while m:
                        low = m & -m
                        below.add(f ^ low)
                        m ^= low
        return [frozenset(s) for s in layers]

    def faces_of_size(self, k: int) -> frozenset[int]:
        if k < 1 or k > self.dim_size:
            return frozenset()
        return self._layers[k]

    @cached_property
    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for layer in self._layers[1:]:
            out |= layer
        return frozenset(out)

    def __contains__(self, face: Iterable[int] | int) -> bool:
        m = mask_of(face)
        if m == 0:
            return not self.void
        k = popcount(m)
        return m in self.faces_of_size(k)

    def layer_count(self, k: int) -> int:
        """Number of faces of size k."""
        if k < 1 or k > self.dim_size:
            return 0
        if self._rows is not None and "_layers" not in self.__dict__:
            t = self._rows.shape[1]
            if k == t:
                return int(self._rows.shape[0])
            return int(covered_layer(self._rows, self.n, k).sum())
        return len(self._layers[k])

    def vertices(self) -> int:
        """Mask of vertices that are faces."""
        m = 0
        for f in self.facets:
            m |= f
        return m

    # -- comparisons ----------------------------------------------------------

    def _key(self):
        return (self.n, self.facets, self.void)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.void:
            return f"SimplicialComplex(n={self.n}, void)"
        shown = [labels_of(f) for f in self.facets[:8]]
        more = "" if self.facet_count <= 8 else f", ... ({self.facet_count} facets)"
        return f"SimplicialComplex(n={self.n}, facets={shown}{more})"


# -- operations -------------------------------------------------------------

def down_closure(facet_list: Iterable[Iterable[int] | int], n: int) -> SimplicialComplex:
    """Complex whose faces are the nonempty subsets of the listed sets."""
    masks = []
    for s in facet_list:
        m = mask_of(s)
        if m == 0:
            raise ValueError("empty set listed as a generator")
        if m >> n:
            raise ValueError(f"vertex out of range in {labels_of(m)} for n={n}")
        masks.append(m)
    return SimplicialComplex(n, masks)


def f_vector(cx: SimplicialComplex) -> tuple[int, ...]:
    """(f_1, ..., f_n), f_i = number of faces of size i."""
    return tuple(cx.layer_count(i) for i in range(1, cx.n + 1))


def euler_characteristic(cx: SimplicialComplex) -> int:
    return sum((-1) ** (i - 1) * cx.layer_count(i) for i in range(1, cx.dim_size + 1))


def has_complete_skeleton(cx: SimplicialComplex, k: int) -> bool:
    """True iff every subset of [n] of size <= k is a face.

    By down-closure this holds exactly when f_k = C(n, k), so only that layer
    is counted.
    """
    if not 0 <= k <= cx.n:
        raise ValueError(f"k={k} outside [0, {cx.n}]")
    if k == 0:
        return True
    return cx.layer_count(k) == comb(cx.n, k)


def link(cx: SimplicialComplex, face: Iterable[int] | int) -> SimplicialComplex:
    """Link of a face.  Labels are kept; vertices of the face never appear."""
    x = mask_of(face)
    if x not in cx:
        raise ValueError(f"{labels_of(x)} is not a face")
    rest = [f & ~x for f in cx.facets if f & x == x]
    rest = [r for r in rest if r]
    return SimplicialComplex(cx.n, rest)


def _minimal_nonfaces(cx: SimplicialComplex) -> list[int]:
    if cx.void:
        return [0]
    faces = cx.faces
    candidates: set[int] = set()
    everything = full_mask(cx.n)
    for y in itertools.chain([0], faces):
        free = everything & ~y
        for b in bits_of(free):
            candidates.add(y | b)
    out = []
    for c in candidates:
        if c in faces:
            continue
        if all((c ^ b) == 0 or (c ^ b) in faces for b in bits_of(c)):
            out.append(c)
    return out


def alexander_dual(cx: SimplicialComplex) -> SimplicialComplex:
    """x is a face of the dual iff [n] minus x is not a face (empty set included).

    This is complement-reversal f(x) -> not f(not x) on monotone functions, so it
    is an involution on down-sets including the void and empty-only cases.
    """
    everything = full_mask(cx.n)
    mins = _minimal_nonfaces(cx)
    if not mins:
        return SimplicialComplex(cx.n, void=True)
    duals = [everything & ~m for m in mins]
    return SimplicialComplex(cx.n, [d for d in duals if d])


def induced_subcomplex(cx: SimplicialComplex, w: int) -> list[int]:
    """Nonempty faces of cx contained in the vertex mask w."""
    return [f for f in cx.faces if f & w == f]


def _vertex_profile(faces: Sequence[int], verts: Sequence[int]) -> list[tuple[int, ...]]:
    prof = []
    for v in verts:
        sizes = sorted(popcount(f) for f in faces if f & v)
        prof.append(tuple(sizes))
    return prof


def _isomorphic(faces_a: Sequence[int], verts_a: Sequence[int],
                faces_b: Sequence[int], verts_b: Sequence[int]) -> bool:
    """Brute-force bijection search with per-vertex face-size profile pruning."""
    if len(verts_a) != len(verts_b) or len(faces_a) != len(faces_b):
        return False
    prof_a = _vertex_profile(faces_a, verts_a)
    prof_b = _vertex_profile(faces_b, verts_b)
    if sorted(prof_a) != sorted(prof_b):
        return False
    target = frozenset(faces_b)
    m = len(verts_a)
    options = [[j for j in range(m) if prof_b[j] == prof_a[i]] for i in range(m)]
    order = sorted(range(m), key=lambda i: len(options[i]))
    image = [0] * m
    used = [False] * m

    def image_of(face: int) -> int:
        out = 0
        for i, v in enumerate(verts_a):
            if face & v:
                out |= image[i]
        return out

    def extend(pos: int) -> bool:
        if pos == m:
            return all(image_of(f) in target for f in faces_a)
        i = order[pos]
        for j in options[i]:
            if not used[j]:
                used[j] = True
                image[i] = verts_b[j]
                if extend(pos + 1):
                    return True
                used[j] = False
        return False

    return extend(0)


def count_induced_copies(cx: SimplicialComplex, pattern: SimplicialComplex) -> int:
    """Number of m-subsets W of [n] whose induced subcomplex is isomorphic to
    ``pattern`` (a complex on its own ground set [m])."""
    m = pattern.n
    if m > cx.n:
        warnings.warn(f"pattern has {m} vertices but the complex only {cx.n}")
        return 0
    pat_faces = sorted(pattern.faces)
    pat_verts = [1 << i for i in range(m)]
    pat_f = [0] * (m + 1)
    for f in pat_faces:
        pat_f[popcount(f)] += 1
    faces_by_size = [cx.faces_of_size(k) for k in range(m + 1)]
    count = 0
    for w in all_sets_of_size(cx.n, m):
        ok = True
        for k in range(1, m + 1):
            got = sum(1 for s in subsets_of_size(w, k) if s in faces_by_size[k])
            if got != pat_f[k]:
                ok = False
                break
        if not ok:
            continue
        sub = induced_subcomplex(cx, w)
        if _isomorphic(pat_faces, pat_verts, sub, list(bits_of(w))):
            count += 1
    return count
