"""Shellability, the x-intersection graph obstruction, h-vectors and the
Reisner test for Cohen-Macaulayness."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable

from .complex import (
    ResourceError,
    SimplicialComplex,
    bits_of,
    labels_of,
    link,
    mask_of,
    popcount,
    subsets_of_size,
)
from .generators import decompose_bundles
from .homology import betti_numbers

DEFAULT_NODE_BUDGET = 200_000
DEFAULT_FACE_BUDGET = 50_000


def _facet_size(cx: SimplicialComplex) -> int:
    if not cx.is_pure():
        raise ValueError("complex is not pure")
    return cx.dim_size


@dataclass(frozen=True)
class IntersectionGraph:
    base: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def components(self) -> list[list[int]]:
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        groups: dict[int, list[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    @property
    def connected(self) -> bool:
        # the graph with no vertices counts as connected
        return len(self.components()) <= 1


def x_intersection_graph(cx: SimplicialComplex, x: Iterable[int] | int) -> IntersectionGraph:
    """Facets containing x, joined when they meet in t-1 elements."""
    t = _facet_size(cx)
    xm = mask_of(x)
    if popcount(xm) != t - 2:
        raise ValueError(f"base set must have size t-2 = {t - 2}")
    verts = tuple(f for f in cx.facets if f & xm == xm)
    edges = tuple((a, b) for i, a in enumerate(verts) for b in verts[i + 1:]
                  if popcount(a & b) == t - 1)
    return IntersectionGraph(xm, verts, edges)


@dataclass(frozen=True)
class Obstruction:
    """A (t-2)-set whose intersection graph is disconnected."""

    base: int
    components: tuple[tuple[int, ...], ...]

    def describe(self) -> str:
        comps = [[labels_of(f) for f in c] for c in self.components]
        return f"G_x disconnected for x={labels_of(self.base)}: components {comps}"


def shelling_obstruction(cx: SimplicialComplex) -> Obstruction | None:
    """First (t-2)-set x (by mask order) with disconnected G_x, or None.

    A returned obstruction proves the complex is not shellable; None proves
    nothing.
    """
    t = _facet_size(cx)
    if t < 2:
        return None
    by_base: dict[int, list[int]] = {}
    for f in cx.facets:
        for pair in subsets_of_size(f, 2):
            by_base.setdefault(f ^ pair, []).append(f)
    for base in sorted(by_base):
        members = by_base[base]
        if len(members) < 2:
            continue
        parent = {f: f for f in members}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        seen: dict[int, int] = {}
        for f in members:
            for b in bits_of(f & ~base):
                ridge = f ^ b
                if ridge in seen:
                    ra, rb = find(seen[ridge]), find(f)
                    if ra != rb:
                        parent[rb] = ra
                else:
                    seen[ridge] = f
        groups: dict[int, list[int]] = {}
        for f in members:
            groups.setdefault(find(f), []).append(f)
        if len(groups) > 1:
            return Obstruction(base, tuple(sorted(tuple(g) for g in groups.values())))
    return None


def uniform_layer_obstruction(cx: SimplicialComplex, t: int) -> bool:
    """True when the faces of size t+1 split into two or more bundles.

    For a complex from U(n, t, A, B) those faces are exactly B, and two
    bundles there rule out any shelling.
    """
    return len(decompose_bundles(cx.faces_of_size(t + 1))) >= 2


# -- exact shellability -----------------------------------------------------

@dataclass
class ShellingResult:
    verdict: str  # "shellable" | "not-shellable" | "budget-exceeded"
    order: tuple[int, ...] | None = None
    obstruction: str | None = None
    nodes_explored: int = 0

    @property
    def shellable(self) -> bool | None:
        if self.verdict == "budget-exceeded":
            return None
        return self.verdict == "shellable"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "order": [list(labels_of(f)) for f in self.order] if self.order else None,
            "obstruction": self.obstruction,
            "nodes_explored": self.nodes_explored,
        }


def _fits(placed: Iterable[int], new: int) -> bool:
    placed = list(placed)
    if not placed:
        return True
    size = popcount(new)
    ridges = [p & new for p in placed if popcount(p & new) == size - 1]
    if not ridges:
        return False
    for p in placed:
        inter = p & new
        if not any(inter & r == inter for r in ridges):
            return False
    return True


def is_shelling(order: Iterable[int]) -> bool:
    """Check the shelling condition literally, for every pair i < j."""
    order = list(order)
    for j in range(1, len(order)):
        xj = order[j]
        for i in range(j):
            inter = order[i] & xj
            if not any(inter & order[k] == inter and popcount(order[k] & xj) == popcount(xj) - 1
                       for k in range(j)):
                return False
    return True


class _Budget(Exception):
    pass


def is_shellable(cx: SimplicialComplex, node_budget: int = DEFAULT_NODE_BUDGET) -> ShellingResult:
    """Exact backtracking search for a shelling.

    Facets are placed in non-increasing size order, which loses no shellings.
    Whether a facet may follow depends only on the set already placed, so dead
    sets are memoised.  Ties break on facet mask.
    """
    facets = sorted(cx.facets, key=lambda f: (-popcount(f), f))
    m = len(facets)
    if m <= 1:
        return ShellingResult("shellable", tuple(facets), None, 1)
    full = (1 << m) - 1
    dead: set[int] = set()
    order: list[int] = []
    nodes = 0

    def search(state: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise _Budget
        if state == full:
            return True
        if state in dead:
            return False
        remaining = [i for i in range(m) if not state >> i & 1]
        top = max(popcount(facets[i]) for i in remaining)
        placed = [facets[i] for i in range(m) if state >> i & 1]
        for i in remaining:
            if popcount(facets[i]) != top or not _fits(placed, facets[i]):
                continue
            order.append(facets[i])
            if search(state | 1 << i):
                return True
            order.pop()
        dead.add(state)
        return False

    try:
        found = search(0)
    except _Budget:
        return ShellingResult("budget-exceeded", None, None, nodes)
    if found:
        return ShellingResult("shellable", tuple(order), None, nodes)
    note = None
    if cx.is_pure():
        obs = shelling_obstruction(cx)
        note = obs.describe() if obs else "exhaustive search found no shelling"
    return ShellingResult("not-shellable", None, note, nodes)


# -- h-vector ------------------------------------------------------------------

@dataclass(frozen=True)
class HVector:
    t: int
    h: tuple[int, ...]

    @property
    def h_top(self) -> int:
        return self.h[-1]

    @property
    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.h)


def h_vector(cx: SimplicialComplex) -> HVector:
    """h_k = sum_{i<=k} (-1)^(k-i) C(t-i, k-i) f_i with f_0 = 1 (the empty face)."""
    t = _facet_size(cx)
    f = [0 if cx.void else 1] + [cx.layer_count(i) for i in range(1, t + 1)]
    h = tuple(sum((-1) ** (k - i) * comb(t - i, k - i) * f[i] for i in range(k + 1))
              for k in range(t + 1))
    return HVector(t, h)


def h_top_from_f(cx: SimplicialComplex) -> int:
    """(-1)^t sum_i (-1)^i f_i, an independent route to the last h entry."""
    t = _facet_size(cx)
    f = [0 if cx.void else 1] + [cx.layer_count(i) for i in range(1, t + 1)]
    return (-1) ** t * sum((-1) ** i * f[i] for i in range(t + 1))


# -- Cohen-Macaulay -------------------------------------------------------------

@dataclass(frozen=True)
class CMResult:
    cohen_macaulay: bool
    face: tuple[int, ...] | None = None
    degree: int | None = None
    checked_faces: int = field(default=0, compare=False)

    def __bool__(self) -> bool:
        return self.cohen_macaulay


def is_cohen_macaulay(cx: SimplicialComplex, q: int = 2,
                      face_budget: int = DEFAULT_FACE_BUDGET) -> CMResult:
    """Reisner: reduced homology of every link vanishes below the link dimension.

    The empty face (whose link is the whole complex) is included.  Faces in
    exactly one facet have a simplex or the empty complex as link and are
    skipped.
    """
    if cx.void:
        return CMResult(True)
    faces = sorted(cx.faces, key=lambda f: (popcount(f), f))
    if len(faces) > face_budget:
        raise ResourceError(f"{len(faces)} faces exceed the CM face budget {face_budget}")
    checked = 0
    for x in [0, *faces]:
        if x and sum(1 for f in cx.facets if f & x == x) == 1:
            continue
        lk = cx if x == 0 else link(cx, x)
        dim = lk.dim_size - 1
        if dim <= 0:
            continue
        checked += 1
        prof = betti_numbers(lk, q, reduced=True)
        for i in range(dim):
            if prof.betti[i]:
                return CMResult(False, labels_of(x), i, checked)
    return CMResult(True, None, None, checked)
