"""Shared strategies and brute-force oracles.

The oracles here deliberately avoid the package's own algorithms: faces are
found by enumerating every subset of every facet, ranks by plain list-based
elimination, and so on.
"""

import sys
from itertools import combinations

import pytest
from hypothesis import strategies as st

from randcomplex import SimplicialComplex, mask_of


def sets_to_masks(sets):
    return [mask_of(s) for s in sets]


def complex_of(n, *sets):
    return SimplicialComplex(n, sets_to_masks(sets))


@pytest.fixture
def hollow_triangle():
    return complex_of(3, (1, 2), (1, 3), (2, 3))


@pytest.fixture
def tetra_boundary():
    return complex_of(4, *combinations(range(1, 5), 3))


@pytest.fixture
def rp2():
    """Six-vertex real projective plane."""
    tris = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
            (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]
    return complex_of(6, *tris)


@pytest.fixture
def torus():
    """Seven-vertex (Moebius) torus."""
    tris = []
    for i in range(7):
        for a, b in ((1, 3), (2, 3)):
            tris.append(tuple(sorted({i % 7 + 1, (i + a) % 7 + 1, (i + b) % 7 + 1})))
    return complex_of(7, *tris)


def brute_faces(n, facet_masks):
    out = set()
    for f in facet_masks:
        verts = [i for i in range(n) if f >> i & 1]
        for k in range(1, len(verts) + 1):
            for sub in combinations(verts, k):
                out.add(sum(1 << i for i in sub))
    return out


def rank_mod(rows, q):
    """Rank of a list-of-lists matrix over GF(q), by textbook row reduction."""
    m = [[x % q for x in r] for r in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], q - 2, q)
        m[rank] = [x * inv % q for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                fac = m[r][c]
                m[r] = [(x - fac * y) % q for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def brute_betti(n, faces, q):
    """Unreduced Betti numbers from signed boundary matrices built from scratch."""
    by_dim = {}
    for f in faces:
        by_dim.setdefault(bin(f).count("1") - 1, []).append(f)
    top = max(by_dim, default=-1)
    ranks = {}
    for k in range(1, top + 1):
        rows = sorted(by_dim.get(k - 1, []))
        cols = sorted(by_dim.get(k, []))
        idx = {f: i for i, f in enumerate(rows)}
        mat = [[0] * len(cols) for _ in rows]
        for j, c in enumerate(cols):
            verts = [i for i in range(n) if c >> i & 1]
            for pos, v in enumerate(verts):
                mat[idx[c ^ (1 << v)]][j] = (-1) ** pos
        ranks[k] = rank_mod(mat, q) if rows and cols else 0
    return [len(by_dim.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0)
            for k in range(top + 1)]


def monotone_by_filter(n):
    """Every truth table checked pairwise against the order on inputs."""
    out = []
    for table in range(1 << (1 << n)):
        if all(not (table >> a & 1) or table >> b & 1
               for a in range(1 << n) for b in range(1 << n) if a & b == a):
            out.append(table)
    return out


@st.composite
def complexes(draw, min_n=1, max_n=6, max_facets=8):
    n = draw(st.integers(min_n, max_n))
    masks = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=max_facets))
    return SimplicialComplex(n, masks)


@st.composite
def pure_complexes(draw, min_n=3, max_n=7, max_facets=10):
    n = draw(st.integers(min_n, max_n))
    t = draw(st.integers(1, n))
    sets = draw(st.lists(st.sampled_from(list(combinations(range(1, n + 1), t))),
                         min_size=1, max_size=max_facets))
    return SimplicialComplex(n, sets_to_masks(sets))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
