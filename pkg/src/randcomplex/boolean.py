"""Monotone Boolean functions, their complexes, and decision-tree complexity.

A function on n variables is a truth table packed into an int of 2^n bits.
Bit ``idx`` holds f(x) for the input whose binary encoding is ``idx`` with
x_1 least significant, so the input x_A for a vertex set A has index
``mask_of(A)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .complex import SimplicialComplex, full_mask, labels_of
from .homology import betti_numbers

MAX_DECISION_ARITY = 6
MAX_ENUMERATION_ARITY = 5


class NonMonotoneError(ValueError):
    def __init__(self, lower: int, upper: int):
        self.pair = (labels_of(lower), labels_of(upper))
        super().__init__(f"f(x_A)=1 but f(x_B)=0 for A={self.pair[0]}, B={self.pair[1]}")


class ArityBudgetError(ValueError):
    pass


def monotone_violation(n: int, table: int) -> tuple[int, int] | None:
    """A pair A subset of B with f(x_A)=1 and f(x_B)=0, or None."""
    for a in range(1 << n):
        if not table >> a & 1:
            continue
        for i in range(n):
            b = a | 1 << i
            if b != a and not table >> b & 1:
                return a, b
    return None


@dataclass(frozen=True)
class MonotoneBooleanFunction:
    n: int
    table: int

    def __post_init__(self):
        if self.table >> (1 << self.n):
            raise ValueError(f"truth table wider than 2^{self.n} bits")
        bad = monotone_violation(self.n, self.table)
        if bad:
            raise NonMonotoneError(*bad)

    @classmethod
    def from_hex(cls, n: int, text: str) -> "MonotoneBooleanFunction":
        return cls(n, int(text.strip().removeprefix("0x"), 16))

    def to_hex(self) -> str:
        width = max(1, (1 << self.n) // 4)
        return format(self.table, f"0{width}x")

    def __call__(self, inputs: Sequence[int]) -> int:
        idx = sum(1 << i for i, bit in enumerate(inputs) if bit)
        return self.table >> idx & 1

    def on_set(self, mask: int) -> int:
        return self.table >> mask & 1

    @property
    def is_constant(self) -> bool:
        return self.table in (0, full_mask(1 << self.n))

    def dual(self) -> "MonotoneBooleanFunction":
        """x -> not f(not x)."""
        top = full_mask(self.n)
        out = 0
        for a in range(1 << self.n):
            if not self.table >> (top ^ a) & 1:
                out |= 1 << a
        return MonotoneBooleanFunction(self.n, out)

    def permuted(self, perm: Sequence[int]) -> "MonotoneBooleanFunction":
        """g(x) = f(y) where y_{perm[i]} = x_i (0-based variable indices)."""
        out = 0
        for a in range(1 << self.n):
            b = sum(1 << perm[i] for i in range(self.n) if a >> i & 1)
            if self.table >> b & 1:
                out |= 1 << a
        return MonotoneBooleanFunction(self.n, out)


def complex_of_function(f: MonotoneBooleanFunction) -> SimplicialComplex:
    """The complex of nonempty sets A with f(x_A) = 0.

    Constant 1 gives the void complex (not even the empty set is a zero).
    """
    if f.on_set(0):
        return SimplicialComplex(f.n, void=True)
    facets = []
    for a in range(1, 1 << f.n):
        if f.on_set(a):
            continue
        if all(f.on_set(a | 1 << i) for i in range(f.n) if not a >> i & 1):
            facets.append(a)
    return SimplicialComplex(f.n, facets)


def function_of_complex(cx: SimplicialComplex) -> MonotoneBooleanFunction:
    """f(x_A) = 0 exactly when A is a face (the empty set counts unless void)."""
    faces = cx.faces
    table = 0
    for a in range(1 << cx.n):
        zero = (not cx.void) if a == 0 else a in faces
        if not zero:
            table |= 1 << a
    return MonotoneBooleanFunction(cx.n, table)


# -- decision trees -------------------------------------------------------------

@lru_cache(maxsize=None)
def _source_indices(m: int, i: int, bit: int) -> tuple[int, ...]:
    low = (1 << i) - 1
    return tuple((idx & low) | (bit << i) | ((idx >> i) << (i + 1))
                 for idx in range(1 << (m - 1)))


def restrict(m: int, table: int, i: int, bit: int) -> int:
    """Truth table on m-1 variables after fixing variable i (0-based) to ``bit``."""
    out = 0
    for pos, src in enumerate(_source_indices(m, i, bit)):
        if table >> src & 1:
            out |= 1 << pos
    return out


@lru_cache(maxsize=None)
def _depth(m: int, table: int) -> int:
    if table == 0 or table == full_mask(1 << m):
        return 0
    best = m
    for i in range(m):
        d0 = _depth(m - 1, restrict(m, table, i, 0))
        if 1 + d0 >= best:
            continue
        d1 = _depth(m - 1, restrict(m, table, i, 1))
        best = min(best, 1 + max(d0, d1))
        if best == 1:
            break
    return best


@dataclass(frozen=True)
class DecisionTreeStats:
    depth: int
    n: int
    nodes_memoized: int = field(default=0, compare=False)

    @property
    def evasive(self) -> bool:
        return self.depth == self.n


def decision_tree_complexity(f: MonotoneBooleanFunction,
                             max_arity: int = MAX_DECISION_ARITY) -> DecisionTreeStats:
    """Exact D(f) by memoised minimax over restrictions."""
    if f.n > max_arity:
        raise ArityBudgetError(f"exact decision-tree complexity refused for n={f.n} > {max_arity}")
    d = _depth(f.n, f.table)
    return DecisionTreeStats(d, f.n, _depth.cache_info().currsize)


def is_evasive(f: MonotoneBooleanFunction) -> bool:
    return decision_tree_complexity(f).evasive


# -- enumeration and census -------------------------------------------------------

@lru_cache(maxsize=None)
def _monotone_tables(n: int) -> tuple[int, ...]:
    if n == 0:
        return (0, 1)
    lower = _monotone_tables(n - 1)
    shift = 1 << (n - 1)
    return tuple(f0 | f1 << shift for f1 in lower for f0 in lower if f0 & ~f1 == 0)


def enumerate_monotone(n: int) -> Iterator[MonotoneBooleanFunction]:
    """Every monotone function on n variables once, built from pairs f0 <= f1."""
    if n > MAX_ENUMERATION_ARITY:
        raise ArityBudgetError(
            f"n={n}: there are 7,828,354 monotone functions of 6 variables and more "
            f"beyond; enumeration is limited to n <= {MAX_ENUMERATION_ARITY}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    for table in _monotone_tables(n):
        yield MonotoneBooleanFunction(n, table)


def reduced_homology_trivial(cx: SimplicialComplex) -> bool:
    return betti_numbers(cx, 2, reduced=True).is_trivial()


def kss_consistency(f: MonotoneBooleanFunction) -> bool:
    """Non-evasive non-constant f must have a complex with trivial reduced homology."""
    if f.is_constant:
        raise ValueError("the consistency check needs a non-constant function")
    if is_evasive(f):
        return True
    return reduced_homology_trivial(complex_of_function(f))


@dataclass
class CensusReport:
    n: int
    total: int
    constants: int
    evasive: int
    nontrivial_homology: int
    kss_violations: int
    depth_histogram: dict[int, int]

    @property
    def fraction(self) -> float:
        return self.evasive / self.total

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "constants": self.constants,
            "evasive": self.evasive,
            "fraction": self.fraction,
            "nontrivial_homology": self.nontrivial_homology,
            "kss_violations": self.kss_violations,
            "depth_histogram": {str(k): v for k, v in sorted(self.depth_histogram.items())},
        }


def evasive_census(n: int) -> CensusReport:
    """Exact evasiveness census over all monotone functions of n variables.

    Constants count as non-evasive.  ``nontrivial_homology`` counts
    non-constant functions whose complex has nonzero reduced GF(2) homology.
    """
    total = constants = evasive = nontrivial = violations = 0
    hist: dict[int, int] = {}
    for f in enumerate_monotone(n):
        total += 1
        stats = decision_tree_complexity(f)
        hist[stats.depth] = hist.get(stats.depth, 0) + 1
        if f.is_constant:
            constants += 1
            continue
        trivial = reduced_homology_trivial(complex_of_function(f))
        nontrivial += not trivial
        if stats.evasive:
            evasive += 1
        elif not trivial:
            violations += 1
    return CensusReport(n, total, constants, evasive, nontrivial, violations, hist)


__all__ = [
    "ArityBudgetError",
    "CensusReport",
    "DecisionTreeStats",
    "MonotoneBooleanFunction",
    "NonMonotoneError",
    "complex_of_function",
    "decision_tree_complexity",
    "enumerate_monotone",
    "evasive_census",
    "function_of_complex",
    "kss_consistency",
    "monotone_violation",
    "restrict",
]
