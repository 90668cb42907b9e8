"""Plain-text interchange for complexes and admissible pairs.

Complex files::

    n=6
    # comments and blank lines are ignored
    1,2,3
    3,4

Admissible-pair files add a ``t=<int>`` line and ``[A]`` / ``[B]`` section
headers; the sets listed under each header belong to that family.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .complex import SimplicialComplex, down_closure, labels_of, mask_of


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _parse_header(line: str, key: str) -> int:
    name, sep, value = line.partition("=")
    if not sep or name.strip() != key:
        raise ValueError(f"expected '{key}=<int>', got {line!r}")
    return int(value)


def _parse_set(line: str) -> tuple[int, ...]:
    try:
        labels = tuple(int(tok) for tok in line.split(","))
    except ValueError as exc:
        raise ValueError(f"bad facet line {line!r}") from exc
    if list(labels) != sorted(set(labels)):
        raise ValueError(f"facet labels must be strictly ascending: {line!r}")
    return labels


def format_sets(masks: Iterable[int]) -> list[str]:
    return [",".join(str(v) for v in labels_of(m)) for m in masks]


def parse_complex(text: str) -> SimplicialComplex:
    lines = _content_lines(text)
    if not lines:
        raise ValueError("empty complex file")
    n = _parse_header(lines[0], "n")
    return down_closure([_parse_set(line) for line in lines[1:]], n)


def format_complex(cx: SimplicialComplex) -> str:
    return "\n".join([f"n={cx.n}", *format_sets(cx.facets)]) + "\n"


def read_complex(path: str | Path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


def write_complex(cx: SimplicialComplex, path: str | Path) -> None:
    Path(path).write_text(format_complex(cx))


def parse_pair(text: str) -> tuple[int, int, list[int], list[int]]:
    """Return (n, t, A, B) with the families as masks."""
    lines = _content_lines(text)
    if len(lines) < 2:
        raise ValueError("pair file needs n= and t= lines")
    n = _parse_header(lines[0], "n")
    t = _parse_header(lines[1], "t")
    families: dict[str, list[int]] = {"A": [], "B": []}
    current = None
    for line in lines[2:]:
        if line in ("[A]", "[B]"):
            current = line[1]
            continue
        if current is None:
            raise ValueError(f"set {line!r} appears before a section header")
        families[current].append(mask_of(_parse_set(line)))
    return n, t, families["A"], families["B"]


def format_pair(n: int, t: int, a: Iterable[int], b: Iterable[int]) -> str:
    out = [f"n={n}", f"t={t}", "[A]", *format_sets(sorted(a)), "[B]", *format_sets(sorted(b))]
    return "\n".join(out) + "\n"
