"""Edge-list file format.

First non-comment line is ``<n> <m>``, followed by m lines ``u v`` with
0-based ids. Lines starting with '#' are ignored. Loops and duplicate
edges are rejected with the offending line number.
"""

from __future__ import annotations

import io
from typing import TextIO

from .errors import InputError
from .graph import Graph


def parse_edgelist(text: str) -> Graph:
    return read_edgelist(io.StringIO(text))


def read_edgelist(f: TextIO) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(f, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise InputError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise InputError(f"line {lineno}: expected two integers, got {line!r}") from None
        if header is None:
            header = (a, b)
            if a < 0 or b < 0:
                raise InputError(f"line {lineno}: negative count in header")
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"line {lineno}: edge ({a},{b}) out of range for n={n}")
        if a == b:
            raise InputError(f"line {lineno}: self-loop at vertex {a}")
        key = (a, b) if a < b else (b, a)
        if key in seen:
            raise InputError(
                f"line {lineno}: duplicate edge ({a},{b}), first seen on line {seen[key]}"
            )
        seen[key] = lineno
        edges.append(key)
    if header is None:
        raise InputError("empty edge-list input (missing '<n> <m>' header)")
    n, m = header
    if len(edges) != m:
        raise InputError(f"header declares m={m} edges but {len(edges)} were given")
    return Graph(n, edges)


def load_edgelist(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return read_edgelist(f)


def format_edgelist(g: Graph) -> str:
    """Canonical serialization: header then edges u<v, ascending."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_edgelist(g: Graph, f: TextIO) -> None:
    f.write(format_edgelist(g))


def save_edgelist(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        write_edgelist(g, f)
