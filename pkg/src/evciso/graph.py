"""Simple undirected graphs, the edge-list text format, and relabeling helpers.

Vertices are the integers ``0 .. n-1``. Edges are stored canonically as
``(min, max)`` pairs in a frozenset, so two graphs compare equal exactly when
they have the same vertex count and the same edge set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Raised when an edge-list document cannot be parsed."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise ValueError(f"vertex count must be a non-negative integer, got {self.n!r}")
        canon = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            canon.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", frozenset(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Read-only symmetric 0/1 adjacency matrix (float64, zero diagonal)."""
        a = np.zeros((self.n, self.n), dtype=np.float64)
        if self.edges:
            idx = np.array(sorted(self.edges), dtype=np.intp)
            a[idx[:, 0], idx[:, 1]] = 1.0
            a[idx[:, 1], idx[:, 0]] = 1.0
        a.setflags(write=False)
        return a

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        """Degree of each vertex, indexed by vertex id."""
        return tuple(len(s) for s in self.neighbors)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges if u < v else (v, u) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def degree_sequence(g: Graph) -> tuple[int, ...]:
    """Vertex degrees sorted non-increasing."""
    return tuple(sorted(g.degrees, reverse=True))


def check_permutation(p: Sequence[int], n: int) -> tuple[int, ...]:
    """Validate that ``p`` is a bijection on ``range(n)`` and return it as a tuple."""
    p = tuple(int(x) for x in p)
    if len(p) != n:
        raise ValueError(f"permutation has length {len(p)}, expected {n}")
    if sorted(p) != list(range(n)):
        raise ValueError("not a permutation of range(n)")
    return p


def permute(g: Graph, p: Sequence[int]) -> Graph:
    """Relabel ``g`` so that vertex ``v`` becomes ``p[v]``."""
    p = check_permutation(p, g.n)
    return Graph(g.n, frozenset((p[u], p[v]) for u, v in g.edges))


def inverse_permutation(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def parse_graph(text: str, source: str | None = None) -> Graph:
    """Parse an edge-list document.

    The first non-comment line holds ``<n> <m>``; exactly ``m`` edge lines
    ``<u> <v>`` follow. Blank lines and ``#`` comments are skipped. Repeated
    edges collapse to one. Errors carry the 1-based line number.
    """
    header: tuple[int, int] | None = None
    header_line = 0
    edges: set[Edge] = set()
    n_edge_lines = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {raw.strip()!r}", lineno, source)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {raw.strip()!r}", lineno, source) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative vertex or edge count", lineno, source)
            header = (a, b)
            header_line = lineno
            continue
        n, m = header
        if n_edge_lines >= m:
            raise GraphFormatError(f"more edge lines than the declared {m}", lineno, source)
        n_edge_lines += 1
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"endpoint out of range [0, {n}): {a} {b}", lineno, source)
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno, source)
        edges.add((a, b) if a < b else (b, a))
    if header is None:
        raise GraphFormatError("missing '<n> <m>' header", None, source)
    if n_edge_lines != header[1]:
        raise GraphFormatError(
            f"header declares {header[1]} edges but {n_edge_lines} edge lines follow", header_line, source
        )
    return Graph(header[0], frozenset(edges))


def render_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), source=str(path))


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_graph(g))


# Named constructors used by tests, fixtures and the CLI docs.


def from_edges(n: int, edges: Iterable[Edge]) -> Graph:
    return Graph(n, frozenset(edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def disjoint_union(*graphs: Graph) -> Graph:
    edges: set[Edge] = set()
    offset = 0
    for g in graphs:
        edges.update((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, frozenset(edges))


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in g.neighbors[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n
