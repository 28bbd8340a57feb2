"""Exact isomorphism by backtracking, plus a brute-force oracle for tests."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .graph import Graph, check_permutation
from .invariants import DEFAULT_TOLERANCE, CandidateMapping, compare
from .spectral import DEFAULT_CONFIG, ConvergenceConfig

REFINEMENTS = ("none", "degree", "evc-classes")
BRUTE_FORCE_MAX_N = 8


@dataclass(frozen=True)
class MatchResult:
    isomorphic: bool
    witness: tuple[int, ...] | None
    nodes_explored: int

    def __bool__(self) -> bool:
        return self.isomorphic


def verify_mapping(g1: Graph, g2: Graph, f: Sequence[int]) -> bool:
    """True iff ``f`` maps edges of g1 exactly onto edges of g2."""
    if g1.n != g2.n:
        raise ValueError(f"vertex counts differ: {g1.n} vs {g2.n}")
    f = check_permutation(f, g1.n)
    if g1.m != g2.m:
        return False
    return all(g2.has_edge(f[u], f[v]) for u, v in g1.edges)


def brute_force_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Try all n! vertex maps. Test oracle only."""
    if g1.n != g2.n:
        return False
    if g1.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {g1.n}")
    if g1.m != g2.m:
        return False
    edges, target = list(g1.edges), g2.edges
    for p in permutations(range(g1.n)):
        if all(((p[u], p[v]) if p[u] < p[v] else (p[v], p[u])) in target for u, v in edges):
            return True
    return False


def is_isomorphic(
    g1: Graph,
    g2: Graph,
    refinement: str = "degree",
    mapping: CandidateMapping | None = None,
    cfg: ConvergenceConfig = DEFAULT_CONFIG,
    tol: float = DEFAULT_TOLERANCE,
) -> MatchResult:
    """Decide isomorphism exactly.

    ``refinement`` restricts each vertex's candidate images: ``"none"`` allows
    any unused vertex, ``"degree"`` requires equal degree, and ``"evc-classes"``
    additionally requires the paired EVC class from ``mapping``. If no mapping is
    supplied in that mode it is obtained from the precursor filter; a filter
    rejection is then a non-isomorphic answer with no search.

    The verdict does not depend on the refinement; ``nodes_explored`` does.
    """
    if refinement not in REFINEMENTS:
        raise ValueError(f"unknown refinement {refinement!r}; expected one of {REFINEMENTS}")
    n = g1.n
    if n != g2.n or g1.m != g2.m:
        return MatchResult(False, None, 0)

    d1, d2 = g1.degrees, g2.degrees
    if refinement == "none":
        allowed = [frozenset(range(n))] * n
    else:
        by_degree: dict[int, set[int]] = {}
        for v, d in enumerate(d2):
            by_degree.setdefault(d, set()).add(v)
        allowed = [frozenset(by_degree.get(d, ())) for d in d1]
        if refinement == "evc-classes":
            if mapping is None:
                verdict = compare(g1, g2, cfg, tol)
                if not verdict.passed:
                    return MatchResult(False, None, 0)
                mapping = verdict.mapping
            classes = mapping.allowed_images(n)
            allowed = [a & c for a, c in zip(allowed, classes)]

    # Highest degree first, ascending id within a degree.
    order = sorted(range(n), key=lambda v: (-d1[v], v))
    candidates = [sorted(allowed[u]) for u in order]
    adj1 = [g1.neighbors[u] for u in range(n)]
    adj2 = [g2.neighbors[v] for v in range(n)]

    f = [-1] * n
    used = [False] * n
    nodes = 0

    def extend(depth: int) -> bool:
        nonlocal nodes
        if depth == n:
            return True
        u = order[depth]
        for v in candidates[depth]:
            if used[v]:
                continue
            ok = True
            for prev in order[:depth]:
                if (prev in adj1[u]) != (f[prev] in adj2[v]):
                    ok = False
                    break
            if not ok:
                continue
            nodes += 1
            f[u] = v
            used[v] = True
            if extend(depth + 1):
                return True
            used[v] = False
            f[u] = -1
        return False

    if extend(0):
        return MatchResult(True, tuple(f), nodes)
    return MatchResult(False, None, nodes)
