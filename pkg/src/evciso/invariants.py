"""Staged isomorphism precursor: counts, degree sequence, EVC sequence.

Each stage is a necessary condition for isomorphism, ordered from cheapest to
most expensive. A pair that survives all stages is only *potentially*
isomorphic; the matching EVC values also yield a candidate vertex pairing that
the exact matcher can use to restrict its search.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Hashable, Sequence

from .graph import Graph, degree_sequence
from .spectral import DEFAULT_CONFIG, ConvergenceConfig, EvcResult, evc_sequence, power_iteration

DEFAULT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class InvariantSignature:
    n: int
    m: int
    degree_seq: tuple[int, ...]
    evc: EvcResult | None = None

    @property
    def evc_seq(self) -> tuple[float, ...] | None:
        return None if self.evc is None else evc_sequence(self.evc)


class Verdict(enum.Enum):
    REJECTED_BY_COUNTS = "RejectedByCounts"
    REJECTED_BY_DEGREE_SEQ = "RejectedByDegreeSeq"
    REJECTED_BY_EVC_SEQ = "RejectedByEvcSeq"
    POTENTIALLY_ISOMORPHIC = "PotentiallyIsomorphic"
    TRIVIALLY_ISOMORPHIC = "TriviallyIsomorphic"

    @property
    def rejected(self) -> bool:
        return self.name.startswith("REJECTED")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CandidateMapping:
    """Vertex classes of two graphs paired by position in EVC order.

    ``classes[k] = (ids_in_g1, ids_in_g2)``; classes are listed from the highest
    EVC value down.
    """

    classes: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def unique(self) -> bool:
        return all(len(a) == 1 for a, _ in self.classes)

    def bijection(self) -> tuple[int, ...] | None:
        """The implied vertex map g1 -> g2 when every class is a singleton."""
        if not self.unique:
            return None
        f = [0] * len(self.classes)
        for (a,), (b,) in self.classes:
            f[a] = b
        return tuple(f)

    def allowed_images(self, n: int) -> list[frozenset[int]]:
        """For each vertex of g1, the g2 vertices in its paired class."""
        allowed: list[frozenset[int]] = [frozenset()] * n
        for a, b in self.classes:
            fb = frozenset(b)
            for v in a:
                allowed[v] = fb
        return allowed


@dataclass(frozen=True)
class FilterVerdict:
    verdict: Verdict
    detail: str = ""
    mapping: CandidateMapping | None = None

    @property
    def passed(self) -> bool:
        return not self.verdict.rejected


class ClassMismatchError(ValueError):
    """EVC tie classes do not line up across the two graphs."""


class SignatureCache:
    """Per-run memo of signatures with a count of EVC computations.

    Entries are keyed by object identity unless a key is given; the graph is
    held by the cache so identities stay valid. Not thread-safe: populate it
    from one thread (see ``put``) before sharing.
    """

    def __init__(self, cfg: ConvergenceConfig = DEFAULT_CONFIG):
        self.cfg = cfg
        self._entries: dict[Hashable, tuple[Graph, InvariantSignature]] = {}
        self.evc_computations = 0

    def _key(self, g: Graph, key: Hashable | None) -> Hashable:
        return ("id", id(g)) if key is None else key

    def basic(self, g: Graph, key: Hashable | None = None) -> InvariantSignature:
        k = self._key(g, key)
        entry = self._entries.get(k)
        if entry is None:
            sig = InvariantSignature(g.n, g.m, degree_sequence(g))
            self._entries[k] = (g, sig)
            return sig
        return entry[1]

    def full(self, g: Graph, key: Hashable | None = None) -> InvariantSignature:
        sig = self.basic(g, key)
        if sig.evc is None and sig.m > 0:
            self.evc_computations += 1
            sig = InvariantSignature(sig.n, sig.m, sig.degree_seq, power_iteration(g, self.cfg))
            self._entries[self._key(g, key)] = (g, sig)
        return sig

    def put(self, g: Graph, evc: EvcResult | None, key: Hashable | None = None) -> None:
        """Insert a precomputed EVC result (counted as one computation)."""
        sig = InvariantSignature(g.n, g.m, degree_sequence(g), evc)
        if evc is not None:
            self.evc_computations += 1
        self._entries[self._key(g, key)] = (g, sig)


def signature(g: Graph, cfg: ConvergenceConfig = DEFAULT_CONFIG) -> InvariantSignature:
    evc = power_iteration(g, cfg) if g.m > 0 else None
    return InvariantSignature(g.n, g.m, degree_sequence(g), evc)


def sequences_equal(a: Sequence[float], b: Sequence[float], tol: float = DEFAULT_TOLERANCE) -> bool:
    if len(a) != len(b):
        return False
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def _tie_classes(values: Sequence[float], tol: float) -> list[tuple[int, ...]]:
    # Descending by value, id ascending within exact ties.
    order = sorted(range(len(values)), key=lambda v: (-values[v], v))
    classes: list[list[int]] = []
    prev = None
    for v in order:
        if prev is not None and values[prev] - values[v] <= tol:
            classes[-1].append(v)
        else:
            classes.append([v])
        prev = v
    return [tuple(sorted(c)) for c in classes]


def candidate_mapping(
    values1: Sequence[float], values2: Sequence[float], tol: float = DEFAULT_TOLERANCE
) -> CandidateMapping:
    """Pair EVC tie classes of two graphs by rank.

    Raises ClassMismatchError when the graphs split into a different number of
    classes or paired classes differ in size.
    """
    c1 = _tie_classes(values1, tol)
    c2 = _tie_classes(values2, tol)
    if len(c1) != len(c2) or any(len(a) != len(b) for a, b in zip(c1, c2)):
        raise ClassMismatchError(
            f"tie classes differ: sizes {[len(a) for a in c1]} vs {[len(b) for b in c2]}"
        )
    return CandidateMapping(tuple(zip(c1, c2)))


def _fmt(seq: Sequence[float], digits: int = 5) -> str:
    return "[" + ", ".join(f"{x:.{digits}f}" for x in seq) + "]"


def compare(
    g1: Graph,
    g2: Graph,
    cfg: ConvergenceConfig = DEFAULT_CONFIG,
    tol: float = DEFAULT_TOLERANCE,
    cache: SignatureCache | None = None,
    keys: tuple[Hashable, Hashable] | None = None,
) -> FilterVerdict:
    """Run the precursor stages in order and stop at the first rejection.

    EVC values are only computed once the count and degree stages pass.
    """
    if cache is None:
        cache = SignatureCache(cfg)
    k1, k2 = keys if keys is not None else (None, None)
    s1, s2 = cache.basic(g1, k1), cache.basic(g2, k2)

    if (s1.n, s1.m) != (s2.n, s2.m):
        return FilterVerdict(
            Verdict.REJECTED_BY_COUNTS, f"|V|,|E| = {s1.n},{s1.m} vs {s2.n},{s2.m}"
        )
    if s1.degree_seq != s2.degree_seq:
        return FilterVerdict(
            Verdict.REJECTED_BY_DEGREE_SEQ, f"{list(s1.degree_seq)} vs {list(s2.degree_seq)}"
        )
    if s1.m == 0:
        everything = tuple(range(s1.n))
        classes = ((everything, everything),) if s1.n else ()
        return FilterVerdict(Verdict.TRIVIALLY_ISOMORPHIC, "both graphs edgeless", CandidateMapping(classes))

    s1, s2 = cache.full(g1, k1), cache.full(g2, k2)
    e1, e2 = s1.evc_seq, s2.evc_seq
    if not sequences_equal(e1, e2, tol):
        return FilterVerdict(Verdict.REJECTED_BY_EVC_SEQ, f"{_fmt(e1)} vs {_fmt(e2)}")
    try:
        mapping = candidate_mapping(s1.evc.values, s2.evc.values, tol)
    except ClassMismatchError as exc:
        return FilterVerdict(Verdict.REJECTED_BY_EVC_SEQ, str(exc))
    return FilterVerdict(Verdict.POTENTIALLY_ISOMORPHIC, _fmt(e1), mapping)
