"""Seeded Erdos-Renyi G(n, p) graphs and reproducible suites.

Per-graph seeds come from a splitmix64 mix of ``(master_seed, p_key, index)``
where ``p_key = round(p_link * 1000)``::

    seed = mix64(mix64(mix64(master_seed) ^ p_key) ^ index)

``mix64`` is the splitmix64 finalizer, a bijection on 64-bit integers, so seeds
within one suite never collide. Keying on the probability itself (not its
position in a sweep) means a suite is the same whether it is run alone or as
part of a larger sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

MASK64 = (1 << 64) - 1


def mix64(x: int) -> int:
    """splitmix64 output function."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def p_key(p_link: float) -> int:
    return int(round(p_link * 1000))


def derive_seed(master_seed: int, p_link: float, index: int) -> int:
    return mix64(mix64(mix64(master_seed & MASK64) ^ p_key(p_link)) ^ index)


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    p_link: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0.0 <= self.p_link <= 1.0:
            raise ValueError(f"p_link must lie in [0, 1], got {self.p_link}")


def erdos_renyi(params: GeneratorParams) -> Graph:
    """One uniform [0, 1) draw per pair u < v in lexicographic order; edge iff draw < p_link."""
    n = params.n
    rng = np.random.Generator(np.random.PCG64(params.seed & MASK64))
    rows, cols = np.triu_indices(n, k=1)
    draws = rng.random(rows.size)
    keep = draws < params.p_link
    return Graph(n, frozenset(zip(rows[keep].tolist(), cols[keep].tolist())))


def suite(n: int, p_link: float, count: int, master_seed: int) -> list[Graph]:
    if count < 0:
        raise ValueError("count must be non-negative")
    return [erdos_renyi(GeneratorParams(n, p_link, derive_seed(master_seed, p_link, k))) for k in range(count)]
