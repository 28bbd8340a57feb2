"""Eigenvector centrality by power iteration.

The iteration starts from the all-ones vector and repeats
``x <- A x / ||A x||`` (Euclidean norm) until two consecutive normalization
values agree. The converged normalization value is the spectral radius and the
final iterate holds the per-vertex centrality scores.

Bipartite graphs (trees among them) have a spectrum symmetric about zero, so
the norm settles while the iterate flips between two vectors. When the iterate
itself has not settled, the computation is repeated on ``A + I``, which has the
same eigenvectors and a strictly dominant Perron value, and the reported
radius is shifted back by one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph


class SpectralError(RuntimeError):
    pass


class EdgelessGraphError(SpectralError):
    def __init__(self, n: int):
        super().__init__(f"EVC undefined for edgeless graph (n={n}): A x is the zero vector")
        self.n = n


class ConvergenceError(SpectralError):
    pass


@dataclass(frozen=True)
class ConvergenceConfig:
    norm_tolerance: float = 1e-10
    vector_tolerance: float = 1e-10
    max_iterations: int = 100_000

    def __post_init__(self) -> None:
        if not (self.norm_tolerance > 0 and self.vector_tolerance > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


DEFAULT_CONFIG = ConvergenceConfig()


@dataclass(frozen=True)
class EvcResult:
    values: tuple[float, ...]
    spectral_radius: float
    iterations: int
    vector_converged: bool
    used_shift: bool

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


def _iterate(a: np.ndarray, cfg: ConvergenceConfig, until_vector: bool):
    """Run the normalized power iteration on ``a``.

    Returns ``(x, norm, iterations, norm_converged, vector_converged)``.
    With ``until_vector`` the loop keeps going after the norm settles until the
    iterate settles as well.
    """
    x = np.ones(a.shape[0], dtype=np.float64)
    prev_norm = None
    norm = 0.0
    delta = np.inf
    norm_ok = False
    for it in range(1, cfg.max_iterations + 1):
        y = a @ x
        norm = float(np.linalg.norm(y))
        x_next = y / norm
        delta = float(np.max(np.abs(x_next - x)))
        x = x_next
        norm_ok = prev_norm is not None and abs(norm - prev_norm) <= cfg.norm_tolerance
        prev_norm = norm
        vec_ok = delta <= cfg.vector_tolerance
        if norm_ok and (vec_ok or not until_vector):
            return x, norm, it, True, vec_ok
    return x, norm, cfg.max_iterations, norm_ok, delta <= cfg.vector_tolerance


def power_iteration(g: Graph, cfg: ConvergenceConfig = DEFAULT_CONFIG) -> EvcResult:
    """Eigenvector centrality and spectral radius of ``g``.

    Raises:
        EdgelessGraphError: ``g`` has no edges.
        ConvergenceError: the shifted run did not settle within ``max_iterations``.
    """
    if g.m == 0:
        raise EdgelessGraphError(g.n)
    a = g.adjacency
    x, norm, iters, norm_ok, vec_ok = _iterate(a, cfg, until_vector=False)
    if norm_ok and vec_ok:
        return EvcResult(tuple(x.tolist()), norm, iters, True, False)

    shifted = a + np.eye(g.n)
    x, norm, iters, norm_ok, vec_ok = _iterate(shifted, cfg, until_vector=True)
    if not (norm_ok and vec_ok):
        raise ConvergenceError(
            f"power iteration on A+I did not converge in {cfg.max_iterations} iterations "
            f"(n={g.n}, m={g.m})"
        )
    return EvcResult(tuple(x.tolist()), norm - 1.0, iters, True, True)


def evc_sequence(result: EvcResult) -> tuple[float, ...]:
    """EVC values sorted non-increasing."""
    return tuple(sorted(result.values, reverse=True))
