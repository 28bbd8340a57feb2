import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evciso.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    from_edges,
    is_connected,
    path_graph,
    permute,
    star_graph,
)
from evciso.spectral import (
    ConvergenceConfig,
    ConvergenceError,
    EdgelessGraphError,
    evc_sequence,
    power_iteration,
)

from .conftest import graph_and_permutation, graphs, perron_oracle

R2 = math.sqrt(2)

# Closed forms: K4 uniform 1/2; P3 (1/2, 1/sqrt2, 1/2) with rho sqrt2;
# star K1,4 center 1/sqrt2, leaves 1/(2 sqrt2), rho 2; C5 uniform 1/sqrt5.
FIXTURES = [
    ("K4", complete_graph(4), [0.5] * 4, 3.0),
    ("P3", path_graph(3), [0.5, 1 / R2, 0.5], R2),
    ("K1,4", star_graph(4), [1 / R2] + [1 / (2 * R2)] * 4, 2.0),
    ("C5", cycle_graph(5), [1 / math.sqrt(5)] * 5, 2.0),
]


@pytest.mark.parametrize("name, g, values, rho", FIXTURES, ids=[f[0] for f in FIXTURES])
class TestFixtures:
    def test_closed_form(self, name, g, values, rho):
        r = power_iteration(g)
        assert r.values == pytest.approx(values, abs=1e-9)
        assert r.spectral_radius == pytest.approx(rho, abs=1e-9)

    def test_closed_form_matches_oracle(self, name, g, values, rho):
        lam, vec = perron_oracle(g)
        assert lam == pytest.approx(rho, abs=1e-12)
        assert vec == pytest.approx(values, abs=1e-12)


def test_rounded_values_from_the_fixture_table():
    assert [round(x, 5) for x in evc_sequence(power_iteration(path_graph(3)))] == [0.70711, 0.5, 0.5]
    assert [round(x, 5) for x in evc_sequence(power_iteration(star_graph(4)))] == [0.70711] + [0.35355] * 4
    assert round(power_iteration(path_graph(3)).spectral_radius, 5) == 1.41421


def test_regular_graph_stops_without_shift():
    r = power_iteration(complete_graph(4))
    assert not r.used_shift
    assert r.vector_converged
    assert r.iterations == 3


def test_bipartite_path_needs_shift():
    r = power_iteration(path_graph(3))
    assert r.used_shift


def test_edgeless_is_an_error():
    with pytest.raises(EdgelessGraphError, match="edgeless"):
        power_iteration(empty_graph(5))


def test_non_convergence_reported():
    with pytest.raises(ConvergenceError):
        power_iteration(path_graph(6), ConvergenceConfig(max_iterations=3))


@pytest.mark.parametrize(
    "kwargs", [dict(norm_tolerance=0), dict(vector_tolerance=-1.0), dict(max_iterations=0)]
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        ConvergenceConfig(**kwargs)


def test_evc_sequence_sorted():
    assert evc_sequence(power_iteration(complete_graph(4))) == pytest.approx([0.5] * 4)
    seq = evc_sequence(power_iteration(path_graph(5)))
    assert list(seq) == sorted(seq, reverse=True)


@pytest.mark.parametrize("n", range(2, 10))
def test_complete_graph_radius(n):
    assert power_iteration(complete_graph(n)).spectral_radius == pytest.approx(n - 1, abs=1e-8)


@pytest.mark.parametrize("n", range(3, 13))
def test_cycle_radius(n):
    r = power_iteration(cycle_graph(n))
    assert r.spectral_radius == pytest.approx(2.0, abs=1e-8)
    assert r.values == pytest.approx([1 / math.sqrt(n)] * n, abs=1e-9)


@pytest.mark.parametrize("m", range(1, 12))
def test_star_radius(m):
    assert power_iteration(star_graph(m)).spectral_radius == pytest.approx(math.sqrt(m), abs=1e-8)


def test_disconnected_mass_on_dominant_component():
    g = disjoint_union(complete_graph(4), path_graph(3))
    r = power_iteration(g)
    assert r.spectral_radius == pytest.approx(3.0, abs=1e-9)
    assert r.values[:4] == pytest.approx([0.5] * 4, abs=1e-9)
    assert max(r.values[4:]) < 1e-9


def test_equal_radius_components_converge():
    # C4 and K1,4 both have spectral radius 2 and are bipartite.
    g = disjoint_union(cycle_graph(4), star_graph(4), empty_graph(1))
    r = power_iteration(g)
    assert r.used_shift
    assert r.spectral_radius == pytest.approx(2.0, abs=1e-9)


@given(graphs(min_n=2, max_n=12, min_edges=1))
def test_result_invariants(g):
    r = power_iteration(g)
    x = np.array(r.values)
    assert (x >= 0).all()
    assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-9)
    avg = 2 * g.m / g.n
    assert avg - 1e-9 <= r.spectral_radius <= max(g.degrees) + 1e-9


@given(graph_and_permutation(min_n=2, max_n=12, min_edges=1))
def test_permutation_equivariance(gp):
    g, p = gp
    r, rp = power_iteration(g), power_iteration(permute(g, p))
    assert rp.iterations == r.iterations
    assert rp.used_shift == r.used_shift
    for v in range(g.n):
        assert rp.values[p[v]] == pytest.approx(r.values[v], abs=1e-9)
    assert evc_sequence(rp) == pytest.approx(evc_sequence(r), abs=1e-9)


@st.composite
def regular_graphs(draw):
    # Circulant graphs are regular; jump sets pick the degree.
    n = draw(st.integers(3, 14))
    jumps = draw(st.sets(st.integers(1, n // 2), min_size=1))
    edges = {(i, (i + j) % n) for i in range(n) for j in jumps}
    return Graph(n, frozenset((u, v) for u, v in edges if u != v))


@given(regular_graphs())
def test_regular_graph_uniform(g):
    assert len(set(g.degrees)) == 1
    r = power_iteration(g)
    assert r.values == pytest.approx([1 / math.sqrt(g.n)] * g.n, abs=1e-9)
    assert r.spectral_radius == pytest.approx(g.degrees[0], abs=1e-9)


@settings(max_examples=200)
@given(graphs(min_n=2, max_n=12, min_edges=1))
def test_matches_dense_oracle(g):
    if not is_connected(g):
        return
    lam, vec = perron_oracle(g)
    r = power_iteration(g)
    assert r.spectral_radius == pytest.approx(lam, abs=1e-6)
    assert evc_sequence(r) == pytest.approx(sorted(vec, reverse=True), abs=1e-6)


def test_slow_disconnected_case_converges():
    # Triangle (rho 2) beside a tree with rho 1.9696: shifted ratio ~0.99.
    g = from_edges(10, [(0, 2), (0, 4), (1, 3), (1, 7), (2, 4), (3, 6), (3, 9), (5, 8), (6, 8)])
    r = power_iteration(g)
    assert r.iterations > 1000
    assert r.spectral_radius == pytest.approx(2.0, abs=1e-9)
    tri = [r.values[v] for v in (0, 2, 4)]
    assert tri == pytest.approx([1 / math.sqrt(3)] * 3, abs=1e-6)
