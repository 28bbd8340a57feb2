from itertools import combinations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from evciso.graph import Graph

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=10, min_edges=0):
    n = draw(st.integers(max(min_n, 2 if min_edges else 0), max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=min_edges, unique=True)) if pairs else []
    return Graph(n, frozenset(chosen))


@st.composite
def graph_and_permutation(draw, min_n=1, max_n=10, min_edges=0):
    g = draw(graphs(min_n=min_n, max_n=max_n, min_edges=min_edges))
    p = draw(st.permutations(range(g.n)))
    return g, tuple(p)


def perron_oracle(g: Graph):
    """Largest eigenvalue and |eigenvector| from a dense symmetric eigensolver."""
    w, vecs = np.linalg.eigh(g.adjacency)
    return float(w[-1]), np.abs(vecs[:, -1])


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = (marker.args[0], marker.args[1])
    results = item.config._acceptance.setdefault(key, [])
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        results.append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcomes in sorted(results.items(), key=lambda kv: str(kv[0][0])):
        ok = all(o == "passed" for _, o in outcomes)
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
        if not ok:
            for name, o in outcomes:
                if o != "passed":
                    terminalreporter.write_line(f"         {name}: {o}")
