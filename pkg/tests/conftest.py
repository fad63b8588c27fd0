import itertools
import math

import networkx as nx
import numpy as np
import pytest
from scipy.linalg import expm

from stayhome.graphs import Graph

_ACCEPTANCE = []


def record(criterion, ok, detail=""):
    _ACCEPTANCE.append((criterion, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


def expm_walk(g, t):
    """Independent oracle for U(t): dense matrix exponential, no eigendecomposition."""
    return expm(1j * t * g.as_float())


def isomorphic(g, h):
    """Brute force over all vertex permutations; only for tiny graphs."""
    if g.n != h.n or g.n > 8:
        raise ValueError("brute-force isomorphism is limited to equal sizes <= 8")
    if sorted(g.degrees) != sorted(h.degrees):
        return False
    for perm in itertools.permutations(range(g.n)):
        p = list(perm)
        if (g.adj[np.ix_(p, p)] == h.adj).all():
            return True
    return False


def girth(g):
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: None}
        queue = [s]
        for u in queue:
            for v in np.flatnonzero(g.adj[u]):
                v = int(v)
                if v not in dist:
                    dist[v], parent[v] = dist[u] + 1, u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def random_regular(k, n, seed):
    if k == 0:
        return Graph(np.zeros((n, n), dtype=int))
    h = nx.random_regular_graph(k, n, seed=seed)
    return Graph(nx.to_numpy_array(h, nodelist=range(n), dtype=int))


def common_neighbour_params(g):
    """(n, k, a, c) by counting neighbourhood intersections as sets, or None."""
    nbrs = [set(np.flatnonzero(row).tolist()) for row in g.adj]
    ks = {len(s) for s in nbrs}
    if len(ks) != 1:
        return None
    a_vals, c_vals = set(), set()
    for u, v in itertools.combinations(range(g.n), 2):
        (a_vals if v in nbrs[u] else c_vals).add(len(nbrs[u] & nbrs[v]))
    if len(a_vals) > 1 or len(c_vals) > 1:
        return None
    return (g.n, ks.pop(), a_vals.pop() if a_vals else None, c_vals.pop() if c_vals else None)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
