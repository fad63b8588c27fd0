"""Graph families, orthogonal arrays and Steiner designs.

Graphs are stored as dense symmetric 0/1 adjacency matrices. Every
constructor returns a fresh, read-only :class:`Graph`.

Vertex ordering is part of the contract: in ``join(x, y)`` the vertices of
``x`` come first, so in ``cone(y)`` the apex is vertex 0.
"""
from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import InvalidParameters, InvalidSize, UnsupportedConstruction, ValidationFailure


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph given by its adjacency matrix."""

    adj: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        a = np.array(self.adj, dtype=np.int8, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidSize(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] < 1:
            raise InvalidSize("a graph needs at least one vertex")
        if not np.isin(a, (0, 1)).all():
            raise InvalidParameters("adjacency entries must be 0 or 1")
        if not (a == a.T).all():
            raise InvalidParameters("adjacency must be symmetric")
        if a.diagonal().any():
            raise InvalidParameters("adjacency must have zero diagonal")
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1).astype(int)

    def edges(self) -> list[tuple[int, int]]:
        u, v = np.nonzero(np.triu(self.adj))
        return list(zip(u.tolist(), v.tolist()))

    def as_float(self) -> np.ndarray:
        return self.adj.astype(float)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj.shape == other.adj.shape and bool((self.adj == other.adj).all())

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={int(self.adj.sum()) // 2}>"

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> "Graph":
        if n < 1:
            raise InvalidSize(f"vertex count must be positive, got {n}")
        a = np.zeros((n, n), dtype=np.int8)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameters(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidParameters(f"loop at vertex {u}")
            a[u, v] = a[v, u] = 1
        return cls(a, name=name)


@dataclass(frozen=True)
class Violation:
    """Why an array or design is not what it claims to be."""

    reason: str
    where: tuple = ()

    def __str__(self):
        return f"{self.reason}: {self.where}" if self.where else self.reason


# ---------------------------------------------------------------------------
# Basic families


def _check_size(n, minimum=1, what="n"):
    if int(n) != n or n < minimum:
        raise InvalidSize(f"{what} must be an integer >= {minimum}, got {n}")
    return int(n)


def complete(n: int) -> Graph:
    n = _check_size(n)
    return Graph(np.ones((n, n), dtype=np.int8) - np.eye(n, dtype=np.int8), name=f"K{n}")


def empty(n: int) -> Graph:
    n = _check_size(n)
    return Graph(np.zeros((n, n), dtype=np.int8), name=f"empty{n}")


def cycle(n: int) -> Graph:
    n = _check_size(n, 3)
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), name=f"C{n}")


def star(n: int) -> Graph:
    """K_{1,n}, with the centre at index 0."""
    g = cone(empty(n))
    return Graph(g.adj, name=f"K1,{n}")


def disjoint_copies(m: int, s: int) -> Graph:
    """mK_s: ``m`` vertex-disjoint copies of the complete graph ``K_s``."""
    m = _check_size(m, what="m")
    s = _check_size(s, what="s")
    block = np.ones((s, s), dtype=np.int8) - np.eye(s, dtype=np.int8)
    return Graph(np.kron(np.eye(m, dtype=np.int8), block), name=f"{m}K{s}")


def petersen() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint."""
    pairs = list(itertools.combinations(range(5), 2))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(pairs)), 2)
        if not set(pairs[i]) & set(pairs[j])
    ]
    return Graph.from_edges(len(pairs), edges, name="Petersen")


# ---------------------------------------------------------------------------
# Operations


def complement(g: Graph) -> Graph:
    n = g.n
    a = np.ones((n, n), dtype=np.int8) - np.eye(n, dtype=np.int8) - g.adj
    return Graph(a, name=f"co({g.name})" if g.name else "")


def join(x: Graph, y: Graph) -> Graph:
    """Join x + y: disjoint union plus every edge between V(x) and V(y)."""
    m, n = x.n, y.n
    a = np.block([
        [x.adj, np.ones((m, n), dtype=np.int8)],
        [np.ones((n, m), dtype=np.int8), y.adj],
    ])
    name = f"({x.name}+{y.name})" if x.name and y.name else ""
    return Graph(a, name=name)


def cone(y: Graph) -> Graph:
    g = join(empty(1), y)
    return Graph(g.adj, name=f"cone({y.name})" if y.name else "")


def cartesian_product(x: Graph, y: Graph) -> Graph:
    """Vertex (a, b) sits at index ``a * y.n + b``."""
    a = np.kron(x.adj, np.eye(y.n, dtype=np.int8)) + np.kron(np.eye(x.n, dtype=np.int8), y.adj)
    name = f"{x.name}x{y.name}" if x.name and y.name else ""
    return Graph(a, name=name)


def regularity(g: Graph) -> Optional[int]:
    """Return the valency if ``g`` is regular, else ``None``."""
    deg = g.degrees
    return int(deg[0]) if (deg == deg[0]).all() else None


def components(g: Graph) -> list[list[int]]:
    """Connected components by breadth-first search, each sorted, in order of least vertex."""
    seen = np.zeros(g.n, dtype=bool)
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp, queue = [start], deque([start])
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(g.adj[u]):
                if not seen[v]:
                    seen[v] = True
                    comp.append(int(v))
                    queue.append(int(v))
        out.append(sorted(comp))
    return out


# ---------------------------------------------------------------------------
# Orthogonal arrays


@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    """An ``n**2 x k`` array over symbols ``1..n``.

    Every pair of columns shows each ordered symbol pair exactly once. Use
    :func:`validate_oa` to check that; construction does not.
    """

    n: int
    k: int
    rows: np.ndarray

    def __post_init__(self):
        rows = np.array(self.rows, dtype=int, copy=True)
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)


def validate_oa(oa: OrthogonalArray) -> Optional[Violation]:
    """Return ``None`` if ``oa`` is a valid OA(k, n), else the first violation found."""
    n, k, rows = oa.n, oa.k, oa.rows
    if k < 2:
        return Violation("need at least two columns", (k,))
    if k > n + 1:
        return Violation("an OA(k, n) needs k <= n + 1", (k, n))
    if rows.shape != (n * n, k):
        return Violation("array must have shape (n^2, k)", rows.shape)
    if rows.min() < 1 or rows.max() > n:
        return Violation("symbols must lie in 1..n", (int(rows.min()), int(rows.max())))
    for i, j in itertools.permutations(range(k), 2):
        codes = (rows[:, i] - 1) * n + (rows[:, j] - 1)
        counts = np.bincount(codes, minlength=n * n)
        if not (counts == 1).all():
            bad = int(np.flatnonzero(counts != 1)[0])
            pair = (bad // n + 1, bad % n + 1)
            return Violation(
                f"columns {i},{j}: symbol pair {pair} seen {counts[bad]} times", (i, j)
            )
    return None


def oa_cyclic(k: int, n: int) -> OrthogonalArray:
    """OA(2, n) from all pairs, or OA(3, n) from the cyclic Latin square."""
    if k not in (2, 3):
        raise UnsupportedConstruction(
            f"built-in orthogonal arrays only cover k in {{2, 3}}, got k={k}; load larger arrays from a file"
        )
    n = _check_size(n, 2, what="n")
    if k > n + 1:
        raise InvalidParameters(f"OA({k}, {n}) cannot exist: k > n + 1")
    i, j = np.divmod(np.arange(n * n), n)
    cols = [i + 1, j + 1]
    if k == 3:
        cols.append((i + j) % n + 1)
    oa = OrthogonalArray(n=n, k=k, rows=np.column_stack(cols))
    violation = validate_oa(oa)
    if violation is not None:  # pragma: no cover - construction is exact
        raise ValidationFailure(violation)
    return oa


def oa_graph(oa: OrthogonalArray) -> Graph:
    """Rows as vertices, adjacent when they agree in exactly one coordinate."""
    violation = validate_oa(oa)
    if violation is not None:
        raise ValidationFailure(violation)
    rows = oa.rows
    agree = (rows[:, None, :] == rows[None, :, :]).sum(axis=2)
    return Graph((agree == 1).astype(np.int8), name=f"OA({oa.k},{oa.n})")


# ---------------------------------------------------------------------------
# Steiner designs


@dataclass(frozen=True)
class SteinerDesign:
    """A 2-(v, k, 1) design on points ``1..v``."""

    v: int
    block_size: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(p) for p in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)


def validate_design(d: SteinerDesign) -> Optional[Violation]:
    v, k = d.v, d.block_size
    if k < 2:
        return Violation("block size must be at least 2", (k,))
    for idx, b in enumerate(d.blocks):
        if len(b) != k or len(set(b)) != k:
            return Violation(f"block {idx} is not a {k}-subset", b)
        if min(b) < 1 or max(b) > v:
            return Violation(f"block {idx} has points outside 1..{v}", b)
    cover = Counter(p for b in d.blocks for p in itertools.combinations(b, 2))
    for pair in itertools.combinations(range(1, v + 1), 2):
        if cover[pair] == 0:
            return Violation("pair not covered by any block", pair)
        if cover[pair] > 1:
            return Violation(f"pair covered by {cover[pair]} blocks", pair)
    expected = v * (v - 1) // (k * (k - 1))
    if len(d.blocks) != expected or v * (v - 1) % (k * (k - 1)):
        return Violation("block count differs from v(v-1)/(k(k-1))", (len(d.blocks), expected))
    return None


def fano_plane() -> SteinerDesign:
    blocks = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
    return SteinerDesign(7, 3, tuple(blocks))


def affine_plane_ag23() -> SteinerDesign:
    """Lines of AG(2, 3); point (x, y) is labelled ``3x + y + 1``."""
    lines = set()
    for x0, y0 in itertools.product(range(3), repeat=2):
        for dx, dy in ((0, 1), (1, 0), (1, 1), (1, 2)):
            pts = tuple(sorted(3 * ((x0 + s * dx) % 3) + (y0 + s * dy) % 3 + 1 for s in range(3)))
            lines.add(pts)
    return SteinerDesign(9, 3, tuple(sorted(lines)))


def steiner_block_graph(d: SteinerDesign) -> Graph:
    violation = validate_design(d)
    if violation is not None:
        raise ValidationFailure(violation)
    inc = np.zeros((len(d.blocks), d.v), dtype=int)
    for i, b in enumerate(d.blocks):
        inc[i, np.asarray(b) - 1] = 1
    meet = inc @ inc.T
    np.fill_diagonal(meet, 0)
    return Graph((meet > 0).astype(np.int8), name=f"blocks(S(2,{d.block_size},{d.v}))")

