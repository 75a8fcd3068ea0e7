"""(d,k)-regular hypergraphs and their bipartite incidence graphs."""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import (
    CountMismatch,
    DuplicateHyperedge,
    InvalidParameters,
    LengthTooLarge,
    MultipleHyperedges,
    NotRegular,
    NotUniform,
    VertexOutOfRange,
)

MAX_CYCLE_LENGTH = 8


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """A simple (d,k)-regular hypergraph on vertices ``0..n-1``.

    Hyperedges keep their labels (list position); each one is a sorted tuple.
    Equality ignores labels and compares the multisets of hyperedges.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]
    d: int
    k: int

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.d, self.k) == (other.n, other.d, other.k) and sorted(self.edges) == sorted(
            other.edges
        )

    def __hash__(self):
        return hash((self.n, self.d, self.k, tuple(sorted(self.edges))))

    def incident_edges(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for j, e in enumerate(self.edges):
            for v in e:
                inc[v].append(j)
        return inc

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "k": self.k, "edges": [list(e) for e in sorted(self.edges)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Hypergraph":
        return build_hypergraph(data["n"], data["edges"], data["d"], data["k"])

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    """Biregular bipartite graph given by its ``n1 x n2`` 0/1 biadjacency matrix."""

    n1: int
    n2: int
    x: np.ndarray
    d1: int
    d2: int

    def __post_init__(self):
        x = np.asarray(self.x)
        if x.shape != (self.n1, self.n2):
            raise InvalidParameters(f"biadjacency has shape {x.shape}, expected {(self.n1, self.n2)}")
        if not np.isin(x, (0, 1)).all():
            raise InvalidParameters("biadjacency entries must be 0 or 1")
        if self.n1 * self.d1 != self.n2 * self.d2:
            raise InvalidParameters("n1*d1 must equal n2*d2")
        if not (x.sum(axis=1) == self.d1).all() or not (x.sum(axis=0) == self.d2).all():
            raise InvalidParameters("row or column sums do not match the declared degrees")
        x = x.astype(np.int64)
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.n1, self.n2, self.d1, self.d2) == (other.n1, other.n2, other.d1, other.d2) and bool(
            np.array_equal(self.x, other.x)
        )

    def adjacency(self) -> np.ndarray:
        """Full ``(n1 + n2)``-square adjacency ``[[0, X], [X^T, 0]]``."""
        top = np.hstack([np.zeros((self.n1, self.n1), dtype=np.int64), self.x])
        bottom = np.hstack([self.x.T, np.zeros((self.n2, self.n2), dtype=np.int64)])
        return np.vstack([top, bottom])


def build_hypergraph(n: int, edges: Iterable[Iterable[int]], d: int, k: int) -> Hypergraph:
    """Validate and construct a (d,k)-regular simple hypergraph."""
    if k < 2 or d < 1 or n < 1:
        raise InvalidParameters(f"need n >= 1, k >= 2, d >= 1 (got n={n}, d={d}, k={k})")
    canon = []
    for e in edges:
        verts = [int(v) for v in e]
        for v in verts:
            if not 0 <= v < n:
                raise VertexOutOfRange(f"vertex {v} not in [0, {n})")
        s = tuple(sorted(set(verts)))
        if len(s) != k or len(verts) != k:
            raise NotUniform(f"hyperedge {tuple(verts)} does not have {k} distinct vertices")
        canon.append(s)
    if len(canon) * k != n * d:
        raise CountMismatch(f"{len(canon)} hyperedges but n*d/k = {n * d / k}")
    counts = Counter(canon)
    dup = next((e for e, c in counts.items() if c > 1), None)
    if dup is not None:
        raise DuplicateHyperedge(f"hyperedge {dup} appears {counts[dup]} times")
    degree = Counter(v for e in canon for v in e)
    for v in range(n):
        if degree[v] != d:
            raise NotRegular(v, degree[v], d)
    return Hypergraph(n=n, edges=tuple(canon), d=d, k=k)


def incidence_matrix(h: Hypergraph) -> np.ndarray:
    x = np.zeros((h.n, h.m), dtype=np.int64)
    for j, e in enumerate(h.edges):
        x[list(e), j] = 1
    return x


def adjacency_matrix(h: Hypergraph) -> np.ndarray:
    """``A[i, j]`` = number of hyperedges containing both ``i`` and ``j``; zero diagonal."""
    a = np.zeros((h.n, h.n), dtype=np.int64)
    for e in h.edges:
        for i, j in combinations(e, 2):
            a[i, j] += 1
            a[j, i] += 1
    return a


def to_bipartite(h: Hypergraph) -> BipartiteGraph:
    return BipartiteGraph(n1=h.n, n2=h.m, x=incidence_matrix(h), d1=h.d, d2=h.k)


def from_bipartite(g: BipartiteGraph) -> Hypergraph:
    """Hyperedge ``j`` is the neighbourhood of column ``j``; repeated supports are rejected."""
    seen: dict[tuple[int, ...], int] = {}
    edges = []
    for j in range(g.n2):
        support = tuple(int(i) for i in np.flatnonzero(g.x[:, j]))
        if support in seen:
            raise MultipleHyperedges(seen[support], j)
        seen[support] = j
        edges.append(support)
    return build_hypergraph(g.n1, edges, g.d1, g.d2)


def count_cycles(h: Hypergraph, l: int) -> int:
    """Number of cycles of length ``l``: ``l`` distinct vertices joined cyclically by ``l`` distinct hyperedges.

    Rooted, oriented representations are enumerated and divided by ``2 l``.
    """
    if l < 1:
        raise InvalidParameters("cycle length must be positive")
    if l > MAX_CYCLE_LENGTH:
        raise LengthTooLarge(f"brute-force cycle count capped at l={MAX_CYCLE_LENGTH}")
    if l == 1:
        return 0
    inc = h.incident_edges()
    edge_sets = [set(e) for e in h.edges]
    total = 0

    def extend(path: list[int], used: list[int]) -> None:
        nonlocal total
        v = path[-1]
        for f in inc[v]:
            if f in used:
                continue
            if len(path) == l:
                if path[0] in edge_sets[f]:
                    total += 1
                continue
            for u in h.edges[f]:
                if u != v and u not in path:
                    path.append(u)
                    used.append(f)
                    extend(path, used)
                    used.pop()
                    path.pop()

    for v0 in range(h.n):
        extend([v0], [])
    assert total % (2 * l) == 0, "cycle representations should come in groups of 2l"
    return total // (2 * l)


def connected_components(h: Hypergraph) -> int:
    """Components of the incidence graph restricted to vertex labels (BFS)."""
    inc = h.incident_edges()
    seen = [False] * h.n
    seen_edge = [False] * h.m
    comps = 0
    for s in range(h.n):
        if seen[s]:
            continue
        comps += 1
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for f in inc[v]:
                if seen_edge[f]:
                    continue
                seen_edge[f] = True
                for u in h.edges[f]:
                    if not seen[u]:
                        seen[u] = True
                        queue.append(u)
    return comps


def is_connected(h: Hypergraph) -> bool:
    """True when BFS on the bipartite incidence graph reaches all ``n + m`` nodes."""
    return connected_components(h) == 1


def disjoint_union(a: Hypergraph, b: Hypergraph) -> Hypergraph:
    if (a.d, a.k) != (b.d, b.k):
        raise InvalidParameters("both parts must share (d, k)")
    shifted = [tuple(v + a.n for v in e) for e in b.edges]
    return build_hypergraph(a.n + b.n, list(a.edges) + shifted, a.d, a.k)


def complete_hypergraph(n: int, k: int) -> Hypergraph:
    """All k-subsets of an n-set; regular of degree C(n-1, k-1)."""
    from math import comb

    return build_hypergraph(n, combinations(range(n), k), comb(n - 1, k - 1), k)


def cycle_graph(n: int) -> Hypergraph:
    """The n-cycle as a (2,2)-regular hypergraph."""
    return build_hypergraph(n, [(i, (i + 1) % n) for i in range(n)], 2, 2)


def load(path) -> Hypergraph:
    with open(path) as fh:
        return Hypergraph.from_json(fh.read())


def save(h: Hypergraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(h.to_json())
        fh.write("\n")

