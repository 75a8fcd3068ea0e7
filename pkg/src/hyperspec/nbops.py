"""Non-backtracking operators of a hypergraph and of its incidence graph.

``B_H`` acts on oriented incidences ``(i, e)`` with ``i in e``; the entry at
``((i, e), (j, f))`` is 1 when ``j`` is another vertex of ``e`` and ``f`` is a
different hyperedge through ``j``.  For the bipartite incidence graph the
oriented edges are listed vertex->hyperedge first, in the same order as the
incidences, then hyperedge->vertex, which makes ``B_G = [[0, M], [N, 0]]`` and
``B_H = M N`` index-compatible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DimensionTooLarge
from .hypergraph import BipartiteGraph, Hypergraph, incidence_matrix, to_bipartite
from .linalg import MAX_NONSYMMETRIC_DIM, nonsymmetric_eigenvalues_small, numeric_rank, sort_complex, symmetric_eigenvalues

RECONCILE_TOL = 1e-5


@dataclass(frozen=True)
class OrientedIncidence:
    """``(vertex, edge)`` pairs sorted by edge, then vertex."""

    pairs: tuple[tuple[int, int], ...]
    index: dict = field(compare=False, repr=False)

    @classmethod
    def from_biadjacency(cls, x: np.ndarray) -> "OrientedIncidence":
        pairs = tuple((int(i), int(e)) for e in range(x.shape[1]) for i in np.flatnonzero(x[:, e]))
        return cls(pairs=pairs, index={p: a for a, p in enumerate(pairs)})

    @classmethod
    def of(cls, h: Hypergraph) -> "OrientedIncidence":
        return cls.from_biadjacency(incidence_matrix(h))

    def __len__(self) -> int:
        return len(self.pairs)


def nb_operator_hypergraph(h: Hypergraph) -> np.ndarray:
    inc = OrientedIncidence.of(h)
    through = h.incident_edges()
    b = np.zeros((len(inc), len(inc)), dtype=np.int64)
    for a, (i, e) in enumerate(inc.pairs):
        for j in h.edges[e]:
            if j == i:
                continue
            for f in through[j]:
                if f != e:
                    b[a, inc.index[(j, f)]] = 1
    return b


def nb_operator_bipartite(g: BipartiteGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(B_G, M, N)`` for the biregular graph ``g``.

    Row ``a`` of ``M`` is the oriented edge ``i -> e``; column ``b`` of ``M`` is
    ``e' -> j`` (``b``-th incidence reversed).  ``N`` maps ``e -> j`` to ``j -> f``.
    """
    inc = OrientedIncidence.from_biadjacency(g.x)
    size = len(inc)
    by_edge: dict[int, list[int]] = {}
    by_vertex: dict[int, list[int]] = {}
    for a, (i, e) in enumerate(inc.pairs):
        by_edge.setdefault(e, []).append(a)
        by_vertex.setdefault(i, []).append(a)
    m = np.zeros((size, size), dtype=np.int64)
    n = np.zeros((size, size), dtype=np.int64)
    for a, (i, e) in enumerate(inc.pairs):
        # i -> e continues with e -> j for j != i
        for b in by_edge[e]:
            if inc.pairs[b][0] != i:
                m[a, b] = 1
        # e -> i continues with i -> f for f != e
        for b in by_vertex[i]:
            if inc.pairs[b][1] != e:
                n[a, b] = 1
    zero = np.zeros((size, size), dtype=np.int64)
    bg = np.block([[zero, m], [n, zero]])
    return bg, m, n


def verify_bmn(h: Hypergraph) -> bool:
    _, m, n = nb_operator_bipartite(to_bipartite(h))
    return bool(np.array_equal(m @ n, nb_operator_hypergraph(h)))


def quadratic_roots(xi_sq: float, d: int, k: int) -> tuple[complex, complex]:
    """Roots of ``z^2 - (xi^2 - d - k + 2) z + (d-1)(k-1) = 0``.

    The ``+2`` sign is the one for which ``xi^2 = dk`` yields the Perron root ``(d-1)(k-1)``.
    """
    b = xi_sq - d - k + 2
    c = (d - 1) * (k - 1)
    disc = complex(b * b - 4 * c)
    root = disc ** 0.5
    return (b + root) / 2, (b - root) / 2


def _matched(a: np.ndarray, b: np.ndarray, tol: float) -> tuple[bool, float]:
    if a.size != b.size:
        return False, math.inf
    if a.size == 0:
        return True, 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    worst = float(cost[rows, cols].max())
    return worst <= tol, worst


def _count_near(values: np.ndarray, target: complex, tol: float) -> int:
    return int(np.sum(np.abs(values - target) <= tol))


@dataclass
class NBClassification:
    fixed_eigs: list[tuple[float, int]]
    quadratic_eigs: list[complex]
    oracle: np.ndarray
    rank: int
    reconciled: bool
    quadratic_only_reconciled: bool
    discrepancy_log: str

    def candidates(self) -> np.ndarray:
        fixed = [complex(v) for v, mult in self.fixed_eigs for _ in range(max(mult, 0))]
        return sort_complex(fixed + list(self.quadratic_eigs))

    def to_dict(self) -> dict:
        pair = lambda z: [float(np.real(z)), float(np.imag(z))]  # noqa: E731
        return {
            "fixed_eigs": [[float(v), int(m)] for v, m in self.fixed_eigs],
            "quadratic_eigs": [pair(z) for z in self.quadratic_eigs],
            "oracle": [pair(z) for z in self.oracle],
            "rank": self.rank,
            "reconciled": self.reconciled,
            "quadratic_only_reconciled": self.quadratic_only_reconciled,
            "discrepancy_log": self.discrepancy_log,
        }


def classify_nb_spectrum(h: Hypergraph, tol: float = RECONCILE_TOL) -> NBClassification:
    """Candidate spectrum of ``B_H`` from the incidence structure, checked against direct eigenvalues.

    Fixed values: ``1`` with multiplicity ``n(d-1) - nd/k``, ``-(d-1)`` with
    ``nd/k - r`` and ``-(k-1)`` with ``r`` (``r = rank X``); every nonzero
    singular value ``xi`` of ``X`` contributes the two roots of the quadratic.
    Nothing is corrected: mismatches are written to ``discrepancy_log``.
    """
    n, d, k = h.n, h.d, h.k
    dim = n * d
    if dim > MAX_NONSYMMETRIC_DIM:
        raise DimensionTooLarge(f"B_H has dimension {dim} > {MAX_NONSYMMETRIC_DIM}")
    x = incidence_matrix(h)
    m = h.m
    r = numeric_rank(x)
    gram = x @ x.T if n <= m else x.T @ x
    xi_sq = symmetric_eigenvalues(gram)[:r]
    quad = []
    for s in xi_sq:
        quad.extend(quadratic_roots(float(s), d, k))
    fixed = [(1.0, n * (d - 1) - m), (-(d - 1.0), m - r), (-(k - 1.0), r)]
    oracle = nonsymmetric_eigenvalues_small(nb_operator_hypergraph(h))
    quad_arr = sort_complex(quad)

    cls = NBClassification(fixed, list(quad_arr), oracle, r, False, False, "")
    cand = cls.candidates()
    cls.reconciled, worst = _matched(cand, oracle, tol)
    cls.quadratic_only_reconciled, worst_quad = _matched(quad_arr, oracle, tol)

    lines = [
        f"dim(B_H) = {dim}; rank(X) = {r}; nonzero singular pairs = {len(xi_sq)}",
        "quadratic sign: z^2 - (xi^2 - d - k + 2) z + (d-1)(k-1); xi^2 = dk gives roots (d-1)(k-1) and 1",
        f"candidate multiset size = {cand.size} (fixed {cand.size - quad_arr.size} + quadratic {quad_arr.size})",
    ]
    for value, mult in fixed:
        seen = _count_near(oracle, value, 1e-6) - _count_near(quad_arr, value, 1e-6)
        status = "ok" if seen == mult else "MISMATCH"
        lines.append(f"fixed value {value:g}: stated multiplicity {mult}, oracle excess over quadratic roots {seen} [{status}]")
    if cls.reconciled:
        lines.append(f"full candidate multiset matches oracle (max deviation {worst:.2e})")
    else:
        lines.append("full candidate multiset does NOT match oracle" + (f" (max deviation {worst:.2e})" if math.isfinite(worst) else " (size differs)"))
    if cls.quadratic_only_reconciled:
        lines.append(f"quadratic roots alone reproduce the oracle spectrum (max deviation {worst_quad:.2e})")
    cls.discrepancy_log = "\n".join(lines)
    return cls


@dataclass
class NBGapResult:
    lambda1: float
    lambda2_modulus: float
    bound: float
    slack: float
    ok: bool

    def to_dict(self) -> dict:
        return {
            "lambda1": self.lambda1,
            "lambda2_modulus": self.lambda2_modulus,
            "bound": self.bound,
            "slack": self.slack,
            "ok": self.ok,
        }


def nb_gap_from_eigenvalues(eigs: np.ndarray, d: int, k: int, slack: float = 0.5) -> NBGapResult:
    q = (d - 1) * (k - 1)
    eigs = np.asarray(eigs, dtype=complex)
    top = int(np.argmin(np.abs(eigs - q)))
    rest = np.delete(eigs, top)
    second = float(np.max(np.abs(rest))) if rest.size else 0.0
    bound = math.sqrt(q)
    return NBGapResult(float(eigs[top].real), second, bound, slack, bool(second <= bound + slack))


def nb_gap_check(h: Hypergraph, slack: float = 0.5) -> NBGapResult:
    """Largest modulus of ``B_H`` besides the Perron value ``(d-1)(k-1)``, against ``sqrt((d-1)(k-1)) + slack``."""
    eigs = nonsymmetric_eigenvalues_small(nb_operator_hypergraph(h))
    return nb_gap_from_eigenvalues(eigs, h.d, h.k, slack)
