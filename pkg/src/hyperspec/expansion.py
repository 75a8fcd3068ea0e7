"""Hyperedge counts between vertex sets and Monte Carlo checks of the expansion bounds.

With ``lambda`` the second adjacency eigenvalue (largest nontrivial modulus):

* mixing:   ``|e(V1, V2) - d(k-1)|V1||V2|/n| <= lambda sqrt(|V1||V2|(1-|V1|/n)(1-|V2|/n))``
* vertices: ``|N(S)| / |S| >= 1 / (1 - (1 - lambda^2/(d(k-1))^2)(1 - |S|/n))``

Both hold for every subset given the exact ``lambda``; a violation therefore
signals an implementation error rather than a finite-size effect.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from .errors import EmptySet, InvalidParameters, VertexOutOfRange
from .hypergraph import Hypergraph, adjacency_matrix
from .spectra import GapReport

VIOLATION_TOL = 1e-9


def _indicator(h: Hypergraph, s: Iterable[int]) -> np.ndarray:
    v = np.zeros(h.n, dtype=np.int64)
    for i in s:
        if not 0 <= int(i) < h.n:
            raise VertexOutOfRange(f"vertex {i} not in [0, {h.n})")
        v[int(i)] = 1
    return v


def edge_count(h: Hypergraph, v1: Iterable[int], v2: Iterable[int], adjacency: np.ndarray | None = None) -> int:
    """``e(V1, V2) = <1_V1, A 1_V2>``: triples ``(i, j, e)`` with ``i in V1``, ``j in V2``, ``i != j`` both in ``e``."""
    a = adjacency_matrix(h) if adjacency is None else adjacency
    return int(_indicator(h, v1) @ a @ _indicator(h, v2))


def neighborhood(h: Hypergraph, s: Iterable[int]) -> set[int]:
    """Vertices sharing a hyperedge with some *other* vertex of ``s``; may intersect ``s``."""
    s = set(int(i) for i in s)
    if not s:
        raise EmptySet("neighborhood of the empty set")
    _indicator(h, s)
    out: set[int] = set()
    for e in h.edges:
        members = s.intersection(e)
        if not members:
            continue
        for i in e:
            # i needs a partner j in S with j != i
            if len(members - {i}) > 0:
                out.add(i)
    return out


def expander_mixing_slack(h: Hypergraph, lam: float, v1, v2, adjacency: np.ndarray | None = None) -> float:
    """Bound minus observed deviation; negative means the inequality fails."""
    n, d, k = h.n, h.d, h.k
    a1, a2 = len(set(v1)), len(set(v2))
    lhs = abs(edge_count(h, v1, v2, adjacency) - d * (k - 1) * a1 * a2 / n)
    rhs = lam * math.sqrt(max(a1 * a2 * (1 - a1 / n) * (1 - a2 / n), 0.0))
    return rhs - lhs


def vertex_expansion_slack(h: Hypergraph, lam: float, s) -> float:
    """``|N(S)|/|S|`` minus the lower bound."""
    n, d, k = h.n, h.d, h.k
    size = len(set(s))
    ratio = len(neighborhood(h, s)) / size
    shrink = (1 - lam**2 / (d * (k - 1)) ** 2) * (1 - size / n)
    return ratio - 1.0 / (1.0 - shrink)


@dataclass
class ExpansionReport:
    trials: int
    violations: int
    worst_slack: float
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _random_subset(rng: np.random.Generator, n: int) -> np.ndarray:
    size = int(rng.integers(1, n + 1))
    return np.sort(rng.choice(n, size=size, replace=False))


def _params(h: Hypergraph, gap: GapReport, trials: int, seed: int, kind: str) -> dict:
    return {"kind": kind, "n": h.n, "d": h.d, "k": h.k, "lambda": gap.lambda_, "trials": trials, "seed": seed}


def verify_expander_mixing(h: Hypergraph, gap: GapReport, trials: int, seed: int) -> ExpansionReport:
    if trials < 1:
        raise InvalidParameters("trials must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    a = adjacency_matrix(h)
    worst, bad = math.inf, 0
    for _ in range(trials):
        v1, v2 = _random_subset(rng, h.n), _random_subset(rng, h.n)
        slack = expander_mixing_slack(h, gap.lambda_, v1, v2, a)
        worst = min(worst, slack)
        bad += slack < -VIOLATION_TOL
    return ExpansionReport(trials, int(bad), float(worst), _params(h, gap, trials, seed, "expander_mixing"))


def verify_vertex_expansion(h: Hypergraph, gap: GapReport, trials: int, seed: int) -> ExpansionReport:
    if trials < 1:
        raise InvalidParameters("trials must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    worst, bad = math.inf, 0
    for _ in range(trials):
        slack = vertex_expansion_slack(h, gap.lambda_, _random_subset(rng, h.n))
        worst = min(worst, slack)
        bad += slack < -VIOLATION_TOL
    return ExpansionReport(trials, int(bad), float(worst), _params(h, gap, trials, seed, "vertex_expansion"))
