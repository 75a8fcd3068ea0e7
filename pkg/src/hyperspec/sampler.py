"""Random bipartite biregular graphs and simple (d,k)-regular hypergraphs.

The default ``"rejection"`` method pairs ``n*d`` vertex stubs with ``n*d``
hyperedge stubs by a seeded shuffle and restarts on any repeated pair, which is
exactly uniform over simple biregular graphs.  Its acceptance probability
decays like ``exp(-(d-1)(k-1)/2)``, so for growing degrees the ``"switch"``
method is offered: the same pairing is repaired by degree-preserving double
swaps and then randomised by a run of the swap chain (whose stationary law is
uniform).  ``"switch"`` is approximate; reports record which method ran.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidParameters, RetryLimitExceeded
from .hypergraph import BipartiteGraph, Hypergraph, build_hypergraph

RNG_ALGORITHM = "numpy.random.PCG64"
METHODS = ("rejection", "switch")


@dataclass(frozen=True)
class SampleConfig:
    n: int
    d: int
    k: int
    seed: int = 0
    max_retries: int = 1000
    method: str = "rejection"
    # swap-chain steps per stub, used only by method="switch"
    switch_sweeps: int = 10

    def __post_init__(self):
        if self.k < 2 or self.d < 1 or self.n < 1:
            raise InvalidParameters(f"need n >= 1, k >= 2, d >= 1 (got n={self.n}, d={self.d}, k={self.k})")
        if (self.n * self.d) % self.k:
            raise InvalidParameters(f"k={self.k} does not divide n*d={self.n * self.d}")
        if self.k > self.n or self.d > self.m:
            raise InvalidParameters("degrees exceed the opposite side; no simple graph exists")
        if self.method not in METHODS:
            raise InvalidParameters(f"unknown sampling method {self.method!r}")
        if self.max_retries < 1:
            raise InvalidParameters("max_retries must be positive")

    @property
    def m(self) -> int:
        return self.n * self.d // self.k


@dataclass
class SampleReport:
    attempts: int = 0
    multiedge_rejections: int = 0
    duplicate_neighborhood_rejections: int = 0
    method: str = "rejection"
    rng: str = RNG_ALGORITHM
    seed: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _pairing(cfg: SampleConfig, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    vertex_stubs = np.repeat(np.arange(cfg.n), cfg.d)
    edge_stubs = rng.permutation(np.repeat(np.arange(cfg.m), cfg.k))
    return vertex_stubs, edge_stubs


def _counts(cfg: SampleConfig, vs: np.ndarray, es: np.ndarray) -> np.ndarray:
    x = np.zeros((cfg.n, cfg.m), dtype=np.int64)
    np.add.at(x, (vs, es), 1)
    return x


def _switch_repair(cfg: SampleConfig, vs: np.ndarray, es: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Remove repeated pairs by double swaps, then run the swap chain for mixing."""
    x = _counts(cfg, vs, es)
    total = vs.size

    def try_swap(i: int, j: int) -> bool:
        v, e, w, f = vs[i], es[i], vs[j], es[j]
        if v == w or e == f or x[v, f] or x[w, e]:
            return False
        x[v, e] -= 1
        x[w, f] -= 1
        x[v, f] += 1
        x[w, e] += 1
        es[i], es[j] = f, e
        return True

    budget = 1000 * total
    while True:
        bad = np.flatnonzero(x[vs, es] > 1)
        if bad.size == 0:
            break
        for i in bad:
            if x[vs[i], es[i]] <= 1:
                continue
            while not try_swap(int(i), int(rng.integers(total))):
                budget -= 1
                if budget <= 0:
                    raise RetryLimitExceeded("swap repair did not remove repeated pairs")
    steps = cfg.switch_sweeps * total
    picks = rng.integers(total, size=(steps, 2))
    for i, j in picks:
        try_swap(int(i), int(j))
    return x


def _draw(cfg: SampleConfig, rng: np.random.Generator, report: SampleReport) -> np.ndarray | None:
    vs, es = _pairing(cfg, rng)
    if cfg.method == "switch":
        return _switch_repair(cfg, vs, es.copy(), rng)
    x = _counts(cfg, vs, es)
    if x.max() > 1:
        report.multiedge_rejections += 1
        return None
    return x


def _duplicate_columns(x: np.ndarray) -> bool:
    cols = np.ascontiguousarray(x.T.astype(np.uint8))
    return np.unique(cols, axis=0).shape[0] < cols.shape[0]


def sample_bipartite_biregular(cfg: SampleConfig) -> tuple[BipartiteGraph, SampleReport]:
    """Simple bipartite graph with row degree ``d`` and column degree ``k``."""
    rng = _rng(cfg.seed)
    report = SampleReport(method=cfg.method, seed=cfg.seed)
    for _ in range(cfg.max_retries):
        report.attempts += 1
        x = _draw(cfg, rng, report)
        if x is not None:
            return BipartiteGraph(n1=cfg.n, n2=cfg.m, x=x, d1=cfg.d, d2=cfg.k), report
    raise RetryLimitExceeded(f"no simple graph in {cfg.max_retries} attempts for {cfg}")


def sample_regular_hypergraph(cfg: SampleConfig) -> tuple[Hypergraph, SampleReport]:
    """Simple (d,k)-regular hypergraph: biregular draws with repeated column supports rejected."""
    if cfg.d < cfg.k:
        raise InvalidParameters(f"hypergraph sampling assumes d >= k (got d={cfg.d}, k={cfg.k}); sample the dual")
    rng = _rng(cfg.seed)
    report = SampleReport(method=cfg.method, seed=cfg.seed)
    for _ in range(cfg.max_retries):
        report.attempts += 1
        x = _draw(cfg, rng, report)
        if x is None:
            continue
        if _duplicate_columns(x):
            report.duplicate_neighborhood_rejections += 1
            continue
        edges = [np.flatnonzero(x[:, j]) for j in range(cfg.m)]
        return build_hypergraph(cfg.n, edges, cfg.d, cfg.k), report
    raise RetryLimitExceeded(f"no simple hypergraph in {cfg.max_retries} attempts for {cfg}")


def sample_hypergraph(n: int, d: int, k: int, seed: int = 0, **kwargs) -> Hypergraph:
    """Shorthand returning only the hypergraph."""
    return sample_regular_hypergraph(SampleConfig(n=n, d=d, k=k, seed=seed, **kwargs))[0]
