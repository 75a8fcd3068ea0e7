"""Simple and non-backtracking random walks on (d,k)-regular hypergraphs.

A non-backtracking walk of length ``l`` is ``v0, e1, v1, ..., el, vl`` with
``v_{i-1}, v_i in e_i``, ``v_{i-1} != v_i`` and ``e_i != e_{i+1}``.  Writing
``q = (d-1)(k-1)``, the count matrices satisfy

    A^(1) = A
    A^(2) = A^2 - (k-2) A - d(k-1) I
    A^(l+1) = (A - (k-2) I) A^(l) - q A^(l-1)

The ``(k-2)`` terms remove the continuations that stay inside the current
hyperedge; for ``k = 2`` this is the familiar graph recurrence.  The same
counts have the closed form
``q^(l/2) [U_l(x) + (k-2)/sqrt(q) U_{l-1}(x) - (k-1)/q U_{l-2}(x)]`` with
``x = (A - (k-2)) / (2 sqrt(q))``.  ``literal_walk_recurrence`` and
``chebyshev_Q`` keep the variant without the ``(k-2)`` correction, which agrees
with the true counts only when ``k = 2``.
"""

from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateParameters, InvalidParameters, NegativeInput, NoSpectralGap
from .hypergraph import Hypergraph, adjacency_matrix
from .nbops import OrientedIncidence
from .spectra import GapReport, adjacency_gap

EXACT_MAX_LENGTH = 8
GAP_TOL = 1e-8


def srw_transition(h: Hypergraph) -> np.ndarray:
    return adjacency_matrix(h) / float(h.d * (h.k - 1))


def _check_gap(lam: float, d: int, k: int) -> None:
    if lam >= d * (k - 1) - GAP_TOL:
        raise NoSpectralGap(f"lambda = {lam} reaches d(k-1) = {d * (k - 1)}; walk has no unique limit")


def srw_mixing_exact(gap: GapReport, d: int, k: int) -> float:
    _check_gap(gap.lambda_, d, k)
    return gap.lambda_ / (d * (k - 1))


@dataclass
class MixingReport:
    exact_rate: float
    # slope estimate over the last half of the lengths
    empirical_rate: float
    # plain l_max-th root of the last deviation
    root_rate: float
    lengths_used: tuple[int, int]
    per_length_sup: list[tuple[int, float]] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "exact_rate": self.exact_rate,
            "empirical_rate": self.empirical_rate,
            "root_rate": self.root_rate,
            "lengths_used": list(self.lengths_used),
            "per_length_sup": [[l, s] for l, s in self.per_length_sup],
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("l,sup,exact_rate^l\n")
        for l, s in self.per_length_sup:
            out.write(f"{l},{s!r},{self.exact_rate ** l!r}\n")
        return out.getvalue()


def srw_mixing_empirical(h: Hypergraph, l_max: int) -> MixingReport:
    """Worst-case deviation ``max_ij |P^l_ij - 1/n|`` for ``l = 1..l_max``.

    ``P`` is symmetric and doubly stochastic, so ``P^l - J/n = (P - J/n)^l``; powering the
    deflated matrix keeps tiny deviations accurate instead of losing them to cancellation.
    ``empirical_rate`` is ``exp`` of the least-squares slope of ``log sup`` over the last half of the
    lengths, which is less biased by early transients than ``root_rate = sup(l_max)^(1/l_max)``.
    """
    if l_max < 10:
        raise InvalidParameters("l_max must be at least 10")
    gap = adjacency_gap(h)
    exact = srw_mixing_exact(gap, h.d, h.k)
    n = h.n
    dev = srw_transition(h) - 1.0 / n
    power = dev.copy()
    sups: list[tuple[int, float]] = []
    for l in range(1, l_max + 1):
        if l > 1:
            power = power @ dev
        sups.append((l, float(np.max(np.abs(power)))))
    last = sups[-1][1]
    root = last ** (1.0 / l_max) if last > 0 else 0.0
    lo = l_max // 2 + 1
    tail = [(l, s) for l, s in sups if l >= lo and s > 0]
    if len(tail) >= 2:
        ls = np.array([t[0] for t in tail], dtype=float)
        logs = np.log([t[1] for t in tail])
        fit = float(np.exp(np.polyfit(ls, logs, 1)[0]))
    else:
        fit = 0.0
    return MixingReport(exact, fit, root, (lo, l_max), sups)


@dataclass
class WalkCounts:
    l: int
    matrix: np.ndarray

    def row_sums(self) -> list:
        return [sum(row) for row in self.matrix.tolist()]


def _count_dtype(h: Hypergraph, l: int):
    q = (h.d - 1) * (h.k - 1)
    # every intermediate entry is bounded by n * max(A) * (largest row sum)
    bound = h.n * (h.d + 1) * h.d * (h.k - 1) * max(q, 1) ** l * max(h.k, 2)
    return np.int64 if bound < 2**62 else object


def nb_walk_counts(h: Hypergraph, l: int) -> WalkCounts:
    """Number of non-backtracking walks of length ``l`` between each vertex pair.

    Exact integers up to ``l = 8``; longer lengths fall back to floating point with a warning.
    """
    if l < 1:
        raise InvalidParameters("walk length must be at least 1")
    exact = l <= EXACT_MAX_LENGTH
    if not exact:
        warnings.warn(f"walk counts for l={l} > {EXACT_MAX_LENGTH} use floating point", RuntimeWarning, stacklevel=2)
    dtype = _count_dtype(h, l) if exact else float
    a = adjacency_matrix(h).astype(dtype)
    n, d, k = h.n, h.d, h.k
    q = (d - 1) * (k - 1)
    eye = np.eye(n, dtype=np.int64).astype(dtype)
    shifted = a - (k - 2) * eye
    prev, cur = a, a @ a - (k - 2) * a - d * (k - 1) * eye
    if l == 1:
        return WalkCounts(1, a)
    for _ in range(l - 2):
        prev, cur = cur, shifted @ cur - q * prev
    return WalkCounts(l, cur)


def literal_walk_recurrence(h: Hypergraph, l: int) -> np.ndarray:
    """``B1 = A``, ``B2 = A^2 - (k-1) d I``, ``B_{l+1} = A B_l - q B_{l-1}`` (no in-edge correction)."""
    if l < 1:
        raise InvalidParameters("walk length must be at least 1")
    a = adjacency_matrix(h).astype(object)
    n, d, k = h.n, h.d, h.k
    q = (d - 1) * (k - 1)
    eye = np.eye(n, dtype=np.int64).astype(object)
    if l == 1:
        return a
    prev, cur = a, a @ a - (k - 1) * d * eye
    for _ in range(l - 2):
        prev, cur = cur, a @ cur - q * prev
    return cur


def nb_walk_counts_bruteforce(h: Hypergraph, l: int) -> np.ndarray:
    """Reference counts by enumerating every non-backtracking walk (exponential in ``l``)."""
    if l < 1:
        raise InvalidParameters("walk length must be at least 1")
    through = h.incident_edges()
    counts = np.zeros((h.n, h.n), dtype=np.int64)

    def extend(start: int, v: int, last_edge: int, steps: int) -> None:
        if steps == l:
            counts[start, v] += 1
            return
        for e in through[v]:
            if e == last_edge:
                continue
            for u in h.edges[e]:
                if u != v:
                    extend(start, u, e, steps + 1)

    for v0 in range(h.n):
        extend(v0, v0, -1, 0)
    return counts


def chebyshev_U(l: int, x):
    """Chebyshev polynomial of the second kind; ``U_{-1} = 0``, ``U_{-2} = -1``."""
    x = np.asarray(x, dtype=float)
    if l == -2:
        return -np.ones_like(x)
    if l == -1:
        return np.zeros_like(x)
    if l < -2:
        raise InvalidParameters("degree below -2 not supported")
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for _ in range(l):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def chebyshev_Q(l: int, x, d: int):
    """``sqrt((d-1)/d) U_l(x) - U_{l-2}(x) / sqrt(d(d-1))``."""
    if l < 1:
        raise InvalidParameters("Q_l needs l >= 1")
    if d < 2:
        raise InvalidParameters("Q_l needs d >= 2")
    return math.sqrt((d - 1) / d) * chebyshev_U(l, x) - chebyshev_U(l - 2, x) / math.sqrt(d * (d - 1))


def nb_count_polynomial(l: int, a, d: int, k: int):
    """Count polynomial evaluated at adjacency eigenvalue(s) ``a`` (see module docstring)."""
    q = (d - 1) * (k - 1)
    rq = math.sqrt(q)
    x = (np.asarray(a, dtype=float) - (k - 2)) / (2.0 * rq)
    return q ** (l / 2) * (chebyshev_U(l, x) + (k - 2) / rq * chebyshev_U(l - 1, x) - (k - 1) / q * chebyshev_U(l - 2, x))


def literal_count_polynomial(l: int, a, d: int, k: int):
    """``sqrt((k-1)^l d (d-1)^(l-1)) Q_l(a / (2 sqrt(q)))``; matches ``literal_walk_recurrence``."""
    q = (d - 1) * (k - 1)
    x = np.asarray(a, dtype=float) / (2.0 * math.sqrt(q))
    return math.sqrt((k - 1) ** l * d * (d - 1) ** (l - 1)) * chebyshev_Q(l, x, d)


def _check_nbrw(d: int, k: int) -> None:
    if (d, k) == (2, 2):
        raise DegenerateParameters("non-backtracking walk on a union of cycles has no limit")
    if d < 2:
        raise DegenerateParameters("non-backtracking walk needs d >= 2")


def nbrw_transition(h: Hypergraph, l: int) -> np.ndarray:
    """``l``-step vertex transition matrix of the non-backtracking walk."""
    _check_nbrw(h.d, h.k)
    d, k = h.d, h.k
    counts = nb_walk_counts(h, l).matrix
    total = d * (d - 1) ** (l - 1) * (k - 1) ** l
    return np.array(counts.tolist(), dtype=float) / float(total)


def psi(x: float) -> float:
    if x < 0:
        raise NegativeInput(f"psi is defined for x >= 0, got {x}")
    if x <= 1:
        return 1.0
    return x + math.sqrt(x * x - 1.0)


def nbrw_mixing_exact(gap: GapReport, d: int, k: int) -> float:
    _check_nbrw(d, k)
    _check_gap(gap.lambda_, d, k)
    rq = math.sqrt((d - 1) * (k - 1))
    return psi(gap.lambda_ / (2.0 * rq)) / rq


def successor_table(h: Hypergraph) -> tuple[OrientedIncidence, np.ndarray]:
    """For each oriented incidence ``(i, e)`` the ``q`` allowed next incidences, as an ``(nd, q)`` index array."""
    inc = OrientedIncidence.of(h)
    through = h.incident_edges()
    rows = []
    for i, e in inc.pairs:
        rows.append([inc.index[(j, f)] for j in h.edges[e] if j != i for f in through[j] if f != e])
    return inc, np.array(rows, dtype=np.int64)


def _start_states(h: Hypergraph, inc: OrientedIncidence, v0: int) -> np.ndarray:
    if not 0 <= v0 < h.n:
        raise InvalidParameters(f"start vertex {v0} not in [0, {h.n})")
    return np.array([inc.index[(v0, e)] for e in h.incident_edges()[v0]], dtype=np.int64)


def nbrw_simulate(h: Hypergraph, v0: int, l: int, seed: int) -> list[int]:
    """Vertices ``v0, v1, ..., vl`` of one non-backtracking walk with ``l`` steps."""
    _check_nbrw(h.d, h.k)
    inc, succ = successor_table(h)
    rng = np.random.Generator(np.random.PCG64(seed))
    state = int(rng.choice(_start_states(h, inc, v0)))
    path = [v0]
    for _ in range(l):
        state = int(succ[state, rng.integers(succ.shape[1])])
        path.append(inc.pairs[state][0])
    return path


def nbrw_endpoints(h: Hypergraph, v0: int, l: int, trials: int, seed: int) -> np.ndarray:
    """End vertices of ``trials`` independent walks, advanced together."""
    _check_nbrw(h.d, h.k)
    inc, succ = successor_table(h)
    rng = np.random.Generator(np.random.PCG64(seed))
    state = rng.choice(_start_states(h, inc, v0), size=trials)
    for _ in range(l):
        state = succ[state, rng.integers(succ.shape[1], size=trials)]
    vertex_of = np.array([p[0] for p in inc.pairs], dtype=np.int64)
    return vertex_of[state]


def nbrw_end_distribution(h: Hypergraph, v0: int, l: int, trials: int, seed: int) -> np.ndarray:
    ends = nbrw_endpoints(h, v0, l, trials, seed)
    return np.bincount(ends, minlength=h.n) / float(trials)
