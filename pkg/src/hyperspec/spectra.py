"""Adjacency spectra, limiting spectral densities and ESD comparisons."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import DensityNotNormalized, IntervalTooNarrow, InvalidParameters
from .hypergraph import Hypergraph, adjacency_matrix
from .linalg import symmetric_eigenvalues

QUAD_TOL = 1e-8
NORMALIZATION_TOL = 1e-6


@dataclass
class GapReport:
    lambda1: float
    lambda2: float
    lambda_min: float
    # max(lambda2, |lambda_min|)
    lambda_: float
    ramanujan_margin: float
    d: int = 0
    k: int = 0
    n: int = 0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["lambda"] = out.pop("lambda_")
        return out

    @property
    def ramanujan_bound(self) -> float:
        return 2.0 * math.sqrt((self.d - 1) * (self.k - 1))


def gap_from_spectrum(values: Sequence[float], d: int, k: int) -> GapReport:
    """Gap statistics from a descending adjacency spectrum; only the top eigenvalue counts as trivial."""
    vals = np.asarray(values, dtype=float)
    if vals.size < 2:
        raise InvalidParameters("need at least two eigenvalues")
    rest = vals[1:]
    bound = 2.0 * math.sqrt((d - 1) * (k - 1))
    return GapReport(
        lambda1=float(vals[0]),
        lambda2=float(vals[1]),
        lambda_min=float(vals[-1]),
        lambda_=float(max(vals[1], abs(vals[-1]))),
        ramanujan_margin=float(bound - np.max(np.abs(rest - (k - 2)))),
        d=d,
        k=k,
        n=int(vals.size),
    )


def adjacency_spectrum(h: Hypergraph) -> np.ndarray:
    return symmetric_eigenvalues(adjacency_matrix(h))


def adjacency_gap(h: Hypergraph) -> GapReport:
    return gap_from_spectrum(adjacency_spectrum(h), h.d, h.k)


# --- limiting densities -------------------------------------------------------


def _semicircle_factor(x):
    x = np.asarray(x, dtype=float)
    return np.sqrt(np.clip(1.0 - x * x / 4.0, 0.0, None)) / np.pi


def feng_li_density(x, d: int, k: int):
    """Limiting density of ``(A - (k-2)) / sqrt((d-1)(k-1))`` for fixed (d, k).

    ``k = 2`` is the Kesten-McKay law in the same scaling.
    """
    if k < 2 or d < k:
        raise InvalidParameters(f"need d >= k >= 2 (got d={d}, k={k})")
    q = (d - 1) * (k - 1)
    sq = math.sqrt(q)
    xa = np.asarray(x, dtype=float)
    inside = np.abs(xa) < 2.0
    xs = np.where(inside, xa, 0.0)
    num = 1.0 + (k - 1) / q
    den = (1.0 + 1.0 / q - xs / sq) * (1.0 + (k - 1) ** 2 / q + (k - 1) * xs / sq)
    out = np.where(inside, num / den * _semicircle_factor(xs), 0.0)
    return float(out) if np.ndim(x) == 0 else out


def alpha_density(x, alpha: float):
    """Limiting density when d, k grow with d/k -> alpha."""
    if alpha < 1:
        raise InvalidParameters("alpha must be >= 1")
    xa = np.asarray(x, dtype=float)
    inside = np.abs(xa) < 2.0
    xs = np.where(inside, xa, 0.0)
    out = np.where(inside, alpha / (1.0 + alpha + math.sqrt(alpha) * xs) * _semicircle_factor(xs), 0.0)
    return float(out) if np.ndim(x) == 0 else out


def _edges(alpha: float) -> tuple[float, float]:
    r = alpha ** -0.5
    return 1.0 - r, 1.0 + r


def bipartite_density(x, alpha: float):
    """Continuous part and zero mass of the global law of ``A_G / sqrt(k)``.

    Returns ``(density, zero_mass)``; the continuous part lives on ``+-[a, b]``.
    """
    if alpha < 1:
        raise InvalidParameters("alpha must be >= 1")
    a, b = _edges(alpha)
    xa = np.abs(np.asarray(x, dtype=float))
    inside = (xa > a) & (xa < b)
    xs = np.where(inside, xa, 1.0)
    val = alpha / ((1.0 + alpha) * math.pi * xs) * np.sqrt(np.clip((b * b - xs * xs) * (xs * xs - a * a), 0.0, None))
    out = np.where(inside, val, 0.0)
    dens = float(out) if np.ndim(x) == 0 else out
    return dens, (alpha - 1.0) / (alpha + 1.0)


def gram_density(x, alpha: float):
    """Limiting density of the spectrum of ``X X^T / k``, supported on ``[a^2, b^2]``."""
    if alpha < 1:
        raise InvalidParameters("alpha must be >= 1")
    a, b = _edges(alpha)
    lo, hi = a * a, b * b
    xa = np.asarray(x, dtype=float)
    inside = (xa > lo) & (xa < hi)
    xs = np.where(inside, xa, 1.0)
    val = alpha / (2.0 * math.pi * xs) * np.sqrt(np.clip((hi - xs) * (xs - lo), 0.0, None))
    out = np.where(inside, val, 0.0)
    return float(out) if np.ndim(x) == 0 else out


@dataclass
class Law:
    """A probability law: density on finitely many intervals plus point masses.

    Integration over an interval ``[lo, hi]`` uses ``x = mid - half cos(t)`` so that
    square-root edge behaviour becomes smooth in ``t``.
    """

    pdf: Callable
    intervals: list[tuple[float, float]]
    point_masses: list[tuple[float, float]] = field(default_factory=list)
    name: str = ""

    def _integrate(self, lo: float, hi: float, a: float, b: float) -> float:
        # mass of [a, b] intersected with the support interval [lo, hi]
        a, b = max(a, lo), min(b, hi)
        if b <= a:
            return 0.0
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        ta = math.acos(min(1.0, max(-1.0, (mid - a) / half)))
        tb = math.acos(min(1.0, max(-1.0, (mid - b) / half)))

        def f(t):
            return float(self.pdf(mid - half * math.cos(t))) * half * math.sin(t)

        val, _ = integrate.quad(f, ta, tb, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
        return val

    def continuous_mass(self, a: float = -math.inf, b: float = math.inf) -> float:
        return sum(self._integrate(lo, hi, a, b) for lo, hi in self.intervals)

    def total_mass(self) -> float:
        return self.continuous_mass() + sum(w for _, w in self.point_masses)

    def cdf(self, x: float, left: bool = False) -> float:
        """``P(X <= x)``, or ``P(X < x)`` when ``left``."""
        mass = self.continuous_mass(-math.inf, x)
        for loc, w in self.point_masses:
            if loc < x or (loc == x and not left):
                mass += w
        return mass

    def cdf_many(self, xs: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
        """Right and left CDF values at sorted points, integrating piecewise between them."""
        xs = np.asarray(xs, dtype=float)
        order = np.argsort(xs, kind="stable")
        cont = np.empty(xs.size)
        acc, prev = 0.0, -math.inf
        for idx in order:
            acc += self.continuous_mass(prev, xs[idx])
            prev = xs[idx]
            cont[idx] = acc
        right = cont.copy()
        left = cont.copy()
        for loc, w in self.point_masses:
            right += np.where(xs >= loc, w, 0.0)
            left += np.where(xs > loc, w, 0.0)
        return right, left

    def interval_mass(self, lo: float, hi: float) -> float:
        """Mass of the closed interval ``[lo, hi]``."""
        mass = self.continuous_mass(lo, hi)
        mass += sum(w for loc, w in self.point_masses if lo <= loc <= hi)
        return mass


def feng_li_law(d: int, k: int) -> Law:
    return Law(lambda x: feng_li_density(x, d, k), [(-2.0, 2.0)], name=f"feng_li(d={d},k={k})")


def alpha_law(alpha: float) -> Law:
    return Law(lambda x: alpha_density(x, alpha), [(-2.0, 2.0)], name=f"alpha({alpha})")


def bipartite_law(alpha: float) -> Law:
    a, b = _edges(alpha)
    zero = (alpha - 1.0) / (alpha + 1.0)
    masses = [(0.0, zero)] if zero > 0 else []
    return Law(lambda x: bipartite_density(x, alpha)[0], [(-b, -a), (a, b)], masses, name=f"bipartite({alpha})")


def gram_law(alpha: float) -> Law:
    a, b = _edges(alpha)
    return Law(lambda x: gram_density(x, alpha), [(a * a, b * b)], name=f"gram({alpha})")


def pushforward_discrepancy(alpha: float, points: int = 200) -> float:
    """Compare the gram law with the law of ``xi^2`` for ``xi`` drawn from the positive bipartite part.

    The positive continuous part carries mass ``1/(1+alpha)``, so the candidate CDF at ``x``
    is ``(1+alpha) * mass([a, sqrt(x)])``; densities are compared through the change of
    variables ``(1+alpha) h(sqrt(x)) / (2 sqrt(x))``.  Returns the larger max-abs gap.
    """
    a, b = _edges(alpha)
    bip, gram = bipartite_law(alpha), gram_law(alpha)
    lo, hi = a * a, b * b
    xs = np.linspace(lo, hi, points + 2)[1:-1]
    cdf_push = np.array([(1.0 + alpha) * bip.continuous_mass(a, math.sqrt(x)) for x in xs])
    cdf_gram = gram.cdf_many(xs)[0]
    dens_push = (1.0 + alpha) * bipartite_density(np.sqrt(xs), alpha)[0] / (2.0 * np.sqrt(xs))
    dens_gram = gram_density(xs, alpha)
    return float(max(np.max(np.abs(cdf_push - cdf_gram)), np.max(np.abs(dens_push - dens_gram))))


# --- empirical spectral distributions -----------------------------------------


@dataclass
class ESD:
    """Uniform mass on ``atoms`` plus optional explicit point masses."""

    atoms: np.ndarray
    point_masses: list[tuple[float, float]] = field(default_factory=list)

    def __post_init__(self):
        self.atoms = np.sort(np.asarray(self.atoms, dtype=float))
        if any(w < 0 for _, w in self.point_masses):
            raise InvalidParameters("point-mass weights must be nonnegative")
        if self.atom_weight < 0:
            raise InvalidParameters("point masses exceed total weight 1")

    @property
    def atom_weight(self) -> float:
        rest = 1.0 - sum(w for _, w in self.point_masses)
        return rest / self.atoms.size if self.atoms.size else 0.0

    def cdf(self, x, left: bool = False):
        xs = np.asarray(x, dtype=float)
        side = "left" if left else "right"
        val = np.searchsorted(self.atoms, xs, side=side) * self.atom_weight
        for loc, w in self.point_masses:
            val = val + np.where(xs > loc if left else xs >= loc, w, 0.0)
        return val

    def interval_mass(self, lo: float, hi: float) -> float:
        return float(self.cdf(hi) - self.cdf(lo, left=True))

    def to_dict(self) -> dict:
        return {
            "atoms": [float(a) for a in self.atoms],
            "atom_weight": self.atom_weight,
            "point_masses": [[float(l), float(w)] for l, w in self.point_masses],
        }


def esd_of(spectrum: Sequence[float], shift: float = 0.0, scale: float = 1.0) -> ESD:
    """ESD of ``(spectrum - shift) / scale`` with weight ``1/len(spectrum)`` per value."""
    if scale <= 0:
        raise InvalidParameters("scale must be positive")
    return ESD((np.asarray(spectrum, dtype=float) - shift) / scale)


def normalized_esd(spectrum: Sequence[float], d: int, k: int, exclude_perron: bool = True) -> ESD:
    """ESD of ``(A - (k-2)) / sqrt((d-1)(k-1))``; drops the top eigenvalue ``d(k-1)`` by default."""
    vals = np.sort(np.asarray(spectrum, dtype=float))[::-1]
    if exclude_perron:
        vals = vals[1:]
    return esd_of(vals, shift=k - 2, scale=math.sqrt((d - 1) * (k - 1)))


def ks_distance(e: ESD, law: Law, check_normalization: bool = True) -> float:
    """Sup-distance between the CDFs of an ESD and a reference law.

    The supremum is taken over left and right limits at every atom, point-mass
    location and support endpoint, which is where a step function minus a
    continuous nondecreasing function attains its extremes.
    """
    if check_normalization:
        total = law.total_mass()
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise DensityNotNormalized(f"{law.name or 'law'} has total mass {total:.9f}")
    points = set(float(a) for a in e.atoms)
    points.update(loc for loc, _ in e.point_masses)
    points.update(loc for loc, _ in law.point_masses)
    for lo, hi in law.intervals:
        points.update((lo, hi))
    xs = np.array(sorted(points))
    f_right, f_left = law.cdf_many(xs)
    e_right = e.cdf(xs)
    e_left = e.cdf(xs, left=True)
    return float(max(np.max(np.abs(e_right - f_right)), np.max(np.abs(e_left - f_left))))


def esd_histogram(e: ESD, bins: int = 40, lo: float = -2.5, hi: float = 2.5) -> list[tuple[float, float, float]]:
    """``(bin_left, bin_right, mass)`` rows; the last bin is closed on the right."""
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(e.atoms, bins=edges)
    rows = [(float(edges[i]), float(edges[i + 1]), float(counts[i] * e.atom_weight)) for i in range(bins)]
    return rows


def histogram_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bin_left", "bin_right", "mass"])
    for row in rows:
        writer.writerow([repr(v) for v in row])
    return buf.getvalue()


# --- local law ------------------------------------------------------------------


@dataclass(frozen=True)
class LocalLawParams:
    h: float
    r: float
    eta: float


def local_law_params(n: int, k: int) -> LocalLawParams:
    if n < 3 or k < 2:
        raise InvalidParameters("need n >= 3 and k >= 2")
    h = min(math.log(n) / (9.0 * math.log(k) ** 2), float(k))
    r = math.exp(1.0 / h)
    eta = math.sqrt(r) - 1.0 / math.sqrt(r)
    return LocalLawParams(h=h, r=r, eta=eta)


def local_law_min_width(params: LocalLawParams, alpha: float, delta: float) -> float:
    if not 0.0 < delta < 1.0:
        raise InvalidParameters("delta must lie in (0, 1)")
    factor = 4.0 * (1.0 + math.sqrt(alpha)) ** 2 / math.sqrt(alpha)
    return factor * max(2.0 * params.eta, params.eta / (-delta * math.log(delta)))


@dataclass
class LocalLawResult:
    lhs: float
    allowed_width: float
    width: float
    ratio: float
    ok: bool

    def to_dict(self) -> dict:
        return asdict(self)


def local_law_check(
    e: ESD,
    law: Law,
    interval: tuple[float, float],
    params: LocalLawParams,
    alpha: float,
    delta: float,
    eps: float = 0.1,
    enforce_width: bool = True,
) -> LocalLawResult:
    """Compare ESD and law mass on ``interval``.

    ``ratio`` is ``|mu_n(I) - mu(I)| / (delta |I|)``, i.e. the smallest constant that
    would make the bound hold; it is reported, not thresholded.  ``ok`` is the
    minimum-width precondition.  With ``enforce_width`` a too-narrow interval raises.
    """
    lo, hi = interval
    if not (-2.0 + eps <= lo < hi <= 2.0):
        raise InvalidParameters(f"interval must lie in [-2 + {eps}, 2]")
    width = hi - lo
    allowed = local_law_min_width(params, alpha, delta)
    ok = width >= allowed
    if enforce_width and not ok:
        raise IntervalTooNarrow(f"|I| = {width:.4g} < required {allowed:.4g}")
    lhs = abs(e.interval_mass(lo, hi) - law.interval_mass(lo, hi))
    return LocalLawResult(lhs=lhs, allowed_width=allowed, width=width, ratio=lhs / (delta * width), ok=ok)
