"""Command-line experiments: ``hyperspec <command> --n N --d D --k K --seeds S --out DIR``.

Each seed writes one file ``<command>_seed<seed>.<format>``; ``summary.json`` aggregates
all seeds in seed order.  Exit codes: 0 success, 2 invalid parameters, 3 I/O error,
4 internal error.  Seeds are processed by a pool of at most ``HYPERSPEC_THREADS``
workers; output does not depend on the pool size.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import expansion, nbops, spectra, walks
from .errors import HyperspecError, InvalidParameters
from .sampler import METHODS, SampleConfig, sample_regular_hypergraph

COMMANDS = ("sample", "gap", "esd", "nb-spectrum", "walk-mix", "expansion", "local-law")
FORMATS = ("json", "csv")
EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_INTERNAL = 0, 2, 3, 4


@dataclass(frozen=True)
class ExperimentSpec:
    command: str
    n: int
    d: int
    k: int
    seeds: tuple[int, ...]
    output_dir: Path
    format: str = "json"
    slack: float = 0.5
    lmax: int = 40
    trials: int = 1000
    method: str = "rejection"
    law: str = "feng-li"
    bins: int = 40
    delta: float = 0.1
    intervals: tuple[tuple[float, float], ...] = field(default=((-1.0, 1.0), (-1.8, 0.0), (0.0, 1.8)))

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidParameters(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise InvalidParameters(f"unknown format {self.format!r}")
        if not self.seeds:
            raise InvalidParameters("no seeds given")
        if self.slack < 0 or self.trials < 1 or self.lmax < 1 or self.bins < 1:
            raise InvalidParameters("slack must be >= 0; trials, lmax and bins positive")
        if self.command == "walk-mix" and self.lmax < 10:
            raise InvalidParameters("walk-mix needs --lmax >= 10")
        # raises on invalid (n, d, k) before any work starts
        self.config(self.seeds[0])

    def config(self, seed: int) -> SampleConfig:
        cfg = SampleConfig(n=self.n, d=self.d, k=self.k, seed=seed, method=self.method)
        if self.d < self.k:
            raise InvalidParameters(f"hypergraph experiments need d >= k (got d={self.d}, k={self.k})")
        return cfg

    @property
    def alpha(self) -> float:
        return self.d / self.k


def parse_seeds(text: str) -> tuple[int, ...]:
    """``"5"`` means seeds 0..4; ``"3,7,11"`` is an explicit list."""
    text = text.strip()
    try:
        if "," in text:
            seeds = tuple(int(t) for t in text.split(",") if t.strip())
        else:
            count = int(text)
            if count < 1:
                raise InvalidParameters("seed count must be positive")
            seeds = tuple(range(count))
    except ValueError as exc:
        if isinstance(exc, InvalidParameters):
            raise
        raise InvalidParameters(f"cannot parse seeds {text!r}") from None
    if any(s < 0 for s in seeds):
        raise InvalidParameters("seeds must be nonnegative")
    if len(set(seeds)) != len(seeds):
        raise InvalidParameters("duplicate seeds")
    return seeds


def _plain(obj):
    # numpy scalars leak out of array reductions
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_plain) + "\n"


def _kv_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _law(spec: ExperimentSpec) -> spectra.Law:
    if spec.law == "alpha":
        return spectra.alpha_law(spec.alpha)
    return spectra.feng_li_law(spec.d, spec.k)


# --- per-seed work ------------------------------------------------------------------
# Each returns (record for summary.json, text of the per-seed file).


def _run_sample(spec, h, report):
    rec = {"sample_report": report.to_dict(), "m": h.m}
    if spec.format == "csv":
        return rec, _kv_csv([[f"v{i}" for i in range(h.k)]] + [list(e) for e in sorted(h.edges)])
    return rec, h.to_json() + "\n"


def _run_gap(spec, h, report):
    gap = spectra.adjacency_gap(h)
    rec = gap.to_dict()
    rec["ok"] = gap.ramanujan_margin + spec.slack >= 0
    if spec.format == "csv":
        spectrum = spectra.adjacency_spectrum(h)
        return rec, _kv_csv([["eigenvalue"]] + [[repr(float(v))] for v in spectrum])
    return rec, _dumps(rec)


def _run_esd(spec, h, report):
    e = spectra.normalized_esd(spectra.adjacency_spectrum(h), h.d, h.k)
    ks = spectra.ks_distance(e, _law(spec))
    rows = spectra.esd_histogram(e, bins=spec.bins)
    rec = {"ks": ks, "law": _law(spec).name}
    if spec.format == "csv":
        return rec, spectra.histogram_csv(rows)
    return rec, _dumps({**rec, "histogram": [list(r) for r in rows]})


def _run_nb(spec, h, report):
    cls = nbops.classify_nb_spectrum(h)
    gap = nbops.nb_gap_from_eigenvalues(cls.oracle, h.d, h.k, spec.slack)
    q = (h.d - 1) * (h.k - 1)
    rec = {
        "bmn": nbops.verify_bmn(h),
        "largest_modulus": float(abs(cls.oracle[0])),
        "perron_ok": bool(abs(abs(cls.oracle[0]) - q) <= 1e-6),
        "gap": gap.to_dict(),
        "reconciled": cls.reconciled,
        "quadratic_only_reconciled": cls.quadratic_only_reconciled,
    }
    if spec.format == "csv":
        return rec, _kv_csv([["re", "im"]] + [[repr(float(z.real)), repr(float(z.imag))] for z in cls.oracle])
    return rec, _dumps({**rec, "classification": cls.to_dict()})


def _run_walk(spec, h, report):
    mix = walks.srw_mixing_empirical(h, spec.lmax)
    gap = spectra.adjacency_gap(h)
    rec = {
        "exact_rate": mix.exact_rate,
        "empirical_rate": mix.empirical_rate,
        "root_rate": mix.root_rate,
        "abs_error": abs(mix.empirical_rate - mix.exact_rate),
        "nbrw_exact_rate": walks.nbrw_mixing_exact(gap, h.d, h.k) if (h.d, h.k) != (2, 2) else None,
    }
    if spec.format == "csv":
        return rec, mix.to_csv()
    return rec, _dumps({**rec, "report": mix.to_dict()})


def _run_expansion(spec, h, report):
    gap = spectra.adjacency_gap(h)
    mix = expansion.verify_expander_mixing(h, gap, spec.trials, report.seed)
    vex = expansion.verify_vertex_expansion(h, gap, spec.trials, report.seed)
    rec = {"expander_mixing": mix.to_dict(), "vertex_expansion": vex.to_dict()}
    if spec.format == "csv":
        rows = [["kind", "trials", "violations", "worst_slack"]]
        rows += [[r.params["kind"], r.trials, r.violations, repr(r.worst_slack)] for r in (mix, vex)]
        return rec, _kv_csv(rows)
    return rec, _dumps(rec)


def _run_local_law(spec, h, report):
    e = spectra.normalized_esd(spectra.adjacency_spectrum(h), h.d, h.k)
    law = _law(spec)
    params = spectra.local_law_params(h.n, h.k)
    results = []
    for lo, hi in spec.intervals:
        res = spectra.local_law_check(e, law, (lo, hi), params, spec.alpha, spec.delta, enforce_width=False)
        results.append({"interval": [lo, hi], **res.to_dict()})
    rec = {"params": {"h": params.h, "r": params.r, "eta": params.eta}, "intervals": results}
    if spec.format == "csv":
        rows = [["lo", "hi", "lhs", "allowed_width", "width", "ratio", "ok"]]
        rows += [[*r["interval"], repr(r["lhs"]), repr(r["allowed_width"]), r["width"], repr(r["ratio"]), r["ok"]] for r in results]
        return rec, _kv_csv(rows)
    return rec, _dumps(rec)


RUNNERS = {
    "sample": _run_sample,
    "gap": _run_gap,
    "esd": _run_esd,
    "nb-spectrum": _run_nb,
    "walk-mix": _run_walk,
    "expansion": _run_expansion,
    "local-law": _run_local_law,
}


def _error_code(exc: BaseException) -> int:
    if isinstance(exc, OSError):
        return EXIT_IO
    if isinstance(exc, (HyperspecError, ValueError)) and not isinstance(exc, ArithmeticError):
        return EXIT_INVALID
    return EXIT_INTERNAL


def run_seed(spec: ExperimentSpec, seed: int) -> dict:
    """Sample, run the command, write the seed file; errors are captured, not raised."""
    try:
        h, report = sample_regular_hypergraph(spec.config(seed))
        rec, text = RUNNERS[spec.command](spec, h, report)
        path = spec.output_dir / f"{spec.command}_seed{seed}.{spec.format}"
        path.write_text(text)
        return {"seed": seed, "file": path.name, "attempts": report.attempts, **rec}
    except Exception as exc:  # noqa: BLE001 - reported per seed
        return {"seed": seed, "error": f"{type(exc).__name__}: {exc}", "exit_code": _error_code(exc)}


def _summarize(spec: ExperimentSpec, records: list[dict]) -> dict:
    good = [r for r in records if "error" not in r]
    out: dict = {
        "command": spec.command,
        "params": {"n": spec.n, "d": spec.d, "k": spec.k, "method": spec.method, "slack": spec.slack},
        "seeds": list(spec.seeds),
        "completed": len(good),
        "errors": [{"seed": r["seed"], "error": r["error"]} for r in records if "error" in r],
        "per_seed": records,
    }
    if not good:
        return out
    c = spec.command
    if c == "gap":
        out["ramanujan_bound"] = 2.0 * math.sqrt((spec.d - 1) * (spec.k - 1))
        out["fraction_within_bound_plus_slack"] = sum(r["ok"] for r in good) / len(good)
    elif c == "esd":
        out["law"] = good[0]["law"]
        out["median_ks"] = statistics.median(r["ks"] for r in good)
    elif c == "nb-spectrum":
        out["bmn_all"] = all(r["bmn"] for r in good)
        out["perron_all"] = all(r["perron_ok"] for r in good)
        out["fraction_gap_ok"] = sum(r["gap"]["ok"] for r in good) / len(good)
    elif c == "walk-mix":
        out["max_abs_error"] = max(r["abs_error"] for r in good)
    elif c == "expansion":
        out["total_violations"] = sum(r["expander_mixing"]["violations"] + r["vertex_expansion"]["violations"] for r in good)
    elif c == "local-law":
        out["max_ratio"] = max(i["ratio"] for r in good for i in r["intervals"])
    return out


def _workers(count: int) -> int:
    env = os.environ.get("HYPERSPEC_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            pass
    return max(1, min(cap, count))


def run(spec: ExperimentSpec) -> int:
    try:
        spec.output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    workers = _workers(len(spec.seeds))
    if workers == 1:
        records = [run_seed(spec, s) for s in spec.seeds]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_seed, [spec] * len(spec.seeds), spec.seeds))
    records.sort(key=lambda r: r["seed"])
    summary = _summarize(spec, records)
    try:
        (spec.output_dir / "summary.json").write_text(_dumps(summary))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    codes = [r["exit_code"] for r in records if "error" in r]
    for r in records:
        if "error" in r:
            print(f"seed {r['seed']}: {r['error']}", file=sys.stderr)
    return max(codes) if codes else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperspec", description="Spectral experiments on random regular hypergraphs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seeds", default="1", help="count (0..N-1) or comma-separated list")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--slack", type=float, default=0.5)
    p.add_argument("--lmax", type=int, default=40)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--method", choices=METHODS, default="rejection")
    p.add_argument("--law", choices=("feng-li", "alpha"), default="feng-li", help="reference law for esd/local-law")
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--delta", type=float, default=0.1)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        spec = ExperimentSpec(
            command=args.command,
            n=args.n,
            d=args.d,
            k=args.k,
            seeds=parse_seeds(args.seeds),
            output_dir=Path(args.out),
            format=args.format,
            slack=args.slack,
            lmax=args.lmax,
            trials=args.trials,
            method=args.method,
            law=args.law,
            bins=args.bins,
            delta=args.delta,
        )
    except (HyperspecError, ValueError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return run(spec)
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
