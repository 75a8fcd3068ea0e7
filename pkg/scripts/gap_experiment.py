"""Second adjacency eigenvalue of sampled hypergraphs against 2 sqrt((d-1)(k-1)).

    python scripts/gap_experiment.py --n 120 --d 5 --k 3 --seeds 50
"""

import argparse
import statistics
from dataclasses import dataclass

from hyperspec import adjacency_gap, sample_hypergraph


@dataclass
class GapConfig:
    n: int = 120
    d: int = 5
    k: int = 3
    seeds: int = 50
    slack: float = 0.5
    method: str = "rejection"


def run(cfg: GapConfig) -> dict:
    margins, lams = [], []
    for s in range(cfg.seeds):
        gap = adjacency_gap(sample_hypergraph(cfg.n, cfg.d, cfg.k, seed=s, method=cfg.method))
        margins.append(gap.ramanujan_margin)
        lams.append(gap.lambda_)
    return {
        "bound": adjacency_gap(sample_hypergraph(cfg.n, cfg.d, cfg.k, seed=0, method=cfg.method)).ramanujan_bound,
        "median_lambda": statistics.median(lams),
        "max_lambda": max(lams),
        "fraction_ramanujan": sum(m >= 0 for m in margins) / cfg.seeds,
        "fraction_with_slack": sum(m + cfg.slack >= 0 for m in margins) / cfg.seeds,
    }


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for name, default in vars(GapConfig()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    for key, val in run(GapConfig(**vars(p.parse_args()))).items():
        print(f"{key:>20}: {val:.4f}")
