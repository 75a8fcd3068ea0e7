"""Kolmogorov distance between the normalized adjacency ESD and the Feng-Li law as n grows.

    python scripts/esd_experiment.py --d 5 --k 3 --sizes 60,150,300 --seeds 5
"""

import argparse
import statistics
from dataclasses import dataclass

from hyperspec import adjacency_spectrum, sample_hypergraph
from hyperspec.spectra import feng_li_law, ks_distance, normalized_esd


@dataclass
class EsdConfig:
    d: int = 5
    k: int = 3
    sizes: str = "60,150,300"
    seeds: int = 5


def run(cfg: EsdConfig):
    law = feng_li_law(cfg.d, cfg.k)
    for n in (int(t) for t in cfg.sizes.split(",")):
        ks = [
            ks_distance(normalized_esd(adjacency_spectrum(sample_hypergraph(n, cfg.d, cfg.k, seed=s)), cfg.d, cfg.k), law)
            for s in range(cfg.seeds)
        ]
        yield n, statistics.median(ks), max(ks)


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for name, default in vars(EsdConfig()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    print("n,median_ks,max_ks")
    for n, med, worst in run(EsdConfig(**vars(p.parse_args()))):
        print(f"{n},{med:.4f},{worst:.4f}")
