"""How fast the Feng-Li law for (d, k) = (alpha k, k) approaches the growing-degree law as k grows.

Prints the Kolmogorov distance between the two CDFs on a fine grid; it shrinks roughly like 1/k.

    python scripts/consistency_experiment.py --alpha 2 --ks 2,4,8,16,32,64
"""

import argparse
from dataclasses import dataclass

import numpy as np

from hyperspec.spectra import alpha_law, feng_li_law


@dataclass
class ConsistencyConfig:
    alpha: float = 2.0
    ks: str = "2,4,8,16,32,64"
    grid: int = 400


def distance(a, b, grid):
    xs = np.linspace(-2.0, 2.0, grid)
    return float(np.max(np.abs(a.cdf_many(xs)[0] - b.cdf_many(xs)[0])))


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for name, default in vars(ConsistencyConfig()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    cfg = ConsistencyConfig(**vars(p.parse_args()))
    limit = alpha_law(cfg.alpha)
    print("k,d,sup_cdf_distance,k*distance")
    for k in (int(t) for t in cfg.ks.split(",")):
        d = round(cfg.alpha * k)
        dist = distance(feng_li_law(d, k), limit, cfg.grid)
        print(f"{k},{d},{dist:.5f},{k * dist:.4f}")
