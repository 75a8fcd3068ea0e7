"""Simple random walk deviation from uniform per step, with exact and fitted rates, plus the
non-backtracking end distribution for a few lengths.

    python scripts/mixing_experiment.py --n 60 --d 5 --k 3 --lmax 40
"""

import argparse
from dataclasses import dataclass

import numpy as np

from hyperspec import adjacency_gap, sample_hypergraph
from hyperspec.hypergraph import is_connected
from hyperspec.walks import nbrw_end_distribution, nbrw_mixing_exact, nbrw_transition, srw_mixing_empirical


@dataclass
class MixingConfig:
    n: int = 60
    d: int = 5
    k: int = 3
    lmax: int = 40
    trials: int = 100_000
    seed: int = 0


def first_connected(cfg):
    s = cfg.seed
    while not is_connected(h := sample_hypergraph(cfg.n, cfg.d, cfg.k, seed=s)):
        s += 1
    return h


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for name, default in vars(MixingConfig()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    cfg = MixingConfig(**vars(p.parse_args()))
    h = first_connected(cfg)
    rep = srw_mixing_empirical(h, cfg.lmax)
    print(rep.to_csv(), end="")
    print(f"# exact {rep.exact_rate:.4f}  fit {rep.empirical_rate:.4f}  root {rep.root_rate:.4f}")
    print(f"# non-backtracking exact rate {nbrw_mixing_exact(adjacency_gap(h), h.d, h.k):.4f}")
    for l in (2, 4, 6, 8):
        emp = nbrw_end_distribution(h, 0, l, cfg.trials, cfg.seed)
        tv = 0.5 * np.abs(emp - nbrw_transition(h, l)[0]).sum()
        print(f"# NBRW l={l}: TV(simulated, exact) = {tv:.4f}, TV(exact, uniform) = {0.5 * np.abs(nbrw_transition(h, l)[0] - 1 / h.n).sum():.4f}")
