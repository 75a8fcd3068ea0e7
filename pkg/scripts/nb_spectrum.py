"""Non-backtracking spectrum of one sample: quadratic roots from the incidence singular values
versus the dense eigenvalues of B_H, plus the multiplicity log.

    python scripts/nb_spectrum.py --n 30 --d 5 --k 3 --seed 0
"""

import argparse
from dataclasses import dataclass

from hyperspec import sample_hypergraph
from hyperspec.nbops import classify_nb_spectrum, nb_gap_from_eigenvalues


@dataclass
class NBConfig:
    n: int = 30
    d: int = 5
    k: int = 3
    seed: int = 0
    slack: float = 0.5


def run(cfg: NBConfig):
    h = sample_hypergraph(cfg.n, cfg.d, cfg.k, seed=cfg.seed)
    cls = classify_nb_spectrum(h)
    return cls, nb_gap_from_eigenvalues(cls.oracle, cfg.d, cfg.k, cfg.slack)


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    for name, default in vars(NBConfig()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    cls, gap = run(NBConfig(**vars(p.parse_args())))
    print(cls.discrepancy_log)
    print(f"|lambda_1| = {gap.lambda1:.6f}, |lambda_2| = {gap.lambda2_modulus:.4f}, sqrt(q) = {gap.bound:.4f}")
