"""Fractional-Helly probe over block families of growing size."""

import argparse
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from convexlab.harness import blocks_family, probe_fractional_helly


@dataclass
class Config:
    blocks: tuple[int, ...] = (2, 3, 4, 5)
    per_block: int = 10
    s: int = 2
    k: int = 2
    budget: int = 100_000
    seed: int = 0


def run(cfg: Config) -> None:
    print("m  n    alpha      closed_form  beta  clique")
    for m in cfg.blocks:
        n = m * cfg.per_block
        rep = probe_fractional_helly(blocks_family(m, n), cfg.s, cfg.k, budget=cfg.budget, seed=cfg.seed)
        closed = Fraction(m * comb(cfg.per_block, cfg.s), comb(n, cfg.s))
        print(f"{m:<2} {n:<4} {str(rep.alpha):<10} {str(closed):<12} {rep.beta_emp}   {rep.clique_fraction}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--per-block", type=int, default=10)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    run(Config(per_block=a.per_block, s=a.s, seed=a.seed))
