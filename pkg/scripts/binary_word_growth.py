"""Graded Radon profiles of the binary-word families, truncated to small t."""

import argparse
import time
from dataclasses import dataclass

from convexlab.harness import binary_word_radon_profile, verify_binary_words


@dataclass
class Config:
    ks: tuple[int, ...] = (2, 3, 4)
    t_max: int = 6


def run(cfg: Config) -> None:
    for k in cfg.ks:
        start = time.perf_counter()
        prof = binary_word_radon_profile(k, cfg.t_max)
        print(f"k={k} graded_radon={','.join(map(str, prof))} ({time.perf_counter() - start:.2f}s)")
    res = verify_binary_words([k for k in cfg.ks if k >= 3] + [5])
    for note in res.notes:
        print(note)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ks", default="2,3,4")
    p.add_argument("--t-max", type=int, default=6)
    a = p.parse_args()
    run(Config(tuple(int(x) for x in a.ks.split(",")), a.t_max))
