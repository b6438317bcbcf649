"""Build a planar family with a prescribed shatter function and compare it with Psi."""

import argparse
from dataclasses import dataclass

from convexlab.generators import gen_shatter_family
from convexlab.harness import PsiTables, check_phi_below_psi
from convexlab.homology import shatter_profile


@dataclass
class Config:
    f: tuple[int, ...] = (1, 1, 2, 3, 5)
    b: int = 2
    r_top: int = 12


def run(cfg: Config) -> None:
    fam, layout = gen_shatter_family(cfg.f)
    print(f"grid {fam.dims[0]}x{fam.dims[1]}, {len(fam)} members, ring side {layout.ring_side}")
    prof = shatter_profile(fam, 1, len(cfg.f))
    for q, row in enumerate(prof):
        print(f"degree {q}: {','.join(map(str, row))}")
    tables = PsiTables(2, {b: 2 ** b for b in range(1, cfg.r_top + 1)},
                       {x: x + 1 for x in range(1, 2 ** cfg.r_top + 1)})
    rep = check_phi_below_psi(fam, 0, tables, cfg.b, len(cfg.f))
    print("\n".join(rep.lines()))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--f", default="1,1,2,3,5")
    p.add_argument("--b", type=int, default=2)
    a = p.parse_args()
    run(Config(tuple(int(x) for x in a.f.split(",")), a.b))
