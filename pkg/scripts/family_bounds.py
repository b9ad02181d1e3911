"""Bound verdicts for the one-heavy and many-heavy families over a range of n."""

import argparse
import time
from dataclasses import dataclass

from powerlimits.families import prop1_instance, prop2_instance


@dataclass
class Config:
    n_values: tuple = (2, 5, 8, 11, 12, 13)
    families: tuple = ("prop1", "prop2")


def run(cfg: Config):
    build = {"prop1": prop1_instance, "prop2": prop2_instance}
    for fam in cfg.families:
        for n in cfg.n_values:
            t = time.perf_counter()
            inst = build[fam](n)
            dt = time.perf_counter() - t
            print(f"{fam} n={n:3d} players={inst.game.n:6d} l1={float(inst.l1):.6f} ({dt:.2f}s)")
            for b in inst.bounds:
                tag = "asserted" if b.asserted else "report"
                print(f"    {b.name:38s} {float(b.value):14.6g} >= {float(b.bound):14.6g}  {b.holds}  [{tag}]")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=list(Config.n_values))
    args = ap.parse_args()
    run(Config(n_values=tuple(args.n)))
