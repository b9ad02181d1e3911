"""Run the three random-game scans and print a short summary of each."""

import argparse
import os
import time
from dataclasses import dataclass

from powerlimits.families import (
    NucleolusScanConfig,
    ScanConfig,
    conjecture_bzi_scan,
    conjecture_ssi_scan,
    nucleolus_bound_scan,
)


@dataclass
class Config:
    seed: int = 0
    samples: int = 500
    nucleolus_samples: int = 200
    workers: int = int(os.environ.get("POWERLIMITS_WORKERS", os.cpu_count() or 1))


def summary(name, rep, dt):
    worst = rep.worst
    print(f"{name}: {len(rep.rows)} rows, {len(rep.violations)} above the bound, "
          f"max ratio {float(worst.ratio):.4f} at {worst.label} (q={worst.q}) [{dt:.1f}s]")


def run(cfg: Config):
    scans = [
        ("bzi vs delta*span (report only)", lambda: conjecture_bzi_scan(ScanConfig(samples=cfg.samples, seed=cfg.seed), cfg.workers)),
        ("ssi vs 5 delta/min(q,1-q)", lambda: conjecture_ssi_scan(ScanConfig(samples=cfg.samples, seed=cfg.seed), cfg.workers)),
        ("nucleolus vs 2 delta/min(q,1-q)", lambda: nucleolus_bound_scan(NucleolusScanConfig(samples=cfg.nucleolus_samples, seed=cfg.seed), cfg.workers)),
    ]
    for name, fn in scans:
        t = time.perf_counter()
        rep = fn()
        summary(name, rep, time.perf_counter() - t)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=500)
    args = ap.parse_args()
    run(Config(seed=args.seed, samples=args.samples))
