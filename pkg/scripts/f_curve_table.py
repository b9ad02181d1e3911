"""Finite-n values of the two-class distance curve against the analytic candidates.

Prints f_n(q) for growing n at a handful of quotas, then the summand argmax
against n*g(q).
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from powerlimits.families import analytic_curves, argmax_summand, candidate_cubic, vnq_instance


@dataclass
class Config:
    n_values: tuple = (10, 20, 40, 80, 160, 320)
    q_values: tuple = tuple(Fraction(k, 20) for k in range(10, 21, 2))
    argmax_n: int = 500


def run(cfg: Config):
    print("q     " + "".join(f"{'n=' + str(n):>12s}" for n in cfg.n_values) + "       cubic     entropy")
    for q in cfg.q_values:
        fs = [float(vnq_instance(n, q)[1].f) for n in cfg.n_values]
        cand = analytic_curves(q)
        print(
            f"{float(q):.2f}  " + "".join(f"{f:12.6f}" for f in fs)
            + f"  {float(candidate_cubic(q)):10.6f}  {float(cand.cand_entropy):10.6f}"
        )
    print()
    print(f"argmax of the heavy-player summand at n={cfg.argmax_n}")
    for q in cfg.q_values[:-1]:
        rep = argmax_summand(cfg.argmax_n, q)
        print(f"q={float(q):.2f}  i*={rep.i_star:4d}  n*g(q)={float(rep.n_times_g):9.3f}  q*n={float(q * cfg.argmax_n):6.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=list(Config.n_values))
    args = ap.parse_args()
    run(Config(n_values=tuple(args.n)))
