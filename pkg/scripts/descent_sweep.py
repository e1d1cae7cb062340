"""Sweep random systems through one PET step per shift and tabulate the ordinal drop.

    python scripts/descent_sweep.py --n 2000 --seed 1
"""
import argparse
import random
from collections import Counter
from dataclasses import dataclass

from petord.pet import DegenerateSystem, RandomSystemConfig, pet_reduce, random_system, weight_matrix, wm_ordinal


@dataclass
class SweepConfig:
    n: int = 2000
    seed: int = 1
    shifts: tuple = (-2, -1, 1, 2)
    system: RandomSystemConfig = None


def run(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    drops = Counter()
    degenerate = 0
    for _ in range(cfg.n):
        A = random_system(rng, cfg.system)
        for h in cfg.shifts:
            try:
                node = pet_reduce(A, h)
            except DegenerateSystem as exc:
                node = exc.node
                degenerate += 1
            # which matrix position decided the descent
            before = weight_matrix(A).nonzero()
            after = weight_matrix(node.reduced, node.D).nonzero()
            top = max(p for p in set(before) | set(after) if before.get(p, 0) != after.get(p, 0))
            drops[top] += 1
    return drops, degenerate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    cfg = SweepConfig(n=args.n, seed=args.seed)
    drops, degenerate = run(cfg)
    total = sum(drops.values())
    print(f"{total} reductions, {degenerate} reached the empty system")
    print("deciding weight (r,d)   count")
    for (r, d), c in sorted(drops.items()):
        print(f"  ({r},{d})               {c:6d}  {c / total:6.1%}")


if __name__ == "__main__":
    main()
