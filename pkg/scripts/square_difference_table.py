"""Least N forcing {u, u + n^2} in every dense subset of [0, N), across densities.

    python scripts/square_difference_table.py --nmax 16
"""
import argparse
from fractions import Fraction

from petord.finsys import NotFoundWithin, SzInstance, szemeredi_search
from petord.poly import parse_poly


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=16)
    ap.add_argument("--steps", type=int, default=12)
    args = ap.parse_args()
    cache = {}
    print("delta    least N")
    for k in range(1, args.steps + 1):
        delta = Fraction(k, args.steps)
        inst = SzInstance(1, ((parse_poly("0"),), (parse_poly("n^2"),)), ((1,),), delta)
        try:
            n = szemeredi_search(inst, args.nmax, cache)
        except NotFoundWithin:
            n = f"> {args.nmax}"
        print(f"{str(delta):7s}  {n}")
    print("largest square-difference-free subset of [0, N):", {N: s for N, s in sorted(cache.items())})


if __name__ == "__main__":
    main()
