"""Bound exponents for a few named systems and a range of K.

    python scripts/bound_table.py
"""
from petord.bounds import BoundConfig, polywm_bound, shape_bound, within_omega4
from petord.ordinal import render
from petord.pet import WORKED_EXAMPLE, PolySystem, weight_matrix, wm_ordinal

SYSTEMS = {
    "n": PolySystem.of(1, [["n"]]),
    "n, n^2": PolySystem.of(1, [["n"], ["n^2"]]),
    "n, 2n, 3n": PolySystem.of(1, [["n"], ["2n"], ["3n"]]),
    "<n,0>, <0,n^2>": PolySystem.of(2, [["n", "0"], ["0", "n^2"]]),
    "eleven-sequence example": WORKED_EXAMPLE,
}


def main():
    for K in (1, 2, 3):
        print(f"K = {K}")
        for name, A in SYSTEMS.items():
            b, tree = polywm_bound(A, BoundConfig(K=K))
            o = wm_ordinal(weight_matrix(A))
            print(f"  {name:26s} o(A) = {render(o):28s} exponent = {render(b.exponent):32s}"
                  f" shape = {render(shape_bound(A, K)):30s} inside w4: {within_omega4(b)}")


if __name__ == "__main__":
    main()
