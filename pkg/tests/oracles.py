"""Independent reference implementations used as test oracles.

None of these import the code under test beyond plain data types, so an
agreement is evidence rather than a tautology.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


# -- ordinals below w^w as block lists ---------------------------------------
#
# An ordinal below w^w is a well-order built by concatenating blocks of type
# w^k.  Concatenation absorbs any block sitting directly in front of a
# strictly larger one, which leaves a non-increasing list.  Two such lists
# compare lexicographically, a proper prefix being smaller.


def blocks(a2: int, a1: int, a0: int):
    """w^2*a2 + w*a1 + a0 as a block list."""
    return [2] * a2 + [1] * a1 + [0] * a0


def block_add(x, y):
    out = list(x) + list(y)
    i = 0
    while i < len(out) - 1:
        if out[i] < out[i + 1]:
            del out[i]
            i = max(i - 1, 0)
        else:
            i += 1
    return out


def block_mul(x, y):
    # x * y: y copies of x laid end to end, one per block of y.
    # x * w^k (k >= 1) collapses to a single block w^(lead(x) + k).
    if not x or not y:
        return []
    lead = x[0]
    out = []
    for k in y:
        out = block_add(out, list(x) if k == 0 else [lead + k])
    return out


def block_cmp(x, y) -> int:
    for a, b in zip(x, y):
        if a != b:
            return -1 if a < b else 1
    return (len(x) > len(y)) - (len(x) < len(y))


def block_render(x) -> str:
    """Render in the package's text form, for comparing against ``render``."""
    if not x:
        return "0"
    parts = []
    for k, grp in itertools.groupby(x):
        c = len(list(grp))
        if k == 0:
            parts.append(str(c))
        else:
            head = "w" if k == 1 else f"w^({k})"
            parts.append(head if c == 1 else f"{head}*{c}")
    return " + ".join(parts)


# -- combinatorial search ------------------------------------------------------


def brute_min_N_one_dim(offsets, delta: Fraction, n_max: int):
    """Least N such that every S in [0, N) with |S| >= delta*N holds u + offsets(n) for some
    u, n >= 1; by enumerating every subset as a bitmask.  ``offsets(n)`` lists
    integer offsets whose first entry is 0."""
    for N in range(1, n_max + 1):
        need = -(-delta.numerator * N // delta.denominator)
        ok = True
        for S in range(1 << N):
            if bin(S).count("1") < need:
                continue
            if not _contains(S, N, offsets):
                ok = False
                break
        if ok:
            return N
    return None


def _contains(S: int, N: int, offsets) -> bool:
    n = 1
    while True:
        offs = offsets(n)
        span = max(offs) - min(offs)
        if span >= N and n > N + 2:
            return False
        if span < N:
            for u in range(-min(offs), N - max(offs)):
                if all(S >> (u + o) & 1 for o in offs):
                    return True
        n += 1


# -- metastable scan -------------------------------------------------------------


def scan_star_norms(perm_inverse_powers, cells, g, horizon: int):
    """For every m in 1..horizon, the sup over vertices h of the unit cube of
    ||H^m * h - H^lim * h||_{L^2}, using plain running sums.

    ``perm_inverse_powers[i]`` is the point map x -> T^{-i} x for i < P, the
    period; the limit is the average over one full period.
    """
    N = len(g)
    P = len(perm_inverse_powers)
    V = np.array(list(itertools.product((-1.0, 1.0), repeat=N))).T
    avg = np.zeros((N, N))
    for c in cells:
        for x in c:
            for z in c:
                avg[x, z] = 1.0 / len(c)
    gv = np.asarray(g, dtype=float)

    def term(i):
        gi = gv[list(perm_inverse_powers[i % P])]
        return gi[:, None] * (avg @ (gi[:, None] * V))

    lim = sum(term(i) for i in range(P)) / P
    out = {}
    run = np.zeros_like(V)
    for m in range(1, horizon + 1):
        run += term(m - 1)
        diff = run / m - lim
        out[m] = float(np.sqrt((diff * diff).mean(axis=0)).max())
    return out
