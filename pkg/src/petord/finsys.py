"""Finite measure-preserving Z^d actions and their ergodic averages.

A :class:`FiniteSystem` is ``N`` points with uniform measure and ``d``
pairwise commuting permutations.  Group elements are *words*: integer
vectors ``(k_1, ..., k_d)`` meaning ``T_1^k_1 ... T_d^k_d``.  Functions act by
composition, ``(T^k f)(x) = f(T^k x)``.

Factors are action-invariant partitions; conditional expectation is cell
averaging.  Everything is exact (:class:`fractions.Fraction`) except the
metastable search loop, which only compares norms against ``eps``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .pet import PolySystem
from .poly import IntPolynomial

Obs = Tuple[Fraction, ...]
Word = Tuple[int, ...]
Perm = Tuple[int, ...]

__all__ = [
    "FiniteSystem",
    "Factor",
    "Obs",
    "ExhaustedTower",
    "NotFoundWithin",
    "obs",
    "integral",
    "inner",
    "cond_exp",
    "relative_product",
    "h_average",
    "star_conv",
    "star_limit",
    "wm_proof_chain",
    "MetastableResult",
    "metastable_met_check",
    "multi_recurrence_avg",
    "SzInstance",
    "szemeredi_search",
    "max_free_size",
    "random_finite_system",
    "random_factor",
    "random_tower",
    "random_obs",
]


class ExhaustedTower(Exception):
    pass


class NotFoundWithin(Exception):
    def __init__(self, n_max: int):
        super().__init__(f"no N <= {n_max} works")
        self.n_max = n_max


def _check_perm(p: Sequence[int], n: int) -> Perm:
    p = tuple(int(v) for v in p)
    if len(p) != n or sorted(p) != list(range(n)):
        raise ValueError(f"not a permutation of {n} points: {p}")
    return p


def _cycle_data(p: Perm):
    # For each point: (cycle as tuple, position within the cycle).
    n = len(p)
    where: List[Optional[Tuple[tuple, int]]] = [None] * n
    for start in range(n):
        if where[start] is not None:
            continue
        cyc = [start]
        x = p[start]
        while x != start:
            cyc.append(x)
            x = p[x]
        cyc = tuple(cyc)
        for i, x in enumerate(cyc):
            where[x] = (cyc, i)
    return where


@dataclass(frozen=True)
class FiniteSystem:
    generators: Tuple[Perm, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("at least one generator is required")
        n = len(gens[0])
        if n == 0:
            raise ValueError("a system needs at least one point")
        gens = tuple(_check_perm(g, n) for g in gens)
        for a, b in itertools.combinations(gens, 2):
            if any(a[b[x]] != b[a[x]] for x in range(n)):
                raise ValueError("generators do not commute")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_cycles", tuple(_cycle_data(g) for g in gens))

    @property
    def N(self) -> int:
        return len(self.generators[0])

    @property
    def d(self) -> int:
        return len(self.generators)

    def power(self, j: int, k: int) -> Perm:
        out = []
        for cyc, i in self._cycles[j]:
            out.append(cyc[(i + k) % len(cyc)])
        return tuple(out)

    def element(self, word: Sequence[int]) -> Perm:
        """The permutation ``T_1^k_1 ... T_d^k_d``."""
        word = tuple(word)
        if len(word) != self.d:
            raise ValueError(f"word {word} has length {len(word)}, expected {self.d}")
        return self._element(word)

    @lru_cache(maxsize=4096)
    def _element(self, word: Word) -> Perm:
        perm = tuple(range(self.N))
        for j, k in enumerate(word):
            if k:
                pk = self.power(j, k)
                perm = tuple(pk[x] for x in perm)
        return perm

    def act(self, word: Sequence[int], f: Sequence) -> tuple:
        """``(T^word f)(x) = f(T^word x)``."""
        p = self.element(word)
        return tuple(f[p[x]] for x in range(self.N))

    def period(self, word: Sequence[int]) -> int:
        """Order of the group element ``word``."""
        p = self.element(word)
        seen = [False] * self.N
        out = 1
        for s in range(self.N):
            if seen[s]:
                continue
            length, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = p[x]
                length += 1
            out = math.lcm(out, length)
        return out

    def unit(self, j: int = 0) -> Word:
        return tuple(1 if i == j else 0 for i in range(self.d))

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteSystem":
        return cls(tuple(tuple(g) for g in data["generators"]))


@dataclass(frozen=True)
class Factor:
    """An invariant partition, stored as sorted tuples of points."""

    cells: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(sorted(tuple(sorted(c)) for c in self.cells))
        if any(not c for c in cells):
            raise ValueError("empty cell")
        pts = [x for c in cells for x in c]
        if sorted(pts) != list(range(len(pts))):
            raise ValueError("cells must partition 0..N-1")
        label = [0] * len(pts)
        for i, c in enumerate(cells):
            for x in c:
                label[x] = i
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "labels", tuple(label))

    @property
    def N(self) -> int:
        return len(self.labels)

    def cell_of(self, x: int) -> Tuple[int, ...]:
        return self.cells[self.labels[x]]

    @classmethod
    def trivial(cls, n: int) -> "Factor":
        return cls((tuple(range(n)),))

    @classmethod
    def discrete(cls, n: int) -> "Factor":
        return cls(tuple((x,) for x in range(n)))

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Factor":
        groups: Dict = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls(tuple(tuple(v) for v in groups.values()))

    def is_invariant(self, X: FiniteSystem) -> bool:
        for g in X.generators:
            for c in self.cells:
                if len({self.labels[g[x]] for x in c}) != 1:
                    return False
        return True

    def refines(self, other: "Factor") -> bool:
        """True if every cell of ``self`` lies inside a cell of ``other``."""
        return all(len({other.labels[x] for x in c}) == 1 for c in self.cells)

    def invariant_closure(self, X: FiniteSystem) -> "Factor":
        """Coarsest invariant partition that this partition refines."""
        parent = list(range(self.N))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            a, b = find(a), find(b)
            if a != b:
                parent[a] = b
                return True
            return False

        for c in self.cells:
            for x in c[1:]:
                union(c[0], x)
        changed = True
        while changed:
            changed = False
            for g in X.generators:
                for x in range(self.N):
                    if union(g[x], g[find(x)]):
                        changed = True
        return Factor.from_labels([find(x) for x in range(self.N)])


# -- observables -----------------------------------------------------------


def obs(values: Sequence) -> Obs:
    return tuple(Fraction(v) for v in values)


def integral(f: Sequence) -> Fraction:
    return sum(f, Fraction(0)) / len(f)


def inner(f: Sequence, g: Sequence) -> Fraction:
    return integral([a * b for a, b in zip(f, g)])


def _mul(f, g):
    return tuple(a * b for a, b in zip(f, g))


def cond_exp(X: FiniteSystem, f: Sequence, Y: Factor) -> Obs:
    """``E(f | Y)``: the average of ``f`` over each cell."""
    if len(f) != X.N or Y.N != X.N:
        raise ValueError("observable, factor and system sizes differ")
    means = [sum((Fraction(f[x]) for x in c), Fraction(0)) / len(c) for c in Y.cells]
    return tuple(means[Y.labels[x]] for x in range(X.N))


def relative_product(Y: Factor) -> Dict[Tuple[int, int], Fraction]:
    """Measure of ``X x_Y X``: mass ``1/(N |C|)`` on each pair in a common cell ``C``."""
    n = Y.N
    out = {}
    for c in Y.cells:
        w = Fraction(1, n * len(c))
        for x in c:
            for y in c:
                out[(x, y)] = w
    return out


def h_average(X: FiniteSystem, g: Sequence, gens: Sequence[Word], n: int, Y: Factor) -> Dict[Tuple[int, int], Fraction]:
    """Box average of shifted ``g (x) g`` over ``[0, n]^t``, on pairs in a common cell."""
    if not gens:
        raise ValueError("at least one generator word is needed")
    if n < 0:
        raise ValueError("n must be non-negative")
    t = len(gens)
    g = obs(g)
    acc = {pair: Fraction(0) for pair in relative_product(Y)}
    for box in itertools.product(range(n + 1), repeat=t):
        word = [0] * X.d
        for i, w in zip(box, gens):
            for j in range(X.d):
                word[j] -= i * w[j]
        p = X.element(word)
        for (x, y) in acc:
            acc[(x, y)] += g[p[x]] * g[p[y]]
    scale = Fraction(1, (n + 1) ** t)
    return {k: v * scale for k, v in acc.items()}


def _neg(word: Sequence[int]) -> Word:
    return tuple(-k for k in word)


def _scale(word: Sequence[int], i: int) -> Word:
    return tuple(i * k for k in word)


def star_conv(X: FiniteSystem, g: Sequence, h: Sequence, T: Sequence[int], Y: Factor, m: int) -> Obs:
    """``(1/m) sum_{i<m} T^{-i}g * E(h T^{-i}g | Y)``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    g, h = obs(g), obs(h)
    acc = [Fraction(0)] * X.N
    for i in range(m):
        gi = X.act(_scale(T, -i), g)
        e = cond_exp(X, _mul(h, gi), Y)
        for x in range(X.N):
            acc[x] += gi[x] * e[x]
    return tuple(v / m for v in acc)


def star_limit(X: FiniteSystem, g: Sequence, h: Sequence, T: Sequence[int], Y: Factor) -> Obs:
    """The ``m -> infinity`` limit, which is exact at the period of ``T``."""
    return star_conv(X, g, h, T, Y, X.period(T))


def wm_proof_chain(X: FiniteSystem, f: Sequence, g: Sequence, T: Sequence[int], Y: Factor, m: int) -> Tuple[Fraction, ...]:
    """Each line of the weak-mixing equality chain, evaluated separately.

    With ``h = f - E(f|Y)`` the seven values are: the defect average, the
    same with ``f`` split, the squared ``E(h T^{-i}g|Y)`` average, the same
    as a product, the conditional integral of ``h`` against the inner
    average, the same with the star operation, and the plain integral
    ``int h * (H^m *_Y h)``.  On an invariant factor they are all equal.
    """
    f, g = obs(f), obs(g)
    Ef = cond_exp(X, f, Y)
    Eg = cond_exp(X, g, Y)
    h = tuple(a - b for a, b in zip(f, Ef))
    shifts = [X.act(_scale(T, -i), g) for i in range(m)]
    shifted_Eg = [X.act(_scale(T, -i), Eg) for i in range(m)]

    def avg(terms):
        return sum(terms, Fraction(0)) / m

    def sq(v):
        return tuple(a * a for a in v)

    l1 = avg(integral(sq(tuple(a - b * c for a, b, c in zip(cond_exp(X, _mul(f, gi), Y), Ef, egi))))
             for gi, egi in zip(shifts, shifted_Eg))
    split = tuple(a + b for a, b in zip(h, Ef))
    l2 = avg(integral(sq(tuple(a - b * c for a, b, c in zip(cond_exp(X, _mul(split, gi), Y), Ef, egi))))
             for gi, egi in zip(shifts, shifted_Eg))
    es = [cond_exp(X, _mul(h, gi), Y) for gi in shifts]
    l3 = avg(integral(sq(e)) for e in es)
    l4 = avg(integral(_mul(e, e)) for e in es)
    inner_avg = [Fraction(0)] * X.N
    for gi, e in zip(shifts, es):
        for x in range(X.N):
            inner_avg[x] += gi[x] * e[x]
    inner_avg = tuple(v / m for v in inner_avg)
    l5 = integral(cond_exp(X, _mul(h, inner_avg), Y))
    star = star_conv(X, g, h, T, Y, m)
    l6 = integral(cond_exp(X, _mul(h, star), Y))
    l7 = integral(_mul(h, star))
    return (l1, l2, l3, l4, l5, l6, l7)


# -- metastable mean ergodic check ----------------------------------------


@dataclass(frozen=True)
class MetastableResult:
    n: int
    witnesses: Tuple[int, ...]  # one tower index per interval (s_j, s_{j+1}]
    per_level: Dict[int, int]  # least n that works at each tower index scanned


def _kernels(X: FiniteSystem, g: Sequence, T: Word, Y: Factor, count: int) -> np.ndarray:
    # K_i[x, z] = g(T^{-i}x) g(T^{-i}z) [z ~ x] / |C(x)|, so K_i h = T^{-i}g E(h T^{-i}g | Y).
    n = X.N
    same = np.zeros((n, n))
    for c in Y.cells:
        idx = np.array(c)
        same[np.ix_(idx, idx)] = 1.0 / len(c)
    gv = np.array([float(v) for v in g])
    out = np.empty((count, n, n))
    for i in range(count):
        gi = gv[list(X.element(_scale(T, -i)))]
        out[i] = np.outer(gi, gi) * same
    return out


def _cube_vertices(n: int) -> np.ndarray:
    return np.array(list(itertools.product((-1.0, 1.0), repeat=n))).T


def _vertex_sup_norm(M: np.ndarray, V: np.ndarray) -> float:
    # sup over the unit cube of ||M h||_{L^2(mu)}; a convex function peaks at a vertex.
    vals = M @ V
    return float(np.sqrt((vals * vals).mean(axis=0)).max())


def metastable_met_check(
    X: FiniteSystem,
    tower: Sequence[Factor],
    g: Sequence,
    eps,
    s: Sequence[int],
    T: Optional[Sequence[int]] = None,
    horizon: Optional[int] = None,
) -> MetastableResult:
    """Find ``n`` and, for each interval ``(s_j, s_{j+1}]``, a tower index
    ``delta`` with ``sup_h ||H^m *_delta h - H^lim *_delta h|| < eps`` for all
    ``m >= n``, the sup taken over ``h`` in the unit cube.

    Writing ``m = qP + r`` with ``P`` the period of ``T``, the difference is
    ``(S_r - r Lim) h / m`` where ``S_r`` sums the first ``r`` kernels, so
    ``m`` fails exactly when ``c_r >= eps * m`` for ``c_r`` the operator
    norm of ``S_r - r Lim``.  That leaves finitely many failures.
    """
    T = tuple(T) if T is not None else X.unit(0)
    eps = float(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    s = list(s)
    if len(s) < 2 or any(a >= b for a, b in zip(s, s[1:])):
        raise ValueError("s must be strictly increasing with at least two entries")
    if s[0] < -1 or s[-1] >= len(tower):
        raise ExhaustedTower(f"s reaches outside tower indices 0..{len(tower) - 1}")
    for lo, hi in zip(tower, tower[1:]):
        if not hi.refines(lo):
            raise ValueError("tower is not increasing")
    P = X.period(T)
    V = _cube_vertices(X.N)
    per_level: Dict[int, int] = {}

    def least_n(delta: int) -> int:
        if delta not in per_level:
            K = _kernels(X, g, T, tower[delta], P)
            lim = K.mean(axis=0)
            worst = 0
            S = np.zeros_like(lim)
            for r in range(P):
                c = _vertex_sup_norm(S - r * lim, V)
                if c > 0:
                    # largest m = r (mod P), m >= 1, with c >= eps * m
                    top = int(math.floor(c / eps))
                    if top >= 1:
                        m_bad = top - ((top - r) % P)
                        if m_bad >= 1:
                            worst = max(worst, m_bad)
                S += K[r]
            per_level[delta] = worst + 1
        return per_level[delta]

    witnesses = []
    n = 1
    for a, b in zip(s, s[1:]):
        best = None
        for delta in range(a + 1, b + 1):
            nd = least_n(delta)
            if horizon is not None and nd > horizon:
                continue
            if best is None or nd < per_level[best]:
                best = delta
        if best is None:
            raise ExhaustedTower(f"no witness in ({a}, {b}] within the horizon")
        witnesses.append(best)
        n = max(n, per_level[best])
    return MetastableResult(n, tuple(witnesses), dict(per_level))


# -- multiple recurrence ----------------------------------------------------


def _poly_word(Ts: Sequence[Word], p_seq, i: int, d: int) -> Word:
    word = [0] * d
    for Tj, p in zip(Ts, p_seq):
        v = p(i)
        if v.denominator != 1:
            raise ValueError("polynomial takes a non-integer value")
        for k in range(d):
            word[k] += int(v) * Tj[k]
    return tuple(word)


def multi_recurrence_avg(X: FiniteSystem, Ts: Sequence[Sequence[int]], A: PolySystem, B, m: int, route: str = "sets") -> Fraction:
    """``(1/m) sum_{i<m} mu(intersection over p in A of T^p(i) B)``.

    ``T^p(i) B`` is the image of ``B`` under ``prod_j Ts[j]^{p_j(i)}``.
    ``route="pointwise"`` evaluates the same quantity as a sum of indicator
    products through inverse maps.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    Ts = [tuple(w) for w in Ts]
    if len(Ts) != A.t:
        raise ValueError("need one generator word per coordinate")
    B = frozenset(B)
    if not B:
        raise ValueError("B must have positive measure")
    if not all(p.is_integral_zero() for seq in A for p in seq):
        raise ValueError("system must be integral-zero")
    total = Fraction(0)
    for i in range(m):
        words = [_poly_word(Ts, seq, i, X.d) for seq in A]
        if route == "sets":
            inter = set(range(X.N))
            for w in words:
                p = X.element(w)
                inter &= {p[x] for x in B}
            total += Fraction(len(inter), X.N)
        elif route == "pointwise":
            chi = [1 if x in B else 0 for x in range(X.N)]
            inv = [X.element(_neg(w)) for w in words]
            count = 0
            for x in range(X.N):
                prod = 1
                for q in inv:
                    prod *= chi[q[x]]
                count += prod
            total += Fraction(count, X.N)
        else:
            raise ValueError(f"unknown route {route!r}")
    return total / m


# -- combinatorial search ---------------------------------------------------

GRID_CAP = 24


@dataclass(frozen=True)
class SzInstance:
    """Configurations ``u + sum_j p_{i,j}(n) v_j`` for ``i < k``."""

    d: int
    polys: Tuple[Tuple[IntPolynomial, ...], ...]  # k rows of t entries
    vectors: Tuple[Tuple[int, ...], ...]  # t vectors in Z^d
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if not 0 < self.delta <= 1:
            raise ValueError("delta must lie in (0, 1]")
        if not self.polys:
            raise ValueError("need at least one row")
        t = len(self.vectors)
        for row in self.polys:
            if len(row) != t:
                raise ValueError("each row needs one polynomial per vector")
            for p in row:
                if not p.is_integral_zero():
                    raise ValueError("polynomials must vanish at 0")
        for v in self.vectors:
            if len(v) != self.d:
                raise ValueError("vector dimension mismatch")

    @property
    def k(self) -> int:
        return len(self.polys)

    def offsets(self, n: int) -> Tuple[Tuple[int, ...], ...]:
        pts = []
        for row in self.polys:
            vec = [0] * self.d
            for p, v in zip(row, self.vectors):
                c = int(p(n))
                for j in range(self.d):
                    vec[j] += c * v[j]
            pts.append(tuple(vec))
        return tuple(pts)


def _n_cap(inst: SzInstance, N: int) -> int:
    # Beyond this n some pair of configuration points is >= N apart in some coordinate.
    cap = 1
    rows = inst.polys
    for a, b in itertools.combinations(range(inst.k), 2):
        for j in range(inst.d):
            q = IntPolynomial._trusted(())
            for pa, pb, v in zip(rows[a], rows[b], inst.vectors):
                if v[j]:
                    q = q + IntPolynomial._trusted(c * v[j] for c in (pa - pb).coeffs)
            if q.is_constant():
                continue
            lead = abs(q.leading_coefficient)
            bound = 1 + (max(abs(c) for c in q.coeffs) + N) / lead
            cap = max(cap, int(math.ceil(bound)))
    return cap


def _configs(inst: SzInstance, N: int) -> List[int]:
    """Bitmasks of every configuration inside the ``[0, N)^d`` grid, minimal ones only."""
    cells = list(itertools.product(range(N), repeat=inst.d))
    index = {c: i for i, c in enumerate(cells)}
    masks = set()
    for n in range(1, _n_cap(inst, N) + 1):
        offs = inst.offsets(n)
        for u in cells:
            mask = 0
            for o in offs:
                pt = tuple(a + b - offs[0][j] for j, (a, b) in enumerate(zip(u, o)))
                if pt not in index:
                    break
                mask |= 1 << index[pt]
            else:
                masks.add(mask)
    minimal = [m for m in masks if not any(o != m and o & m == o for o in masks)]
    return sorted(minimal)


def max_free_size(n_cells: int, configs: Sequence[int]) -> int:
    """Largest subset of ``n_cells`` points containing no configuration (backtracking)."""
    by_top: List[List[int]] = [[] for _ in range(n_cells)]
    for m in configs:
        by_top[m.bit_length() - 1].append(m)
    best = 0

    def go(i: int, chosen: int, size: int):
        nonlocal best
        if size + (n_cells - i) <= best:
            return
        if i == n_cells:
            best = size
            return
        with_i = chosen | (1 << i)
        if all(m & with_i != m for m in by_top[i]):
            go(i + 1, with_i, size + 1)
        go(i + 1, chosen, size)

    go(0, 0, 0)
    return best


def szemeredi_search(inst: SzInstance, N_max: int, free_sizes: Optional[Dict[int, int]] = None) -> int:
    """Least ``N <= N_max`` such that every subset of ``[0, N)^d`` with density
    at least ``delta`` contains a configuration with ``n >= 1``.

    A dense set exists without a configuration iff the largest
    configuration-free set has at least ``ceil(delta N^d)`` points.
    ``free_sizes`` caches that largest size per ``N`` across calls.
    """
    if N_max ** inst.d > GRID_CAP:
        raise ValueError(f"grid of {N_max ** inst.d} cells exceeds the cap of {GRID_CAP}")
    cache = free_sizes if free_sizes is not None else {}
    for N in range(1, N_max + 1):
        cells = N ** inst.d
        need = math.ceil(inst.delta * cells)
        if N not in cache:
            cache[N] = max_free_size(cells, _configs(inst, N))
        if cache[N] < need:
            return N
    raise NotFoundWithin(N_max)


# -- random instances -------------------------------------------------------


def random_finite_system(rng: random.Random, max_points: int = 16, d: Optional[int] = None) -> FiniteSystem:
    """Commuting permutations from relabeled products of cyclic groups."""
    d = d if d is not None else rng.randint(1, 2)
    N = rng.randint(1, max_points)
    sizes = []
    left = N
    while left:
        k = rng.randint(1, left)
        sizes.append(k)
        left -= k
    gens = [[0] * N for _ in range(d)]
    perm = list(range(N))
    rng.shuffle(perm)
    base = 0
    for size in sizes:
        # orbit = Z_a x Z_b with a*b = size; each generator moves by a random element
        divs = [a for a in range(1, size + 1) if size % a == 0]
        a = rng.choice(divs)
        b = size // a
        steps = [(rng.randrange(a), rng.randrange(b)) for _ in range(d)]
        for x in range(a):
            for y in range(b):
                src = perm[base + x * b + y]
                for j, (sx, sy) in enumerate(steps):
                    nx, ny = (x + sx) % a, (y + sy) % b
                    gens[j][src] = perm[base + nx * b + ny]
        base += size
    return FiniteSystem(tuple(tuple(g) for g in gens))


def random_factor(rng: random.Random, X: FiniteSystem, max_cells: Optional[int] = None) -> Factor:
    k = rng.randint(1, max_cells or X.N)
    labels = [rng.randrange(k) for _ in range(X.N)]
    return Factor.from_labels(labels).invariant_closure(X)


def random_tower(rng: random.Random, X: FiniteSystem, levels: int) -> List[Factor]:
    """An increasing (refining) tower, built by coarsening a fine invariant partition."""
    top = random_factor(rng, X)
    tower = [top]
    for _ in range(levels - 1):
        cur = tower[0]
        k = rng.randint(1, len(cur.cells))
        merge = [rng.randrange(k) for _ in cur.cells]
        labels = [merge[cur.labels[x]] for x in range(X.N)]
        tower.insert(0, Factor.from_labels(labels).invariant_closure(X))
    return tower


def random_obs(rng: random.Random, n: int, bound: int = 3, denom: int = 2) -> Obs:
    return tuple(Fraction(rng.randint(-bound * denom, bound * denom), denom) for _ in range(n))
