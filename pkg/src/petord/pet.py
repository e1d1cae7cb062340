"""Polynomial systems, weight matrices and the PET reduction ``A -> A_h``.

A system is a finite set of length-``t`` sequences of integral
polynomials.  The weight of a sequence is ``(r, d)`` where ``r`` is the last
non-constant coordinate and ``d`` its degree; sequences whose coordinates
are all constant get the distinguished weight :data:`SUBUNIT`.  Two
sequences are equivalent when they share a weight and the ``r``-th
coordinates have the same leading coefficient.

The weight matrix counts equivalence classes per weight.  Matrices of a
fixed shape ``t x D`` are well ordered, most significant position first,
with order type ``w^(t*D)``; :func:`wm_ordinal` is the order isomorphism.

:func:`pet_reduce` implements one step of the reduction::

    tilde(A, h) = A  u  { <p_j(n+h) - p_j(h)> : <p_j> in A }
    A_h         = { p' - pivot : p' in tilde(A, h) }   (constant sequences dropped)

where ``pivot`` is a minimal-weight element of ``tilde(A, h)``.  The weight
matrix of ``A_h`` strictly precedes that of ``A``; this is checked on every
call.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .ordinal import ZERO, Ordinal, omega_pow, render
from .poly import IntPolynomial, PolySeq, make_seq, render_poly, seq_key, shift_seq, sub_seq

__all__ = [
    "Weight",
    "SUBUNIT",
    "PolySystem",
    "WeightMatrix",
    "DescentNode",
    "DescentTree",
    "DegenerateSystem",
    "DescentViolation",
    "RandomSystemConfig",
    "weight",
    "equivalent",
    "equivalence_classes",
    "weight_matrix",
    "wm_cmp",
    "wm_ordinal",
    "tilde",
    "pet_reduce",
    "descent_tree",
    "random_system",
    "WORKED_EXAMPLE",
]


class DegenerateSystem(Exception):
    """The reduction left no sequence of weight >= (1, 1).

    ``node`` carries the step that produced the empty system, when there
    was one.
    """

    def __init__(self, message: str, node: Optional["DescentNode"] = None):
        super().__init__(message)
        self.node = node


class DescentViolation(AssertionError):
    """o(A_h) >= o(A).  Never a valid outcome; indicates a bug."""


class Weight(NamedTuple):
    r: int
    d: int

    def is_subunit(self) -> bool:
        return self.r == 0

    def __str__(self):
        return "subunit" if self.r == 0 else f"({self.r},{self.d})"


# Compares below every proper weight under the lexicographic order.
SUBUNIT = Weight(0, 0)


def weight(seq: PolySeq) -> Weight:
    for r in range(len(seq), 0, -1):
        p = seq[r - 1]
        if not p.is_constant():
            return Weight(r, p.degree)
    return SUBUNIT


def class_key(seq: PolySeq) -> Tuple[int, int, Optional[Fraction]]:
    w = weight(seq)
    if w.r == 0:
        return (0, 0, None)
    return (w.r, w.d, seq[w.r - 1].leading_coefficient)


def equivalent(a: PolySeq, b: PolySeq) -> bool:
    if len(a) != len(b):
        raise ValueError("sequences of different length")
    return class_key(a) == class_key(b)


@dataclass(frozen=True)
class PolySystem:
    """A finite set of length-``t`` polynomial sequences (set semantics)."""

    t: int
    seqs: Tuple[PolySeq, ...] = ()

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be >= 1")
        uniq = {tuple(s) for s in self.seqs}
        for s in uniq:
            if len(s) != self.t:
                raise ValueError(f"sequence of length {len(s)} in a system with t={self.t}")
        object.__setattr__(self, "seqs", tuple(sorted(uniq, key=seq_key)))

    @classmethod
    def of(cls, t: int, seqs: Iterable[Iterable]) -> "PolySystem":
        return cls(t, tuple(make_seq(s) for s in seqs))

    @property
    def degree(self) -> int:
        return max((p.degree for s in self.seqs for p in s), default=0)

    def __len__(self):
        return len(self.seqs)

    def __iter__(self) -> Iterator[PolySeq]:
        return iter(self.seqs)

    def __contains__(self, seq):
        return tuple(seq) in set(self.seqs)

    def has_subunit(self) -> bool:
        return any(weight(s).is_subunit() for s in self.seqs)

    def is_integral_zero(self) -> bool:
        return all(p.is_integral_zero() for s in self.seqs for p in s)

    def is_essentially_distinct(self) -> bool:
        seqs = self.seqs
        for i in range(len(seqs)):
            for j in range(i):
                if weight(sub_seq(seqs[i], seqs[j])).is_subunit():
                    return False
        return True

    def to_json(self) -> dict:
        return {"t": self.t, "seqs": [[render_poly(p.coeffs) for p in s] for s in self.seqs]}

    @classmethod
    def from_json(cls, obj: dict) -> "PolySystem":
        return cls.of(int(obj["t"]), obj["seqs"])

    def __str__(self):
        return "{" + ", ".join("<" + ", ".join(map(str, s)) + ">" for s in self.seqs) + "}"


def equivalence_classes(A: PolySystem) -> Dict[Tuple, List[PolySeq]]:
    """Proper-weight sequences grouped by (r, d, leading coefficient)."""
    classes: Dict[Tuple, List[PolySeq]] = defaultdict(list)
    for s in A.seqs:
        key = class_key(s)
        if key[0]:
            classes[key].append(s)
    return dict(classes)


@dataclass(frozen=True)
class WeightMatrix:
    """``entries[r-1][d-1]`` is the number of classes of weight ``(r, d)``."""

    entries: Tuple[Tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.entries)

    @property
    def D(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, rd: Tuple[int, int]) -> int:
        r, d = rd
        if 1 <= r <= self.t and 1 <= d <= self.D:
            return self.entries[r - 1][d - 1]
        return 0

    def nonzero(self) -> Dict[Tuple[int, int], int]:
        return {
            (r + 1, d + 1): n
            for r, row in enumerate(self.entries)
            for d, n in enumerate(row)
            if n
        }

    def padded(self, t: int, D: int) -> "WeightMatrix":
        nz = self.nonzero()
        if any(r > t or d > D for r, d in nz):
            raise ValueError("cannot shrink a matrix with entries outside the new shape")
        return WeightMatrix.from_counts(nz, t, D)

    @classmethod
    def from_counts(cls, counts: Dict[Tuple[int, int], int], t: int, D: int) -> "WeightMatrix":
        rows = [[0] * D for _ in range(t)]
        for (r, d), n in counts.items():
            rows[r - 1][d - 1] = n
        return cls(tuple(tuple(row) for row in rows))

    def rows(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def __str__(self):
        return "\n".join(" ".join(str(n) for n in row) for row in self.entries)


def weight_matrix(A: PolySystem, D: Optional[int] = None) -> WeightMatrix:
    """Class counts of ``A`` as a ``t x D`` matrix; ``D`` defaults to the degree of ``A``."""
    deg = A.degree
    if D is None:
        D = deg
    elif D < deg:
        raise ValueError(f"shape D={D} is smaller than the system degree {deg}")
    counts: Dict[Tuple[int, int], int] = defaultdict(int)
    for r, d, _ in equivalence_classes(A):
        counts[(r, d)] += 1
    return WeightMatrix.from_counts(counts, A.t, D)


def wm_cmp(M: WeightMatrix, N: WeightMatrix) -> int:
    """Priority comparison: the largest weight at which the counts differ decides.

    Matrices of different shapes are compared as if zero-padded.
    """
    m, n = M.nonzero(), N.nonzero()
    for pos in sorted(set(m) | set(n), reverse=True):
        a, b = m.get(pos, 0), n.get(pos, 0)
        if a != b:
            return -1 if a < b else 1
    return 0


def _rank(r: int, d: int, D: int) -> int:
    return (r - 1) * D + (d - 1)


def wm_ordinal(M: WeightMatrix) -> Ordinal:
    """Height of ``M`` in the weight-matrix order, an ordinal below ``w^(t*D)``."""
    D = M.D
    terms = sorted(
        ((_rank(r, d, D), n) for (r, d), n in M.nonzero().items()),
        reverse=True,
    )
    return Ordinal(terms)


def ordinal_ceiling(M: WeightMatrix) -> Ordinal:
    return omega_pow(M.t * M.D)


def tilde(A: PolySystem, h: int) -> PolySystem:
    return PolySystem(A.t, A.seqs + tuple(shift_seq(s, h) for s in A.seqs))


def _pivot_key(seq: PolySeq):
    w = weight(seq)
    return (w, seq[w.r - 1].coeffs if w.r else (), seq_key(seq))


@dataclass(frozen=True)
class DescentNode:
    system: PolySystem
    h: int
    pivot: PolySeq
    tilde: PolySystem
    reduced: PolySystem
    D: int
    o_before: Ordinal
    o_after: Ordinal

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "pivot": [render_poly(p.coeffs) for p in self.pivot],
            "o_before": render(self.o_before),
            "o_after": render(self.o_after),
            "reduced": self.reduced.to_json(),
        }


def pet_reduce(A: PolySystem, h: int, D: Optional[int] = None) -> DescentNode:
    """One reduction step.

    ``D`` fixes the matrix shape used for both ordinals (default: degree of
    ``A``).  Raises :class:`DegenerateSystem` when ``A`` is empty or when
    ``A_h`` is empty; in the latter case the exception carries the node.
    """
    if not A.seqs:
        raise DegenerateSystem("empty system")
    if A.has_subunit():
        raise ValueError("system contains sequences of weight below (1,1)")
    if D is None:
        D = A.degree
    At = tilde(A, h)
    pivot = min(At.seqs, key=_pivot_key)
    diffs = (sub_seq(q, pivot) for q in At.seqs)
    reduced = PolySystem(A.t, tuple(s for s in diffs if not weight(s).is_subunit()))
    o_before = wm_ordinal(weight_matrix(A, D))
    o_after = wm_ordinal(weight_matrix(reduced, D))
    if not o_after < o_before:
        raise DescentViolation(f"o(A_h)={o_after} is not below o(A)={o_before} for h={h}, A={A}")
    node = DescentNode(A, h, pivot, At, reduced, D, o_before, o_after)
    if not reduced.seqs:
        raise DegenerateSystem("reduction produced no sequence of weight >= (1,1)", node)
    return node


@dataclass(frozen=True)
class DescentTree:
    system: PolySystem
    ordinal: Ordinal
    h: Optional[int] = None
    pivot: Optional[PolySeq] = None
    children: Tuple["DescentTree", ...] = field(default=())

    @property
    def degenerate(self) -> bool:
        return not self.system.seqs

    def paths(self) -> Iterator[List["DescentTree"]]:
        if not self.children:
            yield [self]
            return
        for child in self.children:
            for rest in child.paths():
                yield [self] + rest

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_json(self) -> dict:
        out = {
            "ordinal": render(self.ordinal),
            "degenerate": self.degenerate,
            "system": self.system.to_json(),
        }
        if self.h is not None:
            out["h"] = self.h
            out["pivot"] = [render_poly(p.coeffs) for p in self.pivot]
        out["children"] = [c.to_json() for c in self.children]
        return out


def descent_tree(A: PolySystem, shifts: Sequence[int], max_depth: int, D: Optional[int] = None) -> DescentTree:
    """Iterate :func:`pet_reduce` over every shift, to ``max_depth`` levels.

    Branches stop at empty (degenerate) systems.  The matrix shape is fixed
    at the root so that ordinals along a path are comparable.
    """
    if not shifts:
        raise ValueError("shifts must be nonempty")
    if D is None:
        D = A.degree
    root_o = wm_ordinal(weight_matrix(A, D))

    def grow(system: PolySystem, o: Ordinal, depth: int, h=None, pivot=None) -> DescentTree:
        children = []
        if system.seqs and depth < max_depth:
            for s in shifts:
                try:
                    node = pet_reduce(system, s, D)
                except DegenerateSystem as exc:
                    node = exc.node
                    children.append(DescentTree(node.reduced, node.o_after, s, node.pivot))
                    continue
                children.append(grow(node.reduced, node.o_after, depth + 1, s, node.pivot))
        return DescentTree(system, o, h, pivot, tuple(children))

    return grow(A, root_o, 0)


# -- random systems --------------------------------------------------------


@dataclass
class RandomSystemConfig:
    max_t: int = 2
    max_degree: int = 3
    max_seqs: int = 5
    max_coef: int = 5
    # Coefficients are drawn in the binomial basis C(n, k), so every sample is integral.
    integral_zero: bool = True


def _binomial_poly(coefs: Sequence[int]) -> IntPolynomial:
    out = [Fraction(0)] * (len(coefs))
    for k, a in enumerate(coefs):
        if not a:
            continue
        # C(n, k) = n(n-1)...(n-k+1)/k!
        falling = [Fraction(1)]
        for i in range(k):
            nxt = [Fraction(0)] * (len(falling) + 1)
            for j, c in enumerate(falling):
                nxt[j + 1] += c
                nxt[j] -= i * c
            falling = nxt
        fact = Fraction(1, 1)
        for i in range(2, k + 1):
            fact /= i
        for j, c in enumerate(falling):
            out[j] += a * c * fact
    return IntPolynomial._trusted(out)


def random_system(rng: random.Random, cfg: Optional[RandomSystemConfig] = None) -> PolySystem:
    """A nonempty system with no constant sequences, drawn from ``cfg``'s ranges."""
    cfg = cfg or RandomSystemConfig()
    t = rng.randint(1, cfg.max_t)
    D = rng.randint(1, cfg.max_degree)
    size = rng.randint(1, cfg.max_seqs)
    start = 1 if cfg.integral_zero else 0
    seqs = []
    while len(seqs) < size:
        seq = []
        for _ in range(t):
            deg = rng.randint(0, D)
            coefs = [0] * (deg + 1)
            for k in range(start, deg + 1):
                coefs[k] = rng.randint(-cfg.max_coef, cfg.max_coef)
            seq.append(_binomial_poly(coefs))
        seq = tuple(seq)
        if not weight(seq).is_subunit():
            seqs.append(seq)
    return PolySystem(t, tuple(seqs))


# Eleven sequences, t = 2, degree 5; weight matrix rows (1 2 0 0 0) and (0 1 3 0 0).
WORKED_EXAMPLE = PolySystem.of(
    2,
    [
        ["19n", "0"],
        ["6n^2", "0"],
        ["7n^2+19n", "0"],
        ["7n^2", "0"],
        ["4n^4", "n^2"],
        ["n^2", "3n^3"],
        ["n^2", "3n^3+2n"],
        ["n", "2n^3+3n"],
        ["10n^5", "n^3+4n^2+4n"],
        ["0", "n^3+2n"],
        ["n^5", "n^3+n^2"],
    ],
)
