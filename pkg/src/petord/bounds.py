"""Bound-composition calculus for metastable polynomial averages.

A :class:`BoundClass` with exponent ``e`` stands for the statement "there is
a ``theta < w^e`` that suffices".  Three rules combine classes:

* ``pair_bound``  -- two properties at once: ``e1 + e2 - 1``
* ``split_bound`` -- a property for ``E(f|Y)`` and ``f - E(f|Y)``: ``e*2 - 1``
* ``tech_bound``  -- a property feeding another: ``e0 + ed``

where ``- 1`` removes one unit from a successor and is the identity on a
limit (only weakening the bound).

:func:`polywm_bound` assigns a class to a polynomial system by induction on
``gamma = o(A)``.  With ``K`` the base class (the metastable mean ergodic
constant) and ``D = max(deg A, |A|)``, each induction level costs::

    c0(D) = pair(split^D(K), K) = (K - 1) * 2^D + K

so that, writing ``gamma = lam + m`` with ``lam`` a limit (or 0)::

    E(m)        = K + (m - 1) * c0          for finite gamma = m >= 1
    E(lam + m)  = lam + (m + 1) * c0        for lam >= w

This satisfies ``E(gamma) < (gamma + 1) * c(D)`` with ``c(D) = c0(D) + K``,
and ``w^E(gamma) < w^(w^(w^w))`` for every finite ``t`` and ``D``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .ordinal import ONE, OMEGA_4, ZERO, Ordinal, add, mul, omega_pow, render
from .pet import DegenerateSystem, PolySystem, pet_reduce, weight_matrix, wm_ordinal

__all__ = [
    "BoundClass",
    "BoundConfig",
    "DerivationNode",
    "pair_bound",
    "split_bound",
    "tech_bound",
    "level_cost",
    "shape_constant",
    "closed_form_exponent",
    "polywm_bound",
    "within_omega4",
    "shape_bound",
]


def _drop_unit(e: Ordinal) -> Ordinal:
    return e.predecessor() if e.is_successor() else e


@dataclass(frozen=True)
class BoundClass:
    exponent: Ordinal

    def __post_init__(self):
        e = self.exponent
        if isinstance(e, int):
            e = Ordinal.from_int(e)
            object.__setattr__(self, "exponent", e)
        if e.is_zero():
            raise ValueError("bound exponents must be positive")

    @property
    def theta_bound(self) -> Ordinal:
        """The strict upper bound ``w^exponent`` on theta."""
        return omega_pow(self.exponent)

    def __str__(self):
        return f"theta < w^({render(self.exponent)})"


def pair_bound(b1: BoundClass, b2: BoundClass) -> BoundClass:
    return BoundClass(_drop_unit(add(b1.exponent, b2.exponent)))


def split_bound(b: BoundClass) -> BoundClass:
    return BoundClass(_drop_unit(mul(b.exponent, 2)))


def tech_bound(b0: BoundClass, bd: BoundClass) -> BoundClass:
    return BoundClass(add(b0.exponent, bd.exponent))


@dataclass(frozen=True)
class BoundConfig:
    K: int = 1
    shift: int = 1
    # Levels of the actual descent expanded in the derivation; deeper levels
    # use the closed-form hypothesis, which depends only on the ordinal.
    max_depth: int = 4

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be a positive integer")
        if self.shift == 0:
            raise ValueError("shift must be nonzero")


@dataclass(frozen=True)
class DerivationNode:
    rule: str  # Base | Split | Pair | Tech | PolyRecursion
    inputs: Tuple["DerivationNode", ...]
    output: BoundClass
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"rule": self.rule, "output": render(self.output.exponent)}
        if self.params:
            out["params"] = self.params
        out["inputs"] = [n.to_json() for n in self.inputs]
        return out

    def walk(self):
        yield self
        for n in self.inputs:
            yield from n.walk()


def level_cost(D: int, K: int) -> Ordinal:
    b = BoundClass(K)
    s = b
    for _ in range(D):
        s = split_bound(s)
    return pair_bound(s, b).exponent


def shape_constant(D: int, K: int = 1) -> int:
    """c(D) = (K - 1) * 2^D + 2K."""
    return int(level_cost(D, K)) + K


def _split_limit(gamma: Ordinal) -> Tuple[Ordinal, int]:
    if gamma.is_successor():
        *head, (_, m) = gamma.terms
        return Ordinal._make(head), m
    return gamma, 0


def closed_form_exponent(gamma: Ordinal, D: int, K: int = 1) -> Ordinal:
    if gamma.is_zero():
        raise ValueError("o(A) must be positive")
    c0 = int(level_cost(D, K))
    lam, m = _split_limit(gamma)
    if lam.is_zero():
        return Ordinal.from_int(K + (m - 1) * c0)
    return add(lam, (m + 1) * c0)


def _hypothesis_exponent(gamma: Ordinal, D: int, K: int) -> Ordinal:
    # Least upper bound of E(g) over 1 <= g < gamma.
    lam, m = _split_limit(gamma)
    if m:
        return closed_form_exponent(gamma.predecessor(), D, K)
    return lam


def within_omega4(b: BoundClass) -> bool:
    return b.theta_bound < OMEGA_4


def polywm_bound(A: PolySystem, config: Optional[BoundConfig] = None) -> Tuple[BoundClass, DerivationNode]:
    """Bound class for ``A`` together with its derivation tree.

    ``A`` must be nonempty, pairwise essentially distinct and free of
    constant sequences.
    """
    cfg = config or BoundConfig()
    if not A.seqs:
        raise DegenerateSystem("empty system")
    if A.has_subunit():
        raise ValueError("system contains sequences of weight below (1,1)")
    if not A.is_essentially_distinct():
        raise ValueError("system members are not pairwise essentially distinct")
    shape = A.degree
    D = max(shape, len(A))
    K = cfg.K

    base = DerivationNode("Base", (), BoundClass(K), {"K": K})
    s = base
    for i in range(D):
        s = DerivationNode("Split", (s,), split_bound(s.output), {"case": i + 1})
    side = DerivationNode("Pair", (s, base), pair_bound(s.output, base.output))

    def derive(system: PolySystem, depth: int) -> DerivationNode:
        gamma = wm_ordinal(weight_matrix(system, shape))
        if gamma == ONE:
            return DerivationNode("Base", (), BoundClass(K), {"K": K, "o": "1"})
        children: Tuple[DerivationNode, ...] = ()
        params = {"o": render(gamma)}
        if depth < cfg.max_depth:
            try:
                node = pet_reduce(system, cfg.shift, shape)
            except DegenerateSystem:
                # Only degree-1 classes remain: the linear case needs no hypothesis input.
                params["reduced"] = "empty"
            else:
                children = (derive(node.reduced, depth + 1),)
                params["h"] = cfg.shift
                params["o_reduced"] = render(node.o_after)
        ih = BoundClass(_hypothesis_exponent(gamma, D, K))
        for child in children:
            if child.output.exponent > ih.exponent:
                raise AssertionError("induction hypothesis does not dominate the reduced system's bound")
        hyp = DerivationNode("PolyRecursion", children, ih, params)
        top = DerivationNode("Tech", (hyp, side), tech_bound(ih, side.output), {"o": render(gamma)})
        return top

    tree = derive(A, 0)
    gamma = wm_ordinal(weight_matrix(A, shape))
    expected = closed_form_exponent(gamma, D, K)
    if tree.output.exponent != expected:
        raise AssertionError(f"derivation gave {tree.output.exponent}, closed form {expected}")
    return tree.output, tree


def shape_bound(A: PolySystem, K: int = 1) -> Ordinal:
    """``(o(A) + 1) * c(D)``, the template every exponent stays below."""
    D = max(A.degree, len(A))
    gamma = wm_ordinal(weight_matrix(A))
    return mul(add(gamma, 1), shape_constant(D, K))
