"""Ordinals below epsilon_0 in hereditary Cantor normal form.

An :class:`Ordinal` is a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents, each exponent itself an :class:`Ordinal`.
Values are immutable and always canonical; arithmetic is the standard
(non-commutative) ordinal sum and product.

Text form::

    expr := term ('+' term)*
    term := 'w' ('^' '(' expr ')')? ('*' nat)? | nat

so that ``str(omega_pow(omega_pow(omega_pow(OMEGA))))`` is ``w^(w^(w^(w)))``.
"""
from __future__ import annotations

from typing import Iterable, Tuple, Union

__all__ = [
    "Ordinal",
    "OrdinalSyntaxError",
    "ZERO",
    "ONE",
    "OMEGA",
    "OMEGA_4",
    "cmp",
    "add",
    "mul",
    "omega_pow",
    "parse",
    "render",
]

OrdinalLike = Union["Ordinal", int]


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class Ordinal:
    __slots__ = ("terms", "_hash")

    terms: Tuple[Tuple["Ordinal", int], ...]

    def __init__(self, terms: Iterable[Tuple[OrdinalLike, int]] = ()):
        # Arbitrary term lists are normalized by ordinal addition, left to right.
        acc = ZERO
        for exponent, coefficient in terms:
            if not isinstance(coefficient, int) or coefficient < 0:
                raise ValueError(f"coefficient must be a natural number, got {coefficient!r}")
            if coefficient:
                acc = add(acc, Ordinal._make(((_coerce(exponent), coefficient),)))
        object.__setattr__(self, "terms", acc.terms)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, terms) -> "Ordinal":
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", tuple(terms))
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        if n == 0:
            return ZERO
        return cls._make(((ZERO, n),))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0].is_zero()

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    @property
    def leading_exponent(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    def predecessor(self) -> "Ordinal":
        if not self.is_successor():
            raise ValueError(f"{self} has no predecessor")
        *head, (e, c) = self.terms
        if c > 1:
            head.append((e, c - 1))
        return Ordinal._make(head)

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def depth(self) -> int:
        """Nesting depth of the exponent tower (0 for finite ordinals)."""
        if self.is_finite():
            return 0
        return 1 + max(e.depth() for e, _ in self.terms)

    # -- protocol --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = _coerce_maybe(other)
            if other is None:
                return False
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self is other or self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.terms)
            object.__setattr__(self, "_hash", h)
        return h

    def __lt__(self, other):
        return cmp(self, other) < 0

    def __le__(self, other):
        return cmp(self, other) <= 0

    def __gt__(self, other):
        return cmp(self, other) > 0

    def __ge__(self, other):
        return cmp(self, other) >= 0

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Ordinal({render(self)!r})"

    def __reduce__(self):
        return (parse, (render(self),))


ZERO = Ordinal._make(())
ONE = Ordinal._make(((ZERO, 1),))
OMEGA = Ordinal._make(((ONE, 1),))


def _coerce(x: OrdinalLike) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.from_int(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


def _coerce_maybe(x):
    if isinstance(x, int) and not isinstance(x, bool) and x >= 0:
        return Ordinal.from_int(x)
    return None


def _cmp(a: Ordinal, b: Ordinal) -> int:
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def cmp(a: OrdinalLike, b: OrdinalLike) -> int:
    """Three-way comparison: -1, 0 or 1."""
    return _cmp(_coerce(a), _coerce(b))


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = _coerce(a), _coerce(b)
    if not b.terms:
        return a
    if not a.terms:
        return b
    lead, lead_c = b.terms[0]
    kept = []
    for e, c in a.terms:
        s = _cmp(e, lead)
        if s > 0:
            kept.append((e, c))
        elif s == 0:
            kept.append((e, c + lead_c))
            kept.extend(b.terms[1:])
            return Ordinal._make(kept)
        else:
            break
    kept.extend(b.terms)
    return Ordinal._make(kept)


def mul(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = _coerce(a), _coerce(b)
    if not a.terms or not b.terms:
        return ZERO
    lead, lead_c = a.terms[0]
    out = ZERO
    for f, c in b.terms:
        if f.is_zero():
            part = Ordinal._make(((lead, lead_c * c),) + a.terms[1:])
        else:
            part = Ordinal._make(((add(lead, f), c),))
        out = add(out, part)
    return out


def omega_pow(e: OrdinalLike) -> Ordinal:
    return Ordinal._make(((_coerce(e), 1),))


OMEGA_4 = omega_pow(omega_pow(omega_pow(OMEGA)))


# -- text form -----------------------------------------------------------


def render(a: OrdinalLike) -> str:
    a = _coerce(a)
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        head = "w" if e == ONE else f"w^({render(e)})"
        parts.append(head if c == 1 else f"{head}*{c}")
    return " + ".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise OrdinalSyntaxError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def expr(self) -> Ordinal:
        acc = self.term()
        while self.peek() == "+":
            self.pos += 1
            acc = add(acc, self.term())
        return acc

    def term(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            return Ordinal.from_int(self.nat())
        if ch not in ("w", "ω"):
            self.error("expected 'w' or a natural number")
        self.pos += 1
        exponent = ONE
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                exponent = self.expr()
                self.expect(")")
            elif self.peek().isdigit():
                exponent = Ordinal.from_int(self.nat())
            else:
                self.error("expected '(' or a natural number after '^'")
        coefficient = 1
        if self.peek() == "*":
            self.pos += 1
            coefficient = self.nat()
        return Ordinal([(exponent, coefficient)])

    def parse(self) -> Ordinal:
        if not self.peek():
            self.error("empty ordinal expression")
        value = self.expr()
        if self.peek():
            self.error("unexpected trailing input")
        return value


def parse(text: str) -> Ordinal:
    """Parse the textual grammar; non-canonical sums such as ``1+w`` are normalized."""
    return _Parser(text).parse()
