"""Exact integer-valued polynomials in one variable ``n``.

Coefficients are exact rationals in the monomial basis (index = power of
``n``), held as ``int`` when integral and :class:`fractions.Fraction`
otherwise.  A polynomial of degree ``d`` is integer-valued on all of the
integers iff it takes integer values at ``d + 1`` consecutive integers,
so that finite check is the validation rule.

Text form (used by config files and the CLI)::

    poly := term (('+'|'-') term)*
    term := [coef] ['n' ['^' nat]]
    coef := int | int '/' int

e.g. ``7n^2+19n`` or ``1/2n^2-1/2n``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Tuple

__all__ = [
    "IntPolynomial",
    "PolySyntaxError",
    "PolySeq",
    "parse_poly",
    "render_poly",
    "make_seq",
    "shift_seq",
    "sub_seq",
    "seq_key",
    "is_integral_values",
]


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def _norm(c):
    # Integral values are kept as int: same hash/equality as Fraction, far cheaper.
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _trim(coeffs) -> Tuple[Fraction, ...]:
    coeffs = [_norm(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def is_integral_values(coeffs: Sequence[Fraction]) -> bool:
    """True iff the polynomial is integer-valued at 0..deg (hence on all of Z)."""
    deg = max(len(coeffs) - 1, 0)
    for j in range(deg + 1):
        v = Fraction(_horner(coeffs, j))
        if v.denominator != 1:
            return False
    return True


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class IntPolynomial:
    """An integral polynomial; immutable and hashable."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = (), *, check: bool = True):
        cs = _trim(coeffs)
        if check and not is_integral_values(cs):
            raise ValueError(f"polynomial {render_poly(cs)} is not integer-valued on the integers")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "_hash", hash(cs))

    @classmethod
    def _trusted(cls, coeffs) -> "IntPolynomial":
        obj = object.__new__(cls)
        cs = _trim(coeffs)
        object.__setattr__(obj, "coeffs", cs)
        object.__setattr__(obj, "_hash", hash(cs))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @property
    def degree(self) -> int:
        # The zero polynomial counts as degree 0, like any constant.
        return max(len(self.coeffs) - 1, 0)

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else 0

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral_zero(self) -> bool:
        return not self.coeffs or self.coeffs[0] == 0

    def __call__(self, x) -> Fraction:
        return Fraction(_horner(self.coeffs, x))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial._trusted(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial._trusted(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        out = list(a) + [0] * (len(b) - len(a))
        for i, c in enumerate(b):
            out[i] -= c
        return IntPolynomial._trusted(out)

    def shift(self, h: int) -> "IntPolynomial":
        """``n -> p(n + h) - p(h)``."""
        cs = self.coeffs
        if len(cs) <= 1:
            return IntPolynomial._trusted(())
        if h == 0:
            return IntPolynomial._trusted((0,) + cs[1:])
        out = [0] * len(cs)
        for j in range(1, len(cs)):
            c = cs[j]
            if not c:
                continue
            hp = 1
            for k in range(j, 0, -1):
                # coefficient of n^k in c * (n + h)^j
                out[k] += c * comb(j, k) * hp
                hp *= h
        return IntPolynomial._trusted(out)

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render_poly(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({render_poly(self.coeffs)!r})"


PolySeq = Tuple[IntPolynomial, ...]


def make_seq(items: Iterable) -> PolySeq:
    """Build a sequence from polynomials, strings in the grammar, or coefficient lists."""
    out = []
    for item in items:
        if isinstance(item, IntPolynomial):
            out.append(item)
        elif isinstance(item, str):
            out.append(parse_poly(item))
        elif isinstance(item, int):
            out.append(IntPolynomial([item]))
        else:
            out.append(IntPolynomial(item))
    return tuple(out)


def shift_seq(seq: PolySeq, h: int) -> PolySeq:
    return tuple(p.shift(h) for p in seq)


def sub_seq(a: PolySeq, b: PolySeq) -> PolySeq:
    return tuple(p - q for p, q in zip(a, b))


def seq_key(seq: PolySeq):
    """Total order on sequences used for deterministic set iteration."""
    return tuple(p.coeffs for p in seq)


# -- text form -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)(?:\s*/\s*(\d+))?)?\s*(n(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str) -> IntPolynomial:
    s = text
    pos = 0
    coeffs: dict = {}
    first = True
    while True:
        while pos < len(s) and s[pos].isspace():
            pos += 1
        sign = 1
        if pos < len(s) and s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            if pos >= len(s):
                break
            raise PolySyntaxError("expected '+' or '-'", text, pos)
        m = _TOKEN.match(s, pos)
        num, den, var, power = m.groups()
        if num is None and var is None:
            raise PolySyntaxError("expected a term", text, pos)
        if den is not None and int(den) == 0:
            raise PolySyntaxError("zero denominator", text, pos)
        c = Fraction(int(num), int(den) if den else 1) if num is not None else Fraction(1)
        k = 0 if var is None else (int(power) if power is not None else 1)
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
        pos = m.end()
        first = False
        if pos >= len(s.rstrip()):
            break
    deg = max(coeffs) if coeffs else 0
    cs = [coeffs.get(k, Fraction(0)) for k in range(deg + 1)]
    try:
        return IntPolynomial(cs)
    except ValueError as exc:
        raise PolySyntaxError(str(exc), text, 0) from None


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_poly(coeffs: Sequence[Fraction]) -> str:
    coeffs = _trim(coeffs)
    if not coeffs:
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = _fmt_coef(a)
        else:
            var = "n" if k == 1 else f"n^{k}"
            body = var if a == 1 else f"{_fmt_coef(a)}{var}"
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(sign + body)
    return "".join(out)
