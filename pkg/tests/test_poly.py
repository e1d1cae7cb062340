from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from petord.poly import IntPolynomial, PolySyntaxError, is_integral_values, make_seq, parse_poly, render_poly


def test_parse_and_render():
    p = parse_poly("7n^2+19n")
    assert p.coeffs == (0, 19, 7)
    assert str(p) == "7n^2+19n"
    assert str(parse_poly("1/2n^2-1/2n")) == "1/2n^2-1/2n"
    assert str(parse_poly("-n")) == "-n"
    assert str(parse_poly(" 3 - n ^ 2 ")) == "-n^2+3"
    assert str(parse_poly("n+n")) == "2n"
    assert str(parse_poly("n-n")) == "0"


@pytest.mark.parametrize("text", ["", "n^", "2n 3", "+", "1/0n", "n*2"])
def test_parse_rejects(text):
    with pytest.raises(PolySyntaxError):
        parse_poly(text)


def test_non_integral_rejected():
    with pytest.raises(ValueError):
        parse_poly("1/2n")
    with pytest.raises(ValueError):
        IntPolynomial([Fraction(1, 3)])
    # n(n+1)/2 is integral although its coefficients are not integers
    assert parse_poly("1/2n^2+1/2n")(7) == 28


def test_shift():
    assert parse_poly("n^2").shift(3) == parse_poly("n^2+6n")
    assert parse_poly("n").shift(5) == parse_poly("n")
    assert parse_poly("4").shift(2).is_zero()
    assert parse_poly("n^2+3").shift(0) == parse_poly("n^2")


def test_make_seq_accepts_mixed_items():
    seq = make_seq(["n", 0, [0, 0, 1], parse_poly("2n")])
    assert [str(p) for p in seq] == ["n", "0", "n^2", "2n"]


def test_immutable():
    p = parse_poly("n")
    with pytest.raises(AttributeError):
        p.coeffs = (1,)


def binomial_polys():
    # integral polynomials written in the binomial basis
    def build(cs):
        out = IntPolynomial(())
        for k, a in enumerate(cs):
            term = IntPolynomial([1])
            for i in range(k):
                term = IntPolynomial._trusted(
                    [c for c in _times_linear(term.coeffs, -i)]
                )
            fact = 1
            for i in range(2, k + 1):
                fact *= i
            out = out + IntPolynomial._trusted([Fraction(a) * c / fact for c in term.coeffs])
        return out

    return st.lists(st.integers(-6, 6), max_size=5).map(build)


def _times_linear(coeffs, r):
    # coeffs * (n + r)
    out = [Fraction(0)] * (len(coeffs) + 1)
    for j, c in enumerate(coeffs):
        out[j + 1] += c
        out[j] += r * c
    return out


@given(binomial_polys(), st.integers(-20, 20))
def test_integer_valued_everywhere(p, x):
    assert p(x).denominator == 1
    assert is_integral_values(p.coeffs)


@given(binomial_polys(), st.integers(-5, 5), st.integers(-10, 10))
def test_shift_matches_definition(p, h, x):
    assert p.shift(h)(x) == p(x + h) - p(h)
    assert p.shift(h).degree <= p.degree


@given(binomial_polys())
def test_render_roundtrip(p):
    assert parse_poly(render_poly(p.coeffs)) == p


@given(binomial_polys(), binomial_polys(), st.integers(-10, 10))
def test_ring_ops(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (-p)(x) == -p(x)
    assert hash(p + q) == hash(q + p)
