import itertools
import random

import pytest
from hypothesis import given, strategies as st

from petord.ordinal import OMEGA, Ordinal, omega_pow, parse
from petord.pet import (
    SUBUNIT,
    WORKED_EXAMPLE,
    DegenerateSystem,
    PolySystem,
    RandomSystemConfig,
    Weight,
    WeightMatrix,
    descent_tree,
    equivalence_classes,
    equivalent,
    pet_reduce,
    random_system,
    tilde,
    weight,
    weight_matrix,
    wm_cmp,
    wm_ordinal,
)
from petord.poly import is_integral_values, make_seq


def S(*items):
    return make_seq(items)


def test_weights():
    assert weight(S("19n", "0")) == Weight(1, 1)
    assert weight(S("4n^4", "n^2")) == Weight(2, 2)
    assert weight(S("5", "7")) == SUBUNIT


def test_equivalence():
    assert equivalent(S("7n^2+19n", "0"), S("7n^2", "0"))
    assert not equivalent(S("6n^2", "0"), S("7n^2", "0"))
    s = S("n", "n^3")
    assert equivalent(s, s)
    with pytest.raises(ValueError):
        equivalent(S("n"), S("n", "n"))


def test_worked_example_matrix():
    M = weight_matrix(WORKED_EXAMPLE)
    assert M.rows() == [[1, 2, 0, 0, 0], [0, 1, 3, 0, 0]]
    assert wm_ordinal(M) == parse("w^7*3 + w^6 + w*2 + 1")


def test_small_matrices():
    assert weight_matrix(PolySystem.of(1, [["n"], ["n^2"]])).rows() == [[1, 1]]
    assert weight_matrix(PolySystem.of(1, [["n"]])).rows() == [[1]]
    assert wm_ordinal(WeightMatrix(((0, 0), (0, 0)))) == 0
    assert wm_ordinal(WeightMatrix(((5, 0),))) == 5


def test_wm_cmp_examples():
    M = WeightMatrix
    assert wm_cmp(M(((0, 1),)), M(((1, 1),))) == -1
    assert wm_cmp(M(((9, 0),)), M(((0, 1),))) == -1
    assert wm_cmp(M(((2, 1),)), M(((2, 1),))) == 0


def test_tilde_examples():
    A = PolySystem.of(1, [["n"], ["n^2"]])
    assert tilde(A, 1) == PolySystem.of(1, [["n"], ["n^2"], ["n^2+2n"]])
    assert tilde(A, 0) == A
    assert weight_matrix(tilde(WORKED_EXAMPLE, 7)) == weight_matrix(WORKED_EXAMPLE)


@pytest.mark.parametrize("h", [1, 2, 3, -4])
def test_reduce_linear_plus_square(h):
    A = PolySystem.of(1, [["n"], ["n^2"]])
    node = pet_reduce(A, h)
    assert node.tilde == PolySystem.of(1, [["n"], ["n^2"], [f"n^2+{2 * h}n" if h > 0 else f"n^2{2 * h}n"]])
    assert node.pivot == S("n")
    assert node.reduced == PolySystem.of(1, [["n^2-n"], [f"n^2+{2 * h - 1}n" if h > 0 else f"n^2{2 * h - 1}n"]])
    assert weight_matrix(node.reduced, 2).rows() == [[0, 1]]
    assert node.o_before == OMEGA + 1 and node.o_after == OMEGA


def test_reduce_single_linear_is_degenerate():
    with pytest.raises(DegenerateSystem) as info:
        pet_reduce(PolySystem.of(1, [["n"]]), 1)
    assert info.value.node.o_after == 0
    with pytest.raises(DegenerateSystem):
        pet_reduce(PolySystem(1, ()), 1)


def test_reduce_rejects_constants():
    with pytest.raises(ValueError):
        pet_reduce(PolySystem.of(1, [["n"], ["3"]]), 1)


def test_descent_tree_examples():
    tree = descent_tree(PolySystem.of(1, [["n"]]), [1], 1)
    assert tree.size() == 2 and tree.children[0].degenerate

    tree = descent_tree(PolySystem.of(1, [["n"], ["n^2"]]), [1], 5)
    (path,) = list(tree.paths())
    assert [str(n.ordinal) for n in path] == ["w + 1", "w", "2", "1", "0"]
    assert path[-1].degenerate
    assert sum(not n.degenerate for n in path[1:]) <= 3

    tree = descent_tree(WORKED_EXAMPLE, [1, 2], 4)
    for path in tree.paths():
        ords = [n.ordinal for n in path]
        assert all(b < a for a, b in zip(ords, ords[1:]))


def test_descent_tree_json_is_deterministic():
    A = PolySystem.of(2, [["n", "0"], ["n^2", "n"]])
    assert descent_tree(A, [1, -1], 3).to_json() == descent_tree(A, [1, -1], 3).to_json()


def test_system_json_roundtrip():
    assert PolySystem.from_json(WORKED_EXAMPLE.to_json()) == WORKED_EXAMPLE


systems = st.integers(0, 2**32 - 1).map(lambda seed: random_system(random.Random(seed)))
shifts = st.integers(-5, 5).filter(bool)


@given(systems, shifts)
def test_tilde_keeps_matrix(A, h):
    assert weight_matrix(tilde(A, h)) == weight_matrix(A)


@given(systems, shifts)
def test_strict_descent(A, h):
    try:
        node = pet_reduce(A, h)
    except DegenerateSystem as exc:
        node = exc.node
    assert wm_cmp(weight_matrix(node.reduced, node.D), weight_matrix(A)) == -1
    assert node.o_after < node.o_before
    for seq in node.reduced:
        assert all(is_integral_values(p.coeffs) for p in seq)


@given(systems)
def test_ordinal_below_ceiling(A):
    M = weight_matrix(A)
    assert wm_ordinal(M) < omega_pow(M.t * M.D)


@given(systems)
def test_equivalence_relation(A):
    seqs = list(A)
    for a, b, c in itertools.product(seqs, repeat=3):
        if equivalent(a, b):
            assert equivalent(b, a)
            if equivalent(b, c):
                assert equivalent(a, c)
    assert sum(len(v) for v in equivalence_classes(A).values()) == len(seqs)


def all_matrices(t, D, top=2):
    for flat in itertools.product(range(top + 1), repeat=t * D):
        yield WeightMatrix(tuple(tuple(flat[r * D:(r + 1) * D]) for r in range(t)))


@pytest.mark.parametrize("t,D", [(1, 3), (2, 2), (3, 1)])
def test_order_isomorphism_small(t, D):
    ms = list(all_matrices(t, D))
    for M, N in itertools.product(ms, repeat=2):
        assert wm_cmp(M, N) == (wm_ordinal(M) > wm_ordinal(N)) - (wm_ordinal(M) < wm_ordinal(N))


def test_random_systems_are_valid():
    rng = random.Random(7)
    cfg = RandomSystemConfig()
    for _ in range(200):
        A = random_system(rng, cfg)
        assert A.seqs and not A.has_subunit() and A.is_integral_zero()
        assert A.t <= cfg.max_t and A.degree <= cfg.max_degree and len(A) <= cfg.max_seqs
