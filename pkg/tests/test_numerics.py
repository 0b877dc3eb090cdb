from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bddlat import numerics as nm
from bddlat.errors import ShapeError

from conftest import int_matrices, rationals


@pytest.mark.parametrize("u, v, expected", [
    ((1, 0), (0, 1), 0),
    ((2, 1), (2, 1), 5),
    ((0, 2), (2, 1), 2),
])
def test_inner_product_examples(u, v, expected):
    assert nm.inner_product(u, v) == expected


@pytest.mark.parametrize("v, expected", [
    ((0, 0), 0),
    ((2, 1), 5),
    ((Fraction(-4, 5), Fraction(8, 5)), Fraction(16, 5)),
])
def test_norm_sq_examples(v, expected):
    assert nm.norm_sq(v) == expected


def test_inner_product_shape_mismatch():
    with pytest.raises(ShapeError):
        nm.inner_product((1, 2), (1, 2, 3))


@pytest.mark.parametrize("a, b, expected", [
    (nm.identity(2), nm.identity(2), nm.identity(2)),
    (((2, 0), (1, 2)), ((1, 0), (0, 1)), ((2, 0), (1, 2))),
    (((1, 0), (-2, 1)), ((2, 1), (4, 3)), ((2, 1), (0, 1))),
])
def test_mat_mul_examples(a, b, expected):
    assert nm.mat_mul(nm.matrix(a), nm.matrix(b)) == nm.matrix(expected)


@pytest.mark.parametrize("m, expected", [
    (nm.identity(3), True),
    (((1, 0), (-2, 1)), True),
    (((2, 0), (0, 1)), False),
])
def test_is_unimodular_examples(m, expected):
    assert nm.is_unimodular(nm.matrix(m)) is expected


def test_to_rational_float_goes_through_decimal_text():
    assert nm.to_rational(0.3) == Fraction(3, 10)
    assert nm.to_rational(3.5) == Fraction(7, 2)
    with pytest.raises(ValueError):
        nm.to_rational(float("nan"))


@pytest.mark.parametrize("text, value, changed", [
    ("5", Fraction(5), False),
    ("-7/2", Fraction(-7, 2), False),
    ("3/6", Fraction(1, 2), True),
    ("4/2", Fraction(2), True),
    ("0/5", Fraction(0), True),
])
def test_parse_rational(text, value, changed):
    assert nm.parse_rational(text) == (value, changed)


@pytest.mark.parametrize("bad", ["", "1/0", "1.5", "a", "--1", "1/-2", " 1"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        nm.parse_rational(bad)


@given(rationals)
def test_format_parse_round_trip(x):
    assert nm.parse_rational(nm.format_rational(x)) == (x, False)


@pytest.mark.parametrize("x, expected", [
    (Fraction(1, 2), 1), (Fraction(-1, 2), 0), (Fraction(3, 2), 2),
    (Fraction(-3, 2), -1), (Fraction(7, 5), 1), (Fraction(-7, 5), -1),
])
def test_round_half_up_ties_go_up(x, expected):
    assert nm.round_half_up(x) == expected


@given(st.lists(rationals, min_size=1, max_size=5).flatmap(
    lambda u: st.tuples(st.just(u), st.lists(rationals, min_size=len(u), max_size=len(u)))))
def test_inner_product_symmetric_and_bilinear(uv):
    u, v = uv
    assert nm.inner_product(u, v) == nm.inner_product(v, u)
    assert nm.inner_product(nm.vec_scale(3, u), v) == 3 * nm.inner_product(u, v)
    assert nm.norm_sq(nm.vec_add(u, v)) == nm.norm_sq(u) + 2 * nm.inner_product(u, v) + nm.norm_sq(v)


@given(int_matrices(1, 4), int_matrices(1, 4))
def test_determinant_multiplicative(a, b):
    n = min(len(a), len(b))
    a = tuple(r[:n] for r in a[:n])
    b = tuple(r[:n] for r in b[:n])
    assert nm.determinant(nm.mat_mul(a, b)) == nm.determinant(a) * nm.determinant(b)


@given(int_matrices(1, 3), int_matrices(1, 3), int_matrices(1, 3))
def test_mat_mul_associative(a, b, c):
    n = min(len(a), len(b), len(c))
    a, b, c = (tuple(r[:n] for r in m[:n]) for m in (a, b, c))
    assert nm.mat_mul(nm.mat_mul(a, b), c) == nm.mat_mul(a, nm.mat_mul(b, c))


def _leibniz(m):
    import itertools
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


@given(int_matrices(1, 4))
def test_determinant_matches_permutation_expansion(m):
    assert nm.determinant(m) == _leibniz(m)


@given(int_matrices(1, 4))
def test_inverse_and_solve(m):
    if nm.determinant(m) == 0:
        assert nm.rank(m) < len(m)
        with pytest.raises(ValueError):
            nm.inverse(m)
        return
    inv = nm.inverse(m)
    assert nm.mat_mul(m, inv) == nm.identity(len(m))
    b = tuple((Fraction(i + 1, 3),) for i in range(len(m)))
    x = nm.solve(m, b)
    assert nm.mat_mul(m, x) == b


def test_solve_inconsistent_tall_system():
    a = nm.matrix(((1,), (1,)))
    assert nm.solve(a, nm.matrix(((1,), (2,)))) is None
    assert nm.solve(a, nm.matrix(((2,), (2,)))) == ((2,),)


@given(int_matrices(1, 4))
def test_invariant_factors_multiply_to_determinant(m):
    f = nm.invariant_factors(m)
    if nm.determinant(m) == 0:
        assert len(f) == nm.rank(m)
        return
    prod = 1
    for x in f:
        prod *= x
    assert prod == abs(nm.determinant(m))
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))


def test_rank_mod_p():
    m = nm.int_matrix(((1,), (2,)))
    assert nm.rank_mod_p(m, 5) == 1
    assert nm.rank_mod_p(nm.int_matrix(((5,), (10,))), 5) == 0
    assert nm.rank_mod_p(nm.int_matrix(((1, 2), (2, 4))), 7) == 1
