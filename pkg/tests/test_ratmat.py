import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signpinv.ratmat import (
    DimensionError,
    RatMatrix,
    det,
    format_rational,
    inverse,
    multiply,
    parse_rational,
    penrose_verify,
    pinv_oracle,
    rank,
    rank_factorization,
)
from signpinv.sgraph import incidence, path_sign_matrix

from conftest import leibniz_det

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def matrices(draw, max_dim=4, elements=small_rationals):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return RatMatrix([[draw(elements) for _ in range(c)] for _ in range(r)])


# low-rank inputs come from integer products of thin factors
@st.composite
def low_rank(draw):
    r, c, k = draw(st.integers(1, 4)), draw(st.integers(1, 4)), draw(st.integers(1, 3))
    ints = st.integers(-2, 2)
    A = RatMatrix([[draw(ints) for _ in range(k)] for _ in range(r)])
    B = RatMatrix([[draw(ints) for _ in range(c)] for _ in range(k)])
    return A @ B


def brute_rank(m):
    """Largest order of a nonzero minor."""
    for r in range(min(m.shape), 0, -1):
        for rows in itertools.combinations(range(m.nrows), r):
            for cols in itertools.combinations(range(m.ncols), r):
                if leibniz_det(m.submatrix(rows, cols).rows()):
                    return r
    return 0


def test_entries_are_exact_fractions():
    m = RatMatrix([[1, F(1, 3)], [F(2, 6), 0]])
    assert m[1, 0] == F(1, 3) and m[1, 0].denominator == 3
    assert m.entries == (1, F(1, 3), F(1, 3), 0)
    with pytest.raises(TypeError):
        RatMatrix([[0.5]])


def test_from_flat_and_shape_checks():
    assert RatMatrix.from_flat(2, 2, [1, 2, 3, 4]) == RatMatrix([[1, 2], [3, 4]])
    with pytest.raises(DimensionError):
        RatMatrix.from_flat(2, 2, [1, 2, 3])
    with pytest.raises(DimensionError):
        RatMatrix([[1, 2], [3]])


def test_format_and_parse_rational():
    assert format_rational(F(-2, 3)) == "-2/3"
    assert format_rational(F(4, 2)) == "2"
    assert parse_rational("-6/11") == F(-6, 11)
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_multiply_examples(tree7):
    M = RatMatrix([[1, 2], [3, F(1, 2)]])
    assert RatMatrix.identity(2) @ M == M
    v = RatMatrix([[1], [-1]])
    assert v.T @ v == RatMatrix([[2]])
    with pytest.raises(DimensionError):
        multiply(M, RatMatrix([[1, 2, 3]]))
    N = incidence(tree7)
    S = path_sign_matrix(tree7)
    assert N @ pinv_oracle(N) == RatMatrix.identity(7) - S.scale(F(1, 7))


def test_rank_examples(tree7, unicyclic9):
    assert rank(incidence(tree7)) == 6
    assert rank(RatMatrix.identity(3)) == 3
    assert rank(incidence(unicyclic9)) == 9
    assert rank(RatMatrix.zeros(2, 3)) == 0


def test_det_examples(unicyclic9):
    assert abs(det(incidence(unicyclic9))) == 2
    assert det(RatMatrix.identity(4)) == 1
    assert det(RatMatrix([[1, 1, 5], [2, 2, 7], [3, 3, 1]])) == 0
    with pytest.raises(DimensionError):
        det(RatMatrix([[1, 2]]))


def test_rank_factorization_examples(tree7):
    F_, G_ = rank_factorization(RatMatrix.identity(2))
    assert F_ == G_ == RatMatrix.identity(2)
    F_, G_ = rank_factorization(RatMatrix([[1, 1], [1, 1]]))
    assert F_ == RatMatrix([[1], [1]]) and G_ == RatMatrix([[1, 1]])
    N = incidence(tree7)
    F_, G_ = rank_factorization(N)
    assert F_.shape == (7, 6) and G_.shape == (6, 6) and F_ @ G_ == N
    with pytest.raises(ValueError):
        rank_factorization(RatMatrix.zeros(2, 2))


def test_pinv_oracle_examples():
    assert pinv_oracle(RatMatrix([[1], [-1]])) == RatMatrix([[F(1, 2), F(-1, 2)]])
    assert pinv_oracle(RatMatrix.zeros(2, 3)) == RatMatrix.zeros(3, 2)


def test_penrose_verify_examples(tree7):
    N = incidence(tree7)
    assert penrose_verify(N, pinv_oracle(N)) == (True, True, True, True)
    assert not all(penrose_verify(N, N.T))
    assert penrose_verify(RatMatrix.identity(3), RatMatrix.identity(3)) == (True,) * 4
    with pytest.raises(DimensionError):
        penrose_verify(N, N)


def test_inverse_of_singular_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(RatMatrix([[1, 2], [2, 4]]))


@settings(max_examples=150, deadline=None)
@given(st.one_of(matrices(), low_rank()))
def test_pinv_oracle_properties(m):
    X = pinv_oracle(m)
    assert penrose_verify(m, X) == (True, True, True, True)
    assert pinv_oracle(X) == m
    assert rank(X) == rank(m)


@settings(max_examples=150, deadline=None)
@given(st.one_of(matrices(), low_rank()))
def test_rank_matches_brute_force_minors(m):
    assert rank(m) == brute_rank(m)
    rows = list(m.rows())[::-1]
    assert rank(RatMatrix(rows)) == rank(m)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(small_rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_leibniz(rows):
    assert det(RatMatrix(rows)) == leibniz_det(rows)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_duplicated_column_gives_zero_det(m):
    if m.ncols < 2:
        return
    k = min(m.nrows, m.ncols)
    sq = m.submatrix(range(k), range(k))
    if k < 2:
        return
    rows = [list(r) for r in sq.rows()]
    for r in rows:
        r[1] = r[0]
    assert det(RatMatrix(rows)) == 0


@settings(max_examples=100, deadline=None)
@given(st.one_of(matrices(), low_rank()))
def test_rank_factorization_recomposes(m):
    if m.is_zero():
        return
    F_, G_ = rank_factorization(m)
    r = rank(m)
    assert F_ @ G_ == m
    assert F_.ncols == r == G_.nrows == rank(F_) == rank(G_)
