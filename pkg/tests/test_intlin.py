import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from hypothesis import given, settings
from hypothesis import strategies as st

from toricext.intlin import (
    IntMat,
    determinant,
    hermite_rows,
    is_torsion_free_quotient,
    kernel_basis,
    rank,
    right_inverse,
    smith_normal_form,
    solve_integer,
    unimodular_inverse,
)


def matrices(max_rows=4, max_cols=5, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def test_snf_small():
    snf = smith_normal_form(IntMat.from_rows([[2, 0], [0, 3]]))
    assert snf.invariant_factors == (1, 6)
    assert snf.U @ IntMat.from_rows([[2, 0], [0, 3]]) @ snf.V == snf.D


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_decomposition(rows):
    M = IntMat.from_rows(rows)
    snf = smith_normal_form(M)
    assert snf.U @ M @ snf.V == snf.D
    assert abs(determinant(snf.U)) == 1
    assert abs(determinant(snf.V)) == 1
    d = snf.invariant_factors
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    for i in range(snf.D.rows):
        for j in range(snf.D.cols):
            expected = d[i] if i == j and i < len(d) else 0
            assert snf.D[i, j] == expected
    ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    ref_d = [abs(ref[i, i]) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert list(d) == ref_d


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_and_kernel(rows):
    M = IntMat.from_rows(rows)
    r = sympy.Matrix(rows).rank()
    assert rank(M) == r
    K = kernel_basis(M)
    assert K.cols == M.cols - r
    assert (M @ K).is_zero() if K.cols else True
    # a Z-basis of the saturated kernel: K has a left inverse over Z
    if K.cols:
        assert right_inverse(K.T) is not None


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_determinant_matches_sympy(rows):
    n = min(len(rows), len(rows[0]))
    square = [r[:n] for r in rows[:n]]
    assert determinant(IntMat.from_rows(square)) == sympy.Matrix(square).det()


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_solve_integer_roundtrip(rows, x):
    M = IntMat.from_rows(rows)
    x = x[: M.cols]
    t = M.apply(x)
    X = solve_integer(M, IntMat.from_columns([t], rows=M.rows))
    assert X is not None
    assert M @ X == IntMat.from_columns([t], rows=M.rows)


def test_solve_integer_detects_divisibility():
    assert solve_integer(IntMat.from_rows([[2, 4]]), IntMat.from_rows([[3]])) is None
    assert solve_integer(IntMat.from_rows([[2, 4]]), IntMat.from_rows([[6]])) is not None


def test_right_inverse():
    C = IntMat.from_rows([[1, 1, -2]])
    Q = right_inverse(C)
    assert C @ Q == IntMat.identity(1)
    assert right_inverse(IntMat.from_rows([[2]])) is None
    assert right_inverse(IntMat.from_rows([[1, 2], [2, 4]])) is None


def test_unimodular_inverse():
    M = IntMat.from_rows([[2, 1], [1, 1]])
    assert M @ unimodular_inverse(M) == IntMat.identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse(IntMat.from_rows([[2, 0], [0, 1]]))


def test_kernel_is_canonical():
    K = kernel_basis(IntMat.from_rows([[2, 0, 1], [0, 2, 1], [1, 1, 1]]))
    assert K.col_list() == [(1, 1, -2)]
    assert kernel_basis(IntMat.from_rows([[1, 0], [0, 1]])).cols == 0


def test_hermite_rows_span():
    assert hermite_rows([(2, 4), (3, 6), (0, 1)]) == [(1, 0), (0, 1)]
    assert hermite_rows([(4, 6), (2, 2)]) == [(2, 0), (0, 2)]
    assert hermite_rows([(0, 0)]) == []


def test_torsion_free_quotient():
    assert is_torsion_free_quotient(IntMat.from_rows([[1, 1, -2]]))
    assert not is_torsion_free_quotient(IntMat.from_rows([[2, -2]]))


def test_bignum_entries():
    big = 10**40
    M = IntMat.from_rows([[big, big + 1], [big - 1, big]])
    snf = smith_normal_form(M)
    assert snf.U @ M @ snf.V == snf.D
    assert snf.invariant_factors == (1, 1)
    assert determinant(M) == 1
