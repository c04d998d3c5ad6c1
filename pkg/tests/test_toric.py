from fractions import Fraction

import pytest

from toricext.errors import MissingDiagonalRow
from toricext.hilbert import HilbertBasisMat
from toricext.intlin import IntMat
from toricext.toric import (
    IrreducibilityStatus,
    LatticePresentation,
    binomials,
    classify,
    evaluate_monomial_map,
    is_locally_irreducible,
    presentation_from_monomials,
)


def profile(rows):
    return classify(LatticePresentation.from_rows(rows))


def test_cone_profile():
    p = profile([[1, 1, -2]])
    assert p.is_prime and p.contains_origin
    assert p.positive_vector == (1, 1, 1)
    assert p.dimension == 2
    assert p.m == 3 and p.ell == 1
    assert p.E.col_list() == [(1, 1, -2)]
    assert not p.normalization_is_affine_space
    assert p.local_irreducibility.status is IrreducibilityStatus.NOT_COMPUTED


def test_umbrella_not_locally_irreducible():
    p = profile([[2, 1, -2]])
    assert p.normalization_is_affine_space and p.m == 2
    li = p.local_irreducibility
    assert li.status is IrreducibilityStatus.NOT_IRREDUCIBLE
    assert li.column_gcds == (1, 2)
    assert li.offending == {1: 2}


def test_cusp():
    p = profile([[2, -3]])
    assert p.normalization_is_affine_space
    assert p.B.columns == [(3, 2)]
    assert p.local_irreducibility.status is IrreducibilityStatus.IRREDUCIBLE


def test_monomial_curve_surface():
    P = presentation_from_monomials([(1, 0), (0, 2), (0, 3), (1, 1)])
    A = P.A
    # every relation row annihilates the exponent matrix
    X = IntMat.from_rows([(1, 0), (0, 2), (0, 3), (1, 1)])
    assert (A @ X).is_zero()
    p = classify(P)
    assert p.is_prime and p.contains_origin
    assert p.normalization_is_affine_space
    assert p.local_irreducibility.status is IrreducibilityStatus.IRREDUCIBLE


def test_not_prime_and_no_origin():
    assert not profile([[2, -2]]).is_prime
    p = profile([[1, 1]])
    assert p.is_prime and not p.contains_origin and p.positive_vector is None


def test_binomials():
    bs = binomials(LatticePresentation.from_rows([[1, 1, -2], [2, -3, 0]]))
    assert [str(b) for b in bs] == ["x1*x2 - x3^2", "x1^2 - x2^3"]


def test_evaluate_monomial_map():
    hb = profile([[1, 1, -2]]).B
    assert evaluate_monomial_map(hb, [2, 3, 1]) == (Fraction(4), Fraction(9), Fraction(6))
    assert evaluate_monomial_map(hb, [0, 1, 1]) == (0, 1, 0)
    with pytest.raises(ValueError):
        evaluate_monomial_map(hb, [1])


def test_image_lies_on_variety():
    A = [[1, 1, -2]]
    hb = profile(A).B
    for t in [(1, 2, 3), (Fraction(1, 3), 5, -1), (-2, 7, 0)]:
        x = evaluate_monomial_map(hb, t)
        # x1 x2 = x3^2
        assert x[0] * x[1] == x[2] ** 2


def test_missing_diagonal_row():
    hb = HilbertBasisMat.from_columns([(1, 1), (0, 1)], IntMat.from_rows([[1, 0]]))
    with pytest.raises(MissingDiagonalRow):
        is_locally_irreducible(hb)


def test_presentation_validation():
    with pytest.raises(ValueError):
        LatticePresentation.from_rows([[0, 0]])
