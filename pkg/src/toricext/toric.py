"""Variety-level classification of an affine toric variety given by a lattice.

A :class:`LatticePresentation` holds a matrix ``A`` whose rows generate the
lattice of the (prime) lattice ideal.  :func:`classify` derives everything
else: primality, whether the origin lies on the variety, the Hilbert basis
``B`` of ``ker A ∩ N^n``, the kernel basis ``E`` of ``B``, and the two
normalisation flags.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import MissingDiagonalRow
from .hilbert import HilbertBasisMat, hilbert_basis, positive_kernel_vector
from .intlin import IntMat, Vector, is_torsion_free_quotient, kernel_basis, rank

__all__ = [
    "LatticePresentation",
    "BinomialPair",
    "IrreducibilityStatus",
    "LocalIrreducibility",
    "ToricProfile",
    "binomials",
    "classify",
    "is_locally_irreducible",
    "evaluate_monomial_map",
    "presentation_from_monomials",
]


@dataclass(frozen=True)
class LatticePresentation:
    A: IntMat

    def __post_init__(self):
        if self.A.cols < 1:
            raise ValueError("ambient dimension must be at least 1")
        if self.A.is_zero():
            raise ValueError("the lattice must be nontrivial (A is zero)")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> LatticePresentation:
        return cls(IntMat.from_rows(rows))

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def k(self) -> int:
        return self.A.rows


@dataclass(frozen=True)
class BinomialPair:
    ell_plus: Vector
    ell_minus: Vector

    def __str__(self):
        def mono(e):
            parts = [f"x{j + 1}" + (f"^{p}" if p > 1 else "") for j, p in enumerate(e) if p]
            return "*".join(parts) or "1"

        return f"{mono(self.ell_plus)} - {mono(self.ell_minus)}"


class IrreducibilityStatus(enum.Enum):
    IRREDUCIBLE = "Irreducible"
    NOT_IRREDUCIBLE = "NotIrreducible"
    NOT_COMPUTED = "NotComputed"


@dataclass(frozen=True)
class LocalIrreducibility:
    status: IrreducibilityStatus
    # gcd of the exponents along each axis map; empty when not computed
    column_gcds: tuple[int, ...] = ()

    @property
    def offending(self) -> dict[int, int]:
        return {i: g for i, g in enumerate(self.column_gcds) if g != 1}


NOT_COMPUTED = LocalIrreducibility(IrreducibilityStatus.NOT_COMPUTED)


@dataclass(frozen=True)
class ToricProfile:
    presentation: LatticePresentation
    is_prime: bool
    contains_origin: bool
    positive_vector: Optional[Vector]
    dimension: int
    B: HilbertBasisMat
    E: IntMat
    normalization_is_affine_space: bool
    local_irreducibility: LocalIrreducibility = field(default=NOT_COMPUTED)

    @property
    def m(self) -> int:
        return self.B.m

    @property
    def ell(self) -> int:
        return self.E.cols


def binomials(P: LatticePresentation) -> list[BinomialPair]:
    """One binomial ``x^(l+) - x^(l-)`` per row ``l`` of ``A``."""
    return [
        BinomialPair(tuple(max(x, 0) for x in row), tuple(max(-x, 0) for x in row))
        for row in P.A.row_list()
    ]


def classify(P: LatticePresentation) -> ToricProfile:
    A = P.A
    hb = hilbert_basis(A)
    E = kernel_basis(hb.B)
    prime = is_torsion_free_quotient(A)
    positive = positive_kernel_vector(A)
    irreducibility = NOT_COMPUTED
    if prime and positive is not None and E.cols == 0:
        irreducibility = is_locally_irreducible(hb)
    return ToricProfile(
        presentation=P,
        is_prime=prime,
        contains_origin=positive is not None,
        positive_vector=positive,
        dimension=P.n - rank(A),
        B=hb,
        E=E,
        normalization_is_affine_space=E.cols == 0,
        local_irreducibility=irreducibility,
    )


def is_locally_irreducible(hb: HilbertBasisMat) -> LocalIrreducibility:
    """Gcd test on the axis maps ``s -> phi(0, .., s, .., 0)`` of ``phi(t) = t^B``.

    The nonzero components of the i-th axis map are ``s^b_ji`` over rows ``j``
    of ``B`` supported exactly at column ``i``.  It is injective iff the gcd of
    those exponents is 1, and the normalisation map is injective iff every
    axis map is.  Only meaningful when ker B is trivial.
    """
    B = hb.B
    gcds = []
    for i in range(B.cols):
        g = 0
        for row in B.row_list():
            if row[i] and not any(x for j, x in enumerate(row) if j != i):
                g = gcd(g, row[i])
        if g == 0:
            raise MissingDiagonalRow(f"no row of B is supported exactly at column {i}")
        gcds.append(g)
    status = (
        IrreducibilityStatus.IRREDUCIBLE
        if all(g == 1 for g in gcds)
        else IrreducibilityStatus.NOT_IRREDUCIBLE
    )
    return LocalIrreducibility(status, tuple(gcds))


def evaluate_monomial_map(hb: HilbertBasisMat, t: Sequence) -> tuple[Fraction, ...]:
    """``phi(t)_j = prod_i t_i ** b_ji`` exactly, with ``0 ** 0 == 1``."""
    B = hb.B
    if len(t) != B.cols:
        raise ValueError(f"point has {len(t)} coordinates, expected {B.cols}")
    t = [Fraction(x) for x in t]
    out = []
    for row in B.row_list():
        value = Fraction(1)
        for x, e in zip(t, row):
            value *= x ** e
        out.append(value)
    return tuple(out)


def presentation_from_monomials(exponents: Sequence[Sequence[int]]) -> LatticePresentation:
    """Lattice presentation of the closure of the image of ``t -> (t^e_1, .., t^e_n)``.

    ``exponents[j]`` is the exponent vector of coordinate ``j``; the rows of
    ``A`` are a Z-basis of the integer relations among them.
    """
    X = IntMat.from_rows(exponents)
    relations = kernel_basis(X.T)
    return LatticePresentation(IntMat.from_rows(relations.col_list(), cols=X.rows))
