"""Rational polyhedral cones and saturation of affine semigroups.

A :class:`RationalCone` keeps both descriptions: generators (extreme rays
plus a ± basis of the lineality space) and inequalities ``<h, x> >= 0``.
Conversion runs the double description method on the pointed part.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import NotPointed
from .intlin import (
    IntMat,
    Vector,
    dot,
    kernel_basis,
    norm_lex_key,
    primitive,
    rank,
    smith_normal_form,
    unimodular_inverse,
)

__all__ = [
    "RationalCone",
    "SemigroupPresentation",
    "cone_from_generators",
    "cone_from_inequalities",
    "dual_cone",
    "saturate_semigroup",
    "is_normal",
    "semigroup_contains",
]


@dataclass(frozen=True)
class RationalCone:
    ambient_dim: int
    generators: tuple[Vector, ...]
    inequalities: tuple[Vector, ...]

    def contains(self, x: Sequence[int]) -> bool:
        return all(dot(h, x) >= 0 for h in self.inequalities)

    def same_set(self, other: RationalCone) -> bool:
        return (
            self.ambient_dim == other.ambient_dim
            and all(other.contains(g) for g in self.generators)
            and all(self.contains(g) for g in other.generators)
        )

    @property
    def is_pointed(self) -> bool:
        return rank(IntMat.from_rows(self.inequalities, cols=self.ambient_dim)) == self.ambient_dim


@dataclass(frozen=True)
class SemigroupPresentation:
    ambient_dim: int
    generators: tuple[Vector, ...]

    def __post_init__(self):
        if any(len(g) != self.ambient_dim for g in self.generators):
            raise ValueError("generator length does not match ambient dimension")


def _independent_rows(rows: list[Vector], d: int) -> list[Vector]:
    chosen: list[Vector] = []
    for r in rows:
        if rank(IntMat.from_rows(chosen + [r], cols=d)) > len(chosen):
            chosen.append(r)
            if len(chosen) == d:
                break
    return chosen


def _inverse_columns(rows: list[Vector]) -> list[Vector]:
    """Primitive integer multiples of the columns of the inverse of a square matrix."""
    d = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(d)] for i, r in enumerate(rows)]
    for c in range(d):
        piv = next(i for i in range(c, d) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(d):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    cols = []
    for j in range(d):
        col = [aug[i][d + j] for i in range(d)]
        den = lcm(*(x.denominator for x in col))
        cols.append(primitive([int(x * den) for x in col]))
    return cols


def _extreme_rays(H: Sequence[Vector], d: int) -> tuple[list[Vector], list[Vector]]:
    """Extreme rays and lineality basis of ``{x in Q^d : H x >= 0}``.

    Rays are taken orthogonal to the lineality space, which makes the
    remaining cone pointed; double description then adds one halfspace at a
    time, combining pairs of rays that are adjacent (their common tight
    constraints have rank d - 2).
    """
    H = [tuple(h) for h in H]
    lineality = kernel_basis(IntMat.from_rows(H, cols=d)).col_list()
    rows = H + lineality + [tuple(-x for x in l) for l in lineality]
    if d == 0:
        return [], lineality
    start = _independent_rows(rows, d)
    rays = _inverse_columns(start)
    processed = list(start)
    for a in rows:
        if a in start:
            continue
        vals = [dot(a, r) for r in rays]
        keep = [r for r, s in zip(rays, vals) if s >= 0]
        pos = [(r, s) for r, s in zip(rays, vals) if s > 0]
        neg = [(r, s) for r, s in zip(rays, vals) if s < 0]
        for (p, sp), (q, sq) in itertools.product(pos, neg):
            tight = [h for h in processed if dot(h, p) == 0 and dot(h, q) == 0]
            if rank(IntMat.from_rows(tight, cols=d)) == d - 2:
                keep.append(primitive([sp * y - sq * x for x, y in zip(p, q)]))
        rays = list(dict.fromkeys(keep))
        processed.append(a)
    rays.sort(key=norm_lex_key)
    return rays, lineality


def _expand(rays: list[Vector], lineality: list[Vector]) -> tuple[Vector, ...]:
    return tuple(rays) + tuple(lineality) + tuple(tuple(-x for x in l) for l in lineality)


def cone_from_inequalities(H: Sequence[Sequence[int]], ambient_dim: int) -> RationalCone:
    gens = _expand(*_extreme_rays([tuple(h) for h in H], ambient_dim))
    ineqs = _expand(*_extreme_rays(gens, ambient_dim))
    return RationalCone(ambient_dim, gens, ineqs)


def cone_from_generators(G: Sequence[Sequence[int]], ambient_dim: int) -> RationalCone:
    ineqs = _expand(*_extreme_rays([tuple(g) for g in G], ambient_dim))
    gens = _expand(*_extreme_rays(ineqs, ambient_dim))
    return RationalCone(ambient_dim, gens, ineqs)


def dual_cone(cone: RationalCone) -> RationalCone:
    """``{v : <g, v> >= 0 for every generator g}``."""
    return cone_from_inequalities(cone.generators, cone.ambient_dim)


@dataclass(frozen=True)
class _Saturation:
    """Coordinates on the lattice G spanned by the generators, and the cone there."""

    basis: list[Vector]          # Z-basis of G in the ambient lattice
    to_coords: IntMat            # x -> x @ V, then divide by invariant factors
    factors: tuple[int, ...]
    gens: list[Vector]           # generators in G-coordinates (nonzero)
    cone: RationalCone           # their cone in Q^s, pointed
    hilbert: list[Vector]        # Hilbert basis of cone ∩ Z^s

    def coords(self, x: Sequence[int]) -> Vector:
        return _coords(self.to_coords, self.factors, x)

    def lift(self, c: Sequence[int]) -> Vector:
        dim = len(self.basis[0]) if self.basis else 0
        out = [0] * dim
        for ci, b in zip(c, self.basis):
            out = [o + ci * x for o, x in zip(out, b)]
        return tuple(out)


def _saturation(S: SemigroupPresentation) -> _Saturation:
    a = S.ambient_dim
    raw = [g for g in S.generators if any(g)]
    if not raw:
        return _Saturation([], IntMat.zeros(a, 0), (), [], RationalCone(0, (), ()), [])
    snf = smith_normal_form(IntMat.from_rows(raw, cols=a))
    s = snf.rank
    Vinv = unimodular_inverse(snf.V)
    basis = [tuple(d * x for x in Vinv.row(i)) for i, d in enumerate(snf.invariant_factors)]
    gens = [_coords(snf.V, snf.invariant_factors, g) for g in raw]
    cone = cone_from_generators(gens, s)
    if not cone.is_pointed:
        raise NotPointed("the cone spanned by the generators contains a line")
    return _Saturation(basis, snf.V, snf.invariant_factors, gens, cone,
                       _pointed_hilbert_basis(cone))


def _coords(V: IntMat, factors: tuple[int, ...], x: Sequence[int]) -> Vector:
    # floor division is only meaningful for x in G; callers check with lift()
    y = IntMat.from_rows([x], cols=V.rows) @ V
    return tuple(y[0, i] // d for i, d in enumerate(factors))


def _pointed_hilbert_basis(cone: RationalCone) -> list[Vector]:
    """Hilbert basis of ``cone ∩ Z^s`` for a pointed, full-dimensional cone.

    Every irreducible element is a ray generator or a combination of at most
    ``s`` rays with coefficients in [0, 1), so it lies in the box spanned by
    the ``s`` most negative and ``s`` most positive ray coordinates.
    """
    s = cone.ambient_dim
    rays = list(cone.generators)
    ranges = []
    for k in range(s):
        coords = sorted(r[k] for r in rays)
        lo = sum(x for x in coords[:s] if x < 0)
        hi = sum(x for x in coords[::-1][:s] if x > 0)
        ranges.append(range(lo, hi + 1))
    points = [x for x in itertools.product(*ranges) if any(x) and cone.contains(x)]
    irreducible = []
    for x in points:
        if not any(y != x and cone.contains(tuple(a - b for a, b in zip(x, y))) for y in points):
            irreducible.append(x)
    return irreducible


def _canonical(vectors) -> tuple[Vector, ...]:
    return tuple(sorted(set(vectors), key=norm_lex_key))


def saturate_semigroup(S: SemigroupPresentation) -> SemigroupPresentation:
    """Hilbert basis of ``tau ∩ G``: tau the cone of the generators, G their lattice.

    Raises :class:`NotPointed` when tau contains a line.
    """
    sat = _saturation(S)
    return SemigroupPresentation(S.ambient_dim, _canonical(sat.lift(c) for c in sat.hilbert))


def semigroup_contains(S: SemigroupPresentation, x: Sequence[int]) -> bool:
    """Membership of ``x`` in the N-span of the generators (pointed cones only)."""
    sat = _saturation(S)
    return _member(sat, tuple(x))


def _member(sat: _Saturation, x: Vector) -> bool:
    if not any(x):
        return True
    if not sat.gens:
        return False
    target = sat.coords(x)
    if sat.lift(target) != x:
        return False
    if not sat.cone.contains(target):
        return False
    # strictly positive on the pointed cone minus the origin, so it bounds every multiplier
    psi = [sum(col) for col in zip(*sat.cone.inequalities)]
    gens = sorted(set(sat.gens), key=lambda g: -dot(psi, g))
    weights = [dot(psi, g) for g in gens]

    def rec(i: int, residual: Vector) -> bool:
        if not any(residual):
            return True
        if i == len(gens):
            return False
        budget = dot(psi, residual)
        if budget < 0:
            return False
        for k in range(budget // weights[i], -1, -1):
            rest = tuple(r - k * g for r, g in zip(residual, gens[i]))
            if rec(i + 1, rest):
                return True
        return False

    return rec(0, target)


def is_normal(S: SemigroupPresentation) -> bool:
    """True iff the semigroup equals its saturation."""
    sat = _saturation(S)
    return all(_member(sat, sat.lift(h)) for h in sat.hilbert)
