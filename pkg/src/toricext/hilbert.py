"""Monoid computations on K = ker A ∩ N^n.

The Hilbert basis is found by the Contejean–Devie completion procedure,
fibers ``{w in N^m : B w = v}`` by bounded enumeration, and the minimal
obstruction vector by a box search seeded from a kernel vector of ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Optional, Sequence

from .errors import UnboundedFiber
from .intlin import IntMat, Vector, kernel_basis, rank

__all__ = [
    "HilbertBasisMat",
    "ObstructionWitness",
    "graded_lex_key",
    "positive_kernel_vector",
    "hilbert_basis",
    "fiber",
    "minimal_obstruction",
]


def graded_lex_key(v: Sequence[int]) -> tuple:
    """Total degree first; within a degree the lex-greater vector comes first."""
    return (sum(v), tuple(-x for x in v))


def _leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class HilbertBasisMat:
    """Columns of ``B`` are the Hilbert basis of ker(source) ∩ N^n."""

    B: IntMat
    source: IntMat

    @property
    def n(self) -> int:
        return self.B.rows

    @property
    def m(self) -> int:
        return self.B.cols

    @property
    def columns(self) -> list[Vector]:
        return self.B.col_list()

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], source: IntMat) -> HilbertBasisMat:
        return cls(IntMat.from_columns(columns, rows=source.cols), source)


@dataclass(frozen=True)
class ObstructionWitness:
    v: Vector
    w: Vector
    z: Vector
    w1: Vector
    w2: Vector
    z1: Vector
    z2: Vector


def hilbert_basis(A: IntMat) -> HilbertBasisMat:
    """Hilbert basis of ``ker A ∩ N^n`` (empty when that monoid is trivial).

    Columns on extreme rays of the cone come first, then the rest; each group
    is in graded-lex order.

    Contejean–Devie: grow candidate vectors one unit at a time, only in
    directions ``e_j`` with ``<A p, A e_j> < 0`` (moving ``A p`` back toward
    the origin), and drop every candidate dominating a solution already found.
    """
    n = A.cols
    images = [A.col(j) for j in range(n)]
    minimal: list[Vector] = []
    frontier = {tuple(int(i == j) for i in range(n)) for j in range(n)}
    while frontier:
        level = sorted(frontier, key=graded_lex_key)
        open_ = []
        for p in level:
            Ap = A.apply(p)
            if any(Ap):
                open_.append((p, Ap))
            elif not any(_leq(s, p) for s in minimal):
                minimal.append(p)
        frontier = set()
        for p, Ap in open_:
            for j in range(n):
                if sum(x * y for x, y in zip(Ap, images[j])) < 0:
                    q = p[:j] + (p[j] + 1,) + p[j + 1:]
                    if not any(_leq(s, q) for s in minimal):
                        frontier.add(q)
    minimal.sort(key=lambda h: (not _is_extreme(A, h), graded_lex_key(h)))
    return HilbertBasisMat.from_columns(minimal, A)


def _is_extreme(A: IntMat, h: Vector) -> bool:
    # h spans an extreme ray of ker A ∩ Q+^n iff ker A has dimension 1 on supp(h)
    supp = [j for j, x in enumerate(h) if x]
    sub = IntMat.from_columns([A.col(j) for j in supp], rows=A.rows)
    return rank(sub) == len(supp) - 1


def positive_kernel_vector(A: IntMat) -> Optional[Vector]:
    """A strictly positive integer vector in ``ker A``, or ``None``.

    Such a vector exists iff every coordinate is positive in some Hilbert
    basis element; the primitive part of their sum is returned.
    """
    total = [0] * A.cols
    for c in hilbert_basis(A).columns:
        total = [a + b for a, b in zip(total, c)]
    if not all(total):
        return None
    g = 0
    for x in total:
        g = gcd(g, x)
    return tuple(x // g for x in total)


def _bounded_points(columns: list[Vector], bound: Vector, exact: bool) -> Iterator[Vector]:
    """All ``w`` in N^m with ``sum w_i col_i`` equal to (or, if not exact, <=) ``bound``.

    ``B >= 0`` gives ``w_i <= bound_j // b_ji`` for each row ``j`` with
    ``b_ji > 0``; a zero column has no bound.
    """
    m = len(columns)
    for i, c in enumerate(columns):
        if not any(c):
            raise UnboundedFiber(f"column {i} of B is zero; coordinate {i} of the fiber is unbounded")
    n = len(bound)
    # rows that can still absorb residual once columns < i are fixed
    covered = [set() for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        covered[i] = covered[i + 1] | {j for j in range(n) if columns[i][j]}

    w = [0] * m

    def rec(i: int, residual: list[int]):
        if exact and any(residual[j] for j in range(n) if j not in covered[i]):
            return
        if i == m:
            yield tuple(w)
            return
        c = columns[i]
        top = min(residual[j] // c[j] for j in range(n) if c[j])
        for k in range(top + 1):
            w[i] = k
            yield from rec(i + 1, [r - k * x for r, x in zip(residual, c)])
        w[i] = 0

    yield from rec(0, list(bound))


def fiber(hb: HilbertBasisMat, v: Sequence[int]) -> list[Vector]:
    """Every ``w`` in N^m with ``B w = v``, in graded-lex order."""
    v = tuple(v)
    if len(v) != hb.n:
        raise ValueError(f"vector has length {len(v)}, expected {hb.n}")
    if any(x < 0 for x in v):
        raise ValueError("fiber target must be nonnegative")
    return sorted(_bounded_points(hb.columns, v, exact=True), key=graded_lex_key)


def _support_min(w: Vector) -> int:
    return next(i for i, x in enumerate(w) if x)


def _split(w: Vector) -> tuple[Vector, Vector]:
    i = _support_min(w)
    unit = tuple(int(k == i) for k in range(len(w)))
    return unit, tuple(a - b for a, b in zip(w, unit))


def minimal_obstruction(hb: HilbertBasisMat) -> Optional[ObstructionWitness]:
    """A ≤-minimal ``v`` in K∖{0} with two representations, or ``None`` if ker B = 0.

    The search box is ``[0, B u+]`` for the first kernel basis vector ``u``;
    ties among minimal vectors go to the graded-lex least.  Of the two
    representations, ``w`` is the one whose support starts at the lower index.
    """
    E = kernel_basis(hb.B)
    if E.cols == 0:
        return None
    u = E.col(0)
    v0 = hb.B.apply(tuple(max(x, 0) for x in u))

    reps: dict[Vector, list[Vector]] = {}
    for w in _bounded_points(hb.columns, v0, exact=False):
        if any(w):
            reps.setdefault(hb.B.apply(w), []).append(w)
    multi = [v for v, ws in reps.items() if len(ws) >= 2]
    minimal = [v for v in multi if not any(x != v and _leq(x, v) for x in multi)]
    v = min(minimal, key=graded_lex_key)

    first, second = sorted(reps[v], key=graded_lex_key)[:2]
    w, z = sorted((first, second), key=_support_min)
    w1, w2 = _split(w)
    z1, z2 = _split(z)
    return ObstructionWitness(v=v, w=w, z=z, w1=w1, w2=w2, z1=z1, z2=z2)
