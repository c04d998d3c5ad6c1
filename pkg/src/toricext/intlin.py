"""Exact integer linear algebra on Python ints.

Matrices are immutable :class:`IntMat` values.  Everything here is exact;
there is no floating point anywhere, and entries may grow without bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMat:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> IntMat:
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int) -> IntMat:
        columns = [tuple(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise ValueError("column length does not match row count")
        return cls.from_rows(
            [tuple(c[i] for c in columns) for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def identity(cls, n: int) -> IntMat:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMat:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def row_list(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def col_list(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> IntMat:
        return IntMat.from_rows(self.col_list(), cols=self.rows)

    def __matmul__(self, other: IntMat) -> IntMat:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.col_list()
        return IntMat.from_rows(
            [[dot(r, c) for c in cols] for r in self.row_list()], cols=other.cols
        )

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(dot(r, v) for r in self.row_list())

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"IntMat({self.tolist()!r})"


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> Vector:
    """Divide ``v`` by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)


def sign_normalized(v: Sequence[int]) -> Vector:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def norm_lex_key(v: Sequence[int]) -> tuple:
    return (sum(abs(x) for x in v), tuple(v))


@dataclass(frozen=True)
class SNFDecomp:
    U: IntMat
    V: IntMat
    D: IntMat
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M: IntMat) -> SNFDecomp:
    """Return unimodular ``U``, ``V`` and diagonal ``D`` with ``U @ M @ V == D``.

    Pivots on the nonzero entry of least absolute value in the trailing
    submatrix; the diagonal is made positive and satisfies d1 | d2 | ... .
    """
    m, n = M.rows, M.cols
    D = M.tolist()
    U = IntMat.identity(m).tolist()
    V = IntMat.identity(n).tolist()

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in D:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):
        # row dst += q * row src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x and (best is None or abs(x) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            # a nonzero remainder is smaller than the pivot: move it in and repeat
            rest = [(abs(D[i][t]), i, None) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), None, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda e: e[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    factors = tuple(D[i][i] for i in range(min(m, n)) if D[i][i])
    return SNFDecomp(
        U=IntMat.from_rows(U, cols=m),
        V=IntMat.from_rows(V, cols=n),
        D=IntMat.from_rows(D, cols=n),
        invariant_factors=factors,
    )


def rank(M: IntMat) -> int:
    """Rank over the rationals (fraction-free elimination)."""
    A = M.tolist()
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, M.rows):
            if A[i][c]:
                a, b = A[r][c], A[i][c]
                A[i] = [a * x - b * y for x, y in zip(A[i], A[r])]
                g = 0
                for x in A[i]:
                    g = gcd(g, x)
                if g > 1:
                    A[i] = [x // g for x in A[i]]
        r += 1
    return r


def determinant(M: IntMat) -> int:
    """Bareiss fraction-free determinant."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    A = M.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def hermite_rows(vectors: Iterable[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``, and zero
    rows are dropped, so the result depends only on the lattice.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    pivots: list[int] = []
    for c in range(ncols):
        active = [r for r in rows if r[c]]
        rows = [r for r in rows if not r[c]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            head = active[0]
            nxt = [head]
            for r in active[1:]:
                q = r[c] // head[c]
                r = [a - q * b for a, b in zip(r, head)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rows.append(r)
            active = nxt
        if not active:
            continue
        head = active[0]
        if head[c] < 0:
            head = [-x for x in head]
        for k, prev in enumerate(out):
            q = prev[c] // head[c]
            if q:
                out[k] = [a - q * b for a, b in zip(prev, head)]
        out.append(head)
        pivots.append(c)
    return [tuple(r) for r in out]


def kernel_basis(M: IntMat) -> IntMat:
    """Z-basis of ``{x : M x = 0}`` as the columns of a ``cols x l`` matrix.

    Columns are sign-normalized (first nonzero entry positive) and sorted by
    1-norm, then lexicographically.
    """
    snf = smith_normal_form(M)
    raw = [snf.V.col(j) for j in range(snf.rank, M.cols)]
    basis = [sign_normalized(v) for v in hermite_rows(raw)]
    basis.sort(key=norm_lex_key)
    return IntMat.from_columns(basis, rows=M.cols)


def is_torsion_free_quotient(A: IntMat) -> bool:
    """True iff Z^n modulo the row lattice of ``A`` is free."""
    return all(d == 1 for d in smith_normal_form(A).invariant_factors)


class IntegerSystem:
    """``M x = t`` over the integers, with the Smith form of ``M`` computed once."""

    def __init__(self, M: IntMat):
        self.M = M
        self.snf = smith_normal_form(M)

    def solve(self, t: Sequence[int]) -> Optional[Vector]:
        if len(t) != self.M.rows:
            raise ValueError("right-hand side length does not match row count")
        snf = self.snf
        ut = snf.U.apply(t)
        y = [0] * self.M.cols
        for i, d in enumerate(snf.invariant_factors):
            q, r = divmod(ut[i], d)
            if r:
                return None
            y[i] = q
        if any(ut[snf.rank:]):
            return None
        return snf.V.apply(y)


def solve_integer(M: IntMat, T: IntMat) -> Optional[IntMat]:
    """An integer ``X`` with ``M @ X == T``, or ``None`` if none exists."""
    if M.rows != T.rows:
        raise ValueError("M and T must have the same number of rows")
    system = IntegerSystem(M)
    cols = []
    for t in T.col_list():
        x = system.solve(t)
        if x is None:
            return None
        cols.append(x)
    return IntMat.from_columns(cols, rows=M.cols)


def right_inverse(C: IntMat) -> Optional[IntMat]:
    """An integer ``Q`` with ``C @ Q == I``, or ``None``.

    Exists iff ``C`` has full row rank and every invariant factor is 1.
    """
    snf = smith_normal_form(C)
    p = C.rows
    if snf.rank < p or any(d != 1 for d in snf.invariant_factors):
        return None
    # C = U^-1 [I 0] V^-1, so Q = V[:, :p] U
    Vp = IntMat.from_columns([snf.V.col(j) for j in range(p)], rows=C.cols)
    return Vp @ snf.U


def unimodular_inverse(M: IntMat) -> IntMat:
    X = solve_integer(M, IntMat.identity(M.rows))
    if X is None or M.rows != M.cols:
        raise ValueError("matrix is not unimodular")
    return X
