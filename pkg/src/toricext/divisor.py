"""Extension decisions for divisor-presented maps into a toric variety.

A map ``f: S -> Y`` is seen only through its divisor ``(f) = sum_g v_g Z_g``
over prime divisors ``Z_g`` of ``S`` with Chern classes in a finitely
generated abelian group ``H_S``.  ``f`` extends to ``X`` iff some choice of
``u_g`` in N^m with ``B u_g = v_g`` makes ``sum_g c1(Z_g) u_g`` the image
under restriction ``rho: H_X -> H_S`` of an element of ``ker B``, which is
``E`` applied to some ``eta`` in ``H_X^ell``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    ColumnNotInKernel,
    EmptyFiber,
    KerBTrivial,
    NoOrigin,
    NotPrime,
    NotPrincipal,
    SearchBudgetExceeded,
)
from .hilbert import fiber, minimal_obstruction
from .intlin import IntegerSystem, IntMat, Vector
from .toric import ToricProfile

__all__ = [
    "DEFAULT_BUDGET",
    "AbGroup",
    "GroupHom",
    "DivisorEnvironment",
    "ExtensionProblem",
    "Verdict",
    "ExtensionDecision",
    "build_extension_problem",
    "class_membership",
    "decide_extension",
    "verify_decision",
    "generate_counterexample",
]

DEFAULT_BUDGET = 10**6

Element = tuple[int, ...]


@dataclass(frozen=True)
class AbGroup:
    """``Z^free_rank ⊕ Z/t_1 ⊕ ...``; elements are coordinate tuples."""

    free_rank: int = 0
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(t < 2 for t in self.torsion_orders):
            raise ValueError("torsion orders must be at least 2")

    @property
    def dim(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    def reduce(self, x: Sequence[int]) -> Element:
        if len(x) != self.dim:
            raise ValueError(f"element has {len(x)} coordinates, group has {self.dim}")
        free = tuple(x[: self.free_rank])
        return free + tuple(a % t for a, t in zip(x[self.free_rank:], self.torsion_orders))

    def zero(self) -> Element:
        return (0,) * self.dim

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, k: int, x: Sequence[int]) -> Element:
        return self.reduce([k * a for a in x])


@dataclass(frozen=True)
class GroupHom:
    source: AbGroup
    target: AbGroup
    matrix: IntMat

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.target.dim, self.source.dim):
            raise ValueError(
                f"homomorphism matrix must be {self.target.dim}x{self.source.dim}, "
                f"got {self.matrix.rows}x{self.matrix.cols}"
            )
        for k, order in enumerate(self.source.torsion_orders):
            col = self.matrix.col(self.source.free_rank + k)
            if any(self.target.scale(order, col)):
                raise ValueError(f"matrix does not respect the relation of torsion generator {k}")

    def __call__(self, x: Sequence[int]) -> Element:
        return self.target.reduce(self.matrix.apply(tuple(x)))

    def is_surjective(self) -> bool:
        system = _ModularSystem(self.matrix, _moduli(self.target))
        return all(
            system.solve(tuple(int(i == j) for i in range(self.target.dim))) is not None
            for j in range(self.target.dim)
        )


@dataclass(frozen=True)
class DivisorEnvironment:
    primes: tuple[str, ...]
    classes: tuple[Element, ...]     # c1(Z_g), aligned with primes
    H_S: AbGroup
    H_X: AbGroup
    rho: GroupHom                    # restriction H_X -> H_S
    profile: ToricProfile

    def __post_init__(self):
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("prime divisor names must be distinct")
        if len(self.classes) != len(self.primes):
            raise ValueError("every prime divisor needs exactly one class")
        object.__setattr__(self, "classes", tuple(self.H_S.reduce(c) for c in self.classes))
        if self.rho.source != self.H_X or self.rho.target != self.H_S:
            raise ValueError("rho must map H_X to H_S")

    def class_of(self, prime: str) -> Element:
        return self.classes[self.primes.index(prime)]


@dataclass(frozen=True)
class ExtensionProblem:
    env: DivisorEnvironment
    V: IntMat   # n x |primes|; column g is the multiplicity vector of Z_g


class Verdict(enum.Enum):
    EXTENDABLE = "Extendable"
    NOT_EXTENDABLE = "NotExtendable"


@dataclass(frozen=True)
class ExtensionDecision:
    verdict: Verdict
    U: Optional[IntMat]                  # m x |primes| with B U = V
    eta: Optional[tuple[Element, ...]]   # ell elements of H_X
    examined: int                        # fiber selections tested
    total: int                           # product of the fiber sizes


class _ModularSystem:
    """Solve ``M x = c`` where row ``r`` only has to hold modulo ``moduli[r]``.

    A modulus of 0 means an exact integer equation; each nonzero modulus gets
    one slack unknown.
    """

    def __init__(self, M: IntMat, moduli: Sequence[int]):
        self.nvars = M.cols
        slack = []
        for r, q in enumerate(moduli):
            if q:
                slack.append(tuple(q if k == r else 0 for k in range(M.rows)))
        self.system = IntegerSystem(IntMat.from_columns(M.col_list() + slack, rows=M.rows))

    def solve(self, c: Sequence[int]) -> Optional[Vector]:
        x = self.system.solve(tuple(c))
        return None if x is None else x[: self.nvars]


def _moduli(H: AbGroup) -> list[int]:
    return [0] * H.free_rank + list(H.torsion_orders)


class _ClassSolver:
    """Finds ``eta`` in ``H_X^ell`` with ``rho(E eta) = c`` in ``H_S^m``."""

    def __init__(self, env: DivisorEnvironment):
        E = env.profile.E
        rho = env.rho.matrix
        self.H_X = env.H_X
        self.ell = E.cols
        dS, dX = env.H_S.dim, env.H_X.dim
        # unknown (lam, s) is column lam*dX + s; equation (i, t) is row i*dS + t
        rows = [
            [E[i, lam] * rho[t, s] for lam in range(self.ell) for s in range(dX)]
            for i in range(E.rows)
            for t in range(dS)
        ]
        self._system = _ModularSystem(
            IntMat.from_rows(rows, cols=self.ell * dX), _moduli(env.H_S) * E.rows
        )

    def solve(self, c: Sequence[Element]) -> Optional[tuple[Element, ...]]:
        x = self._system.solve([x for elem in c for x in elem])
        if x is None:
            return None
        dX = self.H_X.dim
        return tuple(self.H_X.reduce(x[lam * dX:(lam + 1) * dX]) for lam in range(self.ell))


def _E_eta(env: DivisorEnvironment, eta: Sequence[Element]) -> tuple[Element, ...]:
    """``rho(E eta)`` as an m-tuple of H_S elements."""
    E = env.profile.E
    out = []
    for i in range(E.rows):
        acc = env.H_X.zero()
        for lam in range(E.cols):
            acc = env.H_X.add(acc, env.H_X.scale(E[i, lam], eta[lam]))
        out.append(env.rho(acc))
    return tuple(out)


def _combined_class(env: DivisorEnvironment, selection: Sequence[Vector]) -> tuple[Element, ...]:
    """``sum_g c1(Z_g) u_g`` in ``H_S^m``."""
    H = env.H_S
    m = env.profile.m
    out = [H.zero() for _ in range(m)]
    for u, cls in zip(selection, env.classes):
        for i in range(m):
            if u[i]:
                out[i] = H.add(out[i], H.scale(u[i], cls))
    return tuple(out)


def class_membership(env: DivisorEnvironment, c: Sequence[Sequence[int]]) -> Optional[tuple[Element, ...]]:
    """An ``eta`` in ``H_X^ell`` with ``rho(E eta) = c``, or ``None``."""
    if len(c) != env.profile.m:
        raise ValueError(f"class vector must have {env.profile.m} components")
    c = tuple(env.H_S.reduce(x) for x in c)
    if env.profile.ell == 0:
        return () if all(not any(x) for x in c) else None
    return _ClassSolver(env).solve(c)


def build_extension_problem(env: DivisorEnvironment, V: IntMat) -> ExtensionProblem:
    """Validate a divisor ``(f) = sum_g V[:, g] Z_g`` against the environment.

    Each column must lie in ``ker A ∩ N^n`` and the vector divisor must be
    principal: ``sum_g c1(Z_g) v_g = 0`` in ``H_S^n``.
    """
    profile = env.profile
    A = profile.presentation.A
    if V.rows != A.cols or V.cols != len(env.primes):
        raise ValueError(f"V must be {A.cols}x{len(env.primes)}, got {V.rows}x{V.cols}")
    if any(x < 0 for x in V.entries):
        raise ValueError("V must be nonnegative")
    for g, v in zip(env.primes, V.col_list()):
        if any(A.apply(v)):
            raise ColumnNotInKernel(f"A v != 0 for prime {g}: v = {list(v)}")
        if not fiber(profile.B, v):
            raise EmptyFiber(f"v = {list(v)} for prime {g} is not in B(N^m)")
    H = env.H_S
    for j in range(V.rows):
        acc = H.zero()
        for cls, v in zip(env.classes, V.col_list()):
            acc = H.add(acc, H.scale(v[j], cls))
        if any(acc):
            raise NotPrincipal(f"component {j} of (f) has nonzero class {list(acc)}")
    return ExtensionProblem(env, V)


def verify_decision(problem: ExtensionProblem, decision: ExtensionDecision) -> bool:
    """Recheck a certificate: ``B U = V`` and ``sum c1(Z_g) U[:, g] = rho(E eta)``."""
    if decision.verdict is Verdict.NOT_EXTENDABLE:
        return decision.U is None and decision.examined == decision.total
    env = problem.env
    if decision.U is None or env.profile.B.B @ decision.U != problem.V:
        return False
    if any(x < 0 for x in decision.U.entries):
        return False
    if env.profile.ell == 0:
        return True
    return _combined_class(env, decision.U.col_list()) == _E_eta(env, decision.eta)


def decide_extension(problem: ExtensionProblem, budget: int = DEFAULT_BUDGET) -> ExtensionDecision:
    """Search fiber selections in lexicographic order for a class certificate.

    Raises :class:`SearchBudgetExceeded` once more than ``budget`` selections
    would be needed.
    """
    env = problem.env
    profile = env.profile
    if not profile.is_prime:
        raise NotPrime("the lattice ideal is not prime (Z^n / lattice has torsion)")
    if not profile.contains_origin:
        raise NoOrigin("ker A has no strictly positive vector, so 0 is not on Y")
    fibers = []
    for g, v in zip(env.primes, problem.V.col_list()):
        F = fiber(profile.B, v)
        if not F:
            raise EmptyFiber(f"v = {list(v)} for prime {g} is not in B(N^m)")
        fibers.append(F)
    total = 1
    for F in fibers:
        total *= len(F)
    m = profile.m

    def as_matrix(selection):
        return IntMat.from_columns(selection, rows=m)

    if profile.normalization_is_affine_space:
        decision = ExtensionDecision(
            Verdict.EXTENDABLE, as_matrix([F[0] for F in fibers]), (), 0, total
        )
    else:
        solver = _ClassSolver(env)
        decision = None
        examined = 0
        for selection in itertools.product(*fibers):
            if examined >= budget:
                raise SearchBudgetExceeded(
                    f"more than {budget} fiber selections needed (total {total})"
                )
            examined += 1
            eta = solver.solve(_combined_class(env, selection))
            if eta is not None:
                decision = ExtensionDecision(Verdict.EXTENDABLE, as_matrix(selection), eta, examined, total)
                break
        if decision is None:
            decision = ExtensionDecision(Verdict.NOT_EXTENDABLE, None, None, examined, total)
    if not verify_decision(problem, decision):
        raise RuntimeError("certificate failed verification")
    return decision


def annulus_environment(profile: ToricProfile, primes: Sequence[str] = ("Z1", "Z2", "W1", "W2")) -> DivisorEnvironment:
    """Four disjoint curves in a product of annuli with classes -1, -1, +1, +1.

    ``H_S = Z``; ``X = C^4`` so ``H_X = 0`` and restriction is the zero map.
    """
    H_S, H_X = AbGroup(1), AbGroup(0)
    return DivisorEnvironment(
        primes=tuple(primes),
        classes=((-1,), (-1,), (1,), (1,)),
        H_S=H_S,
        H_X=H_X,
        rho=GroupHom(H_X, H_S, IntMat.zeros(1, 0)),
        profile=profile,
    )


def generate_counterexample(profile: ToricProfile, swap: bool = False) -> ExtensionProblem:
    """A non-extendable map from a product of two annuli, as a divisor.

    With minimal obstruction ``v = B w = B z`` split as ``w = w1 + w2`` and
    ``z = z1 + z2``, the divisor is ``B w1 Z1 + B w2 Z2 + B z1 W1 + B z2 W2``;
    ``swap`` puts the ``z`` parts on the ``Z`` curves instead.
    """
    if not profile.is_prime:
        raise NotPrime("the lattice ideal is not prime (Z^n / lattice has torsion)")
    if not profile.contains_origin:
        raise NoOrigin("ker A has no strictly positive vector, so 0 is not on Y")
    witness = minimal_obstruction(profile.B)
    if witness is None:
        raise KerBTrivial("ker B trivial: the normalisation is affine space, every such map extends")
    B = profile.B.B
    parts = [witness.w1, witness.w2, witness.z1, witness.z2]
    if swap:
        parts = parts[2:] + parts[:2]
    V = IntMat.from_columns([B.apply(p) for p in parts], rows=B.rows)
    return build_extension_problem(annulus_environment(profile), V)
