"""JSON documents for presentations, profiles, witnesses and extension problems.

Integers are written as decimal strings so that no reader truncates them;
both strings and JSON integers are accepted on input.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence

from .cones import SemigroupPresentation
from .divisor import (
    AbGroup,
    DivisorEnvironment,
    ExtensionDecision,
    ExtensionProblem,
    GroupHom,
    build_extension_problem,
)
from .hilbert import ObstructionWitness
from .intlin import IntMat
from .toric import LatticePresentation, ToricProfile, classify


class InputError(ValueError):
    """The document does not have the required shape."""


def parse_int(x: Any, what: str = "value") -> int:
    if isinstance(x, bool):
        raise InputError(f"{what}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip(), 10)
        except ValueError:
            pass
    raise InputError(f"{what}: expected an integer or decimal string, got {x!r}")


def parse_vector(obj: Any, what: str, length: Optional[int] = None) -> tuple[int, ...]:
    if not isinstance(obj, list):
        raise InputError(f"{what}: expected a list")
    v = tuple(parse_int(x, what) for x in obj)
    if length is not None and len(v) != length:
        raise InputError(f"{what}: expected {length} entries, got {len(v)}")
    return v


def parse_matrix(obj: Any, what: str, rows: Optional[int] = None, cols: Optional[int] = None) -> IntMat:
    if not isinstance(obj, list):
        raise InputError(f"{what}: expected a list of rows")
    data = [parse_vector(r, f"{what} row {i}") for i, r in enumerate(obj)]
    if rows is not None and len(data) != rows:
        raise InputError(f"{what}: expected {rows} rows, got {len(data)}")
    if cols is None:
        if not data:
            raise InputError(f"{what}: cannot infer the column count of an empty matrix")
        cols = len(data[0])
    if any(len(r) != cols for r in data):
        raise InputError(f"{what}: every row must have {cols} entries")
    return IntMat.from_rows(data, cols=cols)


def enc_vector(v: Sequence[int]) -> list[str]:
    return [str(x) for x in v]


def enc_matrix(M: IntMat) -> list[list[str]]:
    return [enc_vector(r) for r in M.row_list()]


def _require(doc: Any, key: str) -> Any:
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    return doc[key]


def parse_presentation(doc: Any) -> LatticePresentation:
    A = parse_matrix(_require(doc, "A"), "A")
    try:
        return LatticePresentation(A)
    except ValueError as exc:
        raise InputError(f"A: {exc}") from None


def parse_semigroup(doc: Any) -> SemigroupPresentation:
    gens = _require(doc, "generators")
    M = parse_matrix(gens, "generators")
    if M.rows == 0:
        raise InputError("generators: at least one generator is required")
    return SemigroupPresentation(M.cols, tuple(M.row_list()))


def parse_group(obj: Any, what: str) -> AbGroup:
    if not isinstance(obj, dict):
        raise InputError(f"{what}: expected an object with free_rank and torsion_orders")
    free = parse_int(obj.get("free_rank", 0), f"{what}.free_rank")
    torsion = parse_vector(obj.get("torsion_orders", []), f"{what}.torsion_orders")
    try:
        return AbGroup(free, torsion)
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None


def enc_group(H: AbGroup) -> dict:
    return {"free_rank": H.free_rank, "torsion_orders": enc_vector(H.torsion_orders)}


def parse_problem(doc: Any, profile: Optional[ToricProfile] = None) -> ExtensionProblem:
    """Build and validate an :class:`ExtensionProblem` from its document.

    Domain violations (a column outside ker A, a non-principal divisor)
    propagate as :class:`~toricext.errors.ToricError`.
    """
    P = parse_presentation(doc)
    if profile is None or profile.presentation != P:
        profile = classify(P)
    primes = _require(doc, "primes")
    if not isinstance(primes, list) or not all(isinstance(p, str) for p in primes):
        raise InputError("primes: expected a list of names")
    H_S = parse_group(_require(doc, "H_S"), "H_S")
    H_X = parse_group(_require(doc, "H_X"), "H_X")
    raw_classes = _require(doc, "classes")
    if isinstance(raw_classes, dict):
        missing = [p for p in primes if p not in raw_classes]
        if missing:
            raise InputError(f"classes: no class for {missing}")
        raw_classes = [raw_classes[p] for p in primes]
    if not isinstance(raw_classes, list) or len(raw_classes) != len(primes):
        raise InputError("classes: expected one class per prime")
    classes = tuple(parse_vector(c, f"classes[{i}]", H_S.dim) for i, c in enumerate(raw_classes))
    rho_m = parse_matrix(_require(doc, "rho"), "rho", rows=H_S.dim, cols=H_X.dim)
    V = parse_matrix(_require(doc, "V"), "V", rows=P.n, cols=len(primes))
    try:
        rho = GroupHom(H_X, H_S, rho_m)
        env = DivisorEnvironment(tuple(primes), classes, H_S, H_X, rho, profile)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return build_extension_problem(env, V)


def enc_problem(problem: ExtensionProblem) -> dict:
    env = problem.env
    return {
        "A": enc_matrix(env.profile.presentation.A),
        "primes": list(env.primes),
        "classes": [enc_vector(c) for c in env.classes],
        "H_S": enc_group(env.H_S),
        "H_X": enc_group(env.H_X),
        "rho": enc_matrix(env.rho.matrix),
        "V": enc_matrix(problem.V),
    }


def enc_profile(profile: ToricProfile) -> dict:
    li = profile.local_irreducibility
    return {
        "A": enc_matrix(profile.presentation.A),
        "is_prime": profile.is_prime,
        "contains_origin": profile.contains_origin,
        "positive_vector": None if profile.positive_vector is None else enc_vector(profile.positive_vector),
        "dimension": profile.dimension,
        "m": profile.m,
        "B": enc_matrix(profile.B.B),
        "B_columns": [enc_vector(c) for c in profile.B.columns],
        "ell": profile.ell,
        "E": enc_matrix(profile.E),
        "E_columns": [enc_vector(c) for c in profile.E.col_list()],
        "normalization_is_affine_space": profile.normalization_is_affine_space,
        "local_irreducibility": {
            "status": li.status.value,
            "column_gcds": enc_vector(li.column_gcds),
        },
    }


def enc_witness(w: ObstructionWitness) -> dict:
    return {k: enc_vector(getattr(w, k)) for k in ("v", "w", "z", "w1", "w2", "z1", "z2")}


def enc_decision(decision: ExtensionDecision) -> dict:
    return {
        "verdict": decision.verdict.value,
        "examined": decision.examined,
        "total_selections": decision.total,
        "U": None if decision.U is None else enc_matrix(decision.U),
        "eta": None if decision.eta is None else [enc_vector(e) for e in decision.eta],
    }
