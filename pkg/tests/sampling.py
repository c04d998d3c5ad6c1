"""Random extension problems whose divisor is principal by construction."""

from __future__ import annotations

import random

import oracles
from toricext.divisor import AbGroup, DivisorEnvironment, GroupHom, build_extension_problem
from toricext.intlin import IntMat


def sparse_fiber_point(rng: random.Random, m: int, max_degree: int = 3) -> list[int]:
    u = [0] * m
    for _ in range(rng.randint(1, max_degree)):
        u[rng.randrange(m)] += 1
    return u


def surjective_problem(rng: random.Random, profile):
    """H_X = H_S = Z (+ Z/2 or Z/3), rho = id, at most four primes.

    Free class parts are a random integer combination of relations among the
    columns of V, torsion parts a random relation mod t, so sum c_g v_g = 0.
    """
    p = rng.randint(1, 4)
    cols = [profile.B.B.apply(sparse_fiber_point(rng, profile.m)) for _ in range(p)]
    torsion = rng.choice([(), (2,), (3,)])
    H = AbGroup(1, torsion)
    free = [0] * p
    for rel in oracles.integer_kernel(cols):
        k = rng.randint(-2, 2)
        free = [f + k * x for f, x in zip(free, rel)]
    tpart = rng.choice(oracles.torsion_kernel(cols, torsion[0])) if torsion else ()
    classes = tuple((free[g],) + ((tpart[g],) if torsion else ()) for g in range(p))
    env = DivisorEnvironment(
        tuple(f"D{g}" for g in range(p)), classes, H, H,
        GroupHom(H, H, IntMat.identity(H.dim)), profile,
    )
    return build_extension_problem(env, IntMat.from_columns(cols, rows=profile.B.n))
