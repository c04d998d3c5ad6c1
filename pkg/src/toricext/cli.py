"""Command-line front end.

    toricext <command> --input PATH [--format json|text] [--budget N]

Exit status is 0 on success, 1 when the input violates a condition the
computation needs (not prime, 0 not on Y, ker B trivial, ...), and 2 when the
input cannot be read or parsed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Callable, Optional

from . import serialize as ser
from .cones import is_normal, saturate_semigroup
from .divisor import DEFAULT_BUDGET, decide_extension, generate_counterexample, verify_decision
from .errors import KerBTrivial, ToricError
from .hilbert import minimal_obstruction
from .intlin import smith_normal_form
from .toric import binomials, classify

COMMANDS = ("classify", "hilbert-basis", "saturate", "obstruction", "counterexample", "decide-extension")


def _checks_for_profile(profile) -> dict:
    A, B, E = profile.presentation.A, profile.B.B, profile.E
    checks = {
        "A*B = 0": (A @ B).is_zero() if B.cols else True,
        "B*E = 0": (B @ E).is_zero() if E.cols else True,
        "d = n - rank(A)": profile.dimension == A.cols - smith_normal_form(A).rank,
    }
    if profile.is_prime and profile.contains_origin:
        checks["d = m - ell"] = profile.dimension == profile.m - profile.ell
        checks["SNF(B) invariant factors all 1"] = all(
            d == 1 for d in smith_normal_form(B).invariant_factors
        )
    return checks


def cmd_classify(doc: Any, args) -> dict:
    profile = classify(ser.parse_presentation(doc))
    report = {"command": "classify"}
    report.update(ser.enc_profile(profile))
    report["binomials"] = [str(b) for b in binomials(profile.presentation)]
    report["checks"] = _checks_for_profile(profile)
    return report


def cmd_hilbert_basis(doc: Any, args) -> dict:
    profile = classify(ser.parse_presentation(doc))
    A, B = profile.presentation.A, profile.B.B
    return {
        "command": "hilbert-basis",
        "A": ser.enc_matrix(A),
        "m": profile.m,
        "B": ser.enc_matrix(B),
        "B_columns": [ser.enc_vector(c) for c in profile.B.columns],
        "positive_vector": None if profile.positive_vector is None else ser.enc_vector(profile.positive_vector),
        "checks": {"A*B = 0": (A @ B).is_zero() if B.cols else True},
    }


def cmd_saturate(doc: Any, args) -> dict:
    S = ser.parse_semigroup(doc)
    sat = saturate_semigroup(S)
    return {
        "command": "saturate",
        "generators": [ser.enc_vector(g) for g in S.generators],
        "saturation": [ser.enc_vector(g) for g in sat.generators],
        "is_normal": is_normal(S),
    }


def cmd_obstruction(doc: Any, args) -> dict:
    profile = classify(ser.parse_presentation(doc))
    witness = minimal_obstruction(profile.B)
    if witness is None:
        raise KerBTrivial("ker B trivial: no two representations of any monoid element")
    B = profile.B.B
    return {
        "command": "obstruction",
        "A": ser.enc_matrix(profile.presentation.A),
        "B": ser.enc_matrix(B),
        "witness": ser.enc_witness(witness),
        "checks": {
            "B*w = v": B.apply(witness.w) == witness.v,
            "B*z = v": B.apply(witness.z) == witness.v,
            "supp(w) and supp(z) disjoint": not any(a and b for a, b in zip(witness.w, witness.z)),
        },
    }


def cmd_counterexample(doc: Any, args) -> dict:
    profile = classify(ser.parse_presentation(doc))
    problem = generate_counterexample(profile)
    report = {"command": "counterexample"}
    report.update(ser.enc_problem(problem))
    report["witness"] = ser.enc_witness(minimal_obstruction(profile.B))
    return report


def cmd_decide_extension(doc: Any, args) -> dict:
    problem = ser.parse_problem(doc)
    decision = decide_extension(problem, budget=args.budget)
    report = {"command": "decide-extension"}
    report.update(ser.enc_decision(decision))
    B = problem.env.profile.B.B
    report["checks"] = {
        "B*U = V": None if decision.U is None else (B @ decision.U) == problem.V,
        "certificate verified": verify_decision(problem, decision),
        "exhaustive": decision.examined == decision.total,
    }
    return report


HANDLERS: dict[str, Callable[[Any, argparse.Namespace], dict]] = {
    "classify": cmd_classify,
    "hilbert-basis": cmd_hilbert_basis,
    "saturate": cmd_saturate,
    "obstruction": cmd_obstruction,
    "counterexample": cmd_counterexample,
    "decide-extension": cmd_decide_extension,
}


def render_text(value: dict, indent: int = 0, checks: bool = False) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, v in value.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(render_text(v, indent + 1, checks=key == "checks"))
        elif isinstance(v, list) and v and all(isinstance(r, list) for r in v):
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  [{' '.join(str(x) for x in r)}]" for r in v)
        elif isinstance(v, list):
            lines.append(f"{pad}{key}: [{' '.join(str(x) for x in v)}]")
        elif isinstance(v, bool):
            word = ("ok" if v else "FAILED") if checks else str(v).lower()
            lines.append(f"{pad}{key}: {word}")
        elif v is None:
            lines.append(f"{pad}{key}: {'n/a' if checks else 'none'}")
        else:
            lines.append(f"{pad}{key}: {v}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    return "\n".join(render_text(report)) + "\n"


def _budget(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("TORIC_BUDGET")
    if env:
        return ser.parse_int(env, "TORIC_BUDGET")
    return DEFAULT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricext", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", "-i", required=True, help="input JSON document, or - for stdin")
    parser.add_argument("--format", "-f", choices=("json", "text"), default="json")
    parser.add_argument("--budget", type=int, default=None,
                        help=f"cap on fiber selections searched (default {DEFAULT_BUDGET}, or $TORIC_BUDGET)")
    return parser


def run(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        args.budget = _budget(args.budget)
        if args.budget < 0:
            raise ser.InputError("budget must be nonnegative")
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError, ser.InputError) as exc:
        print(f"error: cannot read input: {exc}", file=stderr)
        return 2
    try:
        report = HANDLERS[args.command](doc, args)
    except ser.InputError as exc:
        print(f"error: invalid input: {exc}", file=stderr)
        return 2
    except ToricError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    stdout.write(render(report, args.format))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
