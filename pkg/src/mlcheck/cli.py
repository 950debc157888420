"""Command-line driver.

Exit codes: 0 the proof (or theory) is accepted, 1 it is rejected (a
diagnostic is printed, as JSON with --json), 2 the input was malformed or
unreadable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .format import (
    FormatError,
    parse_proof,
    parse_term,
    parse_theory,
    print_term,
)
from .kernel import Ctxt
from .proofterm import ReplayFailure, replay_thm
from .reduction import DEFAULT_BUDGET, beta_eta_norm

BUDGET_ENV = "MLCHECK_BUDGET"


@dataclass
class Diagnostic:
    """Why an input was rejected: the constructor path from the root of the
    proof to the failure, an error code, and a human-readable message."""
    path: tuple
    kind: str
    message: str


def _emit(diag: Diagnostic, as_json: bool, verdict: str = "rejected") -> None:
    if as_json:
        print(json.dumps({
            "verdict": verdict,
            "diagnostic_path": list(diag.path),
            "kind": diag.kind,
            "message": diag.message,
        }))
    else:
        where = "/".join(diag.path) or "input"
        print(f"{verdict}: {where}: {diag.kind}: {diag.message}")


def _accept(as_json: bool, verdict: str = "accepted") -> None:
    if as_json:
        print(json.dumps({"verdict": verdict}))
    else:
        print(verdict)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env is not None and env.isdigit():
        return int(env)
    return DEFAULT_BUDGET


def _cmd_check(args) -> int:
    as_json = args.json
    budget = _budget(args)
    try:
        theory_text = _read(args.theory)
        proof_text = _read(args.proof)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        theory = parse_theory(theory_text, budget)
    except FormatError as e:
        if e.kind == "IllFormedTheory":
            _emit(Diagnostic(("theory",), e.kind, e.message), as_json)
            return 1
        print(f"error: {args.theory}: {e}", file=sys.stderr)
        return 2
    try:
        proof, claimed = parse_proof(proof_text)
    except FormatError as e:
        print(f"error: {args.proof}: {e}", file=sys.stderr)
        return 2

    ctxt = Ctxt(theory)
    try:
        thm = replay_thm(ctxt, proof, budget)
    except ReplayFailure as e:
        _emit(Diagnostic(e.path, e.kind, e.message), as_json)
        return 1
    target = beta_eta_norm(claimed, budget)
    if target is None:
        _emit(Diagnostic(("check",), "BudgetExhausted",
                         "claimed proposition does not normalize within budget"),
              as_json)
        return 1
    if thm.concl != target:
        _emit(Diagnostic(("check",), "ConclusionMismatch",
                         f"proof yields {print_term(thm.concl)}, "
                         f"claimed {print_term(target)}"),
              as_json)
        return 1
    _accept(as_json)
    return 0


def _cmd_validate(args) -> int:
    as_json = args.json
    try:
        theory_text = _read(args.theory)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        parse_theory(theory_text, _budget(args))
    except FormatError as e:
        if e.kind == "IllFormedTheory":
            _emit(Diagnostic(("theory",), e.kind, e.message), as_json,
                  verdict="not wellformed")
            return 1
        print(f"error: {args.theory}: {e}", file=sys.stderr)
        return 2
    _accept(as_json, verdict="wellformed")
    return 0


def _cmd_normalize(args) -> int:
    try:
        term = parse_term(args.term)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    nf = beta_eta_norm(term, _budget(args))
    if nf is None:
        _emit(Diagnostic(("normalize",), "BudgetExhausted",
                         "term does not normalize within budget"), args.json)
        return 1
    print(print_term(nf))
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlcheck",
        description="Check proof terms against a higher-order metalogic kernel.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="replay a proof file against a theory")
    check.add_argument("--theory", required=True, help="theory file")
    check.add_argument("--proof", required=True, help="proof file")
    check.add_argument("--budget", type=int, default=None,
                       help="normalization step budget")
    check.add_argument("--json", action="store_true", help="JSON diagnostics")
    check.set_defaults(run=_cmd_check)

    validate = sub.add_parser("validate", help="check theory wellformedness")
    validate.add_argument("--theory", required=True, help="theory file")
    validate.add_argument("--budget", type=int, default=None)
    validate.add_argument("--json", action="store_true")
    validate.set_defaults(run=_cmd_validate)

    normalize = sub.add_parser("normalize", help="beta-eta normalize a term")
    normalize.add_argument("--term", required=True, help="term as an s-expression")
    normalize.add_argument("--budget", type=int, default=None)
    normalize.add_argument("--json", action="store_true")
    normalize.set_defaults(run=_cmd_normalize)
    return parser


def run_cli(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    return args.run(args)


def main() -> None:
    raise SystemExit(run_cli())
