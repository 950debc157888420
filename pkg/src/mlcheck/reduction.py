"""Beta/eta contraction with a deterministic leftmost-outermost strategy and
the budgeted normalizer built on top of it.

Positions inside a term are paths of ``"fun"``/``"arg"``/``"app"`` steps so
that a single-step contraction can be replayed both as a plain rewrite and as
a derived equality proof (see :mod:`mlcheck.conversion`).
"""

from __future__ import annotations

from typing import Optional

from .syntax import Abs, App, Bv, Term, subst_bv

BETA = "beta"
ETA = "eta"

DEFAULT_BUDGET = 10**6

# path steps
FUN = "fun"
ARG = "arg"
BODY = "body"


def uses_bv(t: Term, n: int) -> bool:
    """Does index ``n`` occur loose in ``t``?"""
    match t:
        case Bv(i):
            return i == n
        case Abs(_, body):
            return uses_bv(body, n + 1)
        case App(f, a):
            return uses_bv(f, n) or uses_bv(a, n)
        case _:
            return False


def decr(t: Term, n: int) -> Term:
    """Decrement every loose index > ``n``; index ``n`` must not occur."""
    match t:
        case Bv(i):
            if i <= n:
                return t
            return Bv(i - 1)
        case Abs(T, body):
            return Abs(T, decr(body, n + 1))
        case App(f, a):
            return App(decr(f, n), decr(a, n))
        case _:
            return t


def is_beta_redex(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fun, Abs)


def is_eta_redex(t: Term) -> bool:
    match t:
        case Abs(_, App(f, Bv(0))):
            return not uses_bv(f, 0)
    return False


def find_beta(t: Term) -> Optional[tuple]:
    """Path to the leftmost-outermost beta redex, or None."""
    match t:
        case App(f, a):
            if isinstance(f, Abs):
                return ()
            p = find_beta(f)
            if p is not None:
                return (FUN, *p)
            p = find_beta(a)
            if p is not None:
                return (ARG, *p)
            return None
        case Abs(_, body):
            p = find_beta(body)
            return None if p is None else (BODY, *p)
    return None


def find_eta(t: Term) -> Optional[tuple]:
    """Path to the leftmost-outermost eta redex, or None."""
    if is_eta_redex(t):
        return ()
    match t:
        case App(f, a):
            p = find_eta(f)
            if p is not None:
                return (FUN, *p)
            p = find_eta(a)
            return None if p is None else (ARG, *p)
        case Abs(_, body):
            p = find_eta(body)
            return None if p is None else (BODY, *p)
    return None


def next_step(t: Term) -> Optional[tuple]:
    """The next contraction as (kind, path): all beta steps first, then eta."""
    p = find_beta(t)
    if p is not None:
        return (BETA, p)
    p = find_eta(t)
    if p is not None:
        return (ETA, p)
    return None


def contract_root(t: Term, kind: str) -> Term:
    if kind == BETA:
        assert isinstance(t, App) and isinstance(t.fun, Abs)
        return subst_bv(t.arg, t.fun.body)
    assert is_eta_redex(t)
    return decr(t.body.fun, 0)


def contract_at(t: Term, kind: str, path: tuple) -> Term:
    if not path:
        return contract_root(t, kind)
    step, rest = path[0], path[1:]
    if step == FUN:
        assert isinstance(t, App)
        return App(contract_at(t.fun, kind, rest), t.arg)
    if step == ARG:
        assert isinstance(t, App)
        return App(t.fun, contract_at(t.arg, kind, rest))
    assert step == BODY and isinstance(t, Abs)
    return Abs(t.typ, contract_at(t.body, kind, rest))


def is_normal(t: Term) -> bool:
    return next_step(t) is None


def beta_eta_norm(t: Term, budget: int = DEFAULT_BUDGET) -> Optional[Term]:
    """Reduce ``t`` to beta-eta normal form, or None once ``budget``
    contractions have been spent (reachable only on ill-typed input)."""
    remaining = budget
    while (step := next_step(t)) is not None:
        if remaining <= 0:
            return None
        remaining -= 1
        kind, path = step
        t = contract_at(t, kind, path)
    return t
