"""Proof terms and their replay through the kernel.

Replay walks a proof term and re-derives the recorded theorem via kernel
rules only.  Terms embedded in a proof may reference enclosing ``Abst``
binders through loose indices; those are resolved by substituting fresh free
variables from a reserved namespace before any kernel call.  Conclusions are
kept beta-eta normal throughout, with each normalization itself derived
inside the kernel (see :mod:`mlcheck.conversion`), so every intermediate
result is a genuine kernel theorem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import kernel
from .conversion import FRESH_BASE, make_fresh, norm_thm
from .kernel import Ctxt, KernelError, Thm
from .reduction import DEFAULT_BUDGET, beta_eta_norm
from .signature import Theory, wf_theory
from .syntax import Abs, App, Bv, Fv, Sort, Term, Typ, Var


@dataclass(frozen=True)
class PAxm:
    """Use of an axiom under an explicit type substitution (an association
    list keyed by (variable, sort) pairs, duplicate-free)."""
    prop: Term
    inst: tuple = ()  # tuple[tuple[tuple[Var, Sort], Typ], ...]


@dataclass(frozen=True)
class PBound:
    """Assumption bound by the n-th enclosing AbsP, innermost first."""
    idx: int


@dataclass(frozen=True)
class Abst:
    """Universal introduction; embedded terms address the binder by loose
    index."""
    typ: Typ
    body: "ProofTerm"


@dataclass(frozen=True)
class AbsP:
    """Implication introduction, discharging ``prop``."""
    prop: Term
    body: "ProofTerm"


@dataclass(frozen=True)
class Appt:
    """Universal elimination with a witness term."""
    fun: "ProofTerm"
    arg: Term


@dataclass(frozen=True)
class AppP:
    """Implication elimination."""
    fun: "ProofTerm"
    arg: "ProofTerm"


@dataclass(frozen=True)
class OfClass:
    """Proof that a type belongs to a class."""
    typ: Typ
    cls: str


@dataclass(frozen=True)
class Hyp:
    """Reference to a free assumption."""
    prop: Term


ProofTerm = Union[PAxm, PBound, Abst, AbsP, Appt, AppP, OfClass, Hyp]


class ReplayFailure(Exception):
    """Replay rejected the proof; records where and why."""

    def __init__(self, path: tuple, kind: str, message: str):
        super().__init__(f"{'/'.join(path)}: {kind}: {message}")
        self.path = path
        self.kind = kind
        self.message = message


def hyps(p: ProofTerm) -> list:
    """All Hyp payloads, left to right, duplicates preserved."""
    match p:
        case Hyp(t):
            return [t]
        case Abst(_, q) | AbsP(_, q):
            return hyps(q)
        case Appt(q, _):
            return hyps(q)
        case AppP(q, r):
            return hyps(q) + hyps(r)
        case _:
            return []


def close_term(t: Term, tvars: list) -> Term:
    """Resolve loose indices of an embedded term against the Abst binder
    stack (innermost binder last).  Indices beyond the stack stay loose and
    fail the kernel's typing checks later."""

    def go(t: Term, depth: int) -> Term:
        match t:
            case Bv(i):
                if i < depth:
                    return t
                m = i - depth
                if m < len(tvars):
                    v, T = tvars[-1 - m]
                    return Fv(v, T)
                return t
            case Abs(T, body):
                return Abs(T, go(body, depth + 1))
            case App(f, a):
                return App(go(f, depth), go(a, depth))
            case _:
                return t

    return go(t, 0)


def _term_vars(t: Term) -> set:
    match t:
        case Fv(v, _):
            return {v}
        case Abs(_, body):
            return _term_vars(body)
        case App(f, a):
            return _term_vars(f) | _term_vars(a)
        case _:
            return set()


def _proof_term_vars(p: ProofTerm) -> set:
    match p:
        case PAxm(t, _) | Hyp(t):
            return _term_vars(t)
        case AbsP(t, q):
            return _term_vars(t) | _proof_term_vars(q)
        case Abst(_, q):
            return _proof_term_vars(q)
        case Appt(q, t):
            return _proof_term_vars(q) | _term_vars(t)
        case AppP(q, r):
            return _proof_term_vars(q) | _proof_term_vars(r)
        case _:
            return set()


def _uses_reserved(p: ProofTerm, theory: Theory) -> bool:
    names = _proof_term_vars(p)
    for ax in theory.axioms:
        names |= _term_vars(ax)
    return any(getattr(v, "name", None) == FRESH_BASE for v in names)


class _Replayer:
    def __init__(self, ctxt: Ctxt, budget: int):
        self.ctxt = ctxt
        self.budget = budget
        self.hyp_stack: list = []
        self.tvar_stack: list = []
        self.fresh = make_fresh()

    def _fail(self, path: tuple, kind: str, message: str):
        raise ReplayFailure(path, kind, message)

    def _norm_term(self, t: Term, path: tuple) -> Term:
        t = close_term(t, self.tvar_stack)
        nf = beta_eta_norm(t, self.budget)
        if nf is None:
            self._fail(path, "BudgetExhausted", "term normalization ran out of budget")
        return nf

    def _norm_thm(self, th: Thm, path: tuple) -> Thm:
        try:
            out = norm_thm(self.ctxt, th, self.fresh, self.budget)
        except KernelError as e:
            self._fail(path, type(e).__name__, str(e))
        if out is None:
            self._fail(path, "BudgetExhausted", "conclusion normalization ran out of budget")
        return out

    def _rule(self, path: tuple, op, *args) -> Thm:
        try:
            return op(self.ctxt, *args)
        except KernelError as e:
            self._fail(path, type(e).__name__, str(e))

    def replay(self, p: ProofTerm, path: tuple) -> Thm:
        match p:
            case PAxm(t, inst):
                keys = [k for k, _ in inst]
                if len(keys) != len(set(keys)):
                    self._fail((*path, "PAxm"), "DuplicateInstKey",
                               "type substitution keys are not distinct")
                here = (*path, "PAxm")
                tn = self._norm_term(t, here)
                th = self._rule(here, kernel.axiom, tn, dict(inst))
                return self._norm_thm(th, here)
            case PBound(n):
                here = (*path, "PBound")
                if not 0 <= n < len(self.hyp_stack):
                    self._fail(here, "UnboundAssumption",
                               f"index {n} exceeds the assumption stack")
                return self._rule(here, kernel.assume, self.hyp_stack[-1 - n])
            case Hyp(t):
                here = (*path, "Hyp")
                return self._rule(here, kernel.assume, self._norm_term(t, here))
            case Abst(T, body):
                here = (*path, "Abst")
                v = self.fresh()
                self.tvar_stack.append((v, T))
                try:
                    th = self.replay(body, here)
                finally:
                    self.tvar_stack.pop()
                th = self._rule(here, kernel.forall_intro, th, v, T)
                return self._norm_thm(th, here)
            case AbsP(t, body):
                here = (*path, "AbsP")
                tn = self._norm_term(t, here)
                self.hyp_stack.append(tn)
                try:
                    th = self.replay(body, here)
                finally:
                    self.hyp_stack.pop()
                return self._rule(here, kernel.implies_intro, th, tn)
            case Appt(pf, t):
                here = (*path, "Appt")
                th = self.replay(pf, here)
                tn = self._norm_term(t, here)
                th = self._rule(here, kernel.forall_elim, th, tn)
                return self._norm_thm(th, here)
            case AppP(pf, qf):
                here = (*path, "AppP")
                th1 = self.replay(pf, here)
                th2 = self.replay(qf, here)
                return self._rule(here, kernel.implies_elim, th1, th2)
            case OfClass(T, c):
                here = (*path, "OfClass")
                return self._rule(here, kernel.of_class, T, c)
        self._fail(path, "UnknownConstructor", f"not a proof term: {p!r}")


def replay_thm(ctxt: Ctxt, p: ProofTerm, budget: int = DEFAULT_BUDGET) -> Thm:
    """Replay a proof into a kernel theorem; raises ReplayFailure with the
    failing constructor path on rejection."""
    if _uses_reserved(p, ctxt.theory):
        raise ReplayFailure(
            (), "ReservedName",
            f"variables named {FRESH_BASE!r} are reserved for replay",
        )
    return _Replayer(ctxt, budget).replay(p, ())


def replay(ctxt: Ctxt, p: ProofTerm, budget: int = DEFAULT_BUDGET) -> Optional[Term]:
    """The proposition proved by ``p``, beta-eta normal, or None."""
    try:
        return replay_thm(ctxt, p, budget).concl
    except ReplayFailure:
        return None


def check_proof(
    theory: Theory, p: ProofTerm, prop: Term, budget: int = DEFAULT_BUDGET
) -> bool:
    """Does ``p`` prove ``prop`` in ``theory``?  The claimed proposition is
    beta-eta normalized before comparison."""
    if not wf_theory(theory):
        return False
    ctxt = Ctxt(theory)
    concl = replay(ctxt, p, budget)
    if concl is None:
        return False
    target = beta_eta_norm(prop, budget)
    return target is not None and concl == target


__all__ = [
    "PAxm", "PBound", "Abst", "AbsP", "Appt", "AppP", "OfClass", "Hyp",
    "ProofTerm", "ReplayFailure", "hyps", "close_term", "beta_eta_norm",
    "replay", "replay_thm", "check_proof",
]
