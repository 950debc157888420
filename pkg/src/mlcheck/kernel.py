"""The trusted kernel: an abstract theorem type and one function per
inference rule.  A Thm can only be produced by the functions in this module,
always against a Ctxt whose theory was verified wellformed once up front.

Thms are tagged with the session of the Ctxt that produced them; every rule
rejects theorems from a different session.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .signature import (
    PROP,
    CLASS_CONST_TYPE,
    Theory,
    all_c,
    const_of_class,
    dest_all,
    dest_imp,
    fun,
    itself,
    mk_eq,
    mk_imp,
    wf_term,
    wf_theory,
    wf_type,
    wt_term,
)
from .sorts import has_sort
from .syntax import (
    Abs,
    App,
    Bv,
    Ct,
    Term,
    Typ,
    TypeSubst,
    Var,
    abs_fv,
    fv,
    subst_bv,
    tsubst_term,
    typ_of,
)
from .signature import wf_inst


class KernelError(Exception):
    """A side condition of an inference rule failed."""


class TheoryNotWellformed(KernelError):
    pass


class SessionMismatch(KernelError):
    pass


class NotAnAxiom(KernelError):
    pass


class IllFormedInstantiation(KernelError):
    pass


class IllFormed(KernelError):
    pass


class NotProp(KernelError):
    pass


class VarOccursInHyps(KernelError):
    pass


class IllFormedType(KernelError):
    pass


class NotAForall(KernelError):
    pass


class ArgTypeMismatch(KernelError):
    pass


class IllFormedArg(KernelError):
    pass


class NotAnImplication(KernelError):
    pass


class PremiseMismatch(KernelError):
    pass


class TypeMismatch(KernelError):
    pass


class ClassConstantMissing(KernelError):
    pass


class SortCheckFailed(KernelError):
    pass


_sessions = itertools.count()


@dataclass(frozen=True)
class Thm:
    """A proved judgment: hypotheses and conclusion.

    Do not construct directly; every Thm must come out of one of the rule
    functions below, and is only meaningful relative to the Ctxt whose
    session it carries.
    """
    hyps: frozenset  # frozenset[Term]
    concl: Term
    session: int


class Ctxt:
    """A checking session over one wellformed theory.

    Wellformedness is verified once here; the rules rely on it afterwards.
    """

    def __init__(self, theory: Theory):
        if not wf_theory(theory):
            raise TheoryNotWellformed("theory fails wellformedness check")
        self.theory = theory
        self.sig = theory.sig
        self.session = next(_sessions)


def _thm(ctxt: Ctxt, hyps: frozenset, concl: Term) -> Thm:
    # invariant check: every kernel-produced conclusion is a wellformed prop
    assert typ_of((), concl) == PROP and wf_term(ctxt.sig, concl)
    return Thm(hyps=hyps, concl=concl, session=ctxt.session)


def _own(ctxt: Ctxt, *thms: Thm) -> None:
    for th in thms:
        if th.session != ctxt.session:
            raise SessionMismatch("theorem belongs to a different session")


def axiom(ctxt: Ctxt, t: Term, rho: TypeSubst) -> Thm:
    """Type-instantiate an axiom of the theory."""
    if t not in ctxt.theory.axioms:
        raise NotAnAxiom(f"not an axiom of the theory: {t}")
    if not wf_inst(ctxt.theory, rho):
        raise IllFormedInstantiation("substitution violates sorts or wellformedness")
    return _thm(ctxt, frozenset(), tsubst_term(rho, t))


def assume(ctxt: Ctxt, t: Term) -> Thm:
    if not wf_term(ctxt.sig, t):
        raise IllFormed(f"assumption is not wellformed: {t}")
    if typ_of((), t) != PROP:
        raise NotProp(f"assumption is not of type prop: {t}")
    return _thm(ctxt, frozenset({t}), t)


def forall_intro(ctxt: Ctxt, th: Thm, v: Var, T: Typ) -> Thm:
    """Bind the free variable (v, T) of the conclusion universally; it must
    not occur free in the hypotheses."""
    _own(ctxt, th)
    if any((v, T) in fv(h) for h in th.hyps):
        raise VarOccursInHyps(f"variable {v} occurs in a hypothesis")
    if not wf_type(ctxt.sig, T):
        raise IllFormedType(f"not a wellformed type: {T}")
    return _thm(ctxt, th.hyps, App(all_c(T), abs_fv(v, T, th.concl)))


def forall_elim(ctxt: Ctxt, th: Thm, u: Term) -> Thm:
    _own(ctxt, th)
    dest = dest_all(th.concl)
    if dest is None:
        raise NotAForall(f"conclusion is not a quantification: {th.concl}")
    T, body = dest
    if typ_of((), u) != T:
        raise ArgTypeMismatch(f"witness does not have the binder type {T}")
    if not wf_term(ctxt.sig, u):
        raise IllFormedArg(f"witness is not wellformed: {u}")
    return _thm(ctxt, th.hyps, subst_bv(u, body))


def implies_intro(ctxt: Ctxt, th: Thm, t: Term) -> Thm:
    """Discharge ``t`` (which need not occur among the hypotheses)."""
    _own(ctxt, th)
    if not wf_term(ctxt.sig, t):
        raise IllFormed(f"antecedent is not wellformed: {t}")
    if typ_of((), t) != PROP:
        raise NotProp(f"antecedent is not of type prop: {t}")
    return _thm(ctxt, th.hyps - {t}, mk_imp(t, th.concl))


def implies_elim(ctxt: Ctxt, th1: Thm, th2: Thm) -> Thm:
    _own(ctxt, th1, th2)
    dest = dest_imp(th1.concl)
    if dest is None:
        raise NotAnImplication(f"conclusion is not an implication: {th1.concl}")
    t, u = dest
    if th2.concl != t:
        raise PremiseMismatch("minor premise does not match the antecedent")
    return _thm(ctxt, th1.hyps | th2.hyps, u)


def beta(ctxt: Ctxt, T: Typ, t: Term, u: Term) -> Thm:
    """Equate a beta redex with its contractum."""
    lam = Abs(T, t)
    if not wt_term(ctxt.sig, lam):
        raise IllFormed(f"redex function is not welltyped: {lam}")
    if not wf_term(ctxt.sig, u):
        raise IllFormed(f"redex argument is not wellformed: {u}")
    if typ_of((), u) != T:
        raise ArgTypeMismatch(f"argument does not have the binder type {T}")
    redex = App(lam, u)
    redex_t = typ_of((), redex)
    return _thm(ctxt, frozenset(), mk_eq(redex_t, redex, subst_bv(u, t)))


def eta(ctxt: Ctxt, t: Term, T: Typ, T2: Typ) -> Thm:
    """Equate the eta expansion of ``t`` (closed, of type T -> T2) with t."""
    if not wf_term(ctxt.sig, t):
        raise IllFormed(f"not a wellformed term: {t}")
    actual = typ_of((), t)
    if actual is None:
        raise IllFormed(f"term has no closed typing: {t}")
    if actual != fun(T, T2):
        raise TypeMismatch(f"term has type {actual}, not {fun(T, T2)}")
    return _thm(ctxt, frozenset(), mk_eq(fun(T, T2), Abs(T, App(t, Bv(0))), t))


def of_class(ctxt: Ctxt, T: Typ, c: str) -> Thm:
    """Prove that type ``T`` belongs to class ``c``."""
    cc = const_of_class(c)
    if ctxt.sig.const_type.get(cc) != CLASS_CONST_TYPE:
        raise ClassConstantMissing(f"no class constant declared for {c}")
    if not wf_type(ctxt.sig, T):
        raise IllFormedType(f"not a wellformed type: {T}")
    if not has_sort(ctxt.sig.osig, T, (c,)):
        raise SortCheckFailed(f"type {T} does not have sort {{{c}}}")
    it = itself(T)
    return _thm(ctxt, frozenset(), App(Ct(cc, fun(it, PROP)), Ct("type", it)))
