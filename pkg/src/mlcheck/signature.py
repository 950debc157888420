"""Signatures and theories: wellformedness of types and terms against a
signature, the standard signature content, the equality axioms and theory
wellformedness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .reduction import beta_eta_norm
from .sorts import OSig, has_sort as osig_has_sort, wf_osig, wf_sort
from .syntax import (
    Abs,
    App,
    Bv,
    Ct,
    Fv,
    Named,
    Term,
    Tv,
    Ty,
    Typ,
    TypeSubst,
    match_type,
    typ_of,
)

# --------------------------------------------------------------------------
# Standard signature content
# --------------------------------------------------------------------------

PROP = Ty("prop", ())
ITSELF = "itself"


def fun(dom: Typ, cod: Typ) -> Typ:
    return Ty("fun", (dom, cod))


def itself(T: Typ) -> Typ:
    return Ty(ITSELF, (T,))


# generic type variables used in declared constant types
A = Tv(Named("'a"), ())
B = Tv(Named("'b"), ())

IMP_TYPE = fun(PROP, fun(PROP, PROP))
ALL_TYPE = fun(fun(A, PROP), PROP)
EQ_TYPE = fun(A, fun(A, PROP))
TYPE_TYPE = itself(A)

# the declared type of every class constant
CLASS_CONST_TYPE = fun(itself(A), PROP)

CLASS_CONST_SUFFIX = "_class"


def const_of_class(c: str) -> str:
    """Name of the constant encoding membership in class ``c``.  Injective
    because class names may not contain the suffix (enforced at load)."""
    return c + CLASS_CONST_SUFFIX


def imp_c() -> Term:
    return Ct("imp", IMP_TYPE)


def all_c(T: Typ) -> Term:
    return Ct("all", fun(fun(T, PROP), PROP))


def eq_c(T: Typ) -> Term:
    return Ct("eq", fun(T, fun(T, PROP)))


def mk_imp(p: Term, q: Term) -> Term:
    return App(App(imp_c(), p), q)


def mk_eq(T: Typ, lhs: Term, rhs: Term) -> Term:
    return App(App(eq_c(T), lhs), rhs)


def mk_all(T: Typ, body: Term) -> Term:
    """Universal quantification over an explicit abstraction."""
    return App(all_c(T), body)


def dest_imp(t: Term) -> Optional[tuple]:
    match t:
        case App(App(Ct("imp", _), p), q):
            return (p, q)
    return None


def dest_eq(t: Term) -> Optional[tuple]:
    """Split an equation into (type of both sides, lhs, rhs)."""
    match t:
        case App(App(Ct("eq", Ty("fun", (T, _))), lhs), rhs):
            return (T, lhs, rhs)
    return None


def dest_all(t: Term) -> Optional[tuple]:
    """Split a quantification of the shape all(T) applied to Abs T body."""
    match t:
        case App(Ct("all", _), Abs(T, body)):
            return (T, body)
    return None


# --------------------------------------------------------------------------
# Signatures and theories
# --------------------------------------------------------------------------

@dataclass
class Signature:
    const_type: dict  # dict[str, Typ]
    type_arity: dict  # dict[str, int]
    osig: OSig


@dataclass
class Theory:
    sig: Signature
    axioms: frozenset  # frozenset[Term]


def wf_type(sig: Signature, T: Typ) -> bool:
    match T:
        case Ty(name, args):
            return sig.type_arity.get(name) == len(args) and all(
                wf_type(sig, a) for a in args
            )
        case Tv(_, S):
            return wf_sort(sig.osig.sub, S)
    return False


def wf_term(sig: Signature, t: Term) -> bool:
    """Check that every type in ``t`` is wellformed and every constant is
    used at an instance of its declared type."""
    match t:
        case Fv(_, T):
            return wf_type(sig, T)
        case Bv(_):
            return True
        case Ct(name, T):
            declared = sig.const_type.get(name)
            if declared is None or not wf_type(sig, T):
                return False
            return match_type(T, declared) is not None
        case App(f, a):
            return wf_term(sig, f) and wf_term(sig, a)
        case Abs(T, body):
            return wf_type(sig, T) and wf_term(sig, body)
    return False


def wt_term(sig: Signature, t: Term) -> bool:
    return wf_term(sig, t) and typ_of((), t) is not None


def wf_sig(sig: Signature) -> bool:
    if not all(wf_type(sig, T) for T in sig.const_type.values()):
        return False
    if not wf_osig(sig.osig):
        return False
    if set(sig.osig.tcs.keys()) != set(sig.type_arity.keys()):
        return False
    return all(
        sig.type_arity.get(kappa) == len(sorts)
        for kappa, dm in sig.osig.tcs.items()
        for sorts in dm.values()
    )


def is_std_sig(sig: Signature) -> bool:
    """The minimal content every theory must declare: the basic types and
    connectives plus the machinery for type-class propositions."""
    return (
        sig.type_arity.get("fun") == 2
        and sig.type_arity.get("prop") == 0
        and sig.type_arity.get(ITSELF) == 1
        and sig.const_type.get("imp") == IMP_TYPE
        and sig.const_type.get("all") == ALL_TYPE
        and sig.const_type.get("eq") == EQ_TYPE
        and sig.const_type.get("type") == TYPE_TYPE
    )


def std_sig() -> Signature:
    """The smallest wellformed signature with the standard content."""
    return Signature(
        const_type={
            "imp": IMP_TYPE,
            "all": ALL_TYPE,
            "eq": EQ_TYPE,
            "type": TYPE_TYPE,
        },
        type_arity={"fun": 2, "prop": 0, ITSELF: 1},
        osig=OSig(sub=frozenset(), tcs={"fun": {}, "prop": {}, ITSELF: {}}),
    )


# --------------------------------------------------------------------------
# Equality axioms
# --------------------------------------------------------------------------

# free-variable spelling of the axioms
X = Named("x")
Y = Named("y")
Z = Named("z")
VA = Named("A")
VB = Named("B")
F = Named("f")
G = Named("g")


def eq_axs() -> list:
    """The seven equality axioms, in their displayed form.

    Index map: 0 reflexivity, 1 symmetry, 2 transitivity, 3 equality
    elimination on propositions, 4 equality introduction on propositions,
    5 application congruence, 6 abstraction congruence.
    """
    x, y, z = Fv(X, A), Fv(Y, A), Fv(Z, A)
    pa, pb = Fv(VA, PROP), Fv(VB, PROP)
    f, g = Fv(F, fun(A, B)), Fv(G, fun(A, B))
    fx = App(f, Bv(0))
    gx = App(g, Bv(0))
    return [
        mk_eq(A, x, x),
        mk_imp(mk_eq(A, x, y), mk_eq(A, y, x)),
        mk_imp(mk_eq(A, x, y), mk_imp(mk_eq(A, y, z), mk_eq(A, x, z))),
        mk_imp(mk_eq(PROP, pa, pb), mk_imp(pa, pb)),
        mk_imp(mk_imp(pa, pb), mk_imp(mk_imp(pb, pa), mk_eq(PROP, pa, pb))),
        mk_imp(
            mk_eq(fun(A, B), f, g),
            mk_imp(mk_eq(A, Fv(X, A), Fv(Y, A)),
                   mk_eq(B, App(f, Fv(X, A)), App(g, Fv(Y, A)))),
        ),
        mk_imp(
            mk_all(A, Abs(A, mk_eq(B, fx, gx))),
            mk_eq(fun(A, B), Abs(A, fx), Abs(A, gx)),
        ),
    ]


def norm_eq_axs() -> list:
    """The equality axioms in beta-eta normal form, as stored by theory
    loaders (only the abstraction congruence axiom changes)."""
    return [beta_eta_norm(ax) for ax in eq_axs()]


# --------------------------------------------------------------------------
# Theory wellformedness and instantiation
# --------------------------------------------------------------------------

def mk_theory(sig: Signature, axioms: Iterable[Term]) -> Theory:
    """Close a theory for checking: axioms are stored beta-eta normalized.

    Raises ValueError if an axiom fails to normalize within the default
    budget (possible only for ill-typed axioms, which are rejected by
    wf_theory anyway).
    """
    normed = []
    for ax in axioms:
        nf = beta_eta_norm(ax)
        if nf is None:
            raise ValueError("axiom does not normalize within budget")
        normed.append(nf)
    return Theory(sig=sig, axioms=frozenset(normed))


def minimal_theory() -> Theory:
    """Standard signature plus exactly the equality axioms."""
    return mk_theory(std_sig(), eq_axs())


def wf_theory(theory: Theory) -> bool:
    sig = theory.sig
    if not wf_sig(sig):
        return False
    for p in theory.axioms:
        if not wt_term(sig, p) or typ_of((), p) != PROP:
            return False
    if not is_std_sig(sig):
        return False
    # the equality axioms must be present; terms are compared modulo
    # beta-eta normalization since theories store normalized axioms
    normed = {beta_eta_norm(p) for p in theory.axioms}
    return all(beta_eta_norm(ax) in normed for ax in eq_axs())


def wf_inst(theory: Theory, rho: TypeSubst) -> bool:
    """Every type actually substituted must be wellformed and fulfill the
    sort constraint of the variable it replaces."""
    sig = theory.sig
    for (v, S), T in rho.items():
        if T == Tv(v, S):
            continue
        if not osig_has_sort(sig.osig, T, S) or not wf_type(sig, T):
            return False
    return True
