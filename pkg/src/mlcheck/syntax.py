"""Core syntax: types and De Bruijn lambda terms, the typing judgment, free
variables, index substitution/lifting/binding, type substitutions and
first-order type matching.

All functions here are total: ill-formed input (loose indices, unknown
constructors) is allowed and handled structurally.  Wellformedness against a
signature lives in :mod:`mlcheck.signature`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union


# --------------------------------------------------------------------------
# Variables, sorts, types, terms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Named:
    """A plain named variable."""
    name: str


@dataclass(frozen=True)
class Indexed:
    """A variable carrying a numeric index besides its base name."""
    name: str
    idx: int


Var = Union[Named, Indexed]


def var_key(v: Var) -> tuple:
    """Sort key giving a total order over both variable shapes."""
    if isinstance(v, Named):
        return (0, v.name, 0)
    return (1, v.name, v.idx)


# A sort is a finite set of class names.  The canonical representation is a
# sorted duplicate-free tuple so that set equality is structural equality.
Sort = tuple  # tuple[str, ...]


def mk_sort(classes: Iterable[str]) -> Sort:
    return tuple(sorted(set(classes)))


@dataclass(frozen=True)
class Ty:
    """Type constructor application."""
    name: str
    args: tuple = ()  # tuple[Typ, ...]


@dataclass(frozen=True)
class Tv:
    """Type variable with its sort attached."""
    var: Var
    sort: Sort = ()


Typ = Union[Ty, Tv]


@dataclass(frozen=True)
class Ct:
    """Typed constant."""
    name: str
    typ: Typ


@dataclass(frozen=True)
class Fv:
    """Free variable; the type is an integral part of the variable."""
    var: Var
    typ: Typ


@dataclass(frozen=True)
class Bv:
    """Bound variable as a De Bruijn index."""
    idx: int


@dataclass(frozen=True)
class Abs:
    """Abstraction annotated with the type of the bound variable."""
    typ: Typ
    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


Term = Union[Ct, Fv, Bv, Abs, App]

# A type substitution maps (variable, sort) pairs to types; lookups off the
# domain behave as the identity.
TypeSubst = Mapping  # Mapping[tuple[Var, Sort], Typ]


# --------------------------------------------------------------------------
# Typing
# --------------------------------------------------------------------------

def typ_of(ctx: Sequence, t: Term) -> Optional[Typ]:
    """Compute the unique type of ``t`` under the bound-variable context
    ``ctx`` (innermost binder first), or None if ``t`` is ill-typed."""
    match t:
        case Ct(_, T) | Fv(_, T):
            return T
        case Bv(i):
            return ctx[i] if 0 <= i < len(ctx) else None
        case Abs(T, body):
            body_t = typ_of((T, *ctx), body)
            if body_t is None:
                return None
            return Ty("fun", (T, body_t))
        case App(f, a):
            f_t = typ_of(ctx, f)
            a_t = typ_of(ctx, a)
            if a_t is None:
                return None
            match f_t:
                case Ty("fun", (dom, cod)) if dom == a_t:
                    return cod
            return None
    return None


def fv(t: Term) -> frozenset:
    """The set of (variable, type) pairs occurring free in ``t``."""
    match t:
        case Fv(v, T):
            return frozenset({(v, T)})
        case Abs(_, body):
            return fv(body)
        case App(f, a):
            return fv(f) | fv(a)
        case _:
            return frozenset()


# --------------------------------------------------------------------------
# De Bruijn index manipulation
# --------------------------------------------------------------------------

def lift(t: Term, n: int) -> Term:
    """Increment every loose index >= ``n`` by one."""
    match t:
        case Bv(i):
            return Bv(i + 1) if n <= i else t
        case Abs(T, body):
            return Abs(T, lift(body, n + 1))
        case App(f, a):
            return App(lift(f, n), lift(a, n))
        case _:
            return t


def subst_bv2(t: Term, n: int, u: Term) -> Term:
    """Replace index ``n`` by ``u`` and decrement larger indices; ``u`` is
    lifted when descending under a binder."""
    match t:
        case Bv(i):
            if i < n:
                return t
            if i == n:
                return u
            return Bv(i - 1)
        case Abs(T, body):
            return Abs(T, subst_bv2(body, n + 1, lift(u, 0)))
        case App(f, a):
            return App(subst_bv2(f, n, u), subst_bv2(a, n, u))
        case _:
            return t


def subst_bv(u: Term, t: Term) -> Term:
    """The contractum of ``Abs T t`` applied to ``u``."""
    return subst_bv2(t, 0, u)


def bind_fv(v: Var, T: Typ, t: Term) -> Term:
    """Turn every occurrence of the free variable (v, T) into the index of a
    binder still to be wrapped around the result."""
    return _bind_fv2(v, T, 0, t)


def _bind_fv2(v: Var, T: Typ, n: int, t: Term) -> Term:
    match t:
        case Fv(w, U):
            return Bv(n) if (w, U) == (v, T) else t
        case Abs(U, body):
            return Abs(U, _bind_fv2(v, T, n + 1, body))
        case App(f, a):
            return App(_bind_fv2(v, T, n, f), _bind_fv2(v, T, n, a))
        case _:
            return t


def abs_fv(v: Var, T: Typ, t: Term) -> Term:
    """Abstract the free variable (v, T) out of ``t``."""
    return Abs(T, bind_fv(v, T, t))


# --------------------------------------------------------------------------
# Type substitution and matching
# --------------------------------------------------------------------------

def tsubst_typ(rho: TypeSubst, T: Typ) -> Typ:
    match T:
        case Tv(v, S):
            return rho.get((v, S), T)
        case Ty(name, args):
            return Ty(name, tuple(tsubst_typ(rho, a) for a in args))
    return T


def tsubst_term(rho: TypeSubst, t: Term) -> Term:
    """Apply a type substitution to every type annotation inside ``t``."""
    match t:
        case Ct(c, T):
            return Ct(c, tsubst_typ(rho, T))
        case Fv(v, T):
            return Fv(v, tsubst_typ(rho, T))
        case Abs(T, body):
            return Abs(tsubst_typ(rho, T), tsubst_term(rho, body))
        case App(f, a):
            return App(tsubst_term(rho, f), tsubst_term(rho, a))
        case _:
            return t


def match_type(T1: Typ, T2: Typ) -> Optional[dict]:
    """First-order matching: a substitution ``rho`` with
    ``tsubst_typ(rho, T2) == T1``, or None if T1 is not an instance of T2."""
    rho: dict = {}
    return rho if _match(T1, T2, rho) else None


def _match(T1: Typ, T2: Typ, rho: dict) -> bool:
    match T2:
        case Tv(v, S):
            key = (v, S)
            if key in rho:
                return rho[key] == T1
            rho[key] = T1
            return True
        case Ty(name, args):
            match T1:
                case Ty(name1, args1) if name1 == name and len(args1) == len(args):
                    return all(_match(a1, a2, rho) for a1, a2 in zip(args1, args))
            return False
    return False
