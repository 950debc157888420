"""Derived equality reasoning on top of the kernel.

Nothing here is trusted: every function produces its result exclusively
through kernel rule applications, instantiating the equality axioms of the
theory.  The main entry point is :func:`norm_thm`, which turns a theorem into
one whose conclusion is beta-eta normal by deriving the equality of the two
conclusions step by step (beta/eta rule at the contracted position,
congruence axioms on the way down, transitivity along the reduction
sequence).
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from . import kernel
from .kernel import Ctxt, Thm
from .reduction import (
    ARG,
    BETA,
    BODY,
    DEFAULT_BUDGET,
    FUN,
    contract_at,
    contract_root,
    next_step,
)
from .signature import F, G, VA, VB, X, Y, Z, dest_eq, fun, norm_eq_axs
from .syntax import (
    Abs,
    App,
    Fv,
    Indexed,
    Term,
    Typ,
    Var,
    abs_fv,
    bind_fv,
    subst_bv,
    typ_of,
)

# axiom indices within the equality axiom list
AX_REFL = 0
AX_SYM = 1
AX_TRANS = 2
AX_EQ_ELIM = 3
AX_EQ_INTRO = 4
AX_APP_CONG = 5
AX_ABS_CONG = 6

# base name of machine-generated variables; input formats reject it so fresh
# names can never collide with anything in a theory or proof
FRESH_BASE = "%fresh%"

Fresh = Callable[[], Var]


def make_fresh(start: int = 0) -> Fresh:
    counter = iter(range(start, 10**9))

    def fresh() -> Var:
        return Indexed(FRESH_BASE, next(counter))

    return fresh


def instantiate(ctxt: Ctxt, th: Thm, values: Sequence) -> Thm:
    """Replace free variables of a hypothesis-free theorem by terms.

    ``values`` is a sequence of (var, type, replacement) triples.  All
    variables are universally bound first, then eliminated outside-in, so
    replacements can mention any free variables without capture.
    """
    for v, T, _ in values:
        th = kernel.forall_intro(ctxt, th, v, T)
    for _, _, u in reversed(values):
        th = kernel.forall_elim(ctxt, th, u)
    return th


def _eq_axiom(ctxt: Ctxt, index: int, rho) -> Thm:
    return kernel.axiom(ctxt, norm_eq_axs()[index], rho)


def _generic_inst(T: Typ, T2: Optional[Typ] = None) -> dict:
    from .signature import A, B

    rho = {(A.var, A.sort): T}
    if T2 is not None:
        rho[(B.var, B.sort)] = T2
    return rho


def refl(ctxt: Ctxt, t: Term) -> Thm:
    """``t == t`` for a closed welltyped term."""
    T = typ_of((), t)
    ax = _eq_axiom(ctxt, AX_REFL, _generic_inst(T))
    return instantiate(ctxt, ax, [(X, T, t)])


def sym(ctxt: Ctxt, th: Thm) -> Thm:
    T, lhs, rhs = dest_eq(th.concl)
    ax = _eq_axiom(ctxt, AX_SYM, _generic_inst(T))
    ax = instantiate(ctxt, ax, [(X, T, lhs), (Y, T, rhs)])
    return kernel.implies_elim(ctxt, ax, th)


def trans(ctxt: Ctxt, th1: Thm, th2: Thm) -> Thm:
    T, a, b = dest_eq(th1.concl)
    T2, b2, c = dest_eq(th2.concl)
    assert T == T2 and b == b2
    ax = _eq_axiom(ctxt, AX_TRANS, _generic_inst(T))
    ax = instantiate(ctxt, ax, [(X, T, a), (Y, T, b), (Z, T, c)])
    return kernel.implies_elim(ctxt, kernel.implies_elim(ctxt, ax, th1), th2)


def eq_mp(ctxt: Ctxt, th_eq: Thm, th: Thm) -> Thm:
    """From ``a == b`` and a proof of ``a``, conclude ``b``."""
    _, lhs, rhs = dest_eq(th_eq.concl)
    ax = _eq_axiom(ctxt, AX_EQ_ELIM, {})
    from .signature import PROP

    ax = instantiate(ctxt, ax, [(VA, PROP, lhs), (VB, PROP, rhs)])
    return kernel.implies_elim(ctxt, kernel.implies_elim(ctxt, ax, th_eq), th)


def app_cong(ctxt: Ctxt, th_fun: Thm, th_arg: Thm) -> Thm:
    """Combine ``f == g`` and ``x == y`` into ``f x == g y``."""
    TF, a, a2 = dest_eq(th_fun.concl)
    TX, b, b2 = dest_eq(th_arg.concl)
    assert TF.name == "fun" and TF.args[0] == TX
    cod = TF.args[1]
    ax = _eq_axiom(ctxt, AX_APP_CONG, _generic_inst(TX, cod))
    ax = instantiate(
        ctxt, ax, [(F, TF, a), (G, TF, a2), (X, TX, b), (Y, TX, b2)]
    )
    return kernel.implies_elim(ctxt, kernel.implies_elim(ctxt, ax, th_fun), th_arg)


def abs_cong(ctxt: Ctxt, th: Thm, T: Typ, fresh: Fresh) -> Thm:
    """From ``f v == g v`` generalized over a fresh v, conclude ``f == g``.

    ``th`` must conclude an equation between two applications of closed
    terms to the same fresh variable of type ``T``.
    """
    V, lhs, rhs = dest_eq(th.concl)
    assert isinstance(lhs, App) and isinstance(rhs, App)
    f, g = lhs.fun, rhs.fun
    v = lhs.arg
    assert isinstance(v, Fv) and rhs.arg == v
    gen = kernel.forall_intro(ctxt, th, v.var, T)
    ax = _eq_axiom(ctxt, AX_ABS_CONG, _generic_inst(T, V))
    TF = fun(T, V)
    ax = instantiate(ctxt, ax, [(F, TF, f), (G, TF, g)])
    return kernel.implies_elim(ctxt, ax, gen)


def abs_fv_cong(ctxt: Ctxt, v: Var, T: Typ, th: Thm) -> Thm:
    """Abstraction congruence over a named variable (Paulson's rule): from
    ``s == t`` conclude ``(lam v. s) == (lam v. t)``, provided ``(v, T)``
    does not occur free in the hypotheses."""
    _, s, t = dest_eq(th.concl)
    x = Fv(v, T)
    th1 = kernel.beta(ctxt, T, bind_fv(v, T, s), x)   # (lam v. s) x == s
    th2 = kernel.beta(ctxt, T, bind_fv(v, T, t), x)   # (lam v. t) x == t
    assert dest_eq(th1.concl)[2] == s and dest_eq(th2.concl)[2] == t
    chain = trans(ctxt, trans(ctxt, th1, th), sym(ctxt, th2))
    gen = kernel.forall_intro(ctxt, chain, v, T)
    V = typ_of((), s)
    TF = fun(T, V)
    ax = _eq_axiom(ctxt, AX_ABS_CONG, _generic_inst(T, V))
    ax = instantiate(
        ctxt, ax, [(F, TF, abs_fv(v, T, s)), (G, TF, abs_fv(v, T, t))]
    )
    return kernel.implies_elim(ctxt, ax, gen)


def conv_step(ctxt: Ctxt, t: Term, kind: str, path: tuple, fresh: Fresh) -> Thm:
    """Derive ``t == t'`` where t' contracts the redex at ``path``.

    ``t`` must be closed and welltyped; recursion follows the path, using the
    congruence axioms at applications and the fresh-variable scheme at
    abstractions.
    """
    if not path:
        if kind == BETA:
            assert isinstance(t, App) and isinstance(t.fun, Abs)
            return kernel.beta(ctxt, t.fun.typ, t.fun.body, t.arg)
        # eta: t is closed, hence so is the function part
        s = t.body.fun
        T = t.typ
        cod = typ_of((), s).args[1]
        return kernel.eta(ctxt, s, T, cod)
    step, rest = path[0], path[1:]
    if step == FUN:
        th = conv_step(ctxt, t.fun, kind, rest, fresh)
        return app_cong(ctxt, th, refl(ctxt, t.arg))
    if step == ARG:
        th = conv_step(ctxt, t.arg, kind, rest, fresh)
        return app_cong(ctxt, refl(ctxt, t.fun), th)
    assert step == BODY and isinstance(t, Abs)
    T, body = t.typ, t.body
    v = fresh()
    x = Fv(v, T)
    opened = subst_bv(x, body)
    th_open = kernel.beta(ctxt, T, body, x)            # t x == opened
    inner = conv_step(ctxt, opened, kind, rest, fresh)  # opened == opened'
    body2 = contract_at(body, kind, rest)
    # contraction commutes with substituting the fresh variable
    assert dest_eq(inner.concl)[2] == subst_bv(x, body2)
    th_close = kernel.beta(ctxt, T, body2, x)          # t' x == opened'
    chain = trans(ctxt, trans(ctxt, th_open, inner), sym(ctxt, th_close))
    return abs_cong(ctxt, chain, T, fresh)


def norm_conv(
    ctxt: Ctxt, t: Term, fresh: Fresh, budget: int = DEFAULT_BUDGET
) -> Optional[tuple]:
    """Derive ``t == nf(t)`` along the normalizer's own reduction sequence.

    Returns (theorem, normal form), or None if the step budget runs out.
    On an already-normal term the result is reflexivity.
    """
    acc: Optional[Thm] = None
    remaining = budget
    while (step := next_step(t)) is not None:
        if remaining <= 0:
            return None
        remaining -= 1
        kind, path = step
        th = conv_step(ctxt, t, kind, path, fresh)
        t = contract_at(t, kind, path)
        acc = th if acc is None else trans(ctxt, acc, th)
    if acc is None:
        return (refl(ctxt, t), t)
    return (acc, t)


def norm_thm(
    ctxt: Ctxt, th: Thm, fresh: Fresh, budget: int = DEFAULT_BUDGET
) -> Optional[Thm]:
    """Replace a theorem's conclusion by its beta-eta normal form, deriving
    the replacement inside the kernel.  None if the budget runs out."""
    if next_step(th.concl) is None:
        return th
    res = norm_conv(ctxt, th.concl, fresh, budget)
    if res is None:
        return None
    conv, _ = res
    return eq_mp(ctxt, conv, th)
