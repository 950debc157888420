"""Typing, free variables, index manipulation, type substitution, matching."""

from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from genutil import gen_arbitrary_term, gen_welltyped
from mlcheck.signature import IMP_TYPE, PROP, fun
from mlcheck.syntax import (
    Abs,
    App,
    Bv,
    Ct,
    Fv,
    Named,
    Tv,
    Ty,
    abs_fv,
    bind_fv,
    fv,
    lift,
    match_type,
    mk_sort,
    subst_bv,
    subst_bv2,
    tsubst_term,
    tsubst_typ,
    typ_of,
    var_key,
)

A = Tv(Named("a"), ())
S = mk_sort(("s",))
T = Tv(Named("t"), ())
U = Tv(Named("u"), ())
x = Named("x")
y = Named("y")


# --- typing ---------------------------------------------------------------

def test_typ_of_bound_variable_uses_context():
    assert typ_of((T,), Bv(0)) == T


def test_typ_of_constant_echoes_annotation():
    c = Ct("imp", IMP_TYPE)
    assert typ_of((), c) == IMP_TYPE


def test_typ_of_abstraction():
    assert typ_of((), Abs(PROP, Bv(0))) == fun(PROP, PROP)


def test_typ_of_failures():
    assert typ_of((), Bv(0)) is None
    assert typ_of((T,), Bv(1)) is None
    # non-function applied
    assert typ_of((), App(Fv(x, PROP), Fv(y, PROP))) is None
    # argument type mismatch
    f = Fv(x, fun(PROP, PROP))
    assert typ_of((), App(f, Fv(y, T))) is None


def test_typ_of_application():
    f = Fv(x, fun(PROP, PROP))
    assert typ_of((), App(f, Fv(y, PROP))) == PROP


# --- free variables -------------------------------------------------------

def test_fv_no_free_variables():
    assert fv(Bv(3)) == frozenset()


def test_fv_type_is_part_of_the_variable():
    t = App(Fv(x, T), Fv(x, U))
    assert fv(t) == {(x, T), (x, U)}


def test_fv_under_binder():
    t = Abs(T, App(Fv(x, T), Bv(0)))
    assert fv(t) == {(x, T)}


# --- lifting and substitution ----------------------------------------------

def test_lift_increments_loose_indices():
    assert lift(Bv(0), 0) == Bv(1)


def test_lift_ignores_other_leaves():
    assert lift(Ct("c", T), 5) == Ct("c", T)


def test_lift_threshold_moves_under_binder():
    t = Abs(T, App(Bv(0), Bv(1)))
    assert lift(t, 0) == Abs(T, App(Bv(0), Bv(2)))


def test_subst_bv2_replaces_exact_index():
    u = Fv(x, T)
    assert subst_bv2(Bv(0), 0, u) == u


def test_subst_bv2_decrements_larger_indices():
    assert subst_bv2(Bv(2), 1, Fv(x, T)) == Bv(1)


def test_subst_bv2_lifts_under_binder():
    assert subst_bv2(Abs(T, Bv(1)), 0, Fv(x, T)) == Abs(T, Fv(x, T))


def test_subst_bv_is_contraction_at_zero():
    u = Fv(x, T)
    assert subst_bv(u, Bv(0)) == u
    c = Ct("c", PROP)
    assert subst_bv(c, App(Bv(0), Bv(0))) == App(c, c)
    assert subst_bv(u, Ct("c", T)) == Ct("c", T)


# --- binding ---------------------------------------------------------------

def test_bind_fv_replaces_matching_pair():
    assert bind_fv(x, T, Fv(x, T)) == Bv(0)


def test_bind_fv_requires_type_match():
    assert bind_fv(x, T, Fv(x, U)) == Fv(x, U)


def test_bind_fv_counts_binders():
    assert bind_fv(x, T, Abs(U, Fv(x, T))) == Abs(U, Bv(1))


def test_abs_fv():
    assert abs_fv(x, T, Fv(x, T)) == Abs(T, Bv(0))
    assert abs_fv(x, T, Ct("c", U)) == Abs(T, Ct("c", U))
    t = App(Fv(y, T), Fv(x, T))
    assert abs_fv(x, T, t) == Abs(T, App(Fv(y, T), Bv(0)))


# --- type substitution -----------------------------------------------------

def test_tsubst_typ_identity_off_domain():
    assert tsubst_typ({}, fun(A, A)) == fun(A, A)


def test_tsubst_typ_recursive_replacement():
    a = Tv(Named("a"), S)
    rho = {(Named("a"), S): PROP}
    assert tsubst_typ(rho, fun(a, a)) == fun(PROP, PROP)


def test_tsubst_typ_sort_is_part_of_key():
    rho = {(Named("a"), S): PROP}
    other = Tv(Named("a"), ())
    assert tsubst_typ(rho, other) == other


def test_tsubst_term():
    a = Tv(Named("a"), S)
    rho = {(Named("a"), S): PROP}
    assert tsubst_term({}, Fv(x, a)) == Fv(x, a)
    assert tsubst_term(rho, Ct("c", a)) == Ct("c", PROP)
    assert tsubst_term(rho, Bv(7)) == Bv(7)


# --- matching --------------------------------------------------------------

def test_match_type_reflexive():
    rho = match_type(fun(PROP, PROP), fun(PROP, PROP))
    assert rho is not None and tsubst_typ(rho, fun(PROP, PROP)) == fun(PROP, PROP)


def test_match_type_binds_variables():
    a = Tv(Named("a"), S)
    rho = match_type(fun(PROP, PROP), fun(a, a))
    assert rho == {(Named("a"), S): PROP}


def test_match_type_clash():
    assert match_type(PROP, fun(PROP, PROP)) is None
    assert match_type(Ty("k", (PROP,)), Ty("k", (PROP, PROP))) is None


def test_match_type_inconsistent_binding():
    a = Tv(Named("a"), ())
    assert match_type(fun(PROP, fun(PROP, PROP)), fun(a, a)) is None


def test_match_type_variable_target_never_matches_constructor_pattern():
    assert match_type(A, fun(A, A)) is None


def test_var_key_total_order():
    from mlcheck.syntax import Indexed

    vs = [Named("b"), Indexed("a", 1), Named("a"), Indexed("a", 0)]
    assert sorted(vs, key=var_key) == [
        Named("a"), Named("b"), Indexed("a", 0), Indexed("a", 1)
    ]


# --- properties ------------------------------------------------------------

_types = st.recursive(
    st.sampled_from([PROP, A, T, U]),
    lambda c: st.builds(fun, c, c),
    max_leaves=4,
)

_terms = st.recursive(
    st.one_of(
        st.builds(Bv, st.integers(0, 3)),
        st.builds(Fv, st.sampled_from([x, y]), _types),
        st.builds(Ct, st.sampled_from(["c", "d"]), _types),
    ),
    lambda c: st.one_of(st.builds(Abs, _types, c), st.builds(App, c, c)),
    max_leaves=16,
)


@given(_terms, st.integers(0, 3), _terms)
def test_lift_subst_cancellation(t, n, u):
    assert subst_bv2(lift(t, n), n, u) == t


@given(_terms, _terms)
def test_fv_of_subst_is_bounded(t, u):
    assert fv(subst_bv(u, t)) <= fv(t) | fv(u)


@given(_terms)
def test_identity_substitution(t):
    assert tsubst_term({}, t) == t


@given(_types, _types)
def test_matching_soundness(t1, t2):
    rho = match_type(t1, t2)
    if rho is not None:
        assert tsubst_typ(rho, t2) == t1


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_bind_subst_round_trip_on_closed_terms(seed):
    rng = random.Random(seed)
    t = gen_welltyped(rng, rng.choice([PROP, fun(PROP, PROP)]), (), 4)
    v, T0 = x, PROP
    assert subst_bv(Fv(v, T0), bind_fv(v, T0, t)) == t


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_substitution_preserves_typing(seed):
    rng = random.Random(seed)
    T0 = rng.choice([PROP, fun(PROP, PROP)])
    ctx = tuple(rng.choice([PROP, fun(PROP, PROP)]) for _ in range(2))
    t = gen_welltyped(rng, PROP, (T0, *ctx), 4)
    u = gen_welltyped(rng, T0, ctx, 3)
    assert typ_of((T0, *ctx), t) == PROP
    assert typ_of(ctx, subst_bv(u, t)) == PROP


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_typ_of_is_deterministic(seed):
    rng = random.Random(seed)
    t = gen_arbitrary_term(rng, 4)
    assert typ_of((), t) == typ_of((), t)
