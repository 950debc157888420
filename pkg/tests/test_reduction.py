"""Beta-eta contraction and the budgeted normalizer."""

from __future__ import annotations

import random

import pytest

from genutil import gen_welltyped
from mlcheck.reduction import (
    beta_eta_norm,
    contract_at,
    decr,
    find_beta,
    find_eta,
    is_normal,
    next_step,
    uses_bv,
)
from mlcheck.signature import PROP, fun
from mlcheck.syntax import Abs, App, Bv, Ct, Fv, Named, typ_of

x = Fv(Named("x"), PROP)
f = Fv(Named("f"), fun(PROP, PROP))


def test_single_beta_step():
    assert beta_eta_norm(App(Abs(PROP, Bv(0)), x)) == x


def test_single_eta_step():
    assert beta_eta_norm(Abs(PROP, App(f, Bv(0)))) == f


def test_already_normal():
    assert beta_eta_norm(f) == f
    assert is_normal(App(f, x))


def test_eta_not_applicable_when_bound_variable_used():
    t = Abs(PROP, App(App(Fv(Named("g"), fun(PROP, fun(PROP, PROP))), Bv(0)), Bv(0)))
    assert is_normal(t)


def test_eta_under_binder_decrements_loose_indices():
    t = Abs(PROP, Abs(PROP, App(Bv(1), Bv(0))))
    nf = beta_eta_norm(t)
    assert nf == Abs(PROP, Bv(0))


def test_decr_and_uses_bv():
    t = App(Bv(2), Abs(PROP, Bv(0)))
    assert not uses_bv(t, 0)
    assert decr(t, 0) == App(Bv(1), Abs(PROP, Bv(0)))


def test_budget_exhaustion_on_divergent_term():
    # the usual self-application loop; ill-typed, so the budget is the only out
    dup = Abs(PROP, App(Bv(0), Bv(0)))
    omega = App(dup, dup)
    assert beta_eta_norm(omega, budget=100) is None


def test_leftmost_outermost_order():
    inner = App(Abs(PROP, Bv(0)), x)
    outer = App(Abs(PROP, Bv(0)), inner)
    kind, path = next_step(outer)
    assert kind == "beta" and path == ()
    assert find_beta(outer) == ()
    # after contracting the root, the inner redex remains
    assert contract_at(outer, kind, path) == inner


def test_beta_before_eta():
    t = App(Abs(PROP, Bv(0)), x)
    inside = Abs(PROP, App(f, Bv(0)))
    both = App(Abs(fun(PROP, PROP), Abs(PROP, App(Bv(1), Bv(0)))), inside)
    kind, _ = next_step(both)
    assert kind == "beta"
    nf = beta_eta_norm(both)
    assert nf == f
    assert find_eta(t) is None


@pytest.mark.parametrize("seed", range(25))
def test_normalization_properties_on_random_welltyped_terms(seed):
    rng = random.Random(seed)
    T = rng.choice([PROP, fun(PROP, PROP)])
    t = gen_welltyped(rng, T, (), 5)
    nf = beta_eta_norm(t)
    assert nf is not None
    assert is_normal(nf)
    assert beta_eta_norm(nf) == nf
    assert typ_of((), nf) == typ_of((), t) == T


@pytest.mark.parametrize("seed", range(10))
def test_random_reduction_orders_agree_with_fixed_strategy(seed):
    # confluence spot check: contract arbitrary redexes, compare normal forms
    rng = random.Random(seed)
    t = gen_welltyped(rng, rng.choice([PROP, fun(PROP, PROP)]), (), 5)
    expected = beta_eta_norm(t)

    def random_normalize(t, steps=500):
        for _ in range(steps):
            redexes = []
            stack = [(t, ())]
            # enumerate all beta redex paths, then eta if none
            def walk(u, path):
                from mlcheck.syntax import Abs as _Abs, App as _App

                if isinstance(u, _App):
                    if isinstance(u.fun, _Abs):
                        redexes.append(("beta", path))
                    walk(u.fun, path + ("fun",))
                    walk(u.arg, path + ("arg",))
                elif isinstance(u, _Abs):
                    walk(u.body, path + ("body",))

            walk(t, ())
            if not redexes:
                kind_path = next_step(t)
                if kind_path is None:
                    return t
                t = contract_at(t, *kind_path)
                continue
            kind, path = rng.choice(redexes)
            t = contract_at(t, kind, path)
        raise AssertionError("did not terminate")

    assert random_normalize(t) == expected
