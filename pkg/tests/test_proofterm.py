"""Proof-term replay, hypothesis extraction, the top-level checker."""

from __future__ import annotations

import pytest

from mlcheck.conversion import FRESH_BASE
from mlcheck.proofterm import (
    AbsP,
    Abst,
    AppP,
    Appt,
    Hyp,
    OfClass,
    PAxm,
    PBound,
    ReplayFailure,
    check_proof,
    close_term,
    hyps,
    replay,
    replay_thm,
)
from mlcheck.reduction import beta_eta_norm
from mlcheck.signature import A, PROP, Theory, eq_axs, fun, mk_eq, mk_imp
from mlcheck.syntax import Abs, App, Bv, Fv, Indexed, Named, Ty

pa = Fv(Named("A"), PROP)
pb = Fv(Named("B"), PROP)
x = Fv(Named("x"), A)
y = Fv(Named("y"), A)


def test_hyps_extraction():
    assert hyps(PBound(0)) == []
    assert hyps(Hyp(pa)) == [pa]
    assert hyps(AppP(Hyp(pa), Hyp(pb))) == [pa, pb]
    assert hyps(AbsP(pa, Appt(Hyp(pb), x))) == [pb]


def test_close_term_resolves_loose_indices():
    stack = [(Named("u"), PROP), (Named("v"), A)]
    t = App(Bv(0), Bv(1))
    assert close_term(t, stack) == App(Fv(Named("v"), A), Fv(Named("u"), PROP))
    under = Abs(PROP, App(Bv(0), Bv(1)))
    assert close_term(under, stack) == Abs(PROP, App(Bv(0), Fv(Named("v"), A)))
    # beyond the stack: left loose
    assert close_term(Bv(5), stack) == Bv(5)


def test_replay_identity(min_ctxt):
    assert replay(min_ctxt, AbsP(pa, PBound(0))) == mk_imp(pa, pa)


def test_replay_axiom_instantiation(min_ctxt):
    p = PAxm(eq_axs()[0], (((Named("'a"), ()), PROP),))
    xp = Fv(Named("x"), PROP)
    assert replay(min_ctxt, p) == mk_eq(PROP, xp, xp)


def test_replay_out_of_range_pbound(min_ctxt):
    assert replay(min_ctxt, PBound(5)) is None
    with pytest.raises(ReplayFailure) as info:
        replay_thm(min_ctxt, PBound(5))
    assert info.value.kind == "UnboundAssumption"
    assert info.value.path == ("PBound",)


def test_replay_failure_paths(min_ctxt):
    bad = AbsP(pa, AppP(PAxm(mk_imp(pa, pa), ()), PBound(0)))
    with pytest.raises(ReplayFailure) as info:
        replay_thm(min_ctxt, bad)
    assert info.value.path == ("AbsP", "AppP", "PAxm")
    assert info.value.kind == "NotAnAxiom"


def test_replay_forall_roundtrip_uses_fresh_variables(min_ctxt):
    p = Appt(Abst(PROP, AbsP(Bv(0), PBound(0))), pa)
    th = replay_thm(min_ctxt, p)
    assert th.concl == mk_imp(pa, pa)
    assert th.hyps == frozenset()


def test_replay_nested_abst_binders(min_ctxt):
    # forall a b. a ==> (b ==> a), then instantiate both
    inner = AbsP(Bv(1), AbsP(Bv(0), PBound(1)))
    p = Appt(Appt(Abst(PROP, Abst(PROP, inner)), pa), pb)
    assert replay(min_ctxt, p) == mk_imp(pa, mk_imp(pb, pa))


def test_replay_keeps_conclusions_normal(min_ctxt):
    redex = App(Abs(PROP, Bv(0)), pa)
    th = replay_thm(min_ctxt, AbsP(redex, PBound(0)))
    assert th.concl == mk_imp(pa, pa)
    assert beta_eta_norm(th.concl) == th.concl


def test_replay_hyp_normalizes_payload(min_ctxt):
    redex = App(Abs(PROP, Bv(0)), pa)
    th = replay_thm(min_ctxt, Hyp(redex))
    assert th.concl == pa and th.hyps == {pa}


def test_replay_rejects_duplicate_substitution_keys(min_ctxt):
    key = ((Named("'a"), ()), PROP)
    p = PAxm(eq_axs()[0], (key, key))
    with pytest.raises(ReplayFailure) as info:
        replay_thm(min_ctxt, p)
    assert info.value.kind == "DuplicateInstKey"


def test_replay_rejects_reserved_variable_names(min_ctxt):
    poisoned = Fv(Indexed(FRESH_BASE, 0), PROP)
    with pytest.raises(ReplayFailure) as info:
        replay_thm(min_ctxt, Hyp(poisoned))
    assert info.value.kind == "ReservedName"


def test_replay_is_deterministic(min_ctxt):
    p = Appt(Abst(PROP, AbsP(Bv(0), PBound(0))), pa)
    assert replay(min_ctxt, p) == replay(min_ctxt, p)


def test_replay_ofclass(toy_ctxt):
    nat = Ty("nat", ())
    th = replay_thm(toy_ctxt, OfClass(nat, "ord"))
    assert th.hyps == frozenset()


def test_check_proof(min_theory):
    p = AbsP(pa, PBound(0))
    assert check_proof(min_theory, p, mk_imp(pa, pa))
    assert not check_proof(min_theory, p, mk_imp(pa, pb))
    broken = Theory(sig=min_theory.sig, axioms=frozenset())
    assert not check_proof(broken, p, mk_imp(pa, pa))


def test_check_proof_normalizes_claim(min_theory):
    p = AbsP(pa, PBound(0))
    claim = mk_imp(App(Abs(PROP, Bv(0)), pa), pa)
    assert check_proof(min_theory, p, claim)


def test_theorem_2_shape_on_replayed_proofs(min_ctxt):
    # hypotheses of the replayed theorem are among the proof's Hyp payloads
    p = AppP(AbsP(pa, AppP(Hyp(mk_imp(pa, pb)), PBound(0))), Hyp(pa))
    th = replay_thm(min_ctxt, p)
    declared = {beta_eta_norm(h) for h in hyps(p)}
    assert th.hyps <= declared
    assert th.concl == pb
