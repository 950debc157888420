"""Order-sorted signatures: the subclass/subsort orderings, sort
normalization, the has-sort judgment and wellformedness of the whole
structure including coregularity."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .syntax import Sort, Tv, Ty, Typ, mk_sort

# The subclass relation is stored as the full reflexive-transitive set of
# pairs; wf_subclass verifies closure rather than computing it.
SubclassRel = frozenset  # frozenset[tuple[str, str]]

# Type constructor signatures: constructor -> (class -> argument sorts).
TcSigs = Mapping  # Mapping[str, Mapping[str, tuple[Sort, ...]]]


@dataclass
class OSig:
    sub: frozenset = frozenset()
    tcs: dict = field(default_factory=dict)


def rel_field(sub) -> frozenset:
    """All names occurring on either side of the relation."""
    return frozenset(x for pair in sub for x in pair)


def class_le(sub, c1: str, c2: str) -> bool:
    return (c1, c2) in sub


def subsort_le(sub, S1: Sort, S2: Sort) -> bool:
    """Every class of S2 must be subsumed by some class of S1."""
    return all(any(class_le(sub, c1, c2) for c1 in S1) for c2 in S2)


def normalize_sort(sub, S: Sort) -> Sort:
    """Drop the classes of S strictly subsumed by another class of S."""
    return mk_sort(
        c for c in S
        if not any((c2, c) in sub and (c, c2) not in sub for c2 in S)
    )


def wf_sort(sub, S: Sort) -> bool:
    return normalize_sort(sub, S) == mk_sort(S) == S and set(S) <= rel_field(sub)


def has_sort(oss: OSig, T: Typ, S: Sort) -> bool:
    """Does ``T`` fulfill the sort constraint ``S``?

    A type variable is checked through the subsort ordering.  A constructor
    application must, for every class in ``S``, carry a signature whose
    argument sorts are fulfilled by the argument types.
    """
    match T:
        case Tv(_, S0):
            return subsort_le(oss.sub, S0, S)
        case Ty(name, args):
            dm = oss.tcs.get(name)
            for c in S:
                if dm is None:
                    return False
                sorts = dm.get(c)
                if sorts is None or len(sorts) != len(args):
                    return False
                if not all(has_sort(oss, a, s) for a, s in zip(args, sorts)):
                    return False
            return True
    return False


def tcs_triples(tcs) -> frozenset:
    """The (constructor, argument sorts, class) view of the signatures."""
    return frozenset(
        (kappa, sorts, c)
        for kappa, dm in tcs.items()
        for c, sorts in dm.items()
    )


def wf_subclass(sub) -> bool:
    """Partial order with reflexivity restricted to the relation's field."""
    fld = rel_field(sub)
    if not all((x, x) in sub for x in fld):
        return False
    by_left: dict = {}
    for a, b in sub:
        by_left.setdefault(a, []).append(b)
    for a, b in sub:
        for c in by_left.get(b, ()):
            if (a, c) not in sub:
                return False
    return all(a == b for a, b in sub if (b, a) in sub)


def wf_tcsigs(sub, tcs) -> bool:
    triples = tcs_triples(tcs)
    # superclass closure and coregularity: a signature for a class forces a
    # pointwise-dominating signature for each of its superclasses
    for kappa, sorts1, c1 in triples:
        for cx, c2 in sub:
            if cx != c1:
                continue
            sorts2 = tcs[kappa].get(c2)
            if sorts2 is None or len(sorts2) != len(sorts1):
                return False
            if not all(subsort_le(sub, s1, s2) for s1, s2 in zip(sorts1, sorts2)):
                return False
    # constant arity per constructor
    arities: dict = {}
    for kappa, sorts, _ in triples:
        if arities.setdefault(kappa, len(sorts)) != len(sorts):
            return False
    # every argument sort wellformed
    return all(
        wf_sort(sub, s) for _, sorts, _ in triples for s in sorts
    )


def wf_osig(oss: OSig) -> bool:
    return wf_subclass(oss.sub) and wf_tcsigs(oss.sub, oss.tcs)
