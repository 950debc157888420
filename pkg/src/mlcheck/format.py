"""Reading and writing theories, terms and proofs as s-expressions.

Theory files are sugar-expanded at load: the standard signature content, the
equality axioms, class constants for every declared class and the
reflexive-transitive closure of the subclass generators are injected
automatically, and axioms are stored beta-eta normalized.  A ``(no-std)``
marker suppresses all injection (used for canonical dumps and negative
tests); normalization of axioms always happens.

Canonical printing is deterministic: single-space separation, map entries
sorted, sorts in canonical order.  ``parse -> print`` is the identity on
canonically printed files and ``print -> parse`` the identity on values.
"""

from __future__ import annotations

from typing import Optional

from .conversion import FRESH_BASE
from .proofterm import (
    AbsP,
    Abst,
    AppP,
    Appt,
    Hyp,
    OfClass,
    PAxm,
    PBound,
    ProofTerm,
)
from .reduction import DEFAULT_BUDGET, beta_eta_norm
from .sexpr import SExpr, SexprError, Sym, parse_sexpr, print_sexpr
from .signature import (
    CLASS_CONST_SUFFIX,
    CLASS_CONST_TYPE,
    PROP,
    Signature,
    Theory,
    const_of_class,
    eq_axs,
    is_std_sig,
    std_sig,
    wf_sig,
    wf_type,
    wt_term,
)
from .sorts import OSig, wf_osig, wf_subclass, wf_tcsigs
from .syntax import (
    Abs,
    App,
    Bv,
    Ct,
    Fv,
    Indexed,
    Named,
    Sort,
    Term,
    Tv,
    Ty,
    Typ,
    Var,
    mk_sort,
    typ_of,
)


class FormatError(Exception):
    """Input could not be decoded; ``kind`` is one of SyntaxError,
    DuplicateDeclaration or IllFormedTheory."""

    def __init__(self, kind: str, message: str, line: int = None, col: int = None):
        pos = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{pos}{kind}: {message}")
        self.kind = kind
        self.message = message
        self.line = line
        self.col = col


def _syntax(message: str) -> FormatError:
    return FormatError("SyntaxError", message)


def _dup(message: str) -> FormatError:
    return FormatError("DuplicateDeclaration", message)


def _form(e: SExpr, head: str, arity: int = None) -> tuple:
    if not (isinstance(e, tuple) and e and isinstance(e[0], Sym) and e[0].text == head):
        raise _syntax(f"expected ({head} ...), got {print_sexpr(e)}")
    if arity is not None and len(e) - 1 != arity:
        raise _syntax(f"({head} ...) takes {arity} arguments, got {print_sexpr(e)}")
    return e[1:]


def _head(e: SExpr) -> str:
    if isinstance(e, tuple) and e and isinstance(e[0], Sym):
        return e[0].text
    raise _syntax(f"expected a parenthesized form, got {print_sexpr(e)}")


def _name(e: SExpr, what: str) -> str:
    if not isinstance(e, str) or not e:
        raise _syntax(f"expected a nonempty quoted {what}, got {print_sexpr(e)}")
    return e


def _nat(e: SExpr, what: str) -> int:
    if not isinstance(e, int):
        raise _syntax(f"expected a natural number for {what}, got {print_sexpr(e)}")
    return e


def _var_name(e: SExpr) -> str:
    name = _name(e, "variable name")
    if name == FRESH_BASE:
        raise _syntax(f"variable name {FRESH_BASE!r} is reserved")
    return name


# --------------------------------------------------------------------------
# Types, variables, sorts, terms
# --------------------------------------------------------------------------

def parse_var_sx(e: SExpr) -> Var:
    match _head(e):
        case "named":
            (n,) = _form(e, "named", 1)
            return Named(_var_name(n))
        case "idx":
            n, k = _form(e, "idx", 2)
            return Indexed(_var_name(n), _nat(k, "variable index"))
    raise _syntax(f"expected a variable, got {print_sexpr(e)}")


def var_sx(v: Var) -> SExpr:
    if isinstance(v, Named):
        return (Sym("named"), v.name)
    return (Sym("idx"), v.name, v.idx)


def parse_sort_sx(e: SExpr) -> Sort:
    body = _form(e, "sort")
    return mk_sort(_name(c, "class name") for c in body)


def sort_sx(S: Sort) -> SExpr:
    return (Sym("sort"), *S)


def parse_typ_sx(e: SExpr) -> Typ:
    match _head(e):
        case "ty":
            body = _form(e, "ty")
            if not body:
                raise _syntax("(ty ...) needs a constructor name")
            return Ty(_name(body[0], "type constructor"),
                      tuple(parse_typ_sx(a) for a in body[1:]))
        case "tv":
            v, s = _form(e, "tv", 2)
            return Tv(parse_var_sx(v), parse_sort_sx(s))
    raise _syntax(f"expected a type, got {print_sexpr(e)}")


def typ_sx(T: Typ) -> SExpr:
    if isinstance(T, Ty):
        return (Sym("ty"), T.name, *(typ_sx(a) for a in T.args))
    return (Sym("tv"), var_sx(T.var), sort_sx(T.sort))


def parse_term_sx(e: SExpr) -> Term:
    match _head(e):
        case "ct":
            c, T = _form(e, "ct", 2)
            return Ct(_name(c, "constant name"), parse_typ_sx(T))
        case "fv":
            v, T = _form(e, "fv", 2)
            return Fv(parse_var_sx(v), parse_typ_sx(T))
        case "bv":
            (k,) = _form(e, "bv", 1)
            return Bv(_nat(k, "index"))
        case "abs":
            T, body = _form(e, "abs", 2)
            return Abs(parse_typ_sx(T), parse_term_sx(body))
        case "app":
            f, a = _form(e, "app", 2)
            return App(parse_term_sx(f), parse_term_sx(a))
    raise _syntax(f"expected a term, got {print_sexpr(e)}")


def term_sx(t: Term) -> SExpr:
    match t:
        case Ct(c, T):
            return (Sym("ct"), c, typ_sx(T))
        case Fv(v, T):
            return (Sym("fv"), var_sx(v), typ_sx(T))
        case Bv(k):
            return (Sym("bv"), k)
        case Abs(T, body):
            return (Sym("abs"), typ_sx(T), term_sx(body))
        case App(f, a):
            return (Sym("app"), term_sx(f), term_sx(a))
    raise ValueError(f"not a term: {t!r}")


def parse_term(text: str) -> Term:
    return parse_term_sx(_parse_text(text))


def print_term(t: Term) -> str:
    return print_sexpr(term_sx(t))


def print_typ(T: Typ) -> str:
    return print_sexpr(typ_sx(T))


def _parse_text(text: str) -> SExpr:
    try:
        return parse_sexpr(text)
    except SexprError as e:
        raise FormatError("SyntaxError", e.message, e.line, e.col) from None


# --------------------------------------------------------------------------
# Proof terms
# --------------------------------------------------------------------------

def parse_proof_sx(e: SExpr) -> ProofTerm:
    match _head(e):
        case "paxm":
            t, entries = _form(e, "paxm", 2)
            if not isinstance(entries, tuple):
                raise _syntax("(paxm ...) needs a substitution entry list")
            inst = []
            seen = set()
            for entry in entries:
                if not (isinstance(entry, tuple) and len(entry) == 3):
                    raise _syntax(f"bad substitution entry {print_sexpr(entry)}")
                v = parse_var_sx(entry[0])
                S = parse_sort_sx(entry[1])
                if (v, S) in seen:
                    raise _dup(f"substitution key declared twice: {print_sexpr(entry[0])}")
                seen.add((v, S))
                inst.append(((v, S), parse_typ_sx(entry[2])))
            return PAxm(parse_term_sx(t), tuple(inst))
        case "pbound":
            (k,) = _form(e, "pbound", 1)
            return PBound(_nat(k, "assumption index"))
        case "abst":
            T, p = _form(e, "abst", 2)
            return Abst(parse_typ_sx(T), parse_proof_sx(p))
        case "absp":
            t, p = _form(e, "absp", 2)
            return AbsP(parse_term_sx(t), parse_proof_sx(p))
        case "appt":
            p, t = _form(e, "appt", 2)
            return Appt(parse_proof_sx(p), parse_term_sx(t))
        case "appp":
            p, q = _form(e, "appp", 2)
            return AppP(parse_proof_sx(p), parse_proof_sx(q))
        case "ofclass":
            T, c = _form(e, "ofclass", 2)
            return OfClass(parse_typ_sx(T), _name(c, "class name"))
        case "hyp":
            (t,) = _form(e, "hyp", 1)
            return Hyp(parse_term_sx(t))
    raise _syntax(f"expected a proof, got {print_sexpr(e)}")


def proof_sx(p: ProofTerm) -> SExpr:
    match p:
        case PAxm(t, inst):
            entries = tuple(
                (var_sx(v), sort_sx(S), typ_sx(T)) for (v, S), T in inst
            )
            return (Sym("paxm"), term_sx(t), entries)
        case PBound(k):
            return (Sym("pbound"), k)
        case Abst(T, q):
            return (Sym("abst"), typ_sx(T), proof_sx(q))
        case AbsP(t, q):
            return (Sym("absp"), term_sx(t), proof_sx(q))
        case Appt(q, t):
            return (Sym("appt"), proof_sx(q), term_sx(t))
        case AppP(q, r):
            return (Sym("appp"), proof_sx(q), proof_sx(r))
        case OfClass(T, c):
            return (Sym("ofclass"), typ_sx(T), c)
        case Hyp(t):
            return (Sym("hyp"), term_sx(t))
    raise ValueError(f"not a proof term: {p!r}")


def parse_proof(text: str) -> tuple:
    """Decode a proof file: returns (proof, claimed proposition)."""
    e = _parse_text(text)
    p, t = _form(e, "check", 2)
    return parse_proof_sx(p), parse_term_sx(t)


def print_proof(p: ProofTerm, prop: Term) -> str:
    return print_sexpr((Sym("check"), proof_sx(p), term_sx(prop)))


# --------------------------------------------------------------------------
# Theories
# --------------------------------------------------------------------------

def _check_class_name(name: str) -> str:
    if CLASS_CONST_SUFFIX in name:
        raise _syntax(
            f"class name {name!r} may not contain {CLASS_CONST_SUFFIX!r}"
        )
    return name


def _pair_names(pairs) -> set:
    return {x for pair in pairs for x in pair}


def _transitive_closure(pairs: set) -> frozenset:
    rel = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for b2, c in list(rel):
                if b2 == b and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    return frozenset(rel)


def parse_theory(text: str, budget: int = DEFAULT_BUDGET) -> Theory:
    """Load and validate a theory file; raises FormatError on bad input or a
    theory that fails wellformedness."""
    e = _parse_text(text)
    body = _form(e, "theory")

    sections: dict = {}
    no_std = False
    for item in body:
        head = _head(item)
        if head == "no-std":
            _form(item, "no-std", 0)
            no_std = True
            continue
        if head not in ("classes", "tcsigs", "arities", "consts", "axioms"):
            raise _syntax(f"unknown theory section {print_sexpr(item)}")
        if head in sections:
            raise _dup(f"section ({head} ...) declared twice")
        sections[head] = item[1:]

    # classes: bare names declare classes, (sub ...) lists generator pairs
    classes: set = set()
    gen_pairs: set = set()
    for item in sections.get("classes", ()):
        if isinstance(item, str):
            classes.add(_check_class_name(_name(item, "class name")))
            continue
        for pair in _form(item, "sub"):
            if not (isinstance(pair, tuple) and len(pair) == 2):
                raise _syntax(f"bad subclass pair {print_sexpr(pair)}")
            c, d = (_check_class_name(_name(x, "class name")) for x in pair)
            classes.update((c, d))
            gen_pairs.add((c, d))

    if no_std:
        # raw content: bare names still declare their class, but the pairs
        # are taken exactly as written (negative tests rely on this)
        sub = frozenset(gen_pairs | {(c, c) for c in classes - _pair_names(gen_pairs)})
    else:
        sub = _transitive_closure(gen_pairs | {(c, c) for c in classes})

    arities: dict = {} if no_std else {"fun": 2, "prop": 0, "itself": 1}
    std_arities = set(arities)
    for item in sections.get("arities", ()):
        if not (isinstance(item, tuple) and len(item) == 2):
            raise _syntax(f"bad arity declaration {print_sexpr(item)}")
        kappa = _name(item[0], "type constructor")
        if kappa in arities:
            which = "the standard signature" if kappa in std_arities else "this file"
            raise _dup(f"type constructor {kappa!r} already declared in {which}")
        arities[kappa] = _nat(item[1], "arity")

    tcs: dict = {}
    for item in sections.get("tcsigs", ()):
        if not (isinstance(item, tuple) and item):
            raise _syntax(f"bad constructor signature {print_sexpr(item)}")
        kappa = _name(item[0], "type constructor")
        if kappa in tcs:
            raise _dup(f"constructor signature for {kappa!r} declared twice")
        dm: dict = {}
        for entry in item[1:]:
            if not (isinstance(entry, tuple) and len(entry) == 2):
                raise _syntax(f"bad class entry {print_sexpr(entry)}")
            c = _name(entry[0], "class name")
            if c in dm:
                raise _dup(f"class {c!r} declared twice under {kappa!r}")
            if not isinstance(entry[1], tuple):
                raise _syntax(f"expected a sort list, got {print_sexpr(entry[1])}")
            dm[c] = tuple(parse_sort_sx(s) for s in entry[1])
        tcs[kappa] = dm
    if not no_std:
        for kappa in arities:
            tcs.setdefault(kappa, {})

    const_type: dict = {}
    if not no_std:
        const_type.update(std_sig().const_type)
        for c in sorted(classes):
            const_type[const_of_class(c)] = CLASS_CONST_TYPE
    reserved_consts = set(const_type)
    for item in sections.get("consts", ()):
        if not (isinstance(item, tuple) and len(item) == 2):
            raise _syntax(f"bad constant declaration {print_sexpr(item)}")
        name = _name(item[0], "constant name")
        if name in const_type:
            which = "implicitly" if name in reserved_consts else "in this file"
            raise _dup(f"constant {name!r} already declared {which}")
        if not no_std and name.endswith(CLASS_CONST_SUFFIX):
            raise _dup(f"constant {name!r} collides with the class constant namespace")
        const_type[name] = parse_typ_sx(item[1])

    axioms = [parse_term_sx(t) for t in sections.get("axioms", ())]
    if not no_std:
        axioms.extend(eq_axs())

    normed = []
    for ax in axioms:
        nf = beta_eta_norm(ax, budget)
        if nf is None:
            raise FormatError(
                "IllFormedTheory",
                f"axiom does not normalize within budget: {print_term(ax)}",
            )
        normed.append(nf)

    theory = Theory(
        sig=Signature(const_type=const_type, type_arity=arities,
                      osig=OSig(sub=sub, tcs=tcs)),
        axioms=frozenset(normed),
    )
    problem = theory_problem(theory)
    if problem is not None:
        raise FormatError("IllFormedTheory", problem)
    return theory


def theory_problem(theory: Theory) -> Optional[str]:
    """Which wellformedness conjunct fails, as a message, or None."""
    sig = theory.sig
    if not wf_subclass(sig.osig.sub):
        return "wf-subclass: subclass relation is not a partial order on its field"
    if not wf_tcsigs(sig.osig.sub, sig.osig.tcs):
        return ("wf-tcsigs: constructor signatures violate superclass closure, "
                "arity agreement or sort wellformedness")
    for name, T in sorted(sig.const_type.items()):
        if not wf_type(sig, T):
            return f"wf-sig: declared type of constant {name!r} is not wellformed"
    if set(sig.osig.tcs.keys()) != set(sig.type_arity.keys()):
        return "wf-sig: type constructors with signatures and with arities differ"
    for kappa, dm in sig.osig.tcs.items():
        for sorts in dm.values():
            if sig.type_arity.get(kappa) != len(sorts):
                return f"wf-sig: signature of {kappa!r} disagrees with its arity"
    for p in sorted(theory.axioms, key=print_term):
        if not wt_term(sig, p):
            return f"axiom is not welltyped: {print_term(p)}"
        if typ_of((), p) != PROP:
            return f"axiom is not of type prop: {print_term(p)}"
    if not is_std_sig(sig):
        return "is-std-sig: standard types or constants missing or altered"
    normed = {beta_eta_norm(p) for p in theory.axioms}
    for ax in eq_axs():
        if beta_eta_norm(ax) not in normed:
            return f"eq-axs: equality axiom missing: {print_term(ax)}"
    assert wf_sig(sig) and wf_osig(sig.osig)
    return None


def theory_sx(theory: Theory) -> SExpr:
    sig = theory.sig
    items: list = [Sym("theory"), (Sym("no-std"),)]
    if sig.osig.sub:
        pairs = tuple(sorted(sig.osig.sub))
        items.append((Sym("classes"), (Sym("sub"), *pairs)))
    if sig.osig.tcs:
        entries = []
        for kappa in sorted(sig.osig.tcs):
            dm = sig.osig.tcs[kappa]
            entry = [kappa]
            for c in sorted(dm):
                entry.append((c, tuple(sort_sx(S) for S in dm[c])))
            entries.append(tuple(entry))
        items.append((Sym("tcsigs"), *entries))
    if sig.type_arity:
        items.append((Sym("arities"),
                      *((k, sig.type_arity[k]) for k in sorted(sig.type_arity))))
    if sig.const_type:
        items.append((Sym("consts"),
                      *((c, typ_sx(sig.const_type[c])) for c in sorted(sig.const_type))))
    if theory.axioms:
        items.append((Sym("axioms"),
                      *(term_sx(t) for t in sorted(theory.axioms, key=print_term))))
    return tuple(items)


def print_theory(theory: Theory) -> str:
    """Canonical dump: explicit (no-std) content, deterministically sorted."""
    return print_sexpr(theory_sx(theory))
