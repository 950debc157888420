"""A standalone higher-order metalogic kernel and proof-term checker.

The trusted part is :mod:`mlcheck.kernel` (backed by the syntax and
wellformedness layers); everything else, including proof replay and the
derived equality reasoning it uses for normalization, produces theorems only
through kernel rules.
"""

from .kernel import Ctxt, KernelError, Thm
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
    check_proof,
    hyps,
    replay,
    replay_thm,
)
from .reduction import beta_eta_norm
from .signature import (
    Signature,
    Theory,
    eq_axs,
    minimal_theory,
    std_sig,
    wf_theory,
)
from .sorts import OSig
from .syntax import (
    Abs,
    App,
    Bv,
    Ct,
    Fv,
    Indexed,
    Named,
    Term,
    Tv,
    Ty,
    Typ,
    mk_sort,
)

__all__ = [
    "Ctxt", "KernelError", "Thm",
    "PAxm", "PBound", "Abst", "AbsP", "Appt", "AppP", "OfClass", "Hyp",
    "ProofTerm", "check_proof", "hyps", "replay", "replay_thm",
    "beta_eta_norm",
    "Signature", "Theory", "eq_axs", "minimal_theory", "std_sig", "wf_theory",
    "OSig",
    "Abs", "App", "Bv", "Ct", "Fv", "Indexed", "Named", "Term", "Tv", "Ty",
    "Typ", "mk_sort",
]
