"""Intuitionistic logics of finite reverse-inclusion subset frames.

The package provides the frames themselves (posets of nonempty subsets of
{0..n-1} ordered by reverse inclusion), a decision procedure for validity
and consequence over them, the structural characterization of which posets
arise this way, the endpoint rule correspondence, and the substitution
argument for structural completeness.
"""

from .errors import VerificationError, WorkCapExceeded
from .formula import (
    AmbiguityError,
    And,
    BOT,
    Bottom,
    Formula,
    Implies,
    Or,
    ParseError,
    Var,
    bd,
    big_and,
    big_or,
    edn_premise,
    fresh,
    kp,
    lam,
    neg,
    parse,
    parse_sequent,
    render,
    scheme,
    substitute,
    top,
    variables,
)
from .medvedev import (
    Countermodel,
    MedvedevFrame,
    Verdict,
    compactness_entailment,
    compactness_witness,
    decide,
    dp_failure_witness,
    edn_falsifier,
    edn_root_check,
    frame,
    separation_witness,
)
from .poset import (
    ConditionsReport,
    PMorphism,
    Poset,
    PosetError,
    characterize,
    check_conditions,
    check_uni,
    check_weak_uni,
    generated_subframe,
    induced_pmorphism,
    max_incompatible_family,
    max_pairwise_incompatible,
)
from .prucnal import BaseSystem, DemoReport, alpha_upset, base, classical_taut, prucnal_subst, structural_demo
from .semantics import (
    DEFAULT_UPSET_CAP,
    DEFAULT_WORK_CAP,
    Model,
    UpSet,
    Valuation,
    consequence,
    consequence_all,
    consequence_witness,
    denotation,
    falsifiable_worlds,
    falsify_at,
    forces,
    generated_submodel,
    pullback,
    upset_masks,
    upsets,
    valid_at,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguityError",
    "And",
    "BOT",
    "BaseSystem",
    "Bottom",
    "ConditionsReport",
    "Countermodel",
    "DEFAULT_UPSET_CAP",
    "DEFAULT_WORK_CAP",
    "DemoReport",
    "Formula",
    "Implies",
    "MedvedevFrame",
    "Model",
    "Or",
    "PMorphism",
    "ParseError",
    "Poset",
    "PosetError",
    "UpSet",
    "Valuation",
    "Var",
    "Verdict",
    "VerificationError",
    "WorkCapExceeded",
    "alpha_upset",
    "base",
    "bd",
    "big_and",
    "big_or",
    "characterize",
    "check_conditions",
    "check_uni",
    "check_weak_uni",
    "classical_taut",
    "compactness_entailment",
    "compactness_witness",
    "consequence",
    "consequence_all",
    "consequence_witness",
    "decide",
    "denotation",
    "dp_failure_witness",
    "edn_falsifier",
    "edn_premise",
    "edn_root_check",
    "falsifiable_worlds",
    "falsify_at",
    "forces",
    "frame",
    "fresh",
    "generated_subframe",
    "generated_submodel",
    "induced_pmorphism",
    "kp",
    "lam",
    "max_incompatible_family",
    "max_pairwise_incompatible",
    "neg",
    "parse",
    "parse_sequent",
    "prucnal_subst",
    "pullback",
    "render",
    "scheme",
    "separation_witness",
    "structural_demo",
    "substitute",
    "top",
    "upset_masks",
    "upsets",
    "valid_at",
    "variables",
]
