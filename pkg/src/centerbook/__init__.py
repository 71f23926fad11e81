"""centerbook: an exact engine for self-locating-belief betting experiments.

Models experiments as centered worlds with rational priors, computes halfer
and thirder credences, evaluates bets under causal or evidential decision
theory with configurable evidential linkage, verifies and legitimacy-checks
Dutch books, and synthesizes new ones by exact linear feasibility or grid
search. All arithmetic is exact; no float ever touches a verdict.
"""

from .credence import CenteredCredence, CredenceRule, credence
from .decision import (
    CDT,
    EDT,
    AgentSpec,
    AlikeClasses,
    Bet,
    Decision,
    OnObservation,
    PreExperiment,
    SameInfoOnly,
    TieRule,
    briggs_condition,
    evaluate_offer,
    evaluate_pre_experiment,
    rho_threshold,
)
from .dutchbook import (
    Book,
    DutchBookVerdict,
    Ledger,
    LedgerEntry,
    check_legitimacy,
    load_book,
    simulate_book,
)
from .errors import (
    BoundsError,
    BudgetError,
    CenterbookError,
    DocumentError,
    InvariantError,
    LegitimacyError,
    OfferError,
    UnjustifiedClassError,
    UnknownLabelError,
)
from .model import (
    AlikenessCheck,
    Center,
    Experiment,
    InformationState,
    World,
    consistent_centers,
    count_centers,
    experiment_to_document,
    load_experiment,
    verify_alikeness,
)
from .rationals import Rational, format_rational, parse_rational
from .synth import (
    BookTemplate,
    GridSpec,
    LinearConstraint,
    SynthesisResult,
    TemplateBet,
    build_constraints,
    immunity_grid_check,
    load_template,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "AgentSpec",
    "AlikeClasses",
    "AlikenessCheck",
    "Bet",
    "Book",
    "BookTemplate",
    "BoundsError",
    "BudgetError",
    "CDT",
    "CenterbookError",
    "Center",
    "CenteredCredence",
    "CredenceRule",
    "Decision",
    "DocumentError",
    "DutchBookVerdict",
    "EDT",
    "Experiment",
    "GridSpec",
    "InformationState",
    "InvariantError",
    "Ledger",
    "LedgerEntry",
    "LegitimacyError",
    "LinearConstraint",
    "OfferError",
    "OnObservation",
    "PreExperiment",
    "Rational",
    "SameInfoOnly",
    "SynthesisResult",
    "TemplateBet",
    "TieRule",
    "UnjustifiedClassError",
    "UnknownLabelError",
    "World",
    "briggs_condition",
    "build_constraints",
    "check_legitimacy",
    "consistent_centers",
    "count_centers",
    "credence",
    "evaluate_offer",
    "evaluate_pre_experiment",
    "experiment_to_document",
    "format_rational",
    "immunity_grid_check",
    "load_book",
    "load_experiment",
    "load_template",
    "parse_rational",
    "rho_threshold",
    "simulate_book",
    "synthesize",
    "verify_alikeness",
]
