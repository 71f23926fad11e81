"""Exception types shared across the engine."""


class CenterbookError(Exception):
    """Base class for every error the engine raises on purpose."""


class DocumentError(CenterbookError):
    """A scenario, book, or template document is malformed."""


class InvariantError(CenterbookError):
    """A structural invariant is violated, e.g. priors that do not sum to 1."""


class UnknownLabelError(CenterbookError):
    """A world, slot, agent, or observation label is not declared."""


class OfferError(CenterbookError):
    """A bet was evaluated somewhere its offer rule does not place it."""


class LegitimacyError(CenterbookError):
    """A book's offer process uses information the agent does not have."""


class UnjustifiedClassError(CenterbookError):
    """An alikeness class referenced by evidential linkage fails verification."""


class BoundsError(CenterbookError):
    """Synthesis bounds are empty, unordered, or missing."""


class BudgetError(CenterbookError):
    """A grid search would exceed the configured evaluation budget."""
