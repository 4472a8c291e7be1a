"""Exception hierarchy shared by every layer of the workbench."""


class OrganonError(Exception):
    """Base class for all workbench errors."""


class BoundExceeded(OrganonError):
    """A finite approximation would have to grow past its configured bounds."""


class ShapeError(OrganonError):
    """A model set does not have the nested-arrow shape an operation needs."""


class NonMonotone(OrganonError):
    """Negation occurs where only monotone constructions are allowed."""


class SeedInvalid(OrganonError):
    """An epsilon seed F0 does not satisfy F0 <= step(F0)."""


class NoConvergence(OrganonError):
    """Fixpoint iteration hit its iteration cap."""


class UnboundName(OrganonError):
    """A name is used that the environment does not define."""


class MissingValuation(OrganonError):
    """A relational query mentions a constant without a valuation."""


class CapExceeded(OrganonError):
    """The brute-force oracle refuses a carrier above its cap."""


class ParseError(OrganonError):
    """Syntax error; carries a source position when available."""

    def __init__(self, message, line=None, column=None, length=1):
        self.message = message
        self.line = line
        self.column = column
        self.length = length
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class ElaborationError(OrganonError):
    """A well-formed script is semantically invalid (arity clash, redefinition)."""


class NotApplicative(OrganonError):
    """Abstraction was asked for an expression with connectives or binders."""
