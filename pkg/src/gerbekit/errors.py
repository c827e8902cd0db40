"""Exception hierarchy.

Every failure mode raised by the library derives from GerbeKitError so
callers (notably the CLI) can separate malformed inputs from genuine
mathematical signals such as a nonzero obstruction class.
"""


class GerbeKitError(Exception):
    """Base class for all library errors."""


class MalformedInputError(GerbeKitError):
    """Input data violates a structural precondition (bad facet, bad JSON)."""

    def __init__(self, message, json_path=None):
        super().__init__(message)
        self.json_path = json_path


class ContractViolationError(GerbeKitError):
    """Two values that must agree (complex, coefficients, degree) do not."""


class DomainError(GerbeKitError):
    """An argument is outside the mathematically meaningful range."""


class NotACocycleError(GerbeKitError):
    """An operation required delta(c) = 0 and the input fails it."""


class InvalidMapError(GerbeKitError):
    """A vertex map does not send simplices to simplices."""


class InconsistentInputError(GerbeKitError):
    """Numerical data is too far from the exact structure it should encode."""


class InvalidTransitionDataError(GerbeKitError):
    """Quotient-valued transition data fails the cocycle identity."""


class IncompleteStructureError(GerbeKitError):
    """A connective structure is missing data that an evaluation needs."""


class InvalidChartError(GerbeKitError):
    """A chart assignment is not admissible for a simplex."""


class SubordinationError(GerbeKitError):
    """A simplex does not fit inside any chart of the cover."""
