"""Shared exception types.

Every precondition violation raises a subclass of GradedSupportError so the
CLI can map library failures onto exit code 2 uniformly.
"""


class GradedSupportError(Exception):
    """Base class for all library errors."""


class PreconditionError(GradedSupportError):
    """An operation was called outside its stated domain."""


class UnsupportedFormError(PreconditionError):
    """The degree-set form cannot support the requested operation."""


class WindowViolationError(PreconditionError):
    """A degree or value fell outside the relevant window."""


class ShapeError(PreconditionError):
    """Matrix or component dimensions do not line up."""


class LabelError(PreconditionError):
    """Idempotent tags are inconsistent or out of range."""


class GradingViolationError(PreconditionError):
    """A map or module breaks the grading it claims to carry."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapacityError(PreconditionError):
    """The request exceeds a documented implementation cap."""


class SchemaError(GradedSupportError):
    """A JSON document does not match the expected schema.

    path locates the offending entry, e.g. "components[2].dim".
    """

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class InternalConsistencyError(GradedSupportError):
    """An invariant the library is supposed to guarantee failed.

    Raised instead of returning silently wrong data; seeing this is a bug.
    """
