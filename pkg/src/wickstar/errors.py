"""Exception types shared across the engine."""


class WickError(Exception):
    """Base class for all engine errors."""


class InputError(WickError):
    """Malformed input file, expression, or schema violation."""


class ValidationError(WickError):
    """A structural invariant of chart / field / map / action data failed.

    ``details`` carries (name, index information) pairs naming each failed
    check so callers can report exactly which invariant broke.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or []


class SingularSubstitution(WickError):
    """A substitution produced an identically-zero denominator."""


class NotClosedError(WickError):
    """A primitive was requested for a one-form that is not closed."""


class RecursionSingularError(WickError):
    """The operator recursion hit a singular linear system.

    Cannot occur for valid chart data; indicates a violated chart invariant.
    """

    def __init__(self, order):
        super().__init__(f"recursion singular at order {order}")
        self.order = order


class InternalConsistencyError(WickError):
    """Two routes that must agree exactly disagreed; a construction bug."""
