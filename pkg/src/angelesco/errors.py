"""Exception types shared across the package."""


class NumericalFailure(RuntimeError):
    """Raised when a numerical procedure leaves its domain of validity.

    Carries an optional ``context`` dict with diagnostics (last good state,
    offending values) so callers can report where the computation broke down.
    """

    def __init__(self, message, context=None):
        super().__init__(message)
        self.context = dict(context) if context else {}
