class KSharpError(Exception):
    """Base class for errors raised by the laboratory."""


class DomainError(KSharpError, ValueError):
    """An argument lies outside the domain an operation accepts."""


class SnapshotFormatError(KSharpError, ValueError):
    """A snapshot or manifest file could not be parsed."""


class SimulationBlowUp(KSharpError):
    """A run produced non-finite values or grew past the blow-up limit.

    `record` holds the diagnostics gathered up to the abort and `state` the
    last state that passed the finiteness check.
    """

    def __init__(self, message: str, record=None, state=None):
        super().__init__(message)
        self.record = record
        self.state = state
