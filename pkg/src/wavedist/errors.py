"""Exception hierarchy shared by all wavedist modules."""


class WavedistError(Exception):
    """Base class for all errors raised by wavedist."""


class ParameterDomainError(WavedistError, ValueError):
    """Distribution parameters are non-finite or violate the family's constraints."""


class DomainError(WavedistError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class EmptyInputError(WavedistError, ValueError):
    pass


class DegenerateInputError(WavedistError, ValueError):
    """The input does not determine a unique solution (e.g. a single observation)."""


class InsufficientTailError(WavedistError, ValueError):
    pass


class InsufficientDataError(WavedistError, ValueError):
    pass


class EstimationError(WavedistError, RuntimeError):
    """A parameter estimator failed.

    Parameters
    ----------
    message : str
        Human readable reason.
    last_iterate : array_like, optional
        Last parameter vector visited by the optimizer.
    diagnostics : dict, optional
        Optimizer status information.
    """

    def __init__(self, message, last_iterate=None, diagnostics=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.diagnostics = diagnostics or {}


class BootstrapUnstableError(WavedistError, RuntimeError):
    def __init__(self, message, n_failed, n_total):
        super().__init__(message)
        self.n_failed = n_failed
        self.n_total = n_total


class FileFormatError(WavedistError, ValueError):
    pass


class ConfigError(WavedistError, ValueError):
    pass
