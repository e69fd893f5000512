"""Exception hierarchy shared by the library and the command line."""


class BosonCIError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(BosonCIError, ValueError):
    """Invalid parameters or an unsupported configuration."""


class BracketError(BosonCIError):
    """A search bracket does not contain the sought extremum or root.

    ``samples`` holds the ``(x, f(x))`` pairs inspected before giving up.
    """

    def __init__(self, message, samples=()):
        super().__init__(message)
        self.samples = list(samples)


class NumericalError(BosonCIError, ArithmeticError):
    """An eigensolver or iterative routine failed to produce a valid result."""


class UnsupportedError(ConfigurationError):
    """The requested routine does not apply to the given trap."""
