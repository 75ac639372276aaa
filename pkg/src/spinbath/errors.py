"""Exception hierarchy shared by the library and the CLI."""


class SpinbathError(Exception):
    """Base class for all errors raised by spinbath."""


class ArgumentError(SpinbathError, ValueError):
    pass


class ContractError(SpinbathError, ValueError):
    """An input violates a precondition that cannot be repaired (e.g. non-Hermitian H)."""


class CapacityError(SpinbathError):
    """The requested Hilbert space exceeds the configured dense-diagonalization cap."""


class NumericOverflowError(SpinbathError, ArithmeticError):
    pass


class NoDecayError(SpinbathError):
    """The coherence never fell below 1/e, so no initial decay time exists."""


class InsufficientDataError(SpinbathError, ValueError):
    pass


class ConfigError(SpinbathError):
    """Base for configuration problems."""


class ConfigParseError(ConfigError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigValidationError(ConfigError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
