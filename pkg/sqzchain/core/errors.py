"""
Exception hierarchy with stable error codes.

Every error carries a machine-readable ``code`` that prefixes its message and
the process exit status the command line reports for it.
"""


class SqzChainError(Exception):
    code = "E_SQZCHAIN"
    exit_code = 1

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class DomainError(SqzChainError, ValueError):
    """Argument outside the domain of a physical operation."""

    code = "E_DOMAIN"
    exit_code = 3


class NonphysicalInversionError(DomainError):
    """Measured level at or below the vacuum floor a loss would impose."""

    code = "E_NONPHYSICAL"


class UnderdeterminedFitError(SqzChainError):
    code = "E_UNDERDETERMINED"
    exit_code = 3


class SingularInformationError(SqzChainError):
    code = "E_SINGULAR"
    exit_code = 3


class ConfigError(SqzChainError):
    code = "E_CONFIG"
    exit_code = 2


class ConfigSyntaxError(ConfigError):
    code = "E_CONFIG_SYNTAX"

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownKeyError(ConfigError):
    code = "E_CONFIG_UNKNOWN"


class MissingKeyError(ConfigError):
    code = "E_CONFIG_MISSING"


class OutOfRangeError(ConfigError):
    code = "E_CONFIG_RANGE"


class TableShapeError(SqzChainError):
    code = "E_INTERNAL"
