"""Exception taxonomy shared across the package."""


class RelayDmtError(Exception):
    """Base class for all errors raised by this package."""


class SizeError(RelayDmtError, ValueError):
    """Matrix dimensions are inconsistent or exceed the supported ceiling."""


class ContractError(RelayDmtError, ValueError):
    """An input violates a structural precondition (e.g. not Hermitian)."""


class DomainError(RelayDmtError, ValueError):
    """A scalar argument lies outside its admissible range."""


class ConfigurationError(RelayDmtError, ValueError):
    """A run configuration is malformed or internally inconsistent."""


class SchemeError(ConfigurationError):
    """A protocol scheme is incompatible with the given topology."""


class NumericError(RelayDmtError, ArithmeticError):
    """A numerical routine failed (e.g. Cholesky breakdown)."""


class DegenerateConstraintError(RelayDmtError):
    """The decode-constraint exponent is degenerate for these antenna counts.

    Raised when min(K + M_t, N) <= min(K, M_r), in which case the
    effectiveness condition holds for all SNR whenever the eigenvalue-product
    ratio is at least one and no finite exponent exists.
    """


class UndefinedEstimateError(RelayDmtError):
    """A derived estimate is undefined (e.g. zero total weight)."""
