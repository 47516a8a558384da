"""Custom exceptions for KnownOpt."""


class KnownOptException(Exception):
    """Base exception for KnownOpt."""

    def __init__(self, message: str, details: dict | None = None):
        """Initialize exception.

        Args:
            message: Error message
            details: Optional additional details
        """
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class ContractViolation(KnownOptException):
    """Exception raised when a caller breaks an operation's precondition."""

    pass


class FitException(KnownOptException):
    """Exception raised when the Gram matrix cannot be factorized."""

    def __init__(self, message: str, jitter_ladder: list[float], details: dict | None = None):
        """Initialize fit exception.

        Args:
            message: Error message
            jitter_ladder: Jitter values attempted, in order
            details: Optional additional details
        """
        self.jitter_ladder = list(jitter_ladder)
        details = dict(details or {})
        details["jitter_ladder"] = self.jitter_ladder
        super().__init__(message, details)


class SelectionException(KnownOptException):
    """Exception raised when no lengthscale candidate could be fitted."""

    pass


class KnownOptimumViolated(KnownOptException):
    """Exception raised when an observation exceeds the declared optimum."""

    def __init__(self, observed: float, f_star: float, tolerance: float):
        """Initialize known-optimum violation.

        Args:
            observed: Offending observation (standardized units)
            f_star: Declared optimum (standardized units)
            tolerance: Clipping tolerance in force
        """
        self.observed = observed
        self.f_star = f_star
        message = (
            f"Observed value {observed:.6g} exceeds the declared optimum {f_star:.6g}; "
            "the declared f* is likely under-specified"
        )
        super().__init__(
            message,
            {"observed": observed, "f_star": f_star, "tolerance": tolerance},
        )


class ConfigurationException(KnownOptException):
    """Exception raised for an invalid or incomplete configuration."""

    pass


class ObjectiveException(KnownOptException):
    """Exception raised when the black-box objective fails."""

    pass


class UsageException(KnownOptException):
    """Exception raised for invalid command-line or config-file usage."""

    pass


class ConfigParseException(UsageException):
    """Exception raised when a config file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        """Initialize parse exception.

        Args:
            message: Error message
            line: 1-based line of the offending token, when known
            column: 1-based column of the offending token, when known
        """
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message, {"line": line, "column": column})
