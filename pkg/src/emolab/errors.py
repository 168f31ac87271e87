"""Shared exception types."""


class ContractViolation(ValueError):
    """An operation was called with inputs that break its contract."""


class ConfigurationError(ValueError):
    """Invalid or incomplete configuration."""


class UnsupportedProblemError(LookupError):
    """Unknown problem id, or the problem lacks the requested feature."""


class PayloadLoadError(ValueError):
    """A persisted payload failed schema or invariant validation."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DecisionError(ValueError):
    """MCDM selection could not be performed."""


class RunFailedError(RuntimeError):
    """An optimization run aborted; carries the partial payload for auditing."""

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


class RegistrationError(ValueError):
    """Problem registration refused."""


class TransportError(RuntimeError):
    """LLM endpoint unreachable or returned a non-success status."""


class ExtractionError(ValueError):
    """No DSL document could be extracted from an LLM response."""

    def __init__(self, message: str, raw_response: str = ""):
        super().__init__(message)
        self.raw_response = raw_response
