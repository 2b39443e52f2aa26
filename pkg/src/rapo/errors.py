"""Exception types used across the pipeline."""

from __future__ import annotations


class RapoError(Exception):
    """Base class for package-specific errors."""


class FormatError(RapoError):
    """A persisted file is malformed or carries the wrong version magic."""


class ConfigError(RapoError):
    """Configuration is missing, malformed, or inconsistent."""


class TransportError(RapoError):
    """A provider call failed at the transport level; retrying may help."""


class ProviderCallError(RapoError):
    """A provider could not produce a result."""

    def __init__(self, message: str, *, provider: str = "", attempts: int = 1,
                 retryable: bool = False):
        super().__init__(message)
        self.provider = provider
        self.attempts = attempts
        self.retryable = retryable


class ExtractionError(RapoError):
    """The LLM reply could not be parsed into a scene/modifier extraction."""

    def __init__(self, message: str, raw_reply: str = ""):
        super().__init__(message)
        self.raw_reply = raw_reply


class MergeError(RapoError):
    """Merging a modifier into a prompt failed."""


class RefactorError(RapoError):
    """The refactoring step returned an unusable reply."""


class SelectionError(RapoError):
    """The discriminator reply did not follow the R/N protocol."""

    def __init__(self, message: str, raw_reply: str = ""):
        super().__init__(message)
        self.raw_reply = raw_reply


class GraphBuildError(RapoError):
    """No prompt in the corpus produced a usable extraction."""

    def __init__(self, message: str, report: list[tuple[str, str]] | None = None):
        super().__init__(message)
        self.report = report or []


class LoopError(RapoError):
    """The refinement loop could not complete its first iteration."""


class DatasetError(RapoError):
    """A dataset builder or exporter received inconsistent input."""
