"""Custom exceptions for hyptree."""

from typing import Optional, Tuple


class HyptreeError(Exception):
    """Base exception for all hyptree errors."""

    def __init__(self, message: str, details: Optional[str] = None) -> None:
        """Initialize the exception with a message and optional details.

        Args:
            message: The main error message
            details: Optional additional details about the error
        """
        self.message = message
        self.details = details
        super().__init__(f"{message}{f' - {details}' if details else ''}")


class ContractViolationError(HyptreeError):
    """Raised when a geometric precondition is violated (shape, (m, rho), tangency)."""


class DomainError(HyptreeError):
    """Raised when an argument lies outside the domain of an operation."""


class DataValidationError(HyptreeError):
    """Raised when input data is well-formed but semantically invalid."""


class ParseError(HyptreeError):
    """Raised when Newick, FASTA or CSV input cannot be parsed."""

    def __init__(
        self, message: str, details: Optional[str] = None, offset: Optional[int] = None
    ) -> None:
        self.offset = offset
        if offset is not None:
            details = f"at byte {offset}" + (f": {details}" if details else "")
        super().__init__(message, details)


class OptimizerError(HyptreeError):
    """Raised when the gradient ascent cannot continue."""

    def __init__(
        self,
        message: str,
        details: Optional[str] = None,
        pair: Optional[Tuple[str, str]] = None,
    ) -> None:
        self.pair = pair
        if pair is not None:
            details = f"pair ({pair[0]}, {pair[1]})" + (f": {details}" if details else "")
        super().__init__(message, details)
