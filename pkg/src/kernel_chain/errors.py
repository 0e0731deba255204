from typing import Any, Optional


class KernelChainError(ValueError):
    """Base class for all errors raised by kernel_chain"""


class DuplicatePoint(KernelChainError):
    pass


class NegativeWeight(KernelChainError):
    pass


class LengthMismatch(KernelChainError):
    pass


class MissingPoint(KernelChainError):
    pass


class ImageOutOfSpace(KernelChainError):
    pass


class SpaceMismatch(KernelChainError):
    pass


class NonsingularityViolated(KernelChainError):
    pass


class PositiveWeightRequired(KernelChainError):
    pass


class InvalidParameter(KernelChainError):
    pass


class BracketFailure(KernelChainError):
    pass


class NonpositiveMeasure(KernelChainError):
    pass


class DecompositionFailure(KernelChainError):
    pass


class CorollaryViolation(KernelChainError):
    pass


class WitnessVerificationError(KernelChainError):
    pass


class InconsistencyFound(KernelChainError):
    def __init__(
        self, check: str, k: Optional[int], expected: Any, actual: Any
    ) -> None:
        self.check = check
        self.k = k
        self.expected = expected
        self.actual = actual
        where = "" if k is None else f" at k={k}"
        super().__init__(f"{check}{where}: expected {expected}, got {actual}")


class ParseError(KernelChainError):
    def __init__(
        self, message: str, line: Optional[int] = None, field: Optional[str] = None
    ) -> None:
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
