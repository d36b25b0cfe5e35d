"""Exception hierarchy for the tactile color toolkit.

Every error raised on purpose derives from ``TactileError`` and carries the
process exit code the CLI should return for it.
"""

from typing import Optional


class TactileError(ValueError):
    exit_code = 1


class InputError(TactileError):
    """Malformed or out-of-range user input."""

    exit_code = 2


class UnparseableColor(InputError):
    pass


class InvalidFraction(InputError):
    pass


class InvalidMix(InputError):
    pass


class InvalidConstraints(InputError):
    pass


class DpiOutOfRange(InputError):
    pass


class TooFewElements(InputError):
    pass


class Unclassifiable(InputError):
    pass


class MalformedSession(InputError):
    pass


class MalformedManifest(InputError):
    """A manifest that cannot be parsed back into a pattern.

    Args:
        message: What went wrong.
        field: Dotted path of the offending field, when known.
        line: 1-based line number in the source document, when known.
    """

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None) -> None:
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class ManifestVersionMismatch(InputError):
    pass


class AchromaticError(TactileError):
    """Input carries no usable hue."""

    exit_code = 3


class Achromatic(AchromaticError):
    pass


class AchromaticMix(AchromaticError):
    pass


class SynthesisError(TactileError):
    """Geometry could not be built under the requested constraints."""

    exit_code = 4


class RegionTooSmall(SynthesisError):
    pass


class ClearanceInfeasible(SynthesisError):
    pass


class SizeBelowFloor(SynthesisError):
    pass


class RingTooThin(SynthesisError):
    pass


class DuplicatePiece(TactileError):
    exit_code = 5


class LegibilityFailed(TactileError):
    exit_code = 6
