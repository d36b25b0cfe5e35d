"""Shared utility helpers for the tactile color toolkit."""

import math

MM_DECIMALS = 3


def sanitize_filename(text: str, max_length: int | None = None) -> str:
    """Replace non-alphanumeric characters with underscores.

    Args:
        text: Raw text to sanitize for use in file/folder names.
        max_length: If provided, truncate the result to this many characters.

    Returns:
        A filesystem-safe string.
    """
    cleaned = "".join(c if c.isalnum() or c == "_" else "_" for c in text)
    if max_length is not None:
        cleaned = cleaned[:max_length]
    return cleaned


def quantize(value: float) -> float:
    """Snap a millimetre value to the 1 µm output grid.

    ``-0.0`` is folded into ``0.0`` so formatted output never shows a sign
    on zero.
    """
    snapped = round(value, MM_DECIMALS)
    return 0.0 if snapped == 0 else snapped


def fmt_mm(value: float) -> str:
    """Format a millimetre value with the fixed output precision."""
    return f"{quantize(value):.{MM_DECIMALS}f}"


def ceil_mm(value: float) -> float:
    """Round a length up to the output grid, so bounds never shrink."""
    scale = 10 ** MM_DECIMALS
    return math.ceil(round(value * scale, 6)) / scale
