"""
The 12-hue RYB color wheel.

Holds the fixed mix table, the clock-face geometry the wheel is laid out on,
and quantization of arbitrary RGB input onto wheel hues.
"""

import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache

import numpy as np

from errors import Achromatic, AchromaticMix, InvalidMix, UnparseableColor

MIX_TOLERANCE = 1e-9
ACHROMATIC_MIX_SPREAD = 0.05
ACHROMATIC_RGB_SPREAD = 16


class Primary(Enum):
    YELLOW = "yellow"
    RED = "red"
    BLUE = "blue"


# Layer and manifest ordering of primaries everywhere in the package.
PRIMARY_ORDER = (Primary.YELLOW, Primary.RED, Primary.BLUE)


class Category(Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"
    TERTIARY = "tertiary"


class Hue(IntEnum):
    """Wheel hue, numbered clockwise from yellow at 12 o'clock."""

    YELLOW = 0
    YELLOW_ORANGE = 1
    ORANGE = 2
    RED_ORANGE = 3
    RED = 4
    RED_PURPLE = 5
    PURPLE = 6
    BLUE_PURPLE = 7
    BLUE = 8
    BLUE_GREEN = 9
    GREEN = 10
    YELLOW_GREEN = 11

    @property
    def slug(self) -> str:
        return self.name.lower()

    @property
    def label(self) -> str:
        return self.slug.replace("_", " ")

    @property
    def category(self) -> Category:
        if self % 4 == 0:
            return Category.PRIMARY
        if self % 2 == 0:
            return Category.SECONDARY
        return Category.TERTIARY

    @property
    def mix(self) -> "RYBMix":
        return mix_of(self)


@dataclass(frozen=True)
class RYBMix:
    """Normalized red/yellow/blue pigment fractions."""

    r: float = 0.0
    y: float = 0.0
    b: float = 0.0

    def __post_init__(self) -> None:
        for name in ("r", "y", "b"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidMix(f"mix component {name}={value} outside [0, 1]")
        total = self.r + self.y + self.b
        if abs(total - 1.0) > MIX_TOLERANCE:
            raise InvalidMix(f"mix components sum to {total}, expected 1")

    @classmethod
    def from_fractions(cls, fractions: dict[Primary, float]) -> "RYBMix":
        """Build a mix from per-primary amounts, normalizing their sum to 1."""
        total = sum(fractions.values())
        if total <= 0:
            raise InvalidMix("mix needs at least one positive component")
        return cls(
            r=fractions.get(Primary.RED, 0.0) / total,
            y=fractions.get(Primary.YELLOW, 0.0) / total,
            b=fractions.get(Primary.BLUE, 0.0) / total,
        )

    def fraction(self, primary: Primary) -> float:
        return {Primary.RED: self.r, Primary.YELLOW: self.y, Primary.BLUE: self.b}[primary]

    def present(self) -> list[tuple[Primary, float]]:
        """Nonzero components in yellow, red, blue order."""
        return [(p, self.fraction(p)) for p in PRIMARY_ORDER if self.fraction(p) > 0]

    def as_array(self) -> np.ndarray:
        return np.array([self.r, self.y, self.b])

    def describe(self) -> str:
        """Compact text form listing nonzero components, e.g. ``y:0.50 r:0.50``."""
        return " ".join(f"{p.value[0]}:{f:.2f}" for p, f in self.present())


@dataclass(frozen=True)
class ClockPosition:
    hour: int
    angle_deg: float


@dataclass(frozen=True)
class RGBColor:
    r8: int
    g8: int
    b8: int

    def __post_init__(self) -> None:
        for value in (self.r8, self.g8, self.b8):
            if not 0 <= value <= 255:
                raise UnparseableColor(f"RGB component {value} outside 0..255")

    @classmethod
    def from_hex(cls, text: str) -> "RGBColor":
        match = re.fullmatch(r"#?([0-9a-fA-F]{6})", text.strip())
        if not match:
            raise UnparseableColor(f"not a #rrggbb color: {text!r}")
        digits = match.group(1)
        return cls(int(digits[0:2], 16), int(digits[2:4], 16), int(digits[4:6], 16))

    @property
    def hex(self) -> str:
        return f"#{self.r8:02X}{self.g8:02X}{self.b8:02X}"

    def as_array(self) -> np.ndarray:
        return np.array([self.r8, self.g8, self.b8], dtype=float)


def _blend(a: RYBMix, b: RYBMix) -> RYBMix:
    return RYBMix(r=(a.r + b.r) / 2, y=(a.y + b.y) / 2, b=(a.b + b.b) / 2)


@lru_cache(maxsize=None)
def _mix_table() -> tuple[RYBMix, ...]:
    # Primaries sit at 0/4/8; each secondary is the equal blend of the two
    # primaries beside it, each tertiary the equal blend of its neighbours.
    table: dict[int, RYBMix] = {
        Hue.YELLOW: RYBMix(y=1.0),
        Hue.RED: RYBMix(r=1.0),
        Hue.BLUE: RYBMix(b=1.0),
    }
    for index in (2, 6, 10):
        table[index] = _blend(table[index - 2], table[(index + 2) % 12])
    for index in range(1, 12, 2):
        table[index] = _blend(table[index - 1], table[(index + 1) % 12])
    return tuple(table[i] for i in range(12))


def mix_of(hue: Hue) -> RYBMix:
    """Return the fixed pigment mix of a wheel hue."""
    return _mix_table()[Hue(hue)]


def hue_of_mix(mix: RYBMix) -> Hue:
    """Nearest wheel hue to a mix, by Euclidean distance; ties go to the lowest index.

    Raises:
        AchromaticMix: all three components lie within 0.05 of each other.
    """
    values = mix.as_array()
    if values.max() - values.min() <= ACHROMATIC_MIX_SPREAD:
        raise AchromaticMix(f"mix {mix} is achromatic; no wheel hue applies")
    table = np.array([m.as_array() for m in _mix_table()])
    distances = np.linalg.norm(table - values, axis=1)
    return Hue(int(np.argmin(distances)))


def clock_position(hue: Hue) -> ClockPosition:
    """Clock hour of a hue and the matching direction in math convention."""
    hour = 12 if hue == Hue.YELLOW else int(hue)
    return ClockPosition(hour=hour, angle_deg=float((90 - 30 * (hour % 12)) % 360))


def hue_at_hour(hour: int) -> Hue:
    if not 1 <= hour <= 12:
        raise UnparseableColor(f"clock hour {hour} outside 1..12")
    return Hue(hour % 12)


# RYB cube corners in RGB, keyed by (r, y, b). Red follows the painter's
# vermilion rather than pure #FF0000; the remaining corners follow the
# usual Gossett-Chen table.
RYB_CUBE_CORNERS = {
    (0, 0, 0): (255, 255, 255),
    (1, 0, 0): (254, 39, 18),
    (0, 1, 0): (255, 255, 0),
    (0, 0, 1): (42, 95, 153),
    (1, 1, 0): (255, 128, 0),
    (1, 0, 1): (128, 0, 128),
    (0, 1, 1): (0, 168, 51),
    (1, 1, 1): (51, 24, 0),
}


def ryb_to_rgb(r: float, y: float, b: float) -> RGBColor:
    """Trilinear interpolation over the RYB unit cube."""
    point = np.array([r, y, b], dtype=float)
    color = np.zeros(3)
    for corner, rgb in RYB_CUBE_CORNERS.items():
        weight = np.prod(np.where(np.array(corner) == 1, point, 1.0 - point))
        color += weight * np.array(rgb, dtype=float)
    # Half-up rounding keeps the table independent of banker's rounding.
    return RGBColor(*(int(np.floor(c + 0.5)) for c in np.clip(color, 0, 255)))


@lru_cache(maxsize=None)
def _canonical_table() -> tuple[RGBColor, ...]:
    colors = []
    for hue in Hue:
        mix = mix_of(hue)
        peak = max(mix.r, mix.y, mix.b)
        colors.append(ryb_to_rgb(mix.r / peak, mix.y / peak, mix.b / peak))
    return tuple(colors)


def canonical_rgb(hue: Hue) -> RGBColor:
    """Reference display color of a wheel hue."""
    return _canonical_table()[Hue(hue)]


def _chromaticity(rgb: np.ndarray) -> np.ndarray:
    return rgb / rgb.sum(axis=-1, keepdims=True)


def rgb_to_hue(color: RGBColor) -> Hue:
    """Quantize an RGB color to the nearest wheel hue at equal luma.

    Raises:
        Achromatic: the color's max-min component spread is below 16/255.
    """
    values = color.as_array()
    if values.max() - values.min() < ACHROMATIC_RGB_SPREAD:
        raise Achromatic(f"{color.hex} is achromatic; it carries no hue to encode")
    table = np.array([c.as_array() for c in _canonical_table()])
    distances = np.linalg.norm(_chromaticity(table) - _chromaticity(values), axis=1)
    return Hue(int(np.argmin(distances)))


def hue_by_name(text: str) -> Hue:
    """Look up a wheel hue by name, accepting ``_``, ``-`` or space separators."""
    key = re.sub(r"[\s\-]+", "_", text.strip()).upper()
    try:
        return Hue[key]
    except KeyError:
        raise UnparseableColor(f"unknown wheel hue: {text!r}") from None


def parse_color(text: str) -> Hue:
    """Resolve a wheel hue name or ``#rrggbb`` value to a wheel hue."""
    stripped = text.strip()
    if re.fullmatch(r"#?[0-9a-fA-F]{6}", stripped):
        return rgb_to_hue(RGBColor.from_hex(stripped))
    return hue_by_name(stripped)
