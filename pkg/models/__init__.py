"""
Tactile color wheel models package.
Provides the RYB wheel, pattern synthesis, wheel/kit layout, decoding and
reconstruction-task scoring.
"""

from .colorwheel import (
    Category,
    ClockPosition,
    Hue,
    Primary,
    RGBColor,
    RYBMix,
    canonical_rgb,
    clock_position,
    hue_at_hour,
    hue_by_name,
    hue_of_mix,
    mix_of,
    parse_color,
    rgb_to_hue,
)
from .decode import (
    DecodedMix,
    LegibilityReport,
    Violation,
    ViolationKind,
    classify_element,
    decode_elements,
    decode_pattern,
    validate_legibility,
)
from .layout import CaseLayout, Kit, KitPiece, Recess, Sector, WheelLayout, build_kit, build_wheel, congruence_deviation
from .pattern import (
    Element,
    Layer,
    LegibilityConstraints,
    PatternSpec,
    PrimitiveKind,
    RectRegion,
    SectorRegion,
    SizeRange,
    SizeScale,
    describe_encoding,
    elements_of,
    rotate_element,
    size_for_fraction,
    synthesize_swatch,
    translate_element,
)
from .study import (
    Arrangement,
    ScoreReport,
    Session,
    canonical_arrangement,
    chance_baseline,
    circular_distance,
    load_session,
    save_session,
    score_arrangement,
    score_session,
)

__all__ = [
    "Category",
    "ClockPosition",
    "Hue",
    "Primary",
    "RGBColor",
    "RYBMix",
    "canonical_rgb",
    "clock_position",
    "hue_at_hour",
    "hue_by_name",
    "hue_of_mix",
    "mix_of",
    "parse_color",
    "rgb_to_hue",
    "DecodedMix",
    "LegibilityReport",
    "Violation",
    "ViolationKind",
    "classify_element",
    "decode_elements",
    "decode_pattern",
    "validate_legibility",
    "CaseLayout",
    "Kit",
    "KitPiece",
    "Recess",
    "Sector",
    "WheelLayout",
    "build_kit",
    "build_wheel",
    "congruence_deviation",
    "Element",
    "Layer",
    "LegibilityConstraints",
    "PatternSpec",
    "PrimitiveKind",
    "RectRegion",
    "SectorRegion",
    "SizeRange",
    "SizeScale",
    "describe_encoding",
    "elements_of",
    "rotate_element",
    "size_for_fraction",
    "synthesize_swatch",
    "translate_element",
    "Arrangement",
    "ScoreReport",
    "Session",
    "canonical_arrangement",
    "chance_baseline",
    "circular_distance",
    "load_session",
    "save_session",
    "score_arrangement",
    "score_session",
]
