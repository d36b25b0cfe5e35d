"""
Reading patterns back.

Classifies raised elements by shape alone, recovers the pigment mix from their
sizes, and checks a pattern against the legibility floors before it goes to a
printer or cutter.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

import numpy as np
import shapely
from shapely import STRtree

from errors import TooFewElements, Unclassifiable

from .colorwheel import Hue, RYBMix, hue_of_mix
from .pattern import (
    GAP_TOLERANCE,
    Element,
    LegibilityConstraints,
    PatternSpec,
    PrimitiveKind,
    SizeScale,
    curvature_sign_changes,
)

STRAIGHTNESS_RATIO = 0.1
MIN_SIGN_CHANGES = 2
MIN_ELEMENTS_PER_KIND = 3
# Relative radius spread below which a closed polyline counts as a circle.
CIRCLE_TOLERANCE = 0.02


class ViolationKind(Enum):
    WIDTH = "width"
    DIAMETER = "diameter"
    GAP = "gap"
    PERIOD = "period"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    location: tuple[float, float]
    measured: float
    limit: float

    def describe(self) -> str:
        x, y = self.location
        return (
            f"{self.kind.value} at ({x:.3f}, {y:.3f}): measured {self.measured:.3f} mm, "
            f"limit {self.limit:.3f} mm"
        )


@dataclass(frozen=True)
class LegibilityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def count(self, kind: ViolationKind) -> int:
        return sum(1 for v in self.violations if v.kind is kind)


@dataclass(frozen=True)
class DecodedMix:
    mix: RYBMix
    hue: Hue
    mean_sizes: dict[PrimitiveKind, float] = field(default_factory=dict)
    counts: dict[PrimitiveKind, int] = field(default_factory=dict)


def _is_closed_circle(points: np.ndarray) -> bool:
    if len(points) < 4 or not np.allclose(points[0], points[-1]):
        return False
    ring = points[:-1]
    radii = np.linalg.norm(ring - ring.mean(axis=0), axis=1)
    return radii.mean() > 0 and (radii.max() - radii.min()) <= CIRCLE_TOLERANCE * radii.mean()


def _chord_deviation(points: np.ndarray) -> float:
    start, end = points[0], points[-1]
    chord = end - start
    span = np.linalg.norm(chord)
    if span == 0:
        return float(np.linalg.norm(points - start, axis=1).max())
    offsets = points - start
    return float(np.abs(chord[0] * offsets[:, 1] - chord[1] * offsets[:, 0]).max() / span)


def classify_element(element: Element) -> PrimitiveKind:
    """Tell dots, straight lines and wavy lines apart from shape alone.

    Only distances and turn directions are used, so the answer does not change
    when the element is rotated or moved.

    Raises:
        Unclassifiable: the geometry is neither circular, wavy nor straight.
    """
    if element.is_circle:
        return PrimitiveKind.DOT
    points = np.asarray(element.points, dtype=float)
    if _is_closed_circle(points):
        return PrimitiveKind.DOT
    if len(points) < 2:
        raise Unclassifiable(f"element at {element.center} has a single vertex")
    if curvature_sign_changes(points) >= MIN_SIGN_CHANGES:
        return PrimitiveKind.WAVY_LINE
    length = float(np.linalg.norm(np.diff(points, axis=0), axis=1).sum())
    if length > 0 and _chord_deviation(points) < STRAIGHTNESS_RATIO * length:
        return PrimitiveKind.STRAIGHT_LINE
    raise Unclassifiable(f"element at {element.center} is neither a dot, a straight nor a wavy line")


def decode_elements(elems: Iterable[Element], scale: Optional[SizeScale] = None) -> DecodedMix:
    """Recover the mix a set of elements encodes.

    Each kind's mean size is mapped back through the linear size scale,
    clamped to [0, 1], and the fractions are normalized over the kinds present.
    When every present kind sits at its minimum size the ratio carries no
    information and the kinds share equally.

    Raises:
        TooFewElements: a present kind has fewer than three elements.
        AchromaticMix: the recovered mix is achromatic.
    """
    scale = scale or SizeScale()
    sizes: dict[PrimitiveKind, list[float]] = {}
    for element in elems:
        sizes.setdefault(classify_element(element), []).append(element.size)
    if not sizes:
        raise TooFewElements("no elements to decode")
    for kind, values in sizes.items():
        if len(values) < MIN_ELEMENTS_PER_KIND:
            raise TooFewElements(
                f"{len(values)} {kind.value} element(s); decoding needs at least {MIN_ELEMENTS_PER_KIND}"
            )

    kinds = [k for k in PrimitiveKind if k in sizes]
    mean_sizes = {k: float(np.mean(sizes[k])) for k in kinds}
    raw = {}
    for kind in kinds:
        bounds = scale.range_for(kind)
        raw[kind] = float(np.clip((mean_sizes[kind] - bounds.s_min) / (bounds.s_max - bounds.s_min), 0.0, 1.0))
    total = sum(raw.values())
    if total == 0:
        raw = {k: 1.0 for k in kinds}
        total = float(len(kinds))
    mix = RYBMix.from_fractions({k.primary: f / total for k, f in raw.items()})
    return DecodedMix(
        mix=mix,
        hue=hue_of_mix(mix),
        mean_sizes=mean_sizes,
        counts={k: len(sizes[k]) for k in kinds},
    )


def decode_pattern(spec: PatternSpec) -> DecodedMix:
    return decode_elements(spec.elements, spec.scale)


def validate_legibility(spec: PatternSpec, c: Optional[LegibilityConstraints] = None) -> LegibilityReport:
    """Check every element and layer of a pattern against the legibility floors.

    Violations are returned as data; nothing is raised.
    """
    c = c or spec.constraints
    violations: list[Violation] = []

    for layer in spec.layers:
        if layer.period < c.min_period - GAP_TOLERANCE:
            centroid = spec.region.polygon.centroid
            violations.append(
                Violation(ViolationKind.PERIOD, (centroid.x, centroid.y), layer.period, c.min_period)
            )

    for element in spec.elements:
        if element.kind is PrimitiveKind.DOT:
            if element.size < c.min_dot_diameter - GAP_TOLERANCE:
                violations.append(
                    Violation(ViolationKind.DIAMETER, element.center, element.size, c.min_dot_diameter)
                )
        elif element.size < c.min_line_width - GAP_TOLERANCE:
            violations.append(Violation(ViolationKind.WIDTH, element.center, element.size, c.min_line_width))

    footprints = np.array([e.footprint() for e in spec.elements], dtype=object)
    if len(footprints) > 1:
        tree = STRtree(footprints)
        left, right = tree.query(footprints, predicate="dwithin", distance=c.min_gap - GAP_TOLERANCE)
        pairs = left < right
        left, right = left[pairs], right[pairs]
        distances = shapely.distance(footprints[left], footprints[right])
        for i, j, distance in zip(left, right, distances):
            if distance >= c.min_gap - GAP_TOLERANCE:
                continue
            bridge = shapely.shortest_line(footprints[i], footprints[j])
            mid = bridge.interpolate(0.5, normalized=True)
            violations.append(Violation(ViolationKind.GAP, (mid.x, mid.y), float(distance), c.min_gap))
    return LegibilityReport(violations=tuple(violations))

