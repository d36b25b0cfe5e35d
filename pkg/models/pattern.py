"""
Tactile lattice synthesis.

Turns a pigment mix into raised-pattern geometry: dots for yellow, straight
lines for red, wavy lines for blue, with element size growing linearly with
the primary's fraction. Every length is in millimetres, on math axes (y up).
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import ClassVar, Optional, Union

import numpy as np
import shapely
from shapely import affinity
from shapely.geometry import LineString, Point, Polygon, box

from errors import (
    ClearanceInfeasible,
    InvalidConstraints,
    InvalidFraction,
    InvalidMix,
    RegionTooSmall,
    SizeBelowFloor,
)
from utils import quantize

from .colorwheel import Category, Hue, Primary, RYBMix, hue_of_mix, mix_of

# Crest-to-trough height of a wave, per unit of stroke width.
WAVE_HEIGHT_RATIO = 1.5
WAVELENGTH_PER_PERIOD = 2.0 / 3.0
WAVE_SAMPLES_PER_WAVELENGTH = 24
PERIOD_STEP = 0.5
MAX_PERIOD_FACTOR = 4
ARC_STEP_DEG = 0.5
# Extra inward clip so polygonal buffer error never pushes a stroke outside.
CLIP_MARGIN = 0.01
GAP_TOLERANCE = 1e-6
# Two steps of the 0.001 mm output grid.
TURN_TOLERANCE = 0.002
CIRCLE_QUAD_SEGS = 16


class PrimitiveKind(Enum):
    DOT = "dot"
    STRAIGHT_LINE = "straight_line"
    WAVY_LINE = "wavy_line"

    @property
    def primary(self) -> Primary:
        return _KIND_PRIMARY[self]

    @classmethod
    def for_primary(cls, primary: Primary) -> "PrimitiveKind":
        return {p: k for k, p in _KIND_PRIMARY.items()}[primary]

    @property
    def is_line(self) -> bool:
        return self is not PrimitiveKind.DOT


_KIND_PRIMARY = {
    PrimitiveKind.DOT: Primary.YELLOW,
    PrimitiveKind.STRAIGHT_LINE: Primary.RED,
    PrimitiveKind.WAVY_LINE: Primary.BLUE,
}


@dataclass(frozen=True)
class SizeRange:
    s_min: float
    s_max: float

    def __post_init__(self) -> None:
        if not 0 < self.s_min < self.s_max:
            raise InvalidConstraints(f"size range needs 0 < s_min < s_max, got {self.s_min}..{self.s_max}")


@dataclass(frozen=True)
class SizeScale:
    """Element size bounds per primitive: dot diameter, line stroke width."""

    dot: SizeRange = SizeRange(1.5, 4.0)
    straight_line: SizeRange = SizeRange(1.0, 3.0)
    wavy_line: SizeRange = SizeRange(1.0, 3.0)

    def range_for(self, kind: PrimitiveKind) -> SizeRange:
        return getattr(self, kind.value)


@dataclass(frozen=True)
class LegibilityConstraints:
    min_line_width: float = 1.0
    min_dot_diameter: float = 1.5
    min_gap: float = 2.0
    min_period: float = 5.0

    def __post_init__(self) -> None:
        for name in ("min_line_width", "min_dot_diameter", "min_gap", "min_period"):
            if getattr(self, name) <= 0:
                raise InvalidConstraints(f"{name} must be positive, got {getattr(self, name)}")
        if self.min_period <= self.min_gap:
            raise InvalidConstraints(
                f"min_period ({self.min_period}) must exceed min_gap ({self.min_gap})"
            )

    def floor_for(self, kind: PrimitiveKind) -> float:
        return self.min_dot_diameter if kind is PrimitiveKind.DOT else self.min_line_width


@dataclass(frozen=True)
class RectRegion:
    x: float
    y: float
    width: float
    height: float

    kind: ClassVar[str] = "rect"

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise RegionTooSmall(f"rectangle {self.width}x{self.height} mm has no area")

    @cached_property
    def polygon(self) -> Polygon:
        return box(self.x, self.y, self.x + self.width, self.y + self.height)


@dataclass(frozen=True)
class SectorRegion:
    """Annular sector centred on (cx, cy), angles in degrees counterclockwise.

    ``inset`` shrinks the outline uniformly, which is how kit pieces get their
    assembly clearance.
    """

    inner_radius: float
    outer_radius: float
    start_deg: float
    end_deg: float
    cx: float = 0.0
    cy: float = 0.0
    inset: float = 0.0

    kind: ClassVar[str] = "sector"

    def __post_init__(self) -> None:
        if not 0 < self.inner_radius < self.outer_radius:
            raise RegionTooSmall(
                f"sector radii need 0 < inner < outer, got {self.inner_radius}/{self.outer_radius}"
            )
        if not 0 < self.end_deg - self.start_deg <= 360:
            raise RegionTooSmall(f"sector span {self.start_deg}..{self.end_deg} deg is empty")

    @property
    def center_deg(self) -> float:
        return (self.start_deg + self.end_deg) / 2

    @cached_property
    def polygon(self) -> Polygon:
        polygon = sector_polygon(
            self.inner_radius, self.outer_radius, self.start_deg, self.end_deg, self.cx, self.cy
        )
        if self.inset > 0:
            polygon = polygon.buffer(-self.inset, join_style="mitre")
            if polygon.is_empty or polygon.geom_type != "Polygon":
                raise RegionTooSmall(f"inset {self.inset} mm consumes the sector")
        return polygon


Region = Union[RectRegion, SectorRegion]


def sector_polygon(
    inner_r: float, outer_r: float, start_deg: float, end_deg: float, cx: float = 0.0, cy: float = 0.0
) -> Polygon:
    """Polygon of an annular sector with arcs sampled every ``ARC_STEP_DEG``.

    Vertices depend only on the span, so equal-span sectors are exact
    rotations of each other.
    """
    span = end_deg - start_deg
    steps = max(2, math.ceil(span / ARC_STEP_DEG - 1e-9))
    angles = np.radians(start_deg + span * np.arange(steps + 1) / steps)
    outer = np.column_stack([cx + outer_r * np.cos(angles), cy + outer_r * np.sin(angles)])
    inner = np.column_stack([cx + inner_r * np.cos(angles[::-1]), cy + inner_r * np.sin(angles[::-1])])
    return Polygon(np.vstack([outer, inner]))


@dataclass(frozen=True)
class Layer:
    kind: PrimitiveKind
    fraction: float
    size: float
    period: float
    phase: tuple[float, float] = (0.0, 0.0)
    orientation: float = 0.0

    @property
    def amplitude(self) -> float:
        """Semi-amplitude of the wave centreline; zero for other kinds."""
        if self.kind is not PrimitiveKind.WAVY_LINE:
            return 0.0
        return quantize(self.size * WAVE_HEIGHT_RATIO / 2)

    @property
    def wavelength(self) -> float:
        if self.kind is not PrimitiveKind.WAVY_LINE:
            return 0.0
        return quantize(self.period * WAVELENGTH_PER_PERIOD)

    @property
    def half_band(self) -> float:
        """Half the height of the strip a row of this layer occupies."""
        return self.amplitude + self.size / 2


@dataclass(frozen=True)
class Element:
    """One raised feature: a dot (circle) or a stroked open polyline."""

    kind: PrimitiveKind
    center: tuple[float, float]
    orientation: float
    size: float
    amplitude: float = 0.0
    wavelength: float = 0.0
    points: tuple[tuple[float, float], ...] = ()

    @property
    def is_circle(self) -> bool:
        return not self.points

    def centerline(self) -> LineString:
        return LineString(self.points)

    def footprint(self) -> Polygon:
        """Raised area: the disc, or the round-capped stroke around the centreline."""
        if self.is_circle:
            return Point(self.center).buffer(self.size / 2, quad_segs=CIRCLE_QUAD_SEGS)
        return self.centerline().buffer(self.size / 2, quad_segs=CIRCLE_QUAD_SEGS)


@dataclass(frozen=True)
class PatternSpec:
    region: Region
    layers: tuple[Layer, ...]
    scale: SizeScale = field(default_factory=SizeScale)
    constraints: LegibilityConstraints = field(default_factory=LegibilityConstraints)
    mix: Optional[RYBMix] = None
    hue: Optional[Hue] = None
    elements: tuple[Element, ...] = ()

    def layer_for(self, kind: PrimitiveKind) -> Optional[Layer]:
        return next((layer for layer in self.layers if layer.kind is kind), None)


def size_for_fraction(kind: PrimitiveKind, f: float, scale: SizeScale) -> float:
    """Element size for a primary fraction: linear from s_min (f→0) to s_max (f=1)."""
    if not 0 < f <= 1:
        raise InvalidFraction(f"fraction {f} outside (0, 1]")
    bounds = scale.range_for(kind)
    return bounds.s_min + f * (bounds.s_max - bounds.s_min)


def _rows_clear(half_bands: list[float], period: float, gap: float) -> bool:
    # Rows of one layer are a period apart; interleaved layers half a period.
    # The band bounds are conservative, so passing here guarantees the gap.
    for i, h1 in enumerate(half_bands):
        if period - 2 * h1 < gap - GAP_TOLERANCE:
            return False
        for h2 in half_bands[i + 1:]:
            if period / 2 - h1 - h2 < gap - GAP_TOLERANCE:
                return False
    return True


def _search_period(draft: list[Layer], constraints: LegibilityConstraints) -> float:
    limit = MAX_PERIOD_FACTOR * constraints.min_period
    step = 0
    while True:
        period = constraints.min_period + step * PERIOD_STEP
        if period > limit + 1e-9:
            raise ClearanceInfeasible(
                f"no lattice period up to {limit} mm keeps {constraints.min_gap} mm clearance"
            )
        half_bands = [replace(layer, period=period).half_band for layer in draft]
        if _rows_clear(half_bands, period, constraints.min_gap):
            logging.debug(f"Lattice period {period} mm clears {constraints.min_gap} mm gap")
            return period
        step += 1


def synthesize_swatch(
    mix: RYBMix,
    region: Region,
    scale: Optional[SizeScale] = None,
    constraints: Optional[LegibilityConstraints] = None,
    orientation: float = 0.0,
) -> PatternSpec:
    """Build the tactile pattern for a wheel-hue mix inside a region.

    One layer per nonzero primary, sized by its fraction; two layers
    interleave with a half-period offset on both axes.

    Raises:
        InvalidMix: the mix uses all three primaries.
        SizeBelowFloor: a layer's element size is under the legibility floor.
        ClearanceInfeasible: no period up to 4x min_period keeps min_gap.
        RegionTooSmall: the region cannot hold a period square or a layer ends up empty.
    """
    scale = scale or SizeScale()
    constraints = constraints or LegibilityConstraints()
    present = mix.present()
    if len(present) > 2:
        raise InvalidMix(f"mix {mix.describe()} uses three primaries; wheel hues mix at most two")

    draft = []
    for primary, fraction in present:
        kind = PrimitiveKind.for_primary(primary)
        size = quantize(size_for_fraction(kind, fraction, scale))
        floor = constraints.floor_for(kind)
        if size < floor - GAP_TOLERANCE:
            raise SizeBelowFloor(f"{kind.value} size {size} mm is under the {floor} mm legibility floor")
        draft.append(Layer(kind=kind, fraction=fraction, size=size, period=0.0, orientation=orientation))

    period = _search_period(draft, constraints)
    if region.polygon.area < period * period:
        raise RegionTooSmall(
            f"region area {region.polygon.area:.1f} mm^2 is under one {period} mm lattice cell"
        )

    layers = tuple(
        replace(layer, period=period, phase=(0.0, 0.0) if i == 0 else (period / 2, period / 2))
        for i, layer in enumerate(draft)
    )
    spec = PatternSpec(
        region=region, layers=layers, scale=scale, constraints=constraints, mix=mix, hue=hue_of_mix(mix)
    )
    elements = elements_of(spec)
    for layer in layers:
        if not any(e.kind is layer.kind for e in elements):
            raise RegionTooSmall(f"region holds no complete {layer.kind.value} element")
    logging.debug(f"Synthesized {len(elements)} elements for {mix.describe()} at period {period} mm")
    return replace(spec, elements=elements)


def curvature_signs(points: np.ndarray, tolerance: float = TURN_TOLERANCE) -> np.ndarray:
    """Turn direction (+1 left, -1 right) at each interior vertex, dropping straight runs.

    A vertex only counts as a turn when it sits more than ``tolerance`` mm off
    the line through its neighbours, so coordinate rounding never reads as a turn.
    """
    if len(points) < 3:
        return np.zeros(0)
    seg = np.diff(points, axis=0)
    seg = seg[np.linalg.norm(seg, axis=1) > 1e-9]
    if len(seg) < 2:
        return np.zeros(0)
    cross = seg[:-1, 0] * seg[1:, 1] - seg[:-1, 1] * seg[1:, 0]
    height = np.abs(cross) / np.maximum(np.linalg.norm(seg[:-1] + seg[1:], axis=1), 1e-12)
    return np.sign(cross[height > tolerance])


def curvature_sign_changes(points) -> int:
    signs = curvature_signs(np.asarray(points, dtype=float))
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _steps(lo: float, hi: float, start: float, step: float) -> range:
    first = math.ceil((lo - start) / step - 1e-9)
    last = math.floor((hi - start) / step + 1e-9)
    return range(first, last + 1)


def _quantize_points(coords) -> tuple[tuple[float, float], ...]:
    points: list[tuple[float, float]] = []
    for x, y in coords:
        point = (quantize(x), quantize(y))
        if not points or point != points[-1]:
            points.append(point)
    return tuple(points)


def _line_fragments(clipped) -> list[LineString]:
    merged = shapely.line_merge(clipped) if clipped.geom_type == "MultiLineString" else clipped
    parts = [g for g in shapely.get_parts(merged) if g.geom_type == "LineString" and not g.is_empty]
    return sorted(parts, key=lambda g: g.bounds[0])


class _Frame:
    """Rotated working frame so every lattice can be laid out with horizontal rows."""

    def __init__(self, region: Region, orientation: float) -> None:
        minx, miny, maxx, maxy = region.polygon.bounds
        self.anchor = ((minx + maxx) / 2, (miny + maxy) / 2)
        self.orientation = orientation
        self.polygon = region.polygon
        if orientation:
            self.polygon = affinity.rotate(region.polygon, -orientation, origin=self.anchor)

    def to_region(self, coords) -> list[tuple[float, float]]:
        if not self.orientation:
            return list(coords)
        theta = math.radians(self.orientation)
        ax, ay = self.anchor
        cos_t, sin_t = math.cos(theta), math.sin(theta)
        return [
            (ax + (x - ax) * cos_t - (y - ay) * sin_t, ay + (x - ax) * sin_t + (y - ay) * cos_t)
            for x, y in coords
        ]


def _layer_candidates(layer: Layer, frame: _Frame, region: Region, s_min: float) -> list[Element]:
    minx, miny, maxx, maxy = frame.polygon.bounds
    ox = frame.anchor[0] - layer.period / 2 + layer.phase[0]
    oy = frame.anchor[1] - layer.period / 2 + layer.phase[1]
    rows = [oy + k * layer.period for k in _steps(miny, maxy, oy, layer.period)]
    candidates: list[Element] = []

    if layer.kind is PrimitiveKind.DOT:
        radius = layer.size / 2
        for row in rows:
            for j in _steps(minx, maxx, ox, layer.period):
                (cx, cy), = frame.to_region([(ox + j * layer.period, row)])
                center = (quantize(cx), quantize(cy))
                point = Point(center)
                if region.polygon.contains(point) and region.polygon.boundary.distance(point) >= radius:
                    candidates.append(
                        Element(kind=layer.kind, center=center, orientation=layer.orientation, size=layer.size)
                    )
        return candidates

    eroded = frame.polygon.buffer(-(layer.size / 2 + CLIP_MARGIN))
    if eroded.is_empty:
        return candidates
    wavelength = layer.wavelength
    for row in rows:
        if layer.kind is PrimitiveKind.STRAIGHT_LINE:
            raw = LineString([(minx - 1.0, row), (maxx + 1.0, row)])
        else:
            step = wavelength / WAVE_SAMPLES_PER_WAVELENGTH
            j = np.arange(
                math.floor((minx - wavelength - ox) / step), math.ceil((maxx + wavelength - ox) / step) + 1
            )
            xs = ox + j * step
            ys = row + layer.amplitude * np.sin(2 * np.pi * (xs - ox) / wavelength)
            raw = LineString(np.column_stack([xs, ys]))
        for fragment in _line_fragments(eroded.intersection(raw)):
            if fragment.length < s_min:
                logging.debug(f"Dropped {layer.kind.value} fragment of {fragment.length:.3f} mm")
                continue
            points = _quantize_points(frame.to_region(fragment.coords))
            if len(points) < 2:
                continue
            if layer.kind is PrimitiveKind.WAVY_LINE:
                chord = math.dist(points[0], points[-1])
                if chord < layer.period or curvature_sign_changes(points) < 2:
                    logging.debug(f"Dropped wave fragment spanning {chord:.3f} mm")
                    continue
            mid = LineString(points).interpolate(0.5, normalized=True)
            candidates.append(
                Element(
                    kind=layer.kind,
                    center=(quantize(mid.x), quantize(mid.y)),
                    orientation=layer.orientation,
                    size=layer.size,
                    amplitude=layer.amplitude,
                    wavelength=wavelength,
                    points=points,
                )
            )
    return candidates


def _enforce_clearance(candidates: list[Element], gap: float) -> tuple[Element, ...]:
    kept: list[Element] = []
    footprints: list[Polygon] = []
    bounds = np.empty((0, 4))
    for element in candidates:
        footprint = element.footprint()
        if footprints:
            fb = np.array(footprint.bounds)
            near = (
                (bounds[:, 0] - gap <= fb[2])
                & (bounds[:, 2] + gap >= fb[0])
                & (bounds[:, 1] - gap <= fb[3])
                & (bounds[:, 3] + gap >= fb[1])
            )
            if near.any():
                others = np.array(footprints, dtype=object)[near]
                if (shapely.distance(footprint, others) < gap - GAP_TOLERANCE).any():
                    logging.debug(f"Dropped {element.kind.value} at {element.center}: closer than {gap} mm")
                    continue
        kept.append(element)
        footprints.append(footprint)
        bounds = np.vstack([bounds, footprint.bounds])
    return tuple(kept)


def elements_of(spec: PatternSpec) -> tuple[Element, ...]:
    """Expand a spec's layers into clipped, clearance-checked elements.

    Layers are expanded in their stored order (yellow, red, blue), rows bottom
    to top, fragments left to right. The result depends only on the spec.
    """
    candidates: list[Element] = []
    for layer in spec.layers:
        frame = _Frame(spec.region, layer.orientation)
        s_min = spec.scale.range_for(layer.kind).s_min
        candidates.extend(_layer_candidates(layer, frame, spec.region, s_min))
    return _enforce_clearance(candidates, spec.constraints.min_gap)


def rotate_element(element: Element, angle_deg: float, origin: tuple[float, float] = (0.0, 0.0)) -> Element:
    """Rigidly rotate an element about ``origin`` (no quantization)."""
    theta = math.radians(angle_deg)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    ox, oy = origin

    def turn(x: float, y: float) -> tuple[float, float]:
        return (ox + (x - ox) * cos_t - (y - oy) * sin_t, oy + (x - ox) * sin_t + (y - oy) * cos_t)

    return replace(
        element,
        center=turn(*element.center),
        orientation=(element.orientation + angle_deg) % 360,
        points=tuple(turn(x, y) for x, y in element.points),
    )


def translate_element(element: Element, dx: float, dy: float) -> Element:
    return replace(
        element,
        center=(element.center[0] + dx, element.center[1] + dy),
        points=tuple((x + dx, y + dy) for x, y in element.points),
    )


_SIZE_WORDS = {
    PrimitiveKind.DOT: ("larger", "smaller", "dots"),
    PrimitiveKind.STRAIGHT_LINE: ("thicker", "thinner", "straight lines"),
    PrimitiveKind.WAVY_LINE: ("thicker", "thinner", "wavy lines"),
}


def describe_encoding(hue: Hue, scale: Optional[SizeScale] = None) -> str:
    """Plain-language reading rule for a hue's pattern."""
    scale = scale or SizeScale()
    parts = []
    present = mix_of(hue).present()
    for primary, fraction in present:
        kind = PrimitiveKind.for_primary(primary)
        more, less, noun = _SIZE_WORDS[kind]
        size = size_for_fraction(kind, fraction, scale)
        if hue.category is Category.PRIMARY:
            parts.append(f"{noun} at full size, {size:.2f} mm (pure {primary.value})")
        elif hue.category is Category.SECONDARY:
            parts.append(f"{noun} at mid size, {size:.2f} mm (equal {primary.value})")
        elif fraction > 0.5:
            parts.append(f"{more} {noun}, {size:.2f} mm (more {primary.value})")
        else:
            parts.append(f"{less} {noun}, {size:.2f} mm (less {primary.value})")
    return f"{hue.label}: " + " with ".join(parts)
