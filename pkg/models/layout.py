"""
Wheel, kit and case geometry.

The wheel is an annulus of twelve 30° sectors, one per hue, centred on the
hue's clock direction. The kit cuts the same sectors into detachable pieces
with an assembly clearance, and the case holds one recess per sector.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import shapely
from shapely import affinity

from errors import RegionTooSmall, RingTooThin

from .colorwheel import Hue, clock_position, mix_of
from .pattern import LegibilityConstraints, PatternSpec, SectorRegion, SizeScale, synthesize_swatch

SECTOR_SPAN_DEG = 30.0
DEFAULT_INNER_RADIUS = 40.0
DEFAULT_OUTER_RADIUS = 90.0
PIECE_CLEARANCE = 0.5
RECESS_ALLOWANCE = 0.5


@dataclass(frozen=True)
class Sector:
    hue: Hue
    start_angle: float
    end_angle: float
    pattern: PatternSpec

    @property
    def center_angle(self) -> float:
        return ((self.start_angle + self.end_angle) / 2) % 360


@dataclass(frozen=True)
class WheelLayout:
    inner_radius: float
    outer_radius: float
    sectors: tuple[Sector, ...]
    scale: SizeScale
    constraints: LegibilityConstraints

    def sector_for(self, hue: Hue) -> Sector:
        return self.sectors[Hue(hue)]


@dataclass(frozen=True)
class KitPiece:
    hue: Hue
    outline: SectorRegion
    pattern: PatternSpec
    label: str


@dataclass(frozen=True)
class Recess:
    hue: Hue
    outline: SectorRegion


@dataclass(frozen=True)
class CaseLayout:
    inner_radius: float
    outer_radius: float
    recesses: tuple[Recess, ...]


@dataclass(frozen=True)
class Kit:
    pieces: tuple[KitPiece, ...]
    case: CaseLayout


def sector_angles(hue: Hue) -> tuple[float, float]:
    """Start/end angles of a hue's sector; start in [0, 360), end = start + 30."""
    start = (clock_position(hue).angle_deg - SECTOR_SPAN_DEG / 2) % 360
    return start, start + SECTOR_SPAN_DEG


def row_orientation(region: SectorRegion) -> float:
    # Rows run tangentially, so a finger sweeping outward crosses them.
    return (region.center_deg - 90.0) % 180


def build_wheel(
    inner_r: float = DEFAULT_INNER_RADIUS,
    outer_r: float = DEFAULT_OUTER_RADIUS,
    scale: Optional[SizeScale] = None,
    constraints: Optional[LegibilityConstraints] = None,
) -> WheelLayout:
    """Lay the twelve hue patterns out on a clock-face ring.

    Raises:
        RingTooThin: the ring is thinner than two lattice periods or a sector
            cannot hold its pattern.
    """
    scale = scale or SizeScale()
    constraints = constraints or LegibilityConstraints()
    if inner_r <= 0 or outer_r - inner_r < 2 * constraints.min_period:
        raise RingTooThin(
            f"ring {inner_r}..{outer_r} mm is thinner than two {constraints.min_period} mm periods"
        )

    sectors = []
    for hue in Hue:
        start, end = sector_angles(hue)
        region = SectorRegion(inner_radius=inner_r, outer_radius=outer_r, start_deg=start, end_deg=end)
        try:
            pattern = synthesize_swatch(
                mix_of(hue), region, scale, constraints, orientation=row_orientation(region)
            )
        except RegionTooSmall as e:
            raise RingTooThin(f"{hue.slug} sector: {e}") from e
        logging.info(
            f"Sector {hue.slug}: {start:.0f}-{end:.0f} deg, {len(pattern.elements)} elements, "
            f"period {pattern.layers[0].period} mm"
        )
        sectors.append(Sector(hue=hue, start_angle=start, end_angle=end, pattern=pattern))
    return WheelLayout(
        inner_radius=inner_r,
        outer_radius=outer_r,
        sectors=tuple(sectors),
        scale=scale,
        constraints=constraints,
    )


def build_kit(layout: WheelLayout, clearance: float = PIECE_CLEARANCE) -> Kit:
    """Cut the wheel into twelve shape-congruent pieces plus a matching case.

    Pieces are told apart only by their pattern, so every outline is the same
    inset sector rotated to its hue's position.
    """
    pieces = []
    recesses = []
    for sector in layout.sectors:
        outline = SectorRegion(
            inner_radius=layout.inner_radius,
            outer_radius=layout.outer_radius,
            start_deg=sector.start_angle,
            end_deg=sector.end_angle,
            inset=clearance,
        )
        try:
            pattern = synthesize_swatch(
                mix_of(sector.hue),
                outline,
                layout.scale,
                layout.constraints,
                orientation=row_orientation(outline),
            )
        except RegionTooSmall as e:
            raise RingTooThin(f"{sector.hue.slug} piece: {e}") from e
        pieces.append(KitPiece(hue=sector.hue, outline=outline, pattern=pattern, label=sector.hue.label))
        recesses.append(
            Recess(
                hue=sector.hue,
                outline=SectorRegion(
                    inner_radius=layout.inner_radius,
                    outer_radius=layout.outer_radius,
                    start_deg=sector.start_angle,
                    end_deg=sector.end_angle,
                    inset=max(0.0, clearance - RECESS_ALLOWANCE),
                ),
            )
        )
        logging.info(f"Piece {sector.hue.slug}: {len(pattern.elements)} elements")
    case = CaseLayout(
        inner_radius=layout.inner_radius, outer_radius=layout.outer_radius, recesses=tuple(recesses)
    )
    return Kit(pieces=tuple(pieces), case=case)


def congruence_deviation(case: CaseLayout) -> float:
    """Largest Hausdorff distance between the first recess and any other, once rotated onto it."""
    reference = case.recesses[0].outline
    worst = 0.0
    for recess in case.recesses[1:]:
        turn = reference.start_deg - recess.outline.start_deg
        aligned = affinity.rotate(recess.outline.polygon, turn, origin=(0.0, 0.0))
        worst = max(worst, float(shapely.hausdorff_distance(aligned, reference.polygon)))
    return worst
