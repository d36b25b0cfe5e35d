import pytest

from errors import RingTooThin
from models import (
    Hue,
    build_kit,
    build_wheel,
    clock_position,
    congruence_deviation,
    decode_pattern,
    validate_legibility,
)


@pytest.fixture(scope="module")
def wheel():
    return build_wheel(40.0, 90.0)


@pytest.fixture(scope="module")
def kit(wheel):
    return build_kit(wheel)


def test_wheel_has_one_sector_per_hue(wheel):
    assert [s.hue for s in wheel.sectors] == list(Hue)
    assert wheel.inner_radius == 40.0
    assert wheel.outer_radius == 90.0


def test_sectors_centred_on_clock_positions(wheel):
    for sector in wheel.sectors:
        assert sector.center_angle == pytest.approx(clock_position(sector.hue).angle_deg)
        assert sector.end_angle - sector.start_angle == pytest.approx(30.0)
    assert wheel.sector_for(Hue.YELLOW).center_angle == pytest.approx(90.0)
    assert wheel.sector_for(Hue.RED).center_angle == pytest.approx(330.0)
    assert wheel.sector_for(Hue.BLUE).center_angle == pytest.approx(210.0)


def test_sectors_partition_the_circle(wheel):
    spans = sorted((s.start_angle, s.end_angle) for s in wheel.sectors)
    assert sum(end - start for start, end in spans) == pytest.approx(360.0, abs=1e-9)
    for (_, end), (start, _) in zip(spans, spans[1:]):
        assert abs(end - start) < 1e-9
    assert abs(spans[-1][1] - 360.0 - spans[0][0]) < 1e-9


@pytest.mark.parametrize("hue", list(Hue))
def test_sector_pattern_reads_back(wheel, hue):
    pattern = wheel.sector_for(hue).pattern
    assert decode_pattern(pattern).hue == hue
    assert validate_legibility(pattern, wheel.constraints).passed


@pytest.mark.parametrize("radii", [(40.0, 41.0), (40.0, 49.0), (0.0, 90.0)])
def test_thin_ring_rejected(radii):
    with pytest.raises(RingTooThin):
        build_wheel(*radii)


def test_kit_has_twelve_pieces_and_recesses(kit):
    assert [p.hue for p in kit.pieces] == list(Hue)
    assert [r.hue for r in kit.case.recesses] == list(Hue)
    assert kit.pieces[0].label == "yellow"


def test_recesses_are_congruent(kit):
    assert congruence_deviation(kit.case) < 0.01


def test_pieces_fit_their_recesses(kit):
    for piece, recess in zip(kit.pieces, kit.case.recesses):
        assert recess.outline.polygon.contains(piece.outline.polygon)
        # Half a millimetre of play on every edge.
        assert recess.outline.polygon.area > piece.outline.polygon.area


@pytest.mark.parametrize("index", range(12))
def test_kit_pieces_are_legible_and_decode(kit, index):
    piece = kit.pieces[index]
    assert validate_legibility(piece.pattern).passed
    assert decode_pattern(piece.pattern).hue == piece.hue
    outline = piece.outline.polygon.buffer(1e-9)
    assert all(outline.contains(e.footprint()) for e in piece.pattern.elements)


@pytest.mark.parametrize("clearance", [0.5, 1.0, 1.5])
def test_recesses_stay_congruent_for_any_clearance(wheel, clearance):
    kit = build_kit(wheel, clearance=clearance)
    assert congruence_deviation(kit.case) < 0.01
    for piece, recess in zip(kit.pieces, kit.case.recesses):
        assert recess.outline.polygon.contains(piece.outline.polygon)
