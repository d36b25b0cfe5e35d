import math
import random

import numpy as np
import pytest

from errors import TooFewElements, Unclassifiable
from models import (
    Element,
    Hue,
    Layer,
    LegibilityConstraints,
    PatternSpec,
    PrimitiveKind,
    RectRegion,
    ViolationKind,
    classify_element,
    decode_elements,
    mix_of,
    rotate_element,
    synthesize_swatch,
    translate_element,
    validate_legibility,
)
from utils import quantize

SWATCH = RectRegion(0.0, 0.0, 40.0, 40.0)
FIXED_ANGLES = [22.5 * k for k in range(16)]


def _polyline(kind, points, size=2.0):
    return Element(kind=kind, center=points[len(points) // 2], orientation=0.0, size=size, points=tuple(points))


def _sinusoid(amplitude=2.0, wavelength=6.0, periods=3, samples=24):
    xs = np.linspace(0.0, periods * wavelength, periods * samples + 1)
    ys = amplitude * np.sin(2 * np.pi * xs / wavelength)
    return [(float(x), float(y)) for x, y in zip(xs, ys)]


@pytest.fixture(scope="module")
def sample_elements():
    elements = []
    for orientation in (0.0, 37.0, 71.0):
        for hue in Hue:
            spec = synthesize_swatch(mix_of(hue), RectRegion(0.0, 0.0, 80.0, 80.0), orientation=orientation)
            elements.extend(spec.elements)
    return elements


def test_circle_is_a_dot():
    dot = Element(kind=PrimitiveKind.DOT, center=(1.0, 2.0), orientation=0.0, size=3.0)
    assert classify_element(dot) is PrimitiveKind.DOT


def test_closed_circular_polyline_is_a_dot():
    angles = np.linspace(0.0, 2 * np.pi, 33)
    ring = [(1.5 * math.cos(a), 1.5 * math.sin(a)) for a in angles]
    ring[-1] = ring[0]
    assert classify_element(_polyline(PrimitiveKind.DOT, ring)) is PrimitiveKind.DOT


@pytest.mark.parametrize("angle", FIXED_ANGLES)
def test_straight_segment_any_orientation(angle):
    segment = _polyline(PrimitiveKind.STRAIGHT_LINE, [(0.0, 0.0), (10.0, 0.0)])
    assert classify_element(rotate_element(segment, angle)) is PrimitiveKind.STRAIGHT_LINE


def test_sampled_sinusoid_is_wavy():
    wave = _polyline(PrimitiveKind.WAVY_LINE, _sinusoid())
    assert classify_element(wave) is PrimitiveKind.WAVY_LINE


def test_bent_polyline_is_unclassifiable():
    corner = _polyline(PrimitiveKind.STRAIGHT_LINE, [(0.0, 0.0), (10.0, 0.0), (10.0, 10.0)])
    with pytest.raises(Unclassifiable):
        classify_element(corner)


def test_sample_covers_every_kind(sample_elements):
    for kind in PrimitiveKind:
        assert sum(e.kind is kind for e in sample_elements) >= 100


def test_classification_is_rotation_invariant(sample_elements):
    rng = random.Random(3)
    angles = FIXED_ANGLES + [rng.uniform(0.0, 360.0) for _ in range(8)]
    chosen = []
    for kind in PrimitiveKind:
        chosen += rng.sample([e for e in sample_elements if e.kind is kind], 100)
    mismatches = 0
    for element in chosen:
        assert classify_element(element) is element.kind
        for angle in angles:
            if classify_element(rotate_element(element, angle, origin=(13.0, -7.0))) is not element.kind:
                mismatches += 1
    assert mismatches == 0


@pytest.mark.parametrize("hue", list(Hue))
def test_round_trip_recovers_hue(hue):
    spec = synthesize_swatch(mix_of(hue), SWATCH)
    decoded = decode_elements(spec.elements, spec.scale)
    assert decoded.hue == hue
    assert np.abs(decoded.mix.as_array() - mix_of(hue).as_array()).max() <= 0.02


def test_orange_decodes_to_equal_halves():
    spec = synthesize_swatch(mix_of(Hue.ORANGE), SWATCH)
    decoded = decode_elements(spec.elements)
    assert decoded.mix.describe() == "y:0.50 r:0.50"
    assert decoded.mean_sizes[PrimitiveKind.DOT] == pytest.approx(2.75)
    assert decoded.counts[PrimitiveKind.DOT] == 16


def test_blue_purple_decodes():
    spec = synthesize_swatch(mix_of(Hue.BLUE_PURPLE), SWATCH)
    decoded = decode_elements(spec.elements)
    assert decoded.mix.r == pytest.approx(0.25)
    assert decoded.mix.b == pytest.approx(0.75)
    assert decoded.hue == Hue.BLUE_PURPLE


def test_decoder_ignores_order_and_position():
    spec = synthesize_swatch(mix_of(Hue.YELLOW_GREEN), SWATCH)
    baseline = decode_elements(spec.elements)
    shuffled = list(spec.elements)
    random.Random(5).shuffle(shuffled)
    moved = [translate_element(e, 123.4, -56.7) for e in shuffled]
    assert decode_elements(shuffled) == baseline
    assert decode_elements(moved) == baseline


def test_too_few_elements():
    dots = [Element(kind=PrimitiveKind.DOT, center=(5.0 * i, 0.0), orientation=0.0, size=3.0) for i in range(2)]
    with pytest.raises(TooFewElements):
        decode_elements(dots)
    with pytest.raises(TooFewElements):
        decode_elements([])


@pytest.mark.parametrize("hue", list(Hue))
def test_synthesis_output_is_legible(hue):
    report = validate_legibility(synthesize_swatch(mix_of(hue), SWATCH))
    assert report.passed
    assert report.violations == ()


def _hand_built(elements, period=6.0):
    layer = Layer(kind=PrimitiveKind.DOT, fraction=1.0, size=3.0, period=period)
    return PatternSpec(region=RectRegion(-10.0, -10.0, 30.0, 20.0), layers=(layer,), elements=tuple(elements))


def test_gap_violation_detected():
    dots = [
        Element(kind=PrimitiveKind.DOT, center=(0.0, 0.0), orientation=0.0, size=3.0),
        Element(kind=PrimitiveKind.DOT, center=(4.0, 0.0), orientation=0.0, size=3.0),
    ]
    report = validate_legibility(_hand_built(dots), LegibilityConstraints(min_gap=2.0))
    assert not report.passed
    assert len(report.violations) == 1
    violation = report.violations[0]
    assert violation.kind is ViolationKind.GAP
    assert violation.measured == pytest.approx(1.0, abs=1e-3)
    assert violation.limit == 2.0
    assert violation.location[0] == pytest.approx(2.0, abs=1e-3)


def test_diameter_violation_detected():
    dot = Element(kind=PrimitiveKind.DOT, center=(0.0, 0.0), orientation=0.0, size=1.0)
    report = validate_legibility(_hand_built([dot]))
    assert [v.kind for v in report.violations] == [ViolationKind.DIAMETER]
    assert report.violations[0].measured == 1.0


def test_width_and_period_violations_detected():
    line = _polyline(PrimitiveKind.STRAIGHT_LINE, [(0.0, 0.0), (10.0, 0.0)], size=0.5)
    report = validate_legibility(_hand_built([line], period=4.0))
    assert report.count(ViolationKind.WIDTH) == 1
    assert report.count(ViolationKind.PERIOD) == 1


@pytest.mark.parametrize("angle", [0.0, 37.0, 71.0, 122.5])
def test_rounded_dense_straight_line(angle):
    theta = math.radians(angle)
    points = [(quantize(t * math.cos(theta)), quantize(t * math.sin(theta))) for t in np.linspace(0.0, 30.0, 31)]
    line = _polyline(PrimitiveKind.STRAIGHT_LINE, points)
    assert classify_element(line) is PrimitiveKind.STRAIGHT_LINE


def test_rounded_wave_stays_wavy():
    points = [(quantize(x), quantize(y)) for x, y in _sinusoid(amplitude=0.75, wavelength=8.0)]
    wave = _polyline(PrimitiveKind.WAVY_LINE, points)
    assert classify_element(rotate_element(wave, 37.0)) is PrimitiveKind.WAVY_LINE
