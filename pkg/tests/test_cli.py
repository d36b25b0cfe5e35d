import json
import os
import xml.etree.ElementTree as ET

import pytest

from errors import InputError, InvalidMix
from tactile import main, parse_mix, parse_radii, parse_size

SVG = "{http://www.w3.org/2000/svg}"
PILOT = os.path.join(os.path.dirname(__file__), "..", "sessions", "pilot_session.json")


@pytest.fixture
def orange_manifest(tmp_path):
    assert main(["hue", "#FF8000", "--format", "manifest", "--out-dir", str(tmp_path)]) == 0
    return tmp_path / "orange_swatch.json"


def test_parse_helpers():
    assert parse_size("40x40") == (40.0, 40.0)
    assert parse_radii("40, 90") == (40.0, 90.0)
    assert parse_mix("y=3,r=1").y == pytest.approx(0.75)
    with pytest.raises(InputError):
        parse_size("forty")
    with pytest.raises(InvalidMix):
        parse_mix("g=1")


def test_hue_writes_svg(tmp_path):
    assert main(["hue", "yellow", "--size", "40x40", "--format", "svg", "--out-dir", str(tmp_path)]) == 0
    root = ET.parse(tmp_path / "yellow_swatch.svg").getroot()
    assert len(root.findall(f".//{SVG}circle")) == 36


def test_hex_color_json_summary(tmp_path, capsys):
    code = main(["hue", "#FF8000", "--format", "manifest", "--json", "--out-dir", str(tmp_path)])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["hue"] == "orange"
    assert payload["hour"] == 2
    assert payload["files"] == [str(tmp_path / "orange_swatch.json")]


def test_decode_manifest(orange_manifest, capsys):
    capsys.readouterr()
    assert main(["decode", str(orange_manifest)]) == 0
    assert capsys.readouterr().out.strip() == "orange, y:0.50 r:0.50"


def test_validate_passes(orange_manifest, capsys):
    capsys.readouterr()
    assert main(["validate", str(orange_manifest)]) == 0
    assert capsys.readouterr().out.strip() == "pass"


def test_validate_tampered_manifest(orange_manifest, capsys):
    data = json.loads(orange_manifest.read_text())
    dot = next(e for e in data["elements"] if e["kind"] == "dot")
    dot["size"] = 1.0
    orange_manifest.write_text(json.dumps(data))
    capsys.readouterr()
    assert main(["validate", str(orange_manifest)]) == 6
    assert capsys.readouterr().out.startswith("FAIL")


def test_achromatic_color(tmp_path):
    assert main(["hue", "#808080", "--out-dir", str(tmp_path)]) == 3


def test_unknown_color(tmp_path):
    assert main(["hue", "chartreuse-ish", "--out-dir", str(tmp_path)]) == 2


def test_thin_ring(tmp_path):
    assert main(["wheel", "--radii", "40,41", "--out-dir", str(tmp_path)]) == 4


def test_wheel(tmp_path):
    assert main(["wheel", "--radii", "40,90", "--out-dir", str(tmp_path)]) == 0
    root = ET.parse(tmp_path / "wheel.svg").getroot()
    assert root.get("width") == "180.000mm"


def test_kit(tmp_path):
    out_dir = tmp_path / "kit"
    assert main(["kit", "--out-dir", str(out_dir)]) == 0
    assert len(os.listdir(out_dir)) == 14


def test_swatch_mix(tmp_path, capsys):
    assert main(["swatch", "--mix", "y=0.75,r=0.25", "--json", "--out-dir", str(tmp_path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["hue"] == "yellow_orange"
    assert os.path.exists(tmp_path / "mix_y75_r25_swatch.svg")


def test_score_pilot(capsys):
    assert main(["score", PILOT]) == 0
    out = capsys.readouterr().out
    assert "correct: 4/12" in out
    assert "purple in the blue slot" in out


def test_score_pilot_json(capsys):
    assert main(["score", PILOT, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n_correct"] == 4
    assert payload["histogram"] == [4, 4, 4, 0, 0, 0, 0]
    assert payload["duration_s"] == 390


def test_score_baseline(capsys):
    assert main(["score", "--baseline", "2000", "--seed", "5", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["baseline"]["mean_correct"] == pytest.approx(1.0, abs=0.15)


def test_score_needs_input():
    assert main(["score"]) == 2


def test_duplicate_session(tmp_path):
    path = tmp_path / "dup.json"
    path.write_text(json.dumps({"version": "1", "answer": ["red", "red"] + [None] * 10}))
    assert main(["score", str(path)]) == 5


def test_legend(capsys):
    assert main(["legend", "--json"]) == 0
    entries = json.loads(capsys.readouterr().out)["hues"]
    assert len(entries) == 12
    assert entries[0]["hue"] == "yellow"


def test_constraint_override_rejected(tmp_path):
    assert main(["hue", "yellow", "--min-gap", "10", "--out-dir", str(tmp_path)]) == 2


def test_dpi_out_of_range(tmp_path):
    assert main(["hue", "yellow", "--format", "pgm", "--dpi", "50", "--out-dir", str(tmp_path)]) == 2


def test_unknown_format(tmp_path):
    assert main(["hue", "yellow", "--format", "png", "--out-dir", str(tmp_path)]) == 2


def test_output_is_deterministic(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    for out_dir in (first, second):
        assert main(["hue", "blue_green", "--format", "svg,pgm,manifest", "--out-dir", str(out_dir)]) == 0
    for name in ("blue_green_swatch.svg", "blue_green_swatch.pgm", "blue_green_swatch.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_validate_uses_manifest_constraints(tmp_path, capsys):
    assert main(["hue", "yellow", "--min-gap", "1.5", "--format", "manifest", "--out-dir", str(tmp_path)]) == 0
    manifest = str(tmp_path / "yellow_swatch.json")
    capsys.readouterr()
    assert main(["validate", manifest]) == 0
    assert capsys.readouterr().out.strip() == "pass"
    assert main(["validate", manifest, "--min-gap", "2.0"]) == 6
