import json
import os
import random

import pytest

from errors import DuplicatePiece, InputError, MalformedSession
from models import (
    Arrangement,
    Category,
    Hue,
    Session,
    canonical_arrangement,
    chance_baseline,
    circular_distance,
    load_session,
    save_session,
    score_arrangement,
    score_session,
)

PILOT = os.path.join(os.path.dirname(__file__), "..", "sessions", "pilot_session.json")


@pytest.mark.parametrize("a, b, expected", [(0, 0, 0), (1, 11, 2), (3, 9, 6), (11, 0, 1), (2, 7, 5)])
def test_circular_distance(a, b, expected):
    assert circular_distance(a, b) == expected
    assert circular_distance(b, a) == expected


def test_circular_distance_range():
    with pytest.raises(MalformedSession):
        circular_distance(0, 12)


def test_identity_scores_twelve():
    report = score_arrangement(canonical_arrangement())
    assert report.n_correct == 12
    assert report.histogram == (12, 0, 0, 0, 0, 0, 0)
    assert report.confusions == ()
    assert report.correct_by_category == {Category.PRIMARY: 3, Category.SECONDARY: 3, Category.TERTIARY: 6}


def test_blue_purple_swap():
    slots = list(Hue)
    slots[8], slots[6] = slots[6], slots[8]
    report = score_arrangement(Arrangement(tuple(slots)))
    assert report.n_correct == 10
    assert report.histogram[2] == 2
    assert (Hue.BLUE, Hue.PURPLE) in report.confusions
    assert (Hue.PURPLE, Hue.BLUE) in report.confusions


def test_duplicate_piece_rejected():
    slots = list(Hue)
    slots[3] = Hue.RED
    with pytest.raises(DuplicatePiece):
        Arrangement(tuple(slots))


def test_wrong_slot_count_rejected():
    with pytest.raises(MalformedSession):
        Arrangement(tuple(Hue)[:11])


def test_partial_arrangement():
    slots = [None] * 12
    slots[0] = Hue.YELLOW
    slots[4] = Hue.BLUE
    report = score_arrangement(Arrangement(tuple(slots)))
    assert report.placed == 2
    assert report.empty == 10
    assert report.n_correct == 1
    assert sum(report.histogram) == report.placed
    assert report.histogram[4] == 1


def test_self_score_counts_every_placed_piece():
    rng = random.Random(2)
    for _ in range(50):
        pieces = list(Hue)
        rng.shuffle(pieces)
        slots = [p if rng.random() < 0.7 else None for p in pieces]
        arrangement = Arrangement(tuple(slots))
        report = score_arrangement(arrangement, arrangement)
        assert report.n_correct == sum(s is not None for s in slots)


def test_relabeling_keeps_n_correct():
    rng = random.Random(4)
    for _ in range(50):
        answer = list(Hue)
        rng.shuffle(answer)
        relabel = list(Hue)
        rng.shuffle(relabel)
        baseline = score_arrangement(Arrangement(tuple(answer))).n_correct
        renamed_answer = Arrangement(tuple(relabel[h] for h in answer))
        renamed_reference = Arrangement(tuple(relabel[h] for h in Hue))
        assert score_arrangement(renamed_answer, renamed_reference).n_correct == baseline


def test_n_correct_matches_fixed_points():
    rng = random.Random(8)
    for _ in range(1000):
        answer = list(Hue)
        rng.shuffle(answer)
        fixed = sum(1 for slot, piece in enumerate(answer) if int(piece) == slot)
        report = score_arrangement(Arrangement(tuple(answer)))
        assert report.n_correct == fixed
        assert sum(report.histogram) == 12


def test_chance_baseline_is_one():
    assert chance_baseline(10_000, seed=1) == pytest.approx(1.0, abs=0.1)
    assert chance_baseline(500, seed=9) == chance_baseline(500, seed=9)


def test_chance_baseline_needs_samples():
    with pytest.raises(MalformedSession):
        chance_baseline(0)


def test_pilot_session():
    session = load_session(PILOT)
    report = score_session(session)
    assert report.n_correct == 4
    assert report.duration_s == 390
    assert report.histogram == (4, 4, 4, 0, 0, 0, 0)
    assert (Hue.BLUE, Hue.PURPLE) in report.confusions
    assert report.correct_by_category[Category.PRIMARY] == 2
    assert report.correct_by_category[Category.TERTIARY] == 2
    assert report.primaries_first is False
    assert report.first_correct_index == 1


def test_session_round_trip(tmp_path):
    session = load_session(PILOT)
    path = tmp_path / "copy.json"
    save_session(session, str(path))
    assert load_session(str(path)) == session


def test_minimal_session_defaults(tmp_path):
    path = tmp_path / "minimal.json"
    path.write_text(json.dumps({"version": "1", "answer": [h.slug for h in Hue]}))
    session = load_session(str(path))
    assert session == Session(answer=canonical_arrangement())
    report = score_session(session)
    assert report.duration_s is None
    assert report.primaries_first is None
    assert report.first_correct_index is None


@pytest.mark.parametrize(
    "document",
    [
        {"version": "2", "answer": [None] * 12},
        {"version": "1"},
        {"version": "1", "answer": ["yellow"] * 2 + [None] * 9},
        {"version": "1", "answer": ["magenta"] + [None] * 11},
        {"version": "1", "answer": [None] * 12, "duration_s": -3},
        {"version": "1", "answer": [None] * 12, "duration_s": float("nan")},
        {"version": "1", "answer": [None] * 12, "duration_s": float("inf")},
        {"version": "1", "answer": [None] * 12, "timestamp": "yesterday"},
    ],
)
def test_malformed_sessions(tmp_path, document):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document))
    with pytest.raises(InputError) as info:
        load_session(str(path))
    assert info.value.exit_code == 2


def test_duplicate_in_session_file(tmp_path):
    path = tmp_path / "dup.json"
    path.write_text(json.dumps({"version": "1", "answer": ["red", "red"] + [None] * 10}))
    with pytest.raises(DuplicatePiece):
        load_session(str(path))


def test_invalid_json_session(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"version": "1",\n "answer": [')
    with pytest.raises(MalformedSession, match="line 2"):
        load_session(str(path))


def test_pilot_session_has_no_invented_date():
    session = load_session(PILOT)
    assert session.timestamp is None
    assert "eye mask" in session.notes
