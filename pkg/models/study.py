"""
Reconstruction-task scoring.

A participant places the twelve kit pieces into the case by touch; a session
records where each piece ended up. Scoring compares that arrangement with the
reference wheel slot by slot, measuring misses as circular distance on the ring.
"""

import json
import logging
import math
import os
from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional, Sequence

import numpy as np

from errors import DuplicatePiece, MalformedSession

from .colorwheel import Category, Hue, PRIMARY_ORDER, hue_by_name

SLOT_COUNT = 12
MAX_DISTANCE = SLOT_COUNT // 2
SESSION_VERSION = "1"
PRIMARY_HUES = frozenset(Hue[p.name] for p in PRIMARY_ORDER)


@dataclass(frozen=True)
class Arrangement:
    """Slot i (wheel position i, clockwise from 12 o'clock) holds a piece or nothing."""

    slots: tuple[Optional[Hue], ...]

    def __post_init__(self) -> None:
        if len(self.slots) != SLOT_COUNT:
            raise MalformedSession(f"arrangement needs {SLOT_COUNT} slots, got {len(self.slots)}")
        placed = [h for h in self.slots if h is not None]
        seen = set()
        for hue in placed:
            if hue in seen:
                raise DuplicatePiece(f"piece {Hue(hue).slug} is placed more than once")
            seen.add(hue)

    @classmethod
    def from_names(cls, names: Sequence[Optional[str]]) -> "Arrangement":
        return cls(tuple(None if n is None else hue_by_name(n) for n in names))

    def slot_of(self, hue: Hue) -> Optional[int]:
        for index, placed in enumerate(self.slots):
            if placed == hue:
                return index
        return None

    @property
    def is_complete(self) -> bool:
        return all(h is not None for h in self.slots)

    def names(self) -> list[Optional[str]]:
        return [None if h is None else h.slug for h in self.slots]


def canonical_arrangement() -> Arrangement:
    return Arrangement(tuple(Hue))


def circular_distance(a: int, b: int) -> int:
    """Slot distance around the ring, 0..6."""
    for index in (a, b):
        if not 0 <= index < SLOT_COUNT:
            raise MalformedSession(f"slot index {index} outside 0..{SLOT_COUNT - 1}")
    diff = abs(a - b)
    return min(diff, SLOT_COUNT - diff)


@dataclass(frozen=True)
class Session:
    answer: Arrangement
    duration_s: Optional[float] = None
    notes: Optional[str] = None
    timestamp: Optional[str] = None
    # Pieces in the order they were placed, when the session was observed.
    order: Optional[tuple[Hue, ...]] = None


@dataclass(frozen=True)
class ScoreReport:
    n_correct: int
    histogram: tuple[int, ...]
    confusions: tuple[tuple[Hue, Hue], ...]
    duration_s: Optional[float] = None
    placed: int = 0
    empty: int = 0
    correct_by_category: dict[Category, int] = field(default_factory=dict)
    primaries_first: Optional[bool] = None
    first_correct_index: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "n_correct": self.n_correct,
            "placed": self.placed,
            "empty": self.empty,
            "histogram": list(self.histogram),
            "confusions": [
                {"expected": None if e is None else e.slug, "placed": p.slug} for e, p in self.confusions
            ],
            "correct_by_category": {c.value: n for c, n in self.correct_by_category.items()},
            "duration_s": self.duration_s,
            "primaries_first": self.primaries_first,
            "first_correct_index": self.first_correct_index,
        }


def score_arrangement(
    answer: Arrangement,
    reference: Optional[Arrangement] = None,
    duration_s: Optional[float] = None,
    order: Optional[Sequence[Hue]] = None,
) -> ScoreReport:
    """Score an answered arrangement against the reference wheel.

    Every placed piece contributes its circular distance from the slot it
    belongs in; distance-0 placements are correct, the rest are confusions
    recorded as (piece expected in that slot, piece actually placed).

    Raises:
        MalformedSession: a placed piece has no slot in the reference.
    """
    reference = reference or canonical_arrangement()

    histogram = [0] * (MAX_DISTANCE + 1)
    confusions = []
    by_category = {c: 0 for c in Category}
    correct_pieces = set()
    for slot, piece in enumerate(answer.slots):
        if piece is None:
            continue
        home = reference.slot_of(piece)
        if home is None:
            raise MalformedSession(f"piece {piece.slug} has no slot in the reference arrangement")
        distance = circular_distance(slot, home)
        histogram[distance] += 1
        if distance == 0:
            by_category[piece.category] += 1
            correct_pieces.add(piece)
        else:
            confusions.append((reference.slots[slot], piece))

    primaries_first = None
    first_correct_index = None
    if order is not None:
        primaries_first = len(order) >= 3 and set(order[:3]) == PRIMARY_HUES
        first_correct_index = next(
            (i for i, piece in enumerate(order, start=1) if piece in correct_pieces), None
        )

    placed = sum(histogram)
    return ScoreReport(
        n_correct=histogram[0],
        histogram=tuple(histogram),
        confusions=tuple(confusions),
        duration_s=duration_s,
        placed=placed,
        empty=SLOT_COUNT - placed,
        correct_by_category=by_category,
        primaries_first=primaries_first,
        first_correct_index=first_correct_index,
    )


def score_session(session: Session, reference: Optional[Arrangement] = None) -> ScoreReport:
    return score_arrangement(session.answer, reference, session.duration_s, session.order)


def chance_baseline(samples: int = 10_000, seed: Optional[int] = None) -> float:
    """Mean number of correct slots over uniformly random full arrangements."""
    if samples <= 0:
        raise MalformedSession(f"baseline needs a positive sample count, got {samples}")
    rng = np.random.default_rng(seed)
    perms = rng.permuted(np.tile(np.arange(SLOT_COUNT), (samples, 1)), axis=1)
    return float((perms == np.arange(SLOT_COUNT)).sum(axis=1).mean())


def _optional_number(data: dict, key: str) -> Optional[float]:
    value = data.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value < 0:
        raise MalformedSession(f"'{key}' must be a finite non-negative number, got {value!r}")
    return float(value)


def session_from_dict(data: dict) -> Session:
    if not isinstance(data, dict):
        raise MalformedSession("session document must be a JSON object")
    version = data.get("version")
    if version != SESSION_VERSION:
        raise MalformedSession(f"unsupported session version {version!r}, expected {SESSION_VERSION!r}")
    answer = data.get("answer")
    if not isinstance(answer, list) or not all(a is None or isinstance(a, str) for a in answer):
        raise MalformedSession("'answer' must be a list of 12 hue names or nulls")
    order = data.get("order")
    if order is not None:
        if not isinstance(order, list) or not all(isinstance(o, str) for o in order):
            raise MalformedSession("'order' must be a list of hue names")
        order = tuple(hue_by_name(o) for o in order)
        if len(set(order)) != len(order):
            raise DuplicatePiece("'order' lists a piece more than once")
    notes = data.get("notes")
    timestamp = data.get("timestamp")
    if timestamp is not None:
        try:
            datetime.fromisoformat(timestamp)
        except (TypeError, ValueError):
            raise MalformedSession(f"'timestamp' is not an ISO 8601 date: {timestamp!r}") from None
    return Session(
        answer=Arrangement.from_names(answer),
        duration_s=_optional_number(data, "duration_s"),
        notes=None if notes is None else str(notes),
        timestamp=timestamp,
        order=order,
    )


def session_to_dict(session: Session) -> dict:
    data: dict = {"version": SESSION_VERSION, "answer": session.answer.names()}
    if session.duration_s is not None:
        data["duration_s"] = session.duration_s
    if session.notes is not None:
        data["notes"] = session.notes
    if session.timestamp is not None:
        data["timestamp"] = session.timestamp
    if session.order is not None:
        data["order"] = [h.slug for h in session.order]
    return data


def load_session(filepath: str) -> Session:
    if not os.path.exists(filepath):
        raise MalformedSession(f"session file not found: {filepath}")
    with open(filepath, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise MalformedSession(f"{filepath}: invalid JSON at line {e.lineno}: {e.msg}") from None
    session = session_from_dict(data)
    logging.info(f"Loaded session {filepath}: {sum(h is not None for h in session.answer.slots)} pieces placed")
    return session


def save_session(session: Session, filepath: str) -> None:
    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(session_to_dict(session), f, indent=2)
        f.write("\n")
    logging.info(f"Saved session to {filepath}")
