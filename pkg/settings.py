"""
Project defaults, read from settings.json and the environment.

Lookup order for every value: command-line flag (applied by the CLI), then
environment / .env, then settings.json, then the built-in defaults below.
"""

import json
import logging
import os
from dataclasses import astuple, dataclass, field
from typing import Optional

from dotenv import load_dotenv

from errors import InputError
from models import LegibilityConstraints, SizeRange, SizeScale

DEFAULT_SETTINGS_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "settings.json")


@dataclass(frozen=True)
class Settings:
    swatch_size: tuple[float, float] = (40.0, 40.0)
    inner_radius: float = 40.0
    outer_radius: float = 90.0
    dpi: int = 300
    piece_clearance: float = 0.5
    formats: tuple[str, ...] = ("svg",)
    baseline_samples: int = 10_000
    scale: SizeScale = field(default_factory=SizeScale)
    constraints: LegibilityConstraints = field(default_factory=LegibilityConstraints)
    log_level: str = "INFO"
    seed: Optional[int] = None


def _pair(data: dict, key: str, default: tuple[float, float]) -> tuple[float, float]:
    value = data.get(key)
    if value is None:
        return default
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(f"settings '{key}' must be a two-number list, got {value!r}")
    return float(value[0]), float(value[1])


def _env_seed() -> Optional[int]:
    seed = os.getenv("TACTILE_SEED")
    if seed is None:
        return None
    try:
        return int(seed)
    except ValueError:
        logging.warning(f"Ignoring non-integer TACTILE_SEED={seed!r}")
        return None


def load_settings(path: Optional[str] = None) -> Settings:
    """Load defaults from settings.json, then apply environment overrides.

    Args:
        path: settings file to read. Falls back to ``TACTILE_SETTINGS`` and
            then to the settings.json beside this module. A missing file
            means built-in defaults.
    """
    load_dotenv()
    path = path or os.getenv("TACTILE_SETTINGS") or DEFAULT_SETTINGS_PATH
    data: dict = {}
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise InputError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from None
        if not isinstance(data, dict):
            raise InputError(f"{path}: settings must be a JSON object")

    defaults = Settings()
    inner, outer = _pair(data, "wheel_radii_mm", (defaults.inner_radius, defaults.outer_radius))
    scale_data = data.get("size_scale", {})
    scale = SizeScale(
        **{
            kind: SizeRange(*_pair(scale_data, kind, astuple(getattr(defaults.scale, kind))))
            for kind in ("dot", "straight_line", "wavy_line")
        }
    )
    constraint_data = data.get("constraints", {})
    constraints = LegibilityConstraints(
        **{
            name: float(constraint_data.get(name, getattr(defaults.constraints, name)))
            for name in ("min_line_width", "min_dot_diameter", "min_gap", "min_period")
        }
    )
    return Settings(
        swatch_size=_pair(data, "swatch_size_mm", defaults.swatch_size),
        inner_radius=inner,
        outer_radius=outer,
        dpi=int(data.get("dpi", defaults.dpi)),
        piece_clearance=float(data.get("piece_clearance_mm", defaults.piece_clearance)),
        formats=tuple(data.get("formats", defaults.formats)),
        baseline_samples=int(data.get("baseline_samples", defaults.baseline_samples)),
        scale=scale,
        constraints=constraints,
        log_level=os.getenv("TACTILE_LOG_LEVEL", data.get("log_level", defaults.log_level)).upper(),
        seed=_env_seed(),
    )
