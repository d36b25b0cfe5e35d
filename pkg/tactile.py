#!/usr/bin/env python3
"""
Tactile Color Wheel Toolkit

Generates raised-pattern swatches, color wheels and reconstruction kits that
let blind readers identify RYB hues by touch: dots for yellow, straight lines
for red, wavy lines for blue, sized by each primary's share of the mix.
Also decodes and validates pattern manifests and scores reconstruction-task
sessions.
"""

import argparse
import json
import logging
import os
import re
import sys
import traceback
from dataclasses import dataclass, replace
from typing import Optional

from errors import InputError, InvalidMix, LegibilityFailed, TactileError
from models import (
    Arrangement,
    Hue,
    PatternSpec,
    Primary,
    RectRegion,
    RYBMix,
    build_wheel,
    canonical_rgb,
    chance_baseline,
    clock_position,
    decode_pattern,
    describe_encoding,
    load_session,
    mix_of,
    parse_color,
    score_session,
    synthesize_swatch,
    validate_legibility,
)
from render import load_manifest, parse_formats, write_kit, write_pattern_files, write_svg
from settings import Settings, load_settings

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"
DEFAULT_OUTPUT_DIR = "output"

_PRIMARY_KEYS = {
    "y": Primary.YELLOW,
    "yellow": Primary.YELLOW,
    "r": Primary.RED,
    "red": Primary.RED,
    "b": Primary.BLUE,
    "blue": Primary.BLUE,
}


@dataclass(frozen=True)
class CliConfig:
    out: Optional[str]
    out_dir: str
    formats: tuple[str, ...]
    json: bool
    dpi: int
    radii: tuple[float, float]
    size: tuple[float, float]
    settings: Settings
    seed: Optional[int]


def parse_size(text: str) -> tuple[float, float]:
    """``40x40`` → (40.0, 40.0), millimetres."""
    match = re.fullmatch(r"\s*([0-9.]+)\s*[xX×]\s*([0-9.]+)\s*", text)
    if not match:
        raise InputError(f"size must look like WIDTHxHEIGHT in mm, got {text!r}")
    try:
        return float(match.group(1)), float(match.group(2))
    except ValueError:
        raise InputError(f"size must look like WIDTHxHEIGHT in mm, got {text!r}") from None


def parse_radii(text: str) -> tuple[float, float]:
    """``40,90`` → (40.0, 90.0), inner and outer radius in mm."""
    parts = [p.strip() for p in text.split(",")]
    try:
        inner, outer = (float(p) for p in parts)
    except ValueError:
        raise InputError(f"radii must look like INNER,OUTER in mm, got {text!r}") from None
    return inner, outer


def parse_mix(text: str) -> RYBMix:
    """``y=0.75,r=0.25`` → RYBMix; amounts are normalized to sum to 1."""
    fractions: dict[Primary, float] = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        primary = _PRIMARY_KEYS.get(key.strip().lower())
        if not sep or primary is None:
            raise InvalidMix(f"mix entries look like y=0.75 with keys y, r, b; got {part!r}")
        if primary in fractions:
            raise InvalidMix(f"mix lists {primary.value} twice")
        try:
            amount = float(value)
        except ValueError:
            raise InvalidMix(f"mix amount {value!r} is not a number") from None
        if amount < 0:
            raise InvalidMix(f"mix amount for {primary.value} is negative")
        fractions[primary] = amount
    return RYBMix.from_fractions(fractions)


def constraint_overrides(args: argparse.Namespace) -> dict[str, float]:
    return {
        name: getattr(args, name)
        for name in ("min_line_width", "min_dot_diameter", "min_gap", "min_period")
        if getattr(args, name) is not None
    }


def build_config(args: argparse.Namespace, settings: Settings) -> CliConfig:
    # replace() re-runs LegibilityConstraints validation on the overrides.
    constraints = replace(settings.constraints, **constraint_overrides(args))
    return CliConfig(
        out=args.out,
        out_dir=args.out_dir or DEFAULT_OUTPUT_DIR,
        formats=parse_formats(args.format) if args.format else settings.formats,
        json=args.json,
        dpi=args.dpi if args.dpi is not None else settings.dpi,
        radii=parse_radii(args.radii) if args.radii else (settings.inner_radius, settings.outer_radius),
        size=parse_size(args.size) if args.size else settings.swatch_size,
        settings=replace(settings, constraints=constraints),
        seed=args.seed if args.seed is not None else settings.seed,
    )


def emit(config: CliConfig, payload: dict, lines: list[str]) -> None:
    if config.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def pattern_summary(spec: PatternSpec) -> dict:
    return {
        "hue": spec.hue.slug if spec.hue is not None else None,
        "mix": {p.value: f for p, f in spec.mix.present()} if spec.mix is not None else {},
        "layers": [
            {"kind": layer.kind.value, "size_mm": layer.size, "period_mm": layer.period}
            for layer in spec.layers
        ],
        "elements": len(spec.elements),
    }


def _swatch(config: CliConfig, mix: RYBMix, label: str) -> int:
    width, height = config.size
    spec = synthesize_swatch(
        mix, RectRegion(0.0, 0.0, width, height), config.settings.scale, config.settings.constraints
    )
    base = config.out or os.path.join(config.out_dir, f"{label}_swatch")
    files = write_pattern_files(spec, base, config.formats, config.dpi)
    summary = pattern_summary(spec)
    summary["files"] = files
    if spec.hue is not None:
        summary["hour"] = clock_position(spec.hue).hour
        summary["canonical_rgb"] = canonical_rgb(spec.hue).hex
    sizes = ", ".join(f"{layer.kind.value} {layer.size:.3f} mm" for layer in spec.layers)
    lines = [
        f"{spec.hue.slug}, {spec.mix.describe()}",
        f"  {sizes}; period {spec.layers[0].period} mm; {len(spec.elements)} elements",
        *(f"  wrote {path}" for path in files),
    ]
    emit(config, summary, lines)
    return 0


def cmd_hue(args: argparse.Namespace, config: CliConfig) -> int:
    hue = parse_color(args.color)
    logging.info(f"Resolved {args.color!r} to {hue.slug}")
    return _swatch(config, mix_of(hue), hue.slug)


def cmd_swatch(args: argparse.Namespace, config: CliConfig) -> int:
    mix = parse_mix(args.mix)
    return _swatch(config, mix, "mix_" + "_".join(f"{p.value[0]}{round(f * 100)}" for p, f in mix.present()))


def _layout(config: CliConfig):
    inner, outer = config.radii
    return build_wheel(inner, outer, config.settings.scale, config.settings.constraints)


def cmd_wheel(args: argparse.Namespace, config: CliConfig) -> int:
    if any(f != "svg" for f in config.formats):
        logging.warning("The wheel is written as SVG only; other formats apply to swatches and kit pieces")
    layout = _layout(config)
    path = write_svg(layout, config.out or os.path.join(config.out_dir, "wheel.svg"))
    payload = {
        "inner_radius": layout.inner_radius,
        "outer_radius": layout.outer_radius,
        "sectors": [
            {"hue": s.hue.slug, "start_deg": s.start_angle, "end_deg": s.end_angle, "elements": len(s.pattern.elements)}
            for s in layout.sectors
        ],
        "files": [path],
    }
    emit(config, payload, [f"wheel {2 * layout.outer_radius:g}x{2 * layout.outer_radius:g} mm, 12 sectors", f"  wrote {path}"])
    return 0


def cmd_kit(args: argparse.Namespace, config: CliConfig) -> int:
    layout = _layout(config)
    out_dir = config.out or args.out_dir or os.path.join(DEFAULT_OUTPUT_DIR, "kit")
    files = write_kit(layout, out_dir, config.formats, config.dpi, config.settings.piece_clearance)
    emit(config, {"out_dir": out_dir, "files": files}, [f"kit: {len(files)} files in {out_dir}"])
    return 0


def cmd_decode(args: argparse.Namespace, config: CliConfig) -> int:
    spec = load_manifest(args.manifest)
    decoded = decode_pattern(spec)
    payload = {
        "hue": decoded.hue.slug,
        "mix": {p.value: f for p, f in decoded.mix.present()},
        "mean_sizes": {k.value: v for k, v in decoded.mean_sizes.items()},
        "counts": {k.value: v for k, v in decoded.counts.items()},
    }
    emit(config, payload, [f"{decoded.hue.slug}, {decoded.mix.describe()}"])
    return 0


def cmd_validate(args: argparse.Namespace, config: CliConfig) -> int:
    spec = load_manifest(args.manifest)
    # Floors the pattern was generated under, tightened or relaxed by any --min-* flags.
    constraints = replace(spec.constraints, **constraint_overrides(args))
    report = validate_legibility(spec, constraints)
    payload = {
        "pass": report.passed,
        "violations": [
            {"kind": v.kind.value, "location": list(v.location), "measured": v.measured, "limit": v.limit}
            for v in report.violations
        ],
    }
    lines = ["pass"] if report.passed else [f"FAIL: {len(report.violations)} violation(s)"]
    lines += [f"  {v.describe()}" for v in report.violations]
    emit(config, payload, lines)
    if not report.passed:
        for violation in report.violations:
            logging.warning(f"Legibility violation: {violation.describe()}")
        raise LegibilityFailed(f"{args.manifest} fails {len(report.violations)} legibility check(s)")
    return 0


def _score_lines(report) -> list[str]:
    histogram = " ".join(f"{d}:{n}" for d, n in enumerate(report.histogram))
    categories = ", ".join(f"{c.value} {n}" for c, n in report.correct_by_category.items())
    lines = [
        f"correct: {report.n_correct}/12 (placed {report.placed}, empty {report.empty})",
        f"distance histogram: {histogram}",
        f"correct by category: {categories}",
    ]
    if report.duration_s is not None:
        lines.append(f"duration: {report.duration_s:g} s ({report.duration_s / 60:.1f} min)")
    if report.primaries_first is not None:
        lines.append(f"primaries placed first: {'yes' if report.primaries_first else 'no'}")
    if report.first_correct_index is not None:
        lines.append(f"first correct placement: #{report.first_correct_index}")
    lines += [
        f"  {placed.slug} in the {expected.slug if expected is not None else 'unassigned'} slot"
        for expected, placed in report.confusions
    ]
    return lines


def cmd_score(args: argparse.Namespace, config: CliConfig) -> int:
    if args.session is None and args.baseline is None:
        raise InputError("score needs a session file, --baseline N, or both")
    payload: dict = {}
    lines: list[str] = []
    if args.session is not None:
        reference: Optional[Arrangement] = None
        if args.reference:
            reference = load_session(args.reference).answer
        report = score_session(load_session(args.session), reference)
        payload.update(report.to_dict())
        lines += _score_lines(report)
    if args.baseline is not None:
        samples = args.baseline or config.settings.baseline_samples
        mean = chance_baseline(samples, config.seed)
        payload["baseline"] = {"samples": samples, "seed": config.seed, "mean_correct": mean}
        lines.append(f"chance baseline: {mean:.3f} correct on average over {samples} random arrangements")
    emit(config, payload, lines)
    return 0


def cmd_legend(args: argparse.Namespace, config: CliConfig) -> int:
    entries = [
        {
            "hue": hue.slug,
            "hour": clock_position(hue).hour,
            "category": hue.category.value,
            "reading": describe_encoding(hue, config.settings.scale),
        }
        for hue in Hue
    ]
    emit(config, {"hues": entries}, [f"{e['hour']:>2} o'clock  {e['reading']}" for e in entries])
    return 0


COMMANDS = {
    "hue": cmd_hue,
    "swatch": cmd_swatch,
    "wheel": cmd_wheel,
    "kit": cmd_kit,
    "decode": cmd_decode,
    "validate": cmd_validate,
    "score": cmd_score,
    "legend": cmd_legend,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=str, default=None, help="Output file (or directory for kit)")
    common.add_argument("--out-dir", type=str, default=None, help=f"Output directory (default: {DEFAULT_OUTPUT_DIR})")
    common.add_argument("--format", type=str, default=None, help="Comma list of svg, pgm, manifest")
    common.add_argument("--json", action="store_true", help="Print machine-readable JSON to stdout")
    common.add_argument("--dpi", type=int, default=None, help="Heightmap resolution (100-1200)")
    common.add_argument("--radii", type=str, default=None, help="Wheel inner,outer radius in mm, e.g. 40,90")
    common.add_argument("--size", type=str, default=None, help="Swatch size in mm, e.g. 40x40")
    common.add_argument("--min-gap", dest="min_gap", type=float, default=None, help="Minimum clearance in mm")
    common.add_argument("--min-period", dest="min_period", type=float, default=None, help="Minimum lattice period in mm")
    common.add_argument("--min-line-width", dest="min_line_width", type=float, default=None, help="Minimum stroke width in mm")
    common.add_argument("--min-dot-diameter", dest="min_dot_diameter", type=float, default=None, help="Minimum dot diameter in mm")
    common.add_argument("--seed", type=int, default=None, help="Random seed for baselines (default: TACTILE_SEED)")
    common.add_argument("--settings", type=str, default=None, help="Settings file (default: settings.json)")
    common.add_argument("--log-file", type=str, default=None, help="Also write the log to this file")
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(
        description="Generate and check tactile RYB color-wheel patterns"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    hue = sub.add_parser("hue", parents=[common], help="Swatch for a wheel hue name or #rrggbb color")
    hue.add_argument("color", type=str)
    swatch = sub.add_parser("swatch", parents=[common], help="Swatch for an explicit mix")
    swatch.add_argument("--mix", type=str, required=True, help="e.g. y=0.75,r=0.25")
    sub.add_parser("wheel", parents=[common], help="Full 12-sector wheel")
    sub.add_parser("kit", parents=[common], help="12 pieces, case and kit.json index")
    decode = sub.add_parser("decode", parents=[common], help="Recover the hue from a manifest")
    decode.add_argument("manifest", type=str)
    validate = sub.add_parser("validate", parents=[common], help="Check a manifest against legibility floors")
    validate.add_argument("manifest", type=str)
    score = sub.add_parser("score", parents=[common], help="Score a reconstruction-task session")
    score.add_argument("session", type=str, nargs="?", default=None)
    score.add_argument("--reference", type=str, default=None, help="Reference session (default: canonical wheel)")
    score.add_argument(
        "--baseline", type=int, nargs="?", const=0, default=None,
        help="Also report the chance baseline over N samples (default N from settings)",
    )
    sub.add_parser("legend", parents=[common], help="Print how to read each hue's pattern")
    return parser


def configure_logging(level: str, log_file: Optional[str]) -> None:
    # stderr only, so --json output on stdout stays parseable.
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handlers.append(file_handler)
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging("DEBUG" if args.verbose else os.getenv("TACTILE_LOG_LEVEL", "INFO").upper(), args.log_file)

    try:
        settings = load_settings(args.settings)
        if not args.verbose:
            logging.getLogger().setLevel(settings.log_level)
        config = build_config(args, settings)
        logging.debug(f"Running {args.command} with {config}")
        return COMMANDS[args.command](args, config)
    except TactileError as e:
        logging.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        logging.error(f"CRITICAL ERROR: {e}")
        logging.error(traceback.format_exc())
        return 1


if __name__ == "__main__":
    sys.exit(main())
