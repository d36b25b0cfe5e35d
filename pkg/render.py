"""
Fabrication output for tactile patterns.

Writes three formats:
  - SVG in millimetre user units. Raised features are black; sector outlines
    are grey hairlines for assembly reference and are not raised.
  - Binary PGM heightmaps (P5, raised = 255, background = 0) for swell paper
    and 3D-print pipelines.
  - JSON pattern manifests that read back into the identical PatternSpec.
"""

import json
import logging
import math
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np
from skimage.draw import polygon as fill_polygon

from errors import DpiOutOfRange, InputError, ManifestVersionMismatch, MalformedManifest, TactileError
from models import (
    CaseLayout,
    Element,
    Hue,
    KitPiece,
    Layer,
    LegibilityConstraints,
    PatternSpec,
    PrimitiveKind,
    RectRegion,
    RYBMix,
    SectorRegion,
    SizeRange,
    SizeScale,
    WheelLayout,
    build_kit,
    clock_position,
    describe_encoding,
)
from utils import ceil_mm, fmt_mm, sanitize_filename

SVG_NS = "http://www.w3.org/2000/svg"
MANIFEST_VERSION = "1"
MM_PER_INCH = 25.4
DPI_RANGE = (100, 1200)
RAISED = "#000000"
BACKGROUND = "#FFFFFF"
HAIRLINE = "#999999"
HAIRLINE_WIDTH = 0.1
FORMATS = ("svg", "pgm", "manifest")

SvgTarget = Union[PatternSpec, WheelLayout, KitPiece, CaseLayout]


@dataclass(frozen=True)
class SvgDocument:
    width_mm: float
    height_mm: float
    root: ET.Element

    def to_bytes(self) -> bytes:
        return ET.tostring(self.root, encoding="utf-8", xml_declaration=True) + b"\n"


@dataclass(frozen=True)
class HeightmapRaster:
    width_px: int
    height_px: int
    dpi: int
    pixels: np.ndarray

    def to_pgm(self) -> bytes:
        header = (
            f"P5\n# tactile heightmap: raised=255 background=0 dpi={self.dpi}\n"
            f"{self.width_px} {self.height_px}\n255\n"
        )
        return header.encode("ascii") + self.pixels.astype(np.uint8).tobytes()


# --- SVG ---------------------------------------------------------------------


def _path_data(coords) -> str:
    points = [f"{fmt_mm(x)} {fmt_mm(y)}" for x, y in coords]
    return "M " + " L ".join(points)


def _ring_path_data(coords) -> str:
    return _path_data(coords) + " Z"


def _add_element(group: ET.Element, element: Element) -> None:
    if element.is_circle:
        ET.SubElement(
            group,
            "circle",
            {
                "cx": fmt_mm(element.center[0]),
                "cy": fmt_mm(element.center[1]),
                "r": fmt_mm(element.size / 2),
                "fill": RAISED,
            },
        )
        return
    ET.SubElement(
        group,
        "path",
        {
            "d": _path_data(element.points),
            "fill": "none",
            "stroke": RAISED,
            "stroke-width": fmt_mm(element.size),
            "stroke-linecap": "round",
            "stroke-linejoin": "round",
            "class": element.kind.value,
        },
    )


def _add_hairline(group: ET.Element, polygon, title: Optional[str] = None) -> None:
    path = ET.SubElement(
        group,
        "path",
        {
            "d": _ring_path_data(polygon.exterior.coords[:-1]),
            "fill": "none",
            "stroke": HAIRLINE,
            "stroke-width": fmt_mm(HAIRLINE_WIDTH),
        },
    )
    if title:
        ET.SubElement(path, "title").text = title


def _sector_title(hue: Hue) -> str:
    return f"{hue.label}, {clock_position(hue).hour} o'clock"


def _document(bounds: tuple[float, float, float, float], title: str) -> tuple[SvgDocument, ET.Element]:
    minx, miny, maxx, maxy = bounds
    width = ceil_mm(maxx - minx)
    height = ceil_mm(maxy - miny)
    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": f"{fmt_mm(width)}mm",
            "height": f"{fmt_mm(height)}mm",
            "viewBox": f"0 0 {fmt_mm(width)} {fmt_mm(height)}",
        },
    )
    root.append(ET.Comment(" raised features are black; grey hairlines are reference only, not raised "))
    ET.SubElement(root, "title").text = title
    ET.SubElement(
        root,
        "rect",
        {"x": "0", "y": "0", "width": fmt_mm(width), "height": fmt_mm(height), "fill": BACKGROUND},
    )
    # Geometry is on math axes; flip y so path coordinates stay as computed.
    group = ET.SubElement(root, "g", {"transform": f"translate({fmt_mm(-minx)} {fmt_mm(maxy)}) scale(1 -1)"})
    return SvgDocument(width_mm=width, height_mm=height, root=root), group


def _pattern_bounds(spec: PatternSpec) -> tuple[float, float, float, float]:
    minx, miny, maxx, maxy = spec.region.polygon.bounds
    return (
        math.floor(round(minx * 1000, 6)) / 1000,
        math.floor(round(miny * 1000, 6)) / 1000,
        ceil_mm(maxx),
        ceil_mm(maxy),
    )


def _pattern_title(spec: PatternSpec) -> str:
    if spec.hue is not None:
        return f"{spec.hue.label} swatch"
    return "tactile pattern"


def to_svg(target: SvgTarget) -> SvgDocument:
    """Render a swatch, wheel, kit piece or case as an SVG document."""
    if isinstance(target, PatternSpec):
        doc, group = _document(_pattern_bounds(target), _pattern_title(target))
        if isinstance(target.region, SectorRegion):
            _add_hairline(group, target.region.polygon)
        for element in target.elements:
            _add_element(group, element)
        return doc

    if isinstance(target, WheelLayout):
        r = target.outer_radius
        doc, group = _document((-r, -r, r, r), "tactile color wheel")
        for sector in target.sectors:
            sector_group = ET.SubElement(group, "g", {"id": sector.hue.slug})
            _add_hairline(sector_group, sector.pattern.region.polygon, _sector_title(sector.hue))
            for element in sector.pattern.elements:
                _add_element(sector_group, element)
        return doc

    if isinstance(target, KitPiece):
        doc, group = _document(_pattern_bounds(target.pattern), f"kit piece: {target.label}")
        _add_hairline(group, target.outline.polygon, _sector_title(target.hue))
        for element in target.pattern.elements:
            _add_element(group, element)
        return doc

    if isinstance(target, CaseLayout):
        r = target.outer_radius
        doc, group = _document((-r, -r, r, r), "tactile color wheel case")
        for recess in target.recesses:
            _add_hairline(group, recess.outline.polygon, _sector_title(recess.hue))
        return doc

    raise TypeError(f"cannot render {type(target).__name__} as SVG")


# --- Heightmap ---------------------------------------------------------------


def to_heightmap(spec: PatternSpec, dpi: int = 300) -> HeightmapRaster:
    """Scanline-rasterize a pattern's raised geometry.

    Pixel (row, col) is raised when its centre lies inside an element
    footprint; row 0 is the top edge of the pattern's bounding box.

    Raises:
        DpiOutOfRange: dpi outside 100..1200.
    """
    if not DPI_RANGE[0] <= dpi <= DPI_RANGE[1]:
        raise DpiOutOfRange(f"dpi {dpi} outside {DPI_RANGE[0]}..{DPI_RANGE[1]}")
    minx, miny, maxx, maxy = _pattern_bounds(spec)
    px_per_mm = dpi / MM_PER_INCH
    width_px = math.ceil(round((maxx - minx) * px_per_mm, 6))
    height_px = math.ceil(round((maxy - miny) * px_per_mm, 6))
    pixels = np.zeros((height_px, width_px), dtype=np.uint8)
    for element in spec.elements:
        coords = np.asarray(element.footprint().exterior.coords)
        cols = (coords[:, 0] - minx) * px_per_mm - 0.5
        rows = (maxy - coords[:, 1]) * px_per_mm - 0.5
        rr, cc = fill_polygon(rows, cols, shape=pixels.shape)
        pixels[rr, cc] = 255
    return HeightmapRaster(width_px=width_px, height_px=height_px, dpi=dpi, pixels=pixels)


# --- Manifest ----------------------------------------------------------------


def _region_to_dict(region) -> dict:
    if isinstance(region, RectRegion):
        return {"kind": "rect", "x": region.x, "y": region.y, "width": region.width, "height": region.height}
    return {
        "kind": "sector",
        "inner_radius": region.inner_radius,
        "outer_radius": region.outer_radius,
        "start_deg": region.start_deg,
        "end_deg": region.end_deg,
        "cx": region.cx,
        "cy": region.cy,
        "inset": region.inset,
    }


def _element_to_dict(element: Element) -> dict:
    data = {
        "kind": element.kind.value,
        "center": list(element.center),
        "orientation": element.orientation,
        "size": element.size,
    }
    if not element.is_circle:
        data["amplitude"] = element.amplitude
        data["wavelength"] = element.wavelength
        data["points"] = [list(p) for p in element.points]
    return data


def manifest_dict(spec: PatternSpec) -> dict:
    return {
        "version": MANIFEST_VERSION,
        "hue": None if spec.hue is None else spec.hue.slug,
        "mix": None if spec.mix is None else {"y": spec.mix.y, "r": spec.mix.r, "b": spec.mix.b},
        "region": _region_to_dict(spec.region),
        "scale": {
            kind.value: [spec.scale.range_for(kind).s_min, spec.scale.range_for(kind).s_max]
            for kind in PrimitiveKind
        },
        "constraints": {
            "min_line_width": spec.constraints.min_line_width,
            "min_dot_diameter": spec.constraints.min_dot_diameter,
            "min_gap": spec.constraints.min_gap,
            "min_period": spec.constraints.min_period,
        },
        "layers": [
            {
                "kind": layer.kind.value,
                "fraction": layer.fraction,
                "size": layer.size,
                "period": layer.period,
                "phase": list(layer.phase),
                "orientation": layer.orientation,
            }
            for layer in spec.layers
        ],
        "elements": [_element_to_dict(e) for e in spec.elements],
    }


def write_manifest(spec: PatternSpec) -> str:
    """Serialize a pattern to manifest JSON text (UTF-8, version "1")."""
    return json.dumps(manifest_dict(spec), indent=2, ensure_ascii=False) + "\n"


NUMBER = (int, float)


def _is_number(value) -> bool:
    return isinstance(value, NUMBER) and not isinstance(value, bool)


def _field(data: dict, key: str, path: str, kind=NUMBER):
    where = f"{path}.{key}" if path else key
    if not isinstance(data, dict) or key not in data:
        raise MalformedManifest("missing field", field=where)
    value = data[key]
    if kind is NUMBER and not _is_number(value):
        raise MalformedManifest(f"expected a number, got {value!r}", field=where)
    if not isinstance(value, kind):
        raise MalformedManifest(f"unexpected {type(value).__name__}", field=where)
    return value


def _number(data: dict, key: str, path: str) -> float:
    return float(_field(data, key, path))


def _pair(data: dict, key: str, path: str) -> tuple[float, float]:
    value = _field(data, key, path, list)
    if len(value) != 2 or not all(_is_number(v) for v in value):
        raise MalformedManifest("expected a pair of numbers", field=f"{path}.{key}")
    return float(value[0]), float(value[1])


def _kind(data: dict, path: str) -> PrimitiveKind:
    value = _field(data, "kind", path, str)
    try:
        return PrimitiveKind(value)
    except ValueError:
        raise MalformedManifest(f"unknown primitive kind {value!r}", field=f"{path}.kind") from None


def _region_from_dict(data) -> Union[RectRegion, SectorRegion]:
    kind = _field(data, "kind", "region", str)
    if kind == "rect":
        return RectRegion(*(_number(data, k, "region") for k in ("x", "y", "width", "height")))
    if kind == "sector":
        return SectorRegion(
            *(
                _number(data, k, "region")
                for k in ("inner_radius", "outer_radius", "start_deg", "end_deg", "cx", "cy", "inset")
            )
        )
    raise MalformedManifest(f"unknown region kind {kind!r}", field="region.kind")


def _element_from_dict(data, path: str) -> Element:
    kind = _kind(data, path)
    center = _pair(data, "center", path)
    orientation = _number(data, "orientation", path)
    size = _number(data, "size", path)
    if kind is PrimitiveKind.DOT:
        if "points" in data:
            raise MalformedManifest("a dot is a circle and carries no points", field=f"{path}.points")
        return Element(kind=kind, center=center, orientation=orientation, size=size)
    raw = _field(data, "points", path, list)
    if len(raw) < 2:
        raise MalformedManifest(f"a {kind.value} needs at least 2 points", field=f"{path}.points")
    points = []
    for i, point in enumerate(raw):
        if not isinstance(point, list) or len(point) != 2 or not all(_is_number(v) for v in point):
            raise MalformedManifest("expected a pair of numbers", field=f"{path}.points[{i}]")
        points.append((float(point[0]), float(point[1])))
    return Element(
        kind=kind,
        center=center,
        orientation=orientation,
        size=size,
        amplitude=_number(data, "amplitude", path),
        wavelength=_number(data, "wavelength", path),
        points=tuple(points),
    )


def read_manifest(doc: str) -> PatternSpec:
    """Parse manifest JSON text back into the PatternSpec it was written from.

    Raises:
        ManifestVersionMismatch: the document's version is not "1".
        MalformedManifest: invalid JSON or a missing/invalid field; carries the
            line number or field path.
    """
    try:
        data = json.loads(doc)
    except json.JSONDecodeError as e:
        raise MalformedManifest(f"invalid JSON: {e.msg}", line=e.lineno) from None
    if not isinstance(data, dict):
        raise MalformedManifest("manifest must be a JSON object", line=1)
    version = _field(data, "version", "", str)
    if version != MANIFEST_VERSION:
        raise ManifestVersionMismatch(f"manifest version {version!r}, expected {MANIFEST_VERSION!r}")

    try:
        region = _region_from_dict(_field(data, "region", "", dict))
        scale_data = _field(data, "scale", "", dict)
        scale = SizeScale(
            **{kind.value: SizeRange(*_pair(scale_data, kind.value, "scale")) for kind in PrimitiveKind}
        )
        constraint_data = _field(data, "constraints", "", dict)
        constraints = LegibilityConstraints(
            **{
                key: _number(constraint_data, key, "constraints")
                for key in ("min_line_width", "min_dot_diameter", "min_gap", "min_period")
            }
        )
        mix_data = data.get("mix")
        mix = None
        if mix_data is not None:
            mix = RYBMix(**{k: _number(mix_data, k, "mix") for k in ("r", "y", "b")})
        hue_name = data.get("hue")
        hue = None
        if hue_name is not None:
            if not isinstance(hue_name, str) or hue_name.upper() not in Hue.__members__:
                raise MalformedManifest(f"unknown hue {hue_name!r}", field="hue")
            hue = Hue[hue_name.upper()]
        layers = []
        for i, layer in enumerate(_field(data, "layers", "", list)):
            path = f"layers[{i}]"
            layers.append(
                Layer(
                    kind=_kind(layer, path),
                    fraction=_number(layer, "fraction", path),
                    size=_number(layer, "size", path),
                    period=_number(layer, "period", path),
                    phase=_pair(layer, "phase", path),
                    orientation=_number(layer, "orientation", path),
                )
            )
        elements = tuple(
            _element_from_dict(e, f"elements[{i}]") for i, e in enumerate(_field(data, "elements", "", list))
        )
    except MalformedManifest:
        raise
    except TactileError as e:
        raise MalformedManifest(str(e)) from e

    return PatternSpec(
        region=region,
        layers=tuple(layers),
        scale=scale,
        constraints=constraints,
        mix=mix,
        hue=hue,
        elements=elements,
    )


def load_manifest(filepath: str) -> PatternSpec:
    if not os.path.exists(filepath):
        raise MalformedManifest(f"manifest not found: {filepath}")
    with open(filepath, "r", encoding="utf-8") as f:
        spec = read_manifest(f.read())
    logging.info(f"Loaded manifest {filepath}: {len(spec.elements)} elements")
    return spec


# --- Files -------------------------------------------------------------------


def _write(filepath: str, payload: bytes) -> str:
    os.makedirs(os.path.dirname(filepath) or ".", exist_ok=True)
    with open(filepath, "wb") as f:
        f.write(payload)
    logging.info(f"Wrote {filepath} ({len(payload)} bytes)")
    return filepath


def parse_formats(text: str) -> tuple[str, ...]:
    formats = tuple(dict.fromkeys(f.strip().lower() for f in text.split(",") if f.strip()))
    unknown = [f for f in formats if f not in FORMATS]
    if unknown or not formats:
        raise InputError(f"unknown output format(s) {unknown or text!r}; choose from {', '.join(FORMATS)}")
    return formats


def write_pattern_files(spec: PatternSpec, base_path: str, formats: Iterable[str] = ("svg",), dpi: int = 300) -> list[str]:
    """Write a pattern in each requested format next to ``base_path`` (extension replaced)."""
    stem, _ = os.path.splitext(base_path)
    written = []
    for fmt in formats:
        if fmt == "svg":
            written.append(_write(f"{stem}.svg", to_svg(spec).to_bytes()))
        elif fmt == "pgm":
            written.append(_write(f"{stem}.pgm", to_heightmap(spec, dpi).to_pgm()))
        elif fmt == "manifest":
            written.append(_write(f"{stem}.json", write_manifest(spec).encode("utf-8")))
    return written


def write_svg(target: SvgTarget, filepath: str) -> str:
    return _write(filepath, to_svg(target).to_bytes())


def write_kit(
    layout: WheelLayout,
    out_dir: str,
    formats: Iterable[str] = ("svg",),
    dpi: int = 300,
    clearance: Optional[float] = None,
) -> list[str]:
    """Write the twelve kit pieces, the case and a ``kit.json`` index into ``out_dir``.

    Pieces are written as SVG always; heightmaps and manifests are added when
    requested.
    """
    formats = tuple(formats)
    kit = build_kit(layout) if clearance is None else build_kit(layout, clearance)
    written = []
    index = {
        "version": MANIFEST_VERSION,
        "inner_radius": layout.inner_radius,
        "outer_radius": layout.outer_radius,
        "case": "case.svg",
        "pieces": [],
    }
    for piece in kit.pieces:
        stem = os.path.join(out_dir, f"piece_{int(piece.hue):02d}_{sanitize_filename(piece.hue.slug)}")
        written.append(write_svg(piece, f"{stem}.svg"))
        extra = [f for f in formats if f != "svg"]
        if extra:
            written.extend(write_pattern_files(piece.pattern, stem, extra, dpi))
        index["pieces"].append(
            {
                "hue": piece.hue.slug,
                "label": piece.label,
                "hour": clock_position(piece.hue).hour,
                "file": os.path.basename(f"{stem}.svg"),
                "elements": len(piece.pattern.elements),
                "reading": describe_encoding(piece.hue, layout.scale),
            }
        )
    written.append(write_svg(kit.case, os.path.join(out_dir, "case.svg")))
    written.append(
        _write(os.path.join(out_dir, "kit.json"), (json.dumps(index, indent=2) + "\n").encode("utf-8"))
    )
    return written
