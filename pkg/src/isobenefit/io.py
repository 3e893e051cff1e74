"""File formats: scene ingestion, raster serialization, contour GeoJSON.

All writers are atomic (write to a temp file, then rename into place), so a
failing run never leaves a partial output file behind. Floats are written
in shortest round-trip form, which makes every format lossless for double
precision and byte-for-byte deterministic.

Formats:

* Scene JSON: ``{"amenities": [{"id", "x", "y", "A"}], "profiles":
  {name: {"E": num?, "overrides": {id: num}}}?, "majority": str?}``.
* Scene CSV: header ``id,x,y,A`` then one amenity per row (no profiles).
* Raster CSV: first line ``# ncols,nrows,origin_x,origin_y,cell_size``,
  then nrows comma-separated data lines, top row first.
* ESRI ASCII grid (.asc): the usual six-line header; since grid origins are
  cell centers, XLLCORNER sits half a cell below/left of the origin. The
  NODATA value is declared but never emitted, and rejected on read.
* Contours: GeoJSON FeatureCollection of LineStrings with ``level`` and
  ``closed`` properties; closed rings repeat their first coordinate in the
  GeoJSON only. Coordinates are scene-local planar x,y (see ``crs_note``).
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from typing import Iterable

from .errors import SceneFormatError
from .isolines import ContourLine, ContourSet
from .scene import Amenity, GridSpec, Profile, Raster, Scene, validate_scene

__all__ = [
    "load_scene",
    "write_raster",
    "read_raster",
    "write_raster_csv",
    "read_raster_csv",
    "write_raster_asc",
    "read_raster_asc",
    "contours_to_geojson",
    "write_contours_geojson",
    "read_contours_geojson",
    "atomic_write_text",
]

ASC_NODATA = -9999.0

CRS_NOTE = "coordinates are scene-local planar x,y; no CRS is assumed"


def atomic_write_text(path: str, text: str) -> None:
    """Write ``text`` to ``path`` atomically: temp file in the same directory,
    then rename over the target. Unix newlines regardless of platform."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _fmt(value: float) -> str:
    # repr of a Python float is the shortest string that round-trips.
    return repr(float(value))


# ---------------------------------------------------------------- scenes


def _format_error(path: str, message: str, line: int | None = None) -> SceneFormatError:
    where = f"{path}:{line}" if line is not None else path
    return SceneFormatError(f"{where}: {message}")


def _require_number(raw: object, what: str, path: str, line: int | None = None) -> float:
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise _format_error(path, f"{what} must be a number, got {raw!r}", line)
    return float(raw)


def _scene_from_json(path: str) -> Scene:
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise _format_error(path, f"invalid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(doc, dict):
        raise _format_error(path, "scene document must be a JSON object")
    raw_amenities = doc.get("amenities")
    if not isinstance(raw_amenities, list):
        raise _format_error(path, 'scene needs an "amenities" list')

    amenities = []
    for k, entry in enumerate(raw_amenities):
        if not isinstance(entry, dict):
            raise _format_error(path, f"amenity #{k} must be an object, got {entry!r}")
        missing = [key for key in ("id", "x", "y", "A") if key not in entry]
        if missing:
            raise _format_error(path, f"amenity #{k} is missing {', '.join(missing)}")
        if not isinstance(entry["id"], str):
            raise _format_error(path, f"amenity #{k} id must be a string, got {entry['id']!r}")
        amenities.append(Amenity(
            id=entry["id"],
            x=_require_number(entry["x"], f"amenity #{k} x", path),
            y=_require_number(entry["y"], f"amenity #{k} y", path),
            attractiveness=_require_number(entry["A"], f"amenity #{k} A", path),
        ))

    profiles: dict[str, Profile] = {}
    raw_profiles = doc.get("profiles", {})
    if not isinstance(raw_profiles, dict):
        raise _format_error(path, '"profiles" must be an object mapping name to profile')
    for name, body in raw_profiles.items():
        if not isinstance(body, dict):
            raise _format_error(path, f"profile {name!r} must be an object, got {body!r}")
        efficiency = None
        if body.get("E") is not None:
            efficiency = _require_number(body["E"], f"profile {name!r} E", path)
        raw_overrides = body.get("overrides", {})
        if not isinstance(raw_overrides, dict):
            raise _format_error(path, f'profile {name!r} "overrides" must be an object')
        overrides = {
            target: _require_number(value, f"profile {name!r} override {target!r}", path)
            for target, value in raw_overrides.items()
        }
        profiles[name] = Profile(name=name, efficiency=efficiency, overrides=overrides)

    majority = doc.get("majority")
    if majority is not None and not isinstance(majority, str):
        raise _format_error(path, f'"majority" must be a profile name, got {majority!r}')

    return Scene(amenities=tuple(amenities), profiles=profiles, majority=majority)


def _scene_from_csv(path: str) -> Scene:
    with open(path, encoding="utf-8", newline="") as handle:
        rows = list(csv.reader(handle))
    rows = [(n, row) for n, row in enumerate(rows, start=1)
            if row and any(cell.strip() for cell in row)]
    if not rows:
        raise _format_error(path, "empty scene file")
    header_line, header = rows[0]
    if [cell.strip() for cell in header] != ["id", "x", "y", "A"]:
        raise _format_error(path, 'header must be exactly "id,x,y,A"', header_line)
    amenities = []
    for n, row in rows[1:]:
        if len(row) != 4:
            raise _format_error(path, f"expected 4 fields, got {len(row)}", n)
        ident = row[0].strip()
        numbers = []
        for cell, what in zip(row[1:], ("x", "y", "A")):
            try:
                numbers.append(float(cell))
            except ValueError:
                raise _format_error(path, f"{what} is not a number: {cell.strip()!r}", n) from None
        amenities.append(Amenity(ident, numbers[0], numbers[1], numbers[2]))
    return Scene(amenities=tuple(amenities))


def load_scene(path: str) -> Scene:
    """Read a scene from JSON (by default) or amenity CSV (``.csv``), then
    run full validation.

    Malformed files raise :class:`SceneFormatError` with file and, where
    known, line context; well-formed files that break scene invariants raise
    :class:`~isobenefit.errors.SceneValidationError` listing every problem.
    """
    if path.lower().endswith(".csv"):
        scene = _scene_from_csv(path)
    else:
        scene = _scene_from_json(path)
    return validate_scene(scene)


# ---------------------------------------------------------------- rasters


def raster_csv_text(raster: Raster) -> str:
    grid = raster.grid
    lines = ["# {},{},{},{},{}".format(
        grid.ncols, grid.nrows, _fmt(grid.origin_x), _fmt(grid.origin_y),
        _fmt(grid.cell_size))]
    as_grid = raster.as_grid()
    for j in range(grid.nrows - 1, -1, -1):  # top row first
        lines.append(",".join(_fmt(v) for v in as_grid[j]))
    return "\n".join(lines) + "\n"


def write_raster_csv(raster: Raster, path: str) -> None:
    atomic_write_text(path, raster_csv_text(raster))


def read_raster_csv(path: str) -> Raster:
    with open(path, encoding="utf-8") as handle:
        lines = [line.rstrip("\n") for line in handle]
    if not lines or not lines[0].startswith("#"):
        raise _format_error(path, 'missing "# ncols,nrows,origin_x,origin_y,cell_size" header', 1)
    header = lines[0].lstrip("#").strip().split(",")
    if len(header) != 5:
        raise _format_error(path, f"header needs 5 fields, got {len(header)}", 1)
    try:
        ncols, nrows = int(header[0]), int(header[1])
        origin_x, origin_y, cell_size = (float(h) for h in header[2:])
    except ValueError as exc:
        raise _format_error(path, f"bad header value: {exc}", 1) from None
    data = [line for line in lines[1:] if line.strip()]
    if len(data) != nrows:
        raise _format_error(path, f"expected {nrows} data rows, got {len(data)}")
    grid = GridSpec(origin_x, origin_y, cell_size, ncols, nrows)
    values = [0.0] * grid.size
    for top_offset, line in enumerate(data):
        j = nrows - 1 - top_offset
        cells = line.split(",")
        if len(cells) != ncols:
            raise _format_error(path, f"expected {ncols} values, got {len(cells)}", top_offset + 2)
        for i, cell in enumerate(cells):
            try:
                values[j * ncols + i] = float(cell)
            except ValueError:
                raise _format_error(path, f"bad value {cell.strip()!r}", top_offset + 2) from None
    return Raster(grid, values)


def raster_asc_text(raster: Raster) -> str:
    grid = raster.grid
    half = grid.cell_size / 2.0
    lines = [
        f"NCOLS {grid.ncols}",
        f"NROWS {grid.nrows}",
        f"XLLCORNER {_fmt(grid.origin_x - half)}",
        f"YLLCORNER {_fmt(grid.origin_y - half)}",
        f"CELLSIZE {_fmt(grid.cell_size)}",
        f"NODATA_VALUE {_fmt(ASC_NODATA)}",
    ]
    as_grid = raster.as_grid()
    for j in range(grid.nrows - 1, -1, -1):
        lines.append(" ".join(_fmt(v) for v in as_grid[j]))
    return "\n".join(lines) + "\n"


def write_raster_asc(raster: Raster, path: str) -> None:
    atomic_write_text(path, raster_asc_text(raster))


def read_raster_asc(path: str) -> Raster:
    with open(path, encoding="utf-8") as handle:
        lines = [line.strip() for line in handle if line.strip()]
    header: dict[str, float] = {}
    k = 0
    while k < len(lines):
        parts = lines[k].split()
        if len(parts) != 2 or parts[0].upper() not in (
                "NCOLS", "NROWS", "XLLCORNER", "YLLCORNER", "CELLSIZE", "NODATA_VALUE"):
            break
        try:
            header[parts[0].upper()] = float(parts[1])
        except ValueError:
            raise _format_error(path, f"bad header value in {lines[k]!r}", k + 1) from None
        k += 1
    for key in ("NCOLS", "NROWS", "XLLCORNER", "YLLCORNER", "CELLSIZE"):
        if key not in header:
            raise _format_error(path, f"missing {key} header")
    ncols, nrows = int(header["NCOLS"]), int(header["NROWS"])
    cell_size = header["CELLSIZE"]
    nodata = header.get("NODATA_VALUE")
    grid = GridSpec(
        origin_x=header["XLLCORNER"] + cell_size / 2.0,
        origin_y=header["YLLCORNER"] + cell_size / 2.0,
        cell_size=cell_size,
        ncols=ncols,
        nrows=nrows,
    )
    flat: list[float] = []
    for n, line in enumerate(lines[k:], start=k + 1):
        for cell in line.split():
            try:
                flat.append(float(cell))
            except ValueError:
                raise _format_error(path, f"bad value {cell!r}", n) from None
    if len(flat) != grid.size:
        raise _format_error(path, f"expected {grid.size} values, got {len(flat)}")
    if nodata is not None and any(v == nodata for v in flat):
        raise _format_error(
            path, "grid contains NODATA cells; benefit rasters must be complete")
    values = [0.0] * grid.size
    pos = 0
    for j in range(nrows - 1, -1, -1):
        for i in range(ncols):
            values[j * ncols + i] = flat[pos]
            pos += 1
    return Raster(grid, values)


def write_raster(raster: Raster, path: str, fmt: str = "csv") -> None:
    """Write a raster as ``csv`` or ``asc``."""
    if fmt == "csv":
        write_raster_csv(raster, path)
    elif fmt == "asc":
        write_raster_asc(raster, path)
    else:
        raise ValueError(f"unknown raster format {fmt!r}; expected csv or asc")


def read_raster(path: str) -> Raster:
    """Read a raster, picking the format from the extension (.asc vs CSV)."""
    if path.lower().endswith(".asc"):
        return read_raster_asc(path)
    return read_raster_csv(path)


# ---------------------------------------------------------------- contours


def contours_to_geojson(contours: ContourSet) -> dict:
    features = []
    for line in contours.lines:
        coordinates = [[x, y] for x, y in line.points]
        if line.closed and coordinates:
            coordinates.append(list(coordinates[0]))  # GeoJSON rings repeat the start
        features.append({
            "type": "Feature",
            "geometry": {"type": "LineString", "coordinates": coordinates},
            "properties": {"level": line.level, "closed": line.closed},
        })
    return {
        "type": "FeatureCollection",
        "crs_note": CRS_NOTE,
        "levels": list(contours.levels),
        "features": features,
    }


def write_contours_geojson(contours: ContourSet, path: str) -> None:
    text = json.dumps(contours_to_geojson(contours), indent=2)
    atomic_write_text(path, text + "\n")


def read_contours_geojson(path: str) -> ContourSet:
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise _format_error(path, f"invalid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise _format_error(path, "expected a GeoJSON FeatureCollection")
    lines = []
    seen_levels: list[float] = []
    for k, feature in enumerate(doc.get("features", [])):
        geometry = feature.get("geometry") or {}
        if geometry.get("type") != "LineString":
            raise _format_error(path, f"feature #{k}: expected a LineString")
        properties = feature.get("properties") or {}
        level = _require_number(properties.get("level"), f"feature #{k} level", path)
        closed = bool(properties.get("closed", False))
        points = [(float(x), float(y)) for x, y in geometry["coordinates"]]
        if closed and len(points) > 1 and points[0] == points[-1]:
            points.pop()  # undo the GeoJSON ring closure
        lines.append(ContourLine(level=level, points=tuple(points), closed=closed))
        if level not in seen_levels:
            seen_levels.append(level)
    raw_levels: Iterable[float] = doc.get("levels", seen_levels)
    levels = tuple(float(lv) for lv in raw_levels)
    return ContourSet(levels=levels, lines=tuple(lines))
