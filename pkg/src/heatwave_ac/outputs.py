"""
Result files written by ``heatwave-ac run`` and read back by ``top``/``region``.

All data files are deterministic for identical inputs: rows are in ascending
cell id order, floats use the shortest round-trip representation and JSON keys
are sorted.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Union

import geojson
import numpy as np
import pandas as pd

from .model.demand import CellDemandTable, NationalDemandSeries
from .model.geo import GeoPoint
from .model.presence import HOURS, HOUR_COLUMNS

logger = logging.getLogger(__name__)

CELLS_CSV = "cells.csv"
NATIONAL_CSV = "national.csv"
SUMMARY_JSON = "summary.json"
CELLS_GEOJSON = "cells.geojson"
MANIFEST_JSON = "manifest.json"

PathLike = Union[str, Path]


def file_digest(path: PathLike) -> str:
    """SHA-256 hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _write_json(path: Path, payload: Any) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def write_cells_csv(out_dir: Path, table: CellDemandTable) -> Path:
    path = out_dir / CELLS_CSV
    frame = pd.DataFrame(table.values, columns=list(HOUR_COLUMNS))
    frame.insert(0, "grid_id", list(table.cell_ids))
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def read_cells_csv(results_dir: PathLike) -> CellDemandTable:
    """Load ``cells.csv`` from a results directory.

    Raises:
        FileNotFoundError: If the results are missing
    """
    path = Path(results_dir) / CELLS_CSV
    frame = pd.read_csv(
        path, dtype={"grid_id": str}, keep_default_na=False, float_precision="round_trip"
    )
    values = frame[list(HOUR_COLUMNS)].to_numpy(dtype=float)
    return CellDemandTable(cell_ids=tuple(frame["grid_id"]), values=values)


def write_national_csv(out_dir: Path, national: NationalDemandSeries) -> Path:
    path = out_dir / NATIONAL_CSV
    frame = pd.DataFrame(
        {"hour": list(range(HOURS)), "value_gwh": list(national.in_gwh())}
    )
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def write_summary(out_dir: Path, summary: dict[str, Any]) -> Path:
    path = out_dir / SUMMARY_JSON
    _write_json(path, summary)
    return path


def write_geojson(
    out_dir: Path, table: CellDemandTable, centroids: dict[str, GeoPoint]
) -> Path:
    """One Point feature per cell at its centroid, hourly values as properties."""
    features = []
    for cell_id, row in zip(table.cell_ids, table.values):
        centroid = centroids[cell_id]
        properties: dict[str, Any] = {"grid_id": cell_id, "peak_kwh": float(np.max(row))}
        properties.update(zip(HOUR_COLUMNS, row.tolist()))
        features.append(
            geojson.Feature(
                geometry=geojson.Point((centroid.lon, centroid.lat)),
                properties=properties,
            )
        )
    path = out_dir / CELLS_GEOJSON
    path.write_text(
        geojson.dumps(geojson.FeatureCollection(features), sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return path


def read_centroids(results_dir: PathLike) -> dict[str, GeoPoint]:
    """Cell centroids from ``cells.geojson`` of a results directory."""
    path = Path(results_dir) / CELLS_GEOJSON
    with open(path, encoding="utf-8") as handle:
        collection = geojson.load(handle)
    centroids = {}
    for feature in collection["features"]:
        lon, lat = feature["geometry"]["coordinates"]
        centroids[feature["properties"]["grid_id"]] = GeoPoint(lat=lat, lon=lon)
    return centroids


def write_manifest(out_dir: Path, manifest: dict[str, Any]) -> Path:
    path = out_dir / MANIFEST_JSON
    _write_json(path, manifest)
    return path
