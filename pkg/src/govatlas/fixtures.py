"""Canonical 4x4 demo dataset used across the tests and demos.

Sixteen unit-square counties on a grid, row r and column c in 0..3; county
C_rc occupies [c, c+1] x [r, r+1] with fips "000" + two digits of (4r + c).
Columns 0-1 are state AA, columns 2-3 state BB, and population is
100 * (4r + c + 1).

Regions:
    R1 (RIGO)  C00 C01 C10 C11        R2 (RIGO)  C22 C23 C32 C33
    R3 (RIGO)  C01 C02 (cross-state; C01 is secondary, so dual-RIGO)
    M1 (MSA)   C10 C11 C12 (cross-state)
    M2 (MSA)   C33
"""

from __future__ import annotations

import json
from pathlib import Path

from .ingest import assemble, parse_affiliations, parse_geometry, parse_regions, parse_secondary
from .model import Atlas
from .pipeline import build_atlas

GRID = 4

# fips suffix -> (rigo_code, msa_code)
_AFFILIATIONS = {
    0: ("R1", ""),
    1: ("R1", ""),
    2: ("R3", ""),
    4: ("R1", "M1"),
    5: ("R1", "M1"),
    6: ("", "M1"),
    10: ("R2", ""),
    11: ("R2", ""),
    14: ("R2", ""),
    15: ("R2", "M2"),
}

_REGIONS = [
    ("R1", "RIGO", "Northwest Compact"),
    ("R2", "RIGO", "Southeast Compact"),
    ("R3", "RIGO", "Riverine Council"),
    ("M1", "MSA", "Midland Metro"),
    ("M2", "MSA", "Harbor Metro"),
]


def county_fips(row: int, col: int) -> str:
    return f"{GRID * row + col:05d}"


def geometry_document(states: dict[str, str] | None = None) -> str:
    """GeoJSON FeatureCollection of the 16 unit squares, optionally re-stated."""
    features = []
    for row in range(GRID):
        for col in range(GRID):
            fips = county_fips(row, col)
            state = "AA" if col < 2 else "BB"
            if states:
                state = states.get(fips, state)
            ring = [
                [col, row],
                [col + 1, row],
                [col + 1, row + 1],
                [col, row + 1],
                [col, row],
            ]
            features.append(
                {
                    "type": "Feature",
                    "properties": {
                        "fips": fips,
                        "name": f"C{row}{col}",
                        "state": state,
                        "population": 100 * (GRID * row + col + 1),
                    },
                    "geometry": {"type": "Polygon", "coordinates": [ring]},
                }
            )
    return json.dumps({"type": "FeatureCollection", "features": features}, indent=2) + "\n"


def affiliations_csv() -> str:
    lines = ["county_fips,rigo_code,msa_code"]
    for n in range(GRID * GRID):
        rigo, msa = _AFFILIATIONS.get(n, ("", ""))
        lines.append(f"{n:05d},{rigo},{msa}")
    return "\n".join(lines) + "\n"


def regions_csv() -> str:
    lines = ["code,kind,name,population"]
    for code, kind, name in _REGIONS:
        lines.append(f"{code},{kind},{name},")
    return "\n".join(lines) + "\n"


def secondary_csv() -> str:
    return "county_fips,rigo_code\n00001,R3\n"


def write_inputs(directory: str | Path) -> dict[str, Path]:
    """Write the four input files and return their paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "geometry": directory / "counties.geojson",
        "affiliations": directory / "affiliations.csv",
        "regions": directory / "regions.csv",
        "secondary": directory / "secondary.csv",
    }
    paths["geometry"].write_text(geometry_document(), encoding="utf-8")
    paths["affiliations"].write_text(affiliations_csv(), encoding="utf-8")
    paths["regions"].write_text(regions_csv(), encoding="utf-8")
    paths["secondary"].write_text(secondary_csv(), encoding="utf-8")
    return paths


def fixture_atlas(states: dict[str, str] | None = None) -> Atlas:
    """Run the full pipeline over the fixture inputs (identity projection, scale 1)."""
    pre = assemble(
        parse_geometry(geometry_document(states)),
        parse_affiliations(affiliations_csv()),
        parse_regions(regions_csv()),
        parse_secondary(secondary_csv()),
    )
    return build_atlas(pre, projection="identity", scale=1.0)
