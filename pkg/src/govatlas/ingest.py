"""Input parsing: county GeoJSON, the three affiliation CSVs, and assembly.

CSV dialect: comma-separated UTF-8 with double-quote escaping, mandatory
header, LF or CRLF line endings. Empty cells mean "no value".
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .model import Region, RegionKind, SecondaryAffiliation

AFFILIATIONS_HEADER = ["county_fips", "rigo_code", "msa_code"]
REGIONS_HEADER = ["code", "kind", "name", "population"]
SECONDARY_HEADER = ["county_fips", "rigo_code"]

LonLat = tuple[float, float]


class IngestError(ValueError):
    def __init__(self, code: str, message: str, line: int | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.line = line


class AssemblyError(IngestError):
    """Referential problems found while assembling; collected exhaustively."""

    def __init__(self, errors: list[IngestError]):
        self.errors = errors
        summary = "; ".join(f"{e.code}: {e.message}" for e in errors)
        super().__init__("E_ASSEMBLE", summary or "assembly failed")


@dataclass(frozen=True)
class RawFeature:
    fips: str
    name: str
    state: str
    population: int
    # polygons[p][r] is ring r of part p; ring 0 is the outer boundary.
    polygons: tuple[tuple[tuple[LonLat, ...], ...], ...]


@dataclass(frozen=True)
class RawGeometrySet:
    features: tuple[RawFeature, ...]


@dataclass(frozen=True)
class AffiliationRow:
    fips: str
    rigo_code: str | None = None
    msa_code: str | None = None


@dataclass(frozen=True)
class RegionRow:
    code: str
    kind: RegionKind
    name: str
    population: int | None = None


@dataclass(frozen=True)
class PreCounty:
    fips: str
    name: str
    state: str
    population: int
    polygons: tuple[tuple[tuple[LonLat, ...], ...], ...]


@dataclass(frozen=True)
class PreAtlas:
    """Assembled inputs, geometry still unprojected."""

    counties: tuple[PreCounty, ...]
    regions: tuple[Region, ...]
    secondary: tuple[SecondaryAffiliation, ...]


def _signed_area2(ring: list[LonLat]) -> float:
    total = 0.0
    for i in range(len(ring) - 1):
        (x1, y1), (x2, y2) = ring[i], ring[i + 1]
        total += x1 * y2 - x2 * y1
    return total


def _normalize_ring(ring: list, outer: bool, index: int) -> tuple[LonLat, ...]:
    try:
        pts = [(float(x), float(y)) for x, y, *_ in ring]
    except (TypeError, ValueError):
        raise IngestError("E_BAD_JSON", f"feature {index}: ring coordinates are not numeric pairs")
    if len(pts) < 3:
        raise IngestError("E_BAD_JSON", f"feature {index}: ring has fewer than 3 points")
    if pts[0] != pts[-1]:
        pts.append(pts[0])
    area2 = _signed_area2(pts)
    if (outer and area2 < 0) or (not outer and area2 > 0):
        pts.reverse()
    return tuple(pts)


def parse_geometry(document: str) -> RawGeometrySet:
    """Parse a GeoJSON FeatureCollection of Polygon/MultiPolygon counties.

    Outer rings are normalized counter-clockwise (holes clockwise) and feature
    order is preserved. Any non-areal geometry rejects the whole input.
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise IngestError("E_BAD_JSON", f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise IngestError("E_BAD_JSON", "document is not a GeoJSON FeatureCollection")

    features: list[RawFeature] = []
    seen: set[str] = set()
    for index, feature in enumerate(doc.get("features", [])):
        geometry = feature.get("geometry") or {}
        gtype = geometry.get("type")
        if gtype == "Polygon":
            parts = [geometry.get("coordinates", [])]
        elif gtype == "MultiPolygon":
            parts = geometry.get("coordinates", [])
        else:
            raise IngestError(
                "E_GEOM_TYPE", f"feature {index}: geometry type {gtype!r} is not Polygon/MultiPolygon"
            )
        props = feature.get("properties") or {}
        for key in ("fips", "name", "state"):
            if key not in props or props[key] in (None, ""):
                raise IngestError("E_MISSING_PROP", f"feature {index}: missing property {key!r}")
        try:
            population = int(props.get("population", 0))
        except (TypeError, ValueError):
            raise IngestError(
                "E_BAD_PROP", f"feature {index}: population {props['population']!r} is not an integer"
            ) from None
        fips = str(props["fips"]).strip()
        if fips in seen:
            raise IngestError("E_DUP_KEY", f"feature {index}: duplicate fips {fips}")
        seen.add(fips)
        polygons = []
        for part in parts:
            rings = tuple(
                _normalize_ring(ring, outer=(r == 0), index=index) for r, ring in enumerate(part)
            )
            if rings:
                polygons.append(rings)
        features.append(
            RawFeature(
                fips=fips,
                name=str(props["name"]).strip(),
                state=str(props["state"]).strip(),
                population=population,
                polygons=tuple(polygons),
            )
        )
    return RawGeometrySet(features=tuple(features))


def _read_rows(text: str, expected_header: list[str]) -> list[tuple[int, list[str]]]:
    reader = csv.reader(text.splitlines())
    rows = [(line_no, row) for line_no, row in enumerate(reader, start=1) if row]
    if not rows or [cell.strip() for cell in rows[0][1]] != expected_header:
        raise IngestError(
            "E_BAD_HEADER", f"expected header {','.join(expected_header)!r}", line=1
        )
    out = []
    for line_no, row in rows[1:]:
        if len(row) != len(expected_header):
            raise IngestError(
                "E_BAD_ROW", f"line {line_no}: expected {len(expected_header)} columns", line=line_no
            )
        cells = [cell.strip() for cell in row]
        out.append((line_no, cells))
    return out


def parse_affiliations(text: str) -> list[AffiliationRow]:
    rows: list[AffiliationRow] = []
    seen: set[str] = set()
    for line_no, (fips, rigo, msa) in _read_rows(text, AFFILIATIONS_HEADER):
        if not fips:
            raise IngestError("E_BAD_ROW", f"line {line_no}: county_fips is required", line=line_no)
        if fips in seen:
            raise IngestError("E_DUP_KEY", f"line {line_no}: duplicate county_fips {fips}", line=line_no)
        seen.add(fips)
        rows.append(AffiliationRow(fips=fips, rigo_code=rigo or None, msa_code=msa or None))
    return rows


def parse_regions(text: str) -> list[RegionRow]:
    rows: list[RegionRow] = []
    seen: set[tuple[str, str]] = set()
    for line_no, (code, kind, name, population) in _read_rows(text, REGIONS_HEADER):
        if not code:
            raise IngestError("E_BAD_ROW", f"line {line_no}: code is required", line=line_no)
        try:
            region_kind = RegionKind(kind)
        except ValueError:
            raise IngestError(
                "E_BAD_ROW", f"line {line_no}: kind must be RIGO or MSA, got {kind!r}", line=line_no
            ) from None
        if population:
            try:
                pop_value: int | None = int(population)
            except ValueError:
                raise IngestError(
                    "E_BAD_ROW", f"line {line_no}: population {population!r} is not an integer",
                    line=line_no,
                ) from None
            if pop_value < 0:
                raise IngestError(
                    "E_BAD_ROW", f"line {line_no}: population must be >= 0", line=line_no
                )
        else:
            pop_value = None
        if (code, kind) in seen:
            raise IngestError(
                "E_DUP_KEY", f"line {line_no}: duplicate region ({code}, {kind})", line=line_no
            )
        seen.add((code, kind))
        rows.append(RegionRow(code=code, kind=region_kind, name=name, population=pop_value))
    return rows


def parse_secondary(text: str) -> list[SecondaryAffiliation]:
    rows: list[SecondaryAffiliation] = []
    seen: set[str] = set()
    for line_no, (fips, rigo) in _read_rows(text, SECONDARY_HEADER):
        if not fips or not rigo:
            raise IngestError(
                "E_BAD_ROW", f"line {line_no}: county_fips and rigo_code are required", line=line_no
            )
        if fips in seen:
            raise IngestError(
                "E_DUP_KEY", f"line {line_no}: county {fips} already has a secondary RIGO",
                line=line_no,
            )
        seen.add(fips)
        rows.append(SecondaryAffiliation(fips=fips, rigo_code=rigo))
    return rows


def _write_csv(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def write_affiliations_csv(rows: list[AffiliationRow]) -> str:
    return _write_csv(
        AFFILIATIONS_HEADER, [[r.fips, r.rigo_code or "", r.msa_code or ""] for r in rows]
    )


def write_regions_csv(rows: list[RegionRow]) -> str:
    return _write_csv(
        REGIONS_HEADER,
        [
            [r.code, r.kind.value, r.name, "" if r.population is None else str(r.population)]
            for r in rows
        ],
    )


def write_secondary_csv(rows: list[SecondaryAffiliation]) -> str:
    return _write_csv(SECONDARY_HEADER, [[r.fips, r.rigo_code] for r in rows])


def assemble(
    raw: RawGeometrySet,
    affiliations: list[AffiliationRow],
    regions: list[RegionRow],
    secondary: list[SecondaryAffiliation] | None = None,
) -> PreAtlas:
    """Resolve region member sets by inverting the affiliation table.

    Counties with geometry but no affiliation are retained (they categorize as
    Neither). Referential errors are collected exhaustively and raised together
    as one AssemblyError.
    """
    secondary = secondary or []
    errors: list[IngestError] = []
    county_pop = {f.fips: f.population for f in raw.features}
    catalog = {(row.kind, row.code): row for row in regions}
    members: dict[tuple[RegionKind, str], set[str]] = {key: set() for key in catalog}

    def add_member(kind: RegionKind, code: str, fips: str) -> None:
        key = (kind, code)
        if key not in catalog:
            errors.append(
                IngestError("E_UNKNOWN_REGION", f"{kind.value} code {code!r} is not in the catalog")
            )
            return
        members[key].add(fips)

    primary_rigo: dict[str, str] = {}
    for row in affiliations:
        if row.fips not in county_pop:
            errors.append(
                IngestError("E_UNKNOWN_FIPS", f"affiliation row {row.fips}: no geometry for county")
            )
            continue
        if row.rigo_code:
            add_member(RegionKind.RIGO, row.rigo_code, row.fips)
            primary_rigo[row.fips] = row.rigo_code
        if row.msa_code:
            add_member(RegionKind.MSA, row.msa_code, row.fips)

    kept_secondary: list[SecondaryAffiliation] = []
    for sec in secondary:
        if sec.fips not in county_pop:
            errors.append(
                IngestError("E_UNKNOWN_FIPS", f"secondary row {sec.fips}: no geometry for county")
            )
            continue
        if (RegionKind.RIGO, sec.rigo_code) not in catalog:
            errors.append(
                IngestError(
                    "E_UNKNOWN_REGION", f"secondary RIGO code {sec.rigo_code!r} is not in the catalog"
                )
            )
            continue
        if primary_rigo.get(sec.fips) == sec.rigo_code:
            errors.append(
                IngestError(
                    "E_SELF_SECONDARY",
                    f"county {sec.fips}: secondary RIGO {sec.rigo_code} equals its primary",
                )
            )
            continue
        add_member(RegionKind.RIGO, sec.rigo_code, sec.fips)
        kept_secondary.append(sec)

    if errors:
        raise AssemblyError(errors)

    region_objs = []
    for (kind, code), row in catalog.items():
        member_set = frozenset(members[(kind, code)])
        member_sum = sum(county_pop[f] for f in member_set)
        region_objs.append(
            Region(
                code=code,
                kind=kind,
                name=row.name,
                members=member_set,
                population=row.population if row.population is not None else member_sum,
                declared_population=row.population,
            )
        )

    counties = tuple(
        PreCounty(
            fips=f.fips, name=f.name, state=f.state, population=f.population, polygons=f.polygons
        )
        for f in sorted(raw.features, key=lambda f: f.fips)
    )
    return PreAtlas(
        counties=counties,
        regions=tuple(sorted(region_objs, key=lambda r: (r.kind.value, r.code))),
        secondary=tuple(sorted(kept_secondary, key=lambda s: s.fips)),
    )
