"""End-to-end atlas construction: project, quantize, topology, classify, stats."""

from __future__ import annotations

import dataclasses

from .classify import DEFAULT_BIN_COUNT, compute_bins, compute_categories
from .ingest import PreAtlas
from .model import Atlas, County, Ring
from .projection import DEFAULT_SCALE, get_projection
from .stats import dashboard_stats
from .topology import TopologyError, build_topology, doubled_area, quantize


def _orient(ring: Ring, ccw: bool) -> Ring:
    area2 = doubled_area(ring)
    if area2 != 0 and (area2 > 0) != ccw:
        return ring[::-1]
    return ring


def _snap_polygon(polygon, proj, scale: float, subject: str) -> list[Ring]:
    """Project and quantize one polygon part; outer ring CCW, holes CW.

    A degenerate outer ring drops the whole part, holes drop individually.
    """
    rings: list[Ring] = []
    for i, ring in enumerate(polygon):
        projected = [proj.project(lon, lat) for lon, lat in ring]
        try:
            snapped = quantize([projected], scale, subject=subject)[0]
        except TopologyError as exc:
            if exc.code != "E_EMPTY":
                raise
            if i == 0:
                return []
            continue
        rings.append(_orient(snapped, ccw=(i == 0)))
    return rings


def build_atlas(
    pre: PreAtlas,
    projection: str = "identity",
    scale: float | None = None,
    bin_count: int = DEFAULT_BIN_COUNT,
) -> Atlas:
    """Project and quantize county geometry, then derive every atlas layer.

    Deterministic: the same inputs always produce an atlas that serializes to
    the same bytes.
    """
    proj = get_projection(projection)
    if scale is None:
        scale = DEFAULT_SCALE[projection]

    counties: list[County] = []
    rings_by_county: dict[str, list[Ring]] = {}
    for pc in pre.counties:
        county_rings: list[Ring] = []
        for polygon in pc.polygons:
            county_rings.extend(_snap_polygon(polygon, proj, scale, f"county {pc.fips}"))
        if not county_rings:
            raise TopologyError("E_EMPTY", f"county {pc.fips} lost all rings at scale {scale:g}")
        counties.append(
            County(
                fips=pc.fips,
                name=pc.name,
                state=pc.state,
                population=pc.population,
                rings=tuple(county_rings),
            )
        )
        rings_by_county[pc.fips] = county_rings

    topology = build_topology(rings_by_county, scale=scale)
    categories = compute_categories((c.fips for c in counties), pre.regions, pre.secondary)

    atlas = Atlas(
        counties=tuple(counties),
        regions=pre.regions,
        secondary=pre.secondary,
        topology=topology,
        categories=categories,
        bins={},
        bin_count=bin_count,
        stats=None,
    )
    atlas = dataclasses.replace(atlas, bins=compute_bins(pre.regions, atlas, bin_count))
    return dataclasses.replace(atlas, stats=dashboard_stats(atlas))
