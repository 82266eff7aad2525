"""govatlas: regional governance atlas toolkit.

Turns county geometry plus RIGO/MSA affiliation tables into a shared-arc
topology, dissolved region outlines, overlap-classified choropleth maps,
dashboard statistics, and a read-only JSON API for the interactive viewer.
"""

from .atlas_io import dumps_atlas, loads_atlas
from .classify import assign_bins, overlap_category, region_population
from .ingest import (
    assemble,
    parse_affiliations,
    parse_geometry,
    parse_regions,
    parse_secondary,
)
from .model import (
    Atlas,
    Category,
    County,
    Layer,
    OverlapCategory,
    Region,
    RegionKind,
    SecondaryAffiliation,
    validate_atlas,
)
from .pipeline import build_atlas
from .projection import ALBERS_US, IDENTITY, AlbersEqualArea
from .render import DEFAULT_STYLE, StyleConfig, ViewSpec, build_legend, render_map, style_for
from .stats import DashboardStats, Query, answer_query, dashboard_stats
from .topology import (
    ArcCategory,
    DissolvedShape,
    Topology,
    build_topology,
    categorize_arcs,
    dissolve,
    quantize,
)

__version__ = "0.1.0"

__all__ = [
    "ALBERS_US",
    "IDENTITY",
    "AlbersEqualArea",
    "ArcCategory",
    "Atlas",
    "Category",
    "County",
    "DashboardStats",
    "DEFAULT_STYLE",
    "DissolvedShape",
    "Layer",
    "OverlapCategory",
    "Query",
    "Region",
    "RegionKind",
    "SecondaryAffiliation",
    "StyleConfig",
    "Topology",
    "ViewSpec",
    "answer_query",
    "assemble",
    "assign_bins",
    "build_atlas",
    "build_legend",
    "build_topology",
    "categorize_arcs",
    "dashboard_stats",
    "dissolve",
    "dumps_atlas",
    "loads_atlas",
    "overlap_category",
    "parse_affiliations",
    "parse_geometry",
    "parse_regions",
    "parse_secondary",
    "quantize",
    "region_population",
    "render_map",
    "style_for",
    "validate_atlas",
]
