"""Atlas file format: one self-contained JSON document, version 1.

Geometry is stored once, as delta-encoded integer arcs plus signed arc
references per county ring (a negative reference r traverses arc ~r
reversed). Serialization is canonical: sorted keys, compact separators,
so rebuilding an atlas from the same inputs is byte-identical.
"""

from __future__ import annotations

import json

from .model import (
    Atlas,
    County,
    OverlapCategory,
    Category,
    Region,
    RegionKind,
    SecondaryAffiliation,
)
from .render import DEFAULT_STYLE, NEUTRAL_FILL, HatchStyle, StyleConfig
from .stats import DashboardStats
from .topology import EXTERIOR, Topology

VERSION = 1


class AtlasFileError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _encode_arc(arc) -> list[list[int]]:
    out = [[arc[0][0], arc[0][1]]]
    px, py = arc[0]
    for x, y in arc[1:]:
        out.append([x - px, y - py])
        px, py = x, y
    return out


def _decode_arc(encoded) -> tuple[tuple[int, int], ...]:
    x, y = encoded[0]
    pts = [(x, y)]
    for dx, dy in encoded[1:]:
        x += dx
        y += dy
        pts.append((x, y))
    return tuple(pts)


def style_to_dict(style: StyleConfig) -> dict:
    return {
        "ramps": {name: list(ramp) for name, ramp in style.ramps.items()},
        "strokes": dict(style.strokes),
        "line_color": style.line_color,
        "neutral": NEUTRAL_FILL,
        "hatch": {
            "angle": style.hatch.angle,
            "spacing": style.hatch.spacing,
            "width": style.hatch.width,
            "color": style.hatch.color,
            "opacity": style.hatch.opacity,
        },
    }


def style_from_dict(doc: dict) -> StyleConfig:
    hatch = doc.get("hatch", {})
    return StyleConfig(
        ramps={name: tuple(ramp) for name, ramp in doc["ramps"].items()},
        strokes=dict(doc["strokes"]),
        hatch=HatchStyle(
            angle=hatch.get("angle", 45.0),
            spacing=hatch.get("spacing", 4.0),
            width=hatch.get("width", 1.0),
            color=hatch.get("color", "#333333"),
            opacity=hatch.get("opacity", 0.6),
        ),
        line_color=doc.get("line_color", "#333333"),
    )


def atlas_to_document(atlas: Atlas, style: StyleConfig = DEFAULT_STYLE) -> dict:
    topology = atlas.topology
    return {
        "version": VERSION,
        "bin_count": atlas.bin_count,
        "counties": {
            c.fips: {"name": c.name, "state": c.state, "population": c.population}
            for c in atlas.counties
        },
        "regions": [
            {
                "code": r.code,
                "kind": r.kind.value,
                "name": r.name,
                "members": sorted(r.members),
                "population": r.population,
                "declared_population": r.declared_population,
            }
            for r in sorted(atlas.regions, key=lambda r: (r.kind.value, r.code))
        ],
        "secondary": [
            {"county_fips": s.fips, "rigo_code": s.rigo_code}
            for s in sorted(atlas.secondary, key=lambda s: s.fips)
        ],
        "topology": {
            "scale": topology.scale,
            "translate": list(topology.translate),
            "arcs": [_encode_arc(arc) for arc in topology.arcs],
            "rings": {
                fips: [list(refs) for refs in rings]
                for fips, rings in topology.county_rings.items()
            },
        },
        "categories": {
            fips: {"category": oc.category.value, "dual_rigo": oc.dual_rigo}
            for fips, oc in atlas.categories.items()
        },
        "bins": {
            "rigo": dict(atlas.bins.get(RegionKind.RIGO, {})),
            "msa": dict(atlas.bins.get(RegionKind.MSA, {})),
        },
        "stats": atlas.stats.to_dict() if atlas.stats else None,
        "style_defaults": style_to_dict(style),
    }


def dumps_atlas(atlas: Atlas, style: StyleConfig = DEFAULT_STYLE) -> str:
    return json.dumps(atlas_to_document(atlas, style), sort_keys=True, separators=(",", ":")) + "\n"


def _derive_adjacency(
    arc_count: int, county_rings: dict[str, tuple[tuple[int, ...], ...]]
) -> tuple[tuple[str | None, str | None], ...]:
    incident: list[list[str]] = [[] for _ in range(arc_count)]
    for fips, rings in county_rings.items():
        for refs in rings:
            for ref in refs:
                incident[ref if ref >= 0 else ~ref].append(fips)
    out = []
    for sides in incident:
        if len(sides) == 1:
            out.append((sides[0], EXTERIOR))
        elif len(sides) == 2:
            a, b = sorted(sides)
            out.append((a, b))
        else:
            raise AtlasFileError("E_BAD_TOPOLOGY", f"arc referenced {len(sides)} times")
    return tuple(out)


def atlas_from_document(doc: dict) -> tuple[Atlas, StyleConfig]:
    if not isinstance(doc, dict) or doc.get("version") != VERSION:
        raise AtlasFileError(
            "E_BAD_VERSION", f"expected an atlas file with version {VERSION}"
        )
    topo_doc = doc["topology"]
    county_rings = {
        fips: tuple(tuple(refs) for refs in rings)
        for fips, rings in sorted(topo_doc["rings"].items())
    }
    arcs = tuple(_decode_arc(a) for a in topo_doc["arcs"])
    topology = Topology(
        arcs=arcs,
        county_rings=county_rings,
        adjacency=_derive_adjacency(len(arcs), county_rings),
        scale=topo_doc["scale"],
        translate=tuple(topo_doc["translate"]),
    )
    counties = tuple(
        County(
            fips=fips,
            name=info["name"],
            state=info["state"],
            population=info["population"],
            rings=topology.county_quantized_rings(fips),
        )
        for fips, info in sorted(doc["counties"].items())
    )
    regions = tuple(
        Region(
            code=r["code"],
            kind=RegionKind(r["kind"]),
            name=r["name"],
            members=frozenset(r["members"]),
            population=r["population"],
            declared_population=r.get("declared_population"),
        )
        for r in doc["regions"]
    )
    secondary = tuple(
        SecondaryAffiliation(fips=s["county_fips"], rigo_code=s["rigo_code"])
        for s in doc["secondary"]
    )
    categories = {
        fips: OverlapCategory(Category(c["category"]), c["dual_rigo"])
        for fips, c in sorted(doc["categories"].items())
    }
    bins = {
        RegionKind.RIGO: dict(doc["bins"].get("rigo", {})),
        RegionKind.MSA: dict(doc["bins"].get("msa", {})),
    }
    stats_doc = doc.get("stats")
    stats = (
        DashboardStats(
            rigo_count=stats_doc["rigo_count"],
            msa_count=stats_doc["msa_count"],
            category_counts=dict(stats_doc["category_counts"]),
            cross_state_rigos=tuple(stats_doc["cross_state_rigos"]),
            cross_state_msas=tuple(stats_doc["cross_state_msas"]),
            dual_rigo_count=stats_doc["dual_rigo_count"],
        )
        if stats_doc
        else None
    )
    atlas = Atlas(
        counties=counties,
        regions=regions,
        secondary=secondary,
        topology=topology,
        categories=categories,
        bins=bins,
        bin_count=doc["bin_count"],
        stats=stats,
    )
    return atlas, style_from_dict(doc["style_defaults"])


def loads_atlas(text: str) -> tuple[Atlas, StyleConfig]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AtlasFileError("E_BAD_JSON", f"malformed atlas file: {exc}") from None
    return atlas_from_document(doc)
