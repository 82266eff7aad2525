"""Deterministic SVG choropleth rendering with all four visual encodings.

Fill hue/saturation carries affiliation kind and population bin, line boldness
carries boundary class, and a hatch texture marks dual-RIGO counties. Identical
atlas + view always produce byte-identical SVG.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Atlas, Category, County, Layer, RegionKind
from .topology import ArcCategory, categorize_arcs, dissolve

#: Fill for counties outside every region of the active layer.
NEUTRAL_FILL = "#f0f0f0"

RIGO_RAMP = ("#edf8e9", "#bae4b3", "#74c476", "#31a354", "#006d2c")
MSA_RAMP = ("#f2f0f7", "#cbc9e2", "#9e9ac8", "#756bb1", "#54278f")
BOTH_RAMP = ("#f0f9e8", "#bae4bc", "#7bccc4", "#43a2ca", "#0868ac")


class RenderError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass(frozen=True)
class HatchStyle:
    angle: float = 45.0
    spacing: float = 4.0
    width: float = 1.0
    color: str = "#333333"
    opacity: float = 0.6


@dataclass(frozen=True)
class StyleConfig:
    """Color ramps, boundary stroke widths (px), and the hatch pattern."""

    ramps: dict[str, tuple[str, ...]] = field(
        default_factory=lambda: {"rigo": RIGO_RAMP, "msa": MSA_RAMP, "both": BOTH_RAMP}
    )
    strokes: dict[str, float] = field(
        default_factory=lambda: {"national": 2.0, "state": 2.0, "region": 1.2, "county": 0.25}
    )
    hatch: HatchStyle = HatchStyle()
    line_color: str = "#333333"

    def validate(self, bin_count: int) -> None:
        for name, ramp in self.ramps.items():
            if len(ramp) != bin_count:
                raise ValueError(f"ramp {name!r} must have {bin_count} steps, has {len(ramp)}")
        s = self.strokes
        if not (min(s["national"], s["state"]) > s["region"] > s["county"]):
            raise ValueError("stroke widths must strictly decrease from national/state to county")


DEFAULT_STYLE = StyleConfig()


@dataclass(frozen=True)
class ViewSpec:
    """What to draw: national or one state, one layer, pixel size, style."""

    view: str = "national"  # "national" or a state code
    layer: Layer = Layer.RIGO
    width: int = 960
    height: int = 600
    style: StyleConfig = DEFAULT_STYLE


@dataclass(frozen=True)
class Fill:
    ramp: str  # "rigo" | "msa" | "both" | "neutral"
    step: int | None = None

    def color(self, style: StyleConfig) -> str:
        if self.ramp == "neutral":
            return NEUTRAL_FILL
        return style.ramps[self.ramp][self.step]


NEUTRAL = Fill("neutral")


def style_for(
    county: County | str, atlas: Atlas, layer: Layer, style: StyleConfig = DEFAULT_STYLE
) -> tuple[Fill, bool]:
    """Fill (ramp + saturation step) and texture flag for one county."""
    fips = county if isinstance(county, str) else county.fips
    overlap = atlas.categories[fips]
    rigo_bin = atlas.bins[RegionKind.RIGO].get(atlas.primary_rigo.get(fips))
    msa_bin = atlas.bins[RegionKind.MSA].get(atlas.primary_msa.get(fips))
    texture = overlap.dual_rigo and layer in (Layer.RIGO, Layer.BOTH)
    if layer is Layer.RIGO:
        fill = Fill("rigo", rigo_bin) if rigo_bin is not None else NEUTRAL
    elif layer is Layer.MSA:
        fill = Fill("msa", msa_bin) if msa_bin is not None else NEUTRAL
    else:
        if overlap.category is Category.BOTH:
            fill = Fill("both", (rigo_bin + msa_bin) // 2)
        elif overlap.category is Category.RIGO_ONLY:
            fill = Fill("rigo", rigo_bin)
        elif overlap.category is Category.MSA_ONLY:
            fill = Fill("msa", msa_bin)
        else:
            fill = NEUTRAL
    return fill, texture


@dataclass(frozen=True)
class LegendEntry:
    kind: str  # "ramp" | "neutral" | "hatch" | "line"
    label: str
    color: str | None = None
    ramp: str | None = None
    step: int | None = None
    width: float | None = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "label": self.label}
        if self.color is not None:
            out["color"] = self.color
        if self.ramp is not None:
            out["ramp"] = self.ramp
            out["step"] = self.step
        if self.width is not None:
            out["width"] = self.width
        return out


def _ramp_sections(layer: Layer) -> list[tuple[str, RegionKind | None]]:
    if layer is Layer.RIGO:
        return [("rigo", RegionKind.RIGO)]
    if layer is Layer.MSA:
        return [("msa", RegionKind.MSA)]
    return [("rigo", RegionKind.RIGO), ("msa", RegionKind.MSA), ("both", None)]


def build_legend(spec: ViewSpec, atlas: Atlas) -> list[LegendEntry]:
    """Ordered legend entries: ramp swatches, neutral, hatch, line-weight key.

    Ramp labels are the population range of the regions actually in each bin;
    empty bins keep their swatch with a "(none)" label. The mixed ramp of the
    BOTH layer is a blend of two bins, so its steps are labeled by level.
    """
    style = spec.style
    k = atlas.bin_count
    entries: list[LegendEntry] = []
    for ramp_name, kind in _ramp_sections(spec.layer):
        for step in range(k):
            if kind is None:
                label = f"both affiliations, level {step + 1} of {k}"
            else:
                populations = [
                    r.population
                    for r in atlas.regions_of_kind(kind)
                    if atlas.bins[kind].get(r.code) == step
                ]
                if populations:
                    label = f"[{min(populations)}–{max(populations)}]"
                else:
                    label = "(none)"
            entries.append(
                LegendEntry(
                    kind="ramp",
                    label=label,
                    color=style.ramps[ramp_name][step],
                    ramp=ramp_name,
                    step=step,
                )
            )
    entries.append(LegendEntry(kind="neutral", label="no affiliation", color=NEUTRAL_FILL))
    if spec.layer in (Layer.RIGO, Layer.BOTH):
        entries.append(LegendEntry(kind="hatch", label="two RIGO affiliations"))
    for name, label in (
        ("region", "region boundary"),
        ("state", "state boundary"),
        ("national", "national outline"),
    ):
        entries.append(
            LegendEntry(kind="line", label=label, color=style.line_color, width=style.strokes[name])
        )
    return entries


class _Transform:
    """Grid coordinates -> SVG pixels: fit to the viewport with a 5% margin, y flipped."""

    def __init__(self, points, width: int, height: int):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        min_x, max_x = min(xs), max(xs)
        min_y, max_y = min(ys), max(ys)
        span_x = max_x - min_x or 1
        span_y = max_y - min_y or 1
        scale = min(width * 0.9 / span_x, height * 0.9 / span_y)
        self.scale = scale
        self.offset_x = (width - span_x * scale) / 2 - min_x * scale
        self.offset_y = (height - span_y * scale) / 2 + max_y * scale

    def apply(self, point) -> tuple[float, float]:
        return point[0] * self.scale + self.offset_x, self.offset_y - point[1] * self.scale


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _path_data(rings, transform: _Transform) -> str:
    parts = []
    for ring in rings:
        pts = ring[:-1] if ring[0] == ring[-1] else ring
        coords = [transform.apply(p) for p in pts]
        inner = "L".join(f"{_fmt(x)} {_fmt(y)}" for x, y in coords)
        parts.append(f"M{inner}Z")
    return "".join(parts)


def _polyline_data(points, transform: _Transform) -> str:
    coords = [transform.apply(p) for p in points]
    inner = "L".join(f"{_fmt(x)} {_fmt(y)}" for x, y in coords)
    closed = points[0] == points[-1]
    return f"M{inner}Z" if closed else f"M{inner}"


def _visible_counties(atlas: Atlas, spec: ViewSpec) -> list[County]:
    if spec.view == "national":
        return sorted(atlas.counties, key=lambda c: c.fips)
    if spec.view not in atlas.states:
        raise RenderError("E_UNKNOWN_STATE", f"no state {spec.view!r} in the atlas")
    counties = sorted(
        (c for c in atlas.counties if c.state == spec.view), key=lambda c: c.fips
    )
    if not counties:
        raise RenderError("E_EMPTY_VIEW", f"state {spec.view!r} has no counties")
    return counties


def _layer_regions(atlas: Atlas, layer: Layer):
    if layer is Layer.RIGO:
        kinds = (RegionKind.RIGO,)
    elif layer is Layer.MSA:
        kinds = (RegionKind.MSA,)
    else:
        kinds = (RegionKind.RIGO, RegionKind.MSA)
    return sorted(
        (r for r in atlas.regions if r.kind in kinds), key=lambda r: (r.kind.value, r.code)
    )


def render_map(atlas: Atlas, spec: ViewSpec) -> str:
    """Emit the SVG document for one view.

    Fixed section order: defs, county fills (sorted by fips, hatch overlays
    inline), boundary groups in painter's order (county interior, region
    outlines, state, national), then the legend.
    """
    style = spec.style
    style.validate(atlas.bin_count)
    topology = atlas.topology
    counties = _visible_counties(atlas, spec)
    visible = {c.fips for c in counties}

    rings_of = {c.fips: topology.county_quantized_rings(c.fips) for c in counties}
    transform = _Transform(
        [p for rings in rings_of.values() for ring in rings for p in ring],
        spec.width,
        spec.height,
    )

    styled = {c.fips: style_for(c, atlas, spec.layer, style) for c in counties}
    any_texture = any(texture for _, texture in styled.values())

    lines: list[str] = []
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">'
    )
    lines.append("<defs>")
    if any_texture:
        h = style.hatch
        lines.append(
            f'<pattern id="hatch" patternUnits="userSpaceOnUse" width="{_fmt(h.spacing)}" '
            f'height="{_fmt(h.spacing)}" patternTransform="rotate({_fmt(h.angle)})">'
        )
        lines.append(
            f'<line x1="0" y1="0" x2="0" y2="{_fmt(h.spacing)}" stroke="{h.color}" '
            f'stroke-width="{_fmt(h.width)}" stroke-opacity="{_fmt(h.opacity)}"/>'
        )
        lines.append("</pattern>")
    lines.append("</defs>")

    lines.append('<g class="counties">')
    for county in counties:
        fill, texture = styled[county.fips]
        d = _path_data(rings_of[county.fips], transform)
        lines.append(
            f'<path class="county" data-fips="{county.fips}" fill="{fill.color(style)}" '
            f'fill-rule="evenodd" d="{d}"/>'
        )
        if texture:
            lines.append(
                f'<path class="county-hatch" data-fips="{county.fips}" fill="url(#hatch)" '
                f'fill-rule="evenodd" d="{d}"/>'
            )
    lines.append("</g>")

    categories = categorize_arcs(topology, atlas, spec.layer)

    def arc_visible(index: int) -> bool:
        a, b = topology.adjacency[index]
        return (a in visible) or (b in visible)

    def arc_group(css: str, category: ArcCategory, width: float) -> None:
        lines.append(
            f'<g class="{css}" fill="none" stroke="{style.line_color}" '
            f'stroke-width="{_fmt(width)}">'
        )
        for index, cat in enumerate(categories):
            if cat is category and arc_visible(index):
                d = _polyline_data(topology.arcs[index], transform)
                lines.append(f'<path data-arc="{index}" d="{d}"/>')
        lines.append("</g>")

    arc_group("county-lines", ArcCategory.COUNTY_INTERIOR, style.strokes["county"])

    lines.append(
        f'<g class="region-lines" fill="none" stroke="{style.line_color}" '
        f'stroke-width="{_fmt(style.strokes["region"])}">'
    )
    for region in _layer_regions(atlas, spec.layer):
        members = region.members & visible
        if not members:
            continue
        shape = dissolve(topology, members, code=region.code)
        d = _path_data(shape.rings, transform)
        lines.append(
            f'<path class="region-outline" data-region="{region.code}" '
            f'data-kind="{region.kind.value}" d="{d}"/>'
        )
    lines.append("</g>")

    arc_group("state-lines", ArcCategory.STATE_BOUNDARY, style.strokes["state"])
    arc_group("national-lines", ArcCategory.NATIONAL_OUTLINE, style.strokes["national"])

    legend = build_legend(spec, atlas)
    row_height = 18
    legend_y = max(8.0, spec.height - 8.0 - row_height * len(legend))
    lines.append(f'<g class="legend" transform="translate(8.00 {_fmt(legend_y)})">')
    for i, entry in enumerate(legend):
        y = i * row_height
        if entry.kind in ("ramp", "neutral"):
            lines.append(
                f'<rect x="0" y="{_fmt(y)}" width="12" height="12" fill="{entry.color}" '
                f'stroke="{style.line_color}" stroke-width="0.25"/>'
            )
        elif entry.kind == "hatch":
            lines.append(
                f'<rect x="0" y="{_fmt(y)}" width="12" height="12" fill="url(#hatch)" '
                f'stroke="{style.line_color}" stroke-width="0.25"/>'
            )
        else:
            mid = y + 6
            lines.append(
                f'<line x1="0" y1="{_fmt(mid)}" x2="12" y2="{_fmt(mid)}" '
                f'stroke="{entry.color}" stroke-width="{_fmt(entry.width)}"/>'
            )
        lines.append(f'<text x="18" y="{_fmt(y + 10)}" font-size="11">{entry.label}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
