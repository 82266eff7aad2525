"""Render the six classic views: national and one state, each in three layers.

Every encoding from the design shows up here: hue per affiliation kind,
saturation per population bin, line boldness per boundary class, and the
hatch texture on the dual-RIGO county (visible in the RIGO and BOTH layers).
"""

from pathlib import Path

from govatlas import Layer, ViewSpec, render_map
from govatlas.fixtures import fixture_atlas

OUT = Path(__file__).resolve().parent / "out"


def main() -> None:
    atlas = fixture_atlas()
    OUT.mkdir(exist_ok=True)
    for view in ("national", "AA", "BB"):
        for layer in Layer:
            spec = ViewSpec(view=view, layer=layer, width=720, height=540)
            svg = render_map(atlas, spec)
            name = f"map-{view.lower()}-{layer.value.lower()}.svg"
            (OUT / name).write_text(svg, encoding="utf-8")
            counties = svg.count('class="county"')
            hatched = svg.count('class="county-hatch"')
            print(f"wrote {name}: {counties} counties, {hatched} hatched")
    print(f"\nOpen {OUT}/map-national-rigo.svg in a browser; the county at "
          "grid (0,1) carries the dual-RIGO hatch.")


if __name__ == "__main__":
    main()
