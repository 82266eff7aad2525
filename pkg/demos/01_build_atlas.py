"""Build an atlas from raw inputs, validate it, and save it to disk.

The bundled 4x4 demo dataset exercises every feature: two states, three
RIGOs (one cross-state), two MSAs, one dual-RIGO county, and six counties
with no affiliation at all.
"""

from pathlib import Path

from govatlas import assemble, build_atlas, dumps_atlas, validate_atlas
from govatlas import parse_affiliations, parse_geometry, parse_regions, parse_secondary

DATA = Path(__file__).resolve().parent.parent / "data" / "fixture16"
OUT = Path(__file__).resolve().parent / "out"


def main() -> None:
    print("1. Parse the four inputs")
    geometry = parse_geometry((DATA / "counties.geojson").read_text())
    affiliations = parse_affiliations((DATA / "affiliations.csv").read_text())
    regions = parse_regions((DATA / "regions.csv").read_text())
    secondary = parse_secondary((DATA / "secondary.csv").read_text())
    print(f"   {len(geometry.features)} county features, {len(affiliations)} affiliation rows,")
    print(f"   {len(regions)} regions, {len(secondary)} secondary RIGO rows")

    print("2. Assemble and resolve region member sets")
    pre = assemble(geometry, affiliations, regions, secondary)
    for region in pre.regions:
        members = ", ".join(sorted(region.members))
        print(f"   {region.kind.value:4} {region.code}: pop {region.population:5} <- {members}")

    print("3. Project, quantize, and build the shared-arc topology")
    atlas = build_atlas(pre, projection="identity", scale=1.0)
    print(f"   {len(atlas.topology.arcs)} arcs encode every county boundary exactly once")

    print("4. Validate every invariant")
    report = validate_atlas(atlas)
    print(f"   {len(report.errors)} errors, {len(report.warnings)} warnings")

    OUT.mkdir(exist_ok=True)
    out_path = OUT / "atlas.json"
    out_path.write_text(dumps_atlas(atlas), encoding="utf-8")
    print(f"5. Saved {out_path} ({out_path.stat().st_size} bytes, byte-reproducible)")


if __name__ == "__main__":
    main()
