"""A tour of the shared-arc topology: arcs, dissolve, and line categories.

Dissolving a region deletes the interior boundaries shared by two member
counties and stitches what remains into closed rings; the area is exact on
the integer grid, so it always equals the sum of the member county areas.
"""

from govatlas import ArcCategory, Layer, categorize_arcs, dissolve
from govatlas.fixtures import fixture_atlas
from govatlas.topology import EXTERIOR


def main() -> None:
    atlas = fixture_atlas()
    topo = atlas.topology

    print(f"{len(topo.arcs)} arcs; a few samples with their incident sides:")
    for i in (0, 5, 20):
        a, b = topo.adjacency[i]
        side_b = b if b is not EXTERIOR else "EXTERIOR"
        print(f"   arc {i:2}: {len(topo.arcs[i]) - 1} edge(s), between {a} and {side_b}")

    print("\nDissolved region outlines:")
    for region in atlas.regions:
        shape = dissolve(topo, region.members, code=region.code)
        print(
            f"   {region.code}: {len(shape.rings)} ring(s), area {shape.area:g} "
            f"(member squares: {len(region.members)})"
        )

    print("\nLine categories per layer (arcs by boldness class):")
    for layer in Layer:
        cats = categorize_arcs(topo, atlas, layer)
        summary = {c: 0 for c in ArcCategory}
        for c in cats:
            summary[c] += 1
        pretty = ", ".join(f"{c.value} {n}" for c, n in summary.items())
        print(f"   {layer.value:5}: {pretty}")


if __name__ == "__main__":
    main()
