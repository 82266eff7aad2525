"""Shared helpers for the test suite: grid builders and independent oracles.

The oracles here deliberately avoid the topology module so they can check it.
"""

from __future__ import annotations

from collections import Counter


def unit_square(col: int, row: int) -> tuple:
    return (
        (col, row),
        (col + 1, row),
        (col + 1, row + 1),
        (col, row + 1),
        (col, row),
    )


def grid_rings(rows: int, cols: int) -> dict[str, list[tuple]]:
    """rows x cols lattice of unit-square counties, fips row-major."""
    return {
        f"{r * cols + c:05d}": [unit_square(c, r)] for r in range(rows) for c in range(cols)
    }


def undirected_edges(ring) -> list[tuple]:
    return [
        tuple(sorted((ring[i], ring[i + 1]))) for i in range(len(ring) - 1)
    ]


def boundary_oracle(rings_by_county, members) -> Counter:
    """Brute-force dissolve boundary: member edges that do not appear twice."""
    counts: Counter = Counter()
    for fips in members:
        for ring in rings_by_county[fips]:
            counts.update(undirected_edges(ring))
    return Counter({edge: n for edge, n in counts.items() if n == 1})


def shape_edge_multiset(shape) -> Counter:
    counts: Counter = Counter()
    for ring in shape.rings:
        counts.update(undirected_edges(ring))
    return counts


def shoelace2(ring) -> int:
    total = 0
    for i in range(len(ring) - 1):
        (x1, y1), (x2, y2) = ring[i], ring[i + 1]
        total += x1 * y2 - x2 * y1
    return total


def member_area(rings_by_county, members) -> float:
    return sum(shoelace2(r) for m in members for r in rings_by_county[m]) / 2.0


def canon_cycle(ring) -> tuple:
    """Rotation-invariant canonical form of a closed ring (direction preserved)."""
    body = list(ring[:-1] if ring[0] == ring[-1] else ring)
    smallest = min(body)
    best = None
    for i, p in enumerate(body):
        if p == smallest:
            rotation = tuple(body[i:] + body[:i])
            if best is None or rotation < best:
                best = rotation
    return best
