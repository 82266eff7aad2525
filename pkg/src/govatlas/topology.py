"""Shared-arc planar topology: quantization, arc extraction, dissolve, line categories.

Counties arrive as closed rings of integer grid points. Every undirected grid
edge belongs to exactly one arc; an arc is a maximal chain of edges bordered by
the same (at most two) counties. Regions dissolve by keeping the arcs whose two
sides disagree about membership and stitching them back into closed rings.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .model import Atlas, Layer, Point, Ring

# Open side of an arc on the national outline.
EXTERIOR = None


class GeometryWarning(UserWarning):
    pass


class TopologyError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def doubled_area(ring: Sequence[Point]) -> int:
    """Twice the signed shoelace area; exact for integer coordinates."""
    total = 0
    for i in range(len(ring) - 1):
        (x1, y1), (x2, y2) = ring[i], ring[i + 1]
        total += x1 * y2 - x2 * y1
    return total


def rings_area(rings: Iterable[Sequence[Point]]) -> float:
    return sum(doubled_area(r) for r in rings) / 2.0


def quantize(rings: Sequence[Sequence[tuple[float, float]]], scale: float, subject: str = "") -> list[Ring]:
    """Snap closed rings to the integer grid round(coord * scale).

    Consecutive duplicate points collapse; rings left with fewer than 4 distinct
    points are dropped with a warning. Raises E_EMPTY when nothing survives.
    """
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    out: list[Ring] = []
    for ring in rings:
        snapped = [(round(x * scale), round(y * scale)) for x, y in ring]
        dedup = [snapped[0]]
        for p in snapped[1:]:
            if p != dedup[-1]:
                dedup.append(p)
        if len(dedup) >= 5 and dedup[0] == dedup[-1] and len(set(dedup)) >= 4:
            out.append(tuple(dedup))
        else:
            warnings.warn(
                f"{subject or 'ring'}: degenerate ring dropped at scale {scale:g}",
                GeometryWarning,
                stacklevel=2,
            )
    if not out:
        raise TopologyError("E_EMPTY", f"{subject or 'county'} lost all rings at scale {scale:g}")
    return out


@dataclass(frozen=True)
class Topology:
    """Quantized arcs plus per-county rings expressed as signed arc references.

    A reference r >= 0 traverses arcs[r] forward; r < 0 traverses arcs[~r]
    reversed. adjacency[i] is the (side_a, side_b) county pair of arc i with
    EXTERIOR (None) for the open side.
    """

    arcs: tuple[Ring, ...]
    county_rings: Mapping[str, tuple[tuple[int, ...], ...]]
    adjacency: tuple[tuple[str | None, str | None], ...]
    scale: float = 1.0
    translate: tuple[float, float] = (0.0, 0.0)

    @cached_property
    def arc_traversals(self) -> dict[int, list[tuple[str, int]]]:
        """Arc index -> [(county, direction)] for every ring reference to it."""
        table: dict[int, list[tuple[str, int]]] = {}
        for fips in self.county_rings:
            for refs in self.county_rings[fips]:
                for ref in refs:
                    idx = ref if ref >= 0 else ~ref
                    table.setdefault(idx, []).append((fips, 1 if ref >= 0 else -1))
        return table

    def arc_points(self, index: int, direction: int = 1) -> Ring:
        arc = self.arcs[index]
        return arc if direction >= 0 else arc[::-1]

    def expand_ref(self, ref: int) -> Ring:
        return self.arc_points(ref, 1) if ref >= 0 else self.arc_points(~ref, -1)

    def expand_ring(self, refs: Sequence[int]) -> Ring:
        pts: list[Point] = []
        for ref in refs:
            seg = self.expand_ref(ref)
            if pts:
                if pts[-1] != seg[0]:
                    raise TopologyError("E_OPEN_RING", "arc references do not chain")
                pts.extend(seg[1:])
            else:
                pts.extend(seg)
        return tuple(pts)

    def county_quantized_rings(self, fips: str) -> tuple[Ring, ...]:
        return tuple(self.expand_ring(refs) for refs in self.county_rings[fips])


def _edge_key(p: Point, q: Point) -> tuple[Point, Point]:
    return (p, q) if p <= q else (q, p)


def _other(edge: tuple[Point, Point], v: Point) -> Point:
    return edge[1] if edge[0] == v else edge[0]


def build_topology(
    rings_by_county: Mapping[str, Sequence[Ring]],
    scale: float = 1.0,
    translate: tuple[float, float] = (0.0, 0.0),
) -> Topology:
    """Extract shared arcs from quantized county rings.

    Every undirected edge is keyed by its endpoint pair; an edge incident to
    three or more rings is E_NONPLANAR. Maximal chains of edges with identical
    incident-county pairs become arcs, cut at junction vertices (degree != 2 or
    differing pairs). Arc order is canonical: each arc is oriented to its
    lexicographically smaller direction and the arc list is sorted.
    """
    edge_counties: dict[tuple[Point, Point], list[str]] = {}
    for fips in sorted(rings_by_county):
        for ring in rings_by_county[fips]:
            for i in range(len(ring) - 1):
                if ring[i] == ring[i + 1]:
                    continue
                edge_counties.setdefault(_edge_key(ring[i], ring[i + 1]), []).append(fips)

    edge_pair: dict[tuple[Point, Point], tuple[str | None, str | None]] = {}
    for edge, counties in edge_counties.items():
        if len(counties) > 2:
            raise TopologyError(
                "E_NONPLANAR",
                f"edge {edge} is incident to {len(counties)} rings: {sorted(set(counties))}",
            )
        if len(counties) == 2:
            a, b = sorted(counties)
            edge_pair[edge] = (a, b)
        else:
            edge_pair[edge] = (counties[0], EXTERIOR)

    vertex_edges: dict[Point, list[tuple[Point, Point]]] = {}
    for edge in edge_counties:
        for v in edge:
            vertex_edges.setdefault(v, []).append(edge)

    junctions: set[Point] = set()
    for v, edges in vertex_edges.items():
        if len(edges) != 2 or edge_pair[edges[0]] != edge_pair[edges[1]]:
            junctions.add(v)

    unused = set(edge_counties)
    raw_arcs: list[list[Point]] = []

    def walk(start: Point, first: tuple[Point, Point]) -> list[Point]:
        pts = [start]
        v, edge = start, first
        while True:
            unused.discard(edge)
            w = _other(edge, v)
            pts.append(w)
            if w in junctions or w == pts[0]:
                return pts
            e0, e1 = vertex_edges[w]
            nxt = e1 if e0 == edge else e0
            v, edge = w, nxt

    for j in sorted(junctions):
        for edge in sorted(vertex_edges[j]):
            if edge in unused:
                raw_arcs.append(walk(j, edge))

    # Junction-free closed loops (island rings): start at the smallest vertex,
    # head toward its smaller neighbor.
    while unused:
        start = min(min(e) for e in unused)
        candidates = [e for e in vertex_edges[start] if e in unused]
        first = min(candidates, key=lambda e: _other(e, start))
        raw_arcs.append(walk(start, first))

    def canonical(pts: list[Point]) -> tuple[Point, ...]:
        if pts[0] == pts[-1] and pts[0] not in junctions:
            body = pts[:-1]
            i = body.index(min(body))
            body = body[i:] + body[:i]
            pts = body + [body[0]]
        rev = pts[::-1]
        return tuple(pts if pts <= rev else rev)

    arcs = sorted(canonical(pts) for pts in raw_arcs)

    adjacency = tuple(edge_pair[_edge_key(arc[0], arc[1])] for arc in arcs)

    directed: dict[tuple[Point, Point], tuple[int, int, int]] = {}
    for ai, arc in enumerate(arcs):
        for k in range(len(arc) - 1):
            directed[(arc[k], arc[k + 1])] = (ai, k, 1)
            directed[(arc[k + 1], arc[k])] = (ai, k, -1)

    def ring_refs(ring: Ring) -> tuple[int, ...]:
        n = len(ring) - 1
        info = [directed[(ring[i], ring[i + 1])] for i in range(n)]

        def starts_traversal(i: int) -> bool:
            ai, pos, d = info[i]
            return pos == 0 if d == 1 else pos == len(arcs[ai]) - 2

        offset = next(i for i in range(n) if starts_traversal(i))
        refs: list[int] = []
        consumed = 0
        while consumed < n:
            ai, pos, d = info[(offset + consumed) % n]
            length = len(arcs[ai]) - 1
            for step in range(1, length):
                na, npos, nd = info[(offset + consumed + step) % n]
                expected = pos + step if d == 1 else pos - step
                if (na, nd, npos) != (ai, d, expected):
                    raise TopologyError(
                        "E_OPEN_RING", "ring does not decompose into whole arcs"
                    )
            refs.append(ai if d == 1 else ~ai)
            consumed += length
        return tuple(refs)

    county_rings = {
        fips: tuple(ring_refs(tuple(ring)) for ring in rings_by_county[fips])
        for fips in sorted(rings_by_county)
    }
    return Topology(
        arcs=tuple(arcs),
        county_rings=county_rings,
        adjacency=adjacency,
        scale=scale,
        translate=translate,
    )


@dataclass(frozen=True)
class DissolvedShape:
    """A region outline: closed rings (outers CCW, holes CW) plus exact area."""

    code: str
    rings: tuple[Ring, ...]
    area: float
    arc_refs: tuple[tuple[int, ...], ...]


def dissolve(topology: Topology, members: Iterable[str], code: str = "") -> DissolvedShape:
    """Merge member counties by deleting interior shared boundaries.

    Boundary arcs are those whose two sides disagree about membership; each is
    oriented the way its member county traverses it (interior on the left), so
    stitching by the leftmost turn at shared vertices yields non-self-crossing
    closed rings and a signed area equal to the member area sum.
    """
    member_set = frozenset(members)
    if not member_set:
        raise ValueError("members must be non-empty")
    missing = member_set - set(topology.county_rings)
    if missing:
        raise ValueError(f"members not in topology: {sorted(missing)}")

    oriented: list[tuple[int, int]] = []  # (arc index, direction), member on the left
    for ai, (a, b) in enumerate(topology.adjacency):
        a_in = a in member_set
        b_in = b in member_set
        if a_in == b_in:
            continue
        member = a if a_in else b
        direction = next(
            d for county, d in topology.arc_traversals[ai] if county == member
        )
        oriented.append((ai, direction))

    starts: dict[Point, list[int]] = {}
    endpoints: list[tuple[Point, Point, Point]] = []  # (start, end, point before end)
    for i, (ai, d) in enumerate(oriented):
        pts = topology.arc_points(ai, d)
        starts.setdefault(pts[0], []).append(i)
        endpoints.append((pts[0], pts[-1], pts[-2]))

    def successor(i: int) -> int:
        _, end, before = endpoints[i]
        candidates = starts.get(end, [])
        if not candidates:
            raise TopologyError("E_OPEN_RING", f"no boundary arc continues from {end}")
        if len(candidates) == 1:
            return candidates[0]
        ux, uy = end[0] - before[0], end[1] - before[1]
        best_j = -1
        best_angle = -math.inf
        for j in candidates:
            aj, dj = oriented[j]
            q = topology.arc_points(aj, dj)[1]
            wx, wy = q[0] - end[0], q[1] - end[1]
            angle = math.atan2(ux * wy - uy * wx, ux * wx + uy * wy)
            if angle > best_angle or (angle == best_angle and j < best_j):
                best_j, best_angle = j, angle
        return best_j

    succ = [successor(i) for i in range(len(oriented))]
    visited = [False] * len(oriented)
    rings: list[Ring] = []
    ring_refs: list[tuple[int, ...]] = []
    for i in range(len(oriented)):
        if visited[i]:
            continue
        chain: list[int] = []
        j = i
        while not visited[j]:
            visited[j] = True
            chain.append(j)
            j = succ[j]
        if j != i:
            raise TopologyError("E_OPEN_RING", "boundary stitching re-entered a consumed arc")
        pts: list[Point] = []
        for k in chain:
            ai, d = oriented[k]
            seg = topology.arc_points(ai, d)
            pts.extend(seg if not pts else seg[1:])
        if pts[0] != pts[-1]:
            raise TopologyError("E_OPEN_RING", "boundary ring failed to close")
        rings.append(tuple(pts))
        ring_refs.append(tuple(ai if d == 1 else ~ai for ai, d in (oriented[k] for k in chain)))

    area = sum(doubled_area(r) for r in rings) / 2.0
    return DissolvedShape(code=code, rings=tuple(rings), area=area, arc_refs=tuple(ring_refs))


class ArcCategory(str, Enum):
    """Line-weight class of one arc under a given layer."""

    NATIONAL_OUTLINE = "NationalOutline"
    STATE_BOUNDARY = "StateBoundary"
    REGION_BOUNDARY = "RegionBoundary"
    COUNTY_INTERIOR = "CountyInterior"


def categorize_arcs(topology: Topology, atlas: Atlas, layer: Layer) -> tuple[ArcCategory, ...]:
    """Classify every arc for line boldness, in strict precedence order.

    EXTERIOR on either side wins, then differing states, then differing
    layer membership (primary affiliation codes; BOTH compares the
    (rigo, msa) pair), else the arc is interior.
    """

    def membership(fips: str):
        if layer is Layer.RIGO:
            return atlas.primary_rigo.get(fips)
        if layer is Layer.MSA:
            return atlas.primary_msa.get(fips)
        return (atlas.primary_rigo.get(fips), atlas.primary_msa.get(fips))

    categories: list[ArcCategory] = []
    for a, b in topology.adjacency:
        if a is EXTERIOR or b is EXTERIOR:
            categories.append(ArcCategory.NATIONAL_OUTLINE)
        elif atlas.county_index[a].state != atlas.county_index[b].state:
            categories.append(ArcCategory.STATE_BOUNDARY)
        elif membership(a) != membership(b):
            categories.append(ArcCategory.REGION_BOUNDARY)
        else:
            categories.append(ArcCategory.COUNTY_INTERIOR)
    return tuple(categories)
