"""Shared domain types, the Atlas container, and whole-atlas validation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Mapping

if TYPE_CHECKING:
    from .stats import DashboardStats
    from .topology import Topology

FIPS_RE = re.compile(r"^[0-9]{5}$")
STATE_RE = re.compile(r"^[A-Z]{2}$")

Point = tuple[int, int]
Ring = tuple[Point, ...]


class RegionKind(str, Enum):
    RIGO = "RIGO"
    MSA = "MSA"


class Category(str, Enum):
    """A county's joint membership status across the RIGO and MSA partitions."""

    BOTH = "Both"
    RIGO_ONLY = "RigoOnly"
    MSA_ONLY = "MsaOnly"
    NEITHER = "Neither"


class Layer(str, Enum):
    """Which affiliation kind a view draws: RIGO, MSA, or the combined view."""

    RIGO = "RIGO"
    MSA = "MSA"
    BOTH = "BOTH"


@dataclass(frozen=True)
class County:
    """One county: identity, population, and closed planar rings (quantized grid units).

    Outer rings wind counter-clockwise, holes clockwise; the first vertex is
    repeated at the end of every ring.
    """

    fips: str
    name: str
    state: str
    population: int
    rings: tuple[Ring, ...]


@dataclass(frozen=True)
class Region:
    """One RIGO or MSA with its resolved member county set."""

    code: str
    kind: RegionKind
    name: str
    members: frozenset[str]
    population: int
    declared_population: int | None = None


@dataclass(frozen=True)
class SecondaryAffiliation:
    """A county's second RIGO membership, distinct from its primary."""

    fips: str
    rigo_code: str


@dataclass(frozen=True)
class OverlapCategory:
    category: Category
    dual_rigo: bool = False


@dataclass(frozen=True)
class Atlas:
    """The fully processed bundle. Immutable once built; safe to share across threads."""

    counties: tuple[County, ...]
    regions: tuple[Region, ...]
    secondary: tuple[SecondaryAffiliation, ...]
    topology: "Topology | None"
    categories: Mapping[str, OverlapCategory]
    bins: Mapping[RegionKind, Mapping[str, int]]
    bin_count: int
    stats: "DashboardStats | None" = None

    @cached_property
    def county_index(self) -> dict[str, County]:
        return {c.fips: c for c in self.counties}

    @cached_property
    def region_index(self) -> dict[tuple[RegionKind, str], Region]:
        return {(r.kind, r.code): r for r in self.regions}

    @cached_property
    def states(self) -> tuple[str, ...]:
        return tuple(sorted({c.state for c in self.counties}))

    @cached_property
    def secondary_rigo(self) -> dict[str, str]:
        return {s.fips: s.rigo_code for s in self.secondary}

    @cached_property
    def primary_rigo(self) -> dict[str, str]:
        """County fips -> primary RIGO code (secondary memberships excluded)."""
        primary: dict[str, str] = {}
        for region in self.regions:
            if region.kind is not RegionKind.RIGO:
                continue
            for fips in region.members:
                if self.secondary_rigo.get(fips) == region.code:
                    continue
                primary[fips] = region.code
        return primary

    @cached_property
    def primary_msa(self) -> dict[str, str]:
        msa: dict[str, str] = {}
        for region in self.regions:
            if region.kind is RegionKind.MSA:
                for fips in region.members:
                    msa[fips] = region.code
        return msa

    def regions_of_kind(self, kind: RegionKind) -> tuple[Region, ...]:
        return tuple(r for r in self.regions if r.kind is kind)


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # "error" | "warning"
    code: str
    message: str
    subject: str = ""


@dataclass
class ValidationReport:
    issues: list[ValidationIssue] = field(default_factory=list)

    @property
    def errors(self) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, code: str, message: str, subject: str = "") -> None:
        self.issues.append(ValidationIssue("error", code, message, subject))

    def warning(self, code: str, message: str, subject: str = "") -> None:
        self.issues.append(ValidationIssue("warning", code, message, subject))


def _check_counties(atlas: Atlas, report: ValidationReport) -> None:
    seen: set[str] = set()
    for county in atlas.counties:
        if not FIPS_RE.match(county.fips):
            report.error("BAD_FIPS", f"fips {county.fips!r} is not 5 digits", county.fips)
        if county.fips in seen:
            report.error("DUP_FIPS", f"duplicate county fips {county.fips}", county.fips)
        seen.add(county.fips)
        if not STATE_RE.match(county.state):
            report.error(
                "BAD_STATE",
                f"county {county.fips}: state {county.state!r} is not a 2-letter uppercase code",
                county.fips,
            )
        if county.population < 0:
            report.error(
                "NEG_POPULATION",
                f"county {county.fips}: population {county.population} < 0",
                county.fips,
            )
        for ring in county.rings:
            if len(ring) < 4 or ring[0] != ring[-1]:
                report.error(
                    "BAD_RING",
                    f"county {county.fips}: ring must be closed with >= 4 vertices",
                    county.fips,
                )
        if not county.rings:
            report.error("NO_RINGS", f"county {county.fips} has no rings", county.fips)


def _check_regions(atlas: Atlas, report: ValidationReport) -> None:
    county_fips = {c.fips for c in atlas.counties}
    seen: set[tuple[RegionKind, str]] = set()
    for region in atlas.regions:
        key = (region.kind, region.code)
        if key in seen:
            report.error(
                "DUP_REGION", f"duplicate region ({region.code}, {region.kind.value})", region.code
            )
        seen.add(key)
        if not region.members:
            report.error("EMPTY_MEMBERS", f"region {region.code} has no members", region.code)
        for fips in sorted(region.members):
            if fips not in county_fips:
                report.error(
                    "UNKNOWN_MEMBER",
                    f"region {region.code}: member {fips} is not a county in the atlas",
                    region.code,
                )
        member_sum = sum(
            atlas.county_index[f].population for f in region.members if f in atlas.county_index
        )
        if region.declared_population is not None:
            if region.declared_population < 0:
                report.error(
                    "NEG_POPULATION",
                    f"region {region.code}: declared population < 0",
                    region.code,
                )
            if region.population != region.declared_population:
                report.error(
                    "POP_PRECEDENCE",
                    f"region {region.code}: population must equal the declared value",
                    region.code,
                )
            if region.declared_population != member_sum:
                report.warning(
                    "POP_MISMATCH",
                    f"region {region.code}: declared population {region.declared_population} "
                    f"differs from member sum {member_sum}",
                    region.code,
                )
        elif region.population != member_sum:
            report.error(
                "POP_SUM",
                f"region {region.code}: population {region.population} != member sum {member_sum}",
                region.code,
            )


def _check_secondary(atlas: Atlas, report: ValidationReport) -> None:
    for sec in atlas.secondary:
        region = atlas.region_index.get((RegionKind.RIGO, sec.rigo_code))
        if region is None:
            report.error(
                "SECONDARY_UNKNOWN_REGION",
                f"secondary affiliation {sec.fips}: no RIGO with code {sec.rigo_code}",
                sec.fips,
            )
        primary = atlas.primary_rigo.get(sec.fips)
        if primary is None or primary == sec.rigo_code:
            report.error(
                "SELF_SECONDARY",
                f"county {sec.fips}: secondary RIGO {sec.rigo_code} must differ from a "
                "distinct primary RIGO",
                sec.fips,
            )


def _check_membership_multiplicity(atlas: Atlas, report: ValidationReport) -> None:
    # At most one primary RIGO and one MSA per county.
    rigo_seen: dict[str, list[str]] = {}
    msa_seen: dict[str, list[str]] = {}
    for region in atlas.regions:
        table = rigo_seen if region.kind is RegionKind.RIGO else msa_seen
        for fips in region.members:
            if region.kind is RegionKind.RIGO and atlas.secondary_rigo.get(fips) == region.code:
                continue
            table.setdefault(fips, []).append(region.code)
    for fips, codes in sorted(rigo_seen.items()):
        if len(codes) > 1:
            report.error(
                "MULTI_PRIMARY_RIGO",
                f"county {fips} is a primary member of RIGOs {sorted(codes)}",
                fips,
            )
    for fips, codes in sorted(msa_seen.items()):
        if len(codes) > 1:
            report.error(
                "MULTI_MSA", f"county {fips} is a member of MSAs {sorted(codes)}", fips
            )


def _check_coverage(atlas: Atlas, report: ValidationReport) -> None:
    county_fips = {c.fips for c in atlas.counties}
    cat_fips = set(atlas.categories)
    if cat_fips != county_fips:
        missing = sorted(county_fips - cat_fips)
        extra = sorted(cat_fips - county_fips)
        report.error(
            "CATEGORY_COVERAGE",
            f"categories must cover exactly the county set (missing {missing}, extra {extra})",
        )
    for cat in atlas.categories.values():
        if cat.dual_rigo and cat.category not in (Category.RIGO_ONLY, Category.BOTH):
            report.error(
                "DUAL_FLAG_INVALID",
                f"dual-RIGO county categorized {cat.category.value}; must be a RIGO member",
            )
    for kind in RegionKind:
        codes = {r.code for r in atlas.regions_of_kind(kind)}
        binned = set(atlas.bins.get(kind, {}))
        if binned != codes:
            report.error(
                "BIN_COVERAGE",
                f"{kind.value} bins must cover exactly the region codes "
                f"(missing {sorted(codes - binned)}, extra {sorted(binned - codes)})",
            )
        for code, b in atlas.bins.get(kind, {}).items():
            if not 0 <= b < atlas.bin_count:
                report.error(
                    "BIN_RANGE",
                    f"{kind.value} {code}: bin {b} outside [0, {atlas.bin_count - 1}]",
                    code,
                )


def validate_atlas(atlas: Atlas) -> ValidationReport:
    """Check every structural invariant; the report is the output, nothing raises.

    An empty error list means the atlas satisfies all type invariants. A declared
    region population that disagrees with the member sum is only a warning.
    """
    report = ValidationReport()
    _check_counties(atlas, report)
    _check_regions(atlas, report)
    _check_secondary(atlas, report)
    _check_membership_multiplicity(atlas, report)
    _check_coverage(atlas, report)
    return report


def iter_rings(counties: Iterable[County]):
    for county in counties:
        for ring in county.rings:
            yield county.fips, ring
