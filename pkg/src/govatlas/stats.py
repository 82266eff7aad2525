"""Dashboard statistics and the comparison queries the dashboard answers."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .model import Atlas, Category, RegionKind

EVIDENCE_CAP = 5


@dataclass(frozen=True)
class DashboardStats:
    rigo_count: int
    msa_count: int
    category_counts: dict[str, int]
    cross_state_rigos: tuple[str, ...]
    cross_state_msas: tuple[str, ...]
    dual_rigo_count: int

    def to_dict(self) -> dict:
        return {
            "rigo_count": self.rigo_count,
            "msa_count": self.msa_count,
            "category_counts": dict(self.category_counts),
            "cross_state_rigos": list(self.cross_state_rigos),
            "cross_state_msas": list(self.cross_state_msas),
            "dual_rigo_count": self.dual_rigo_count,
        }


def _cross_state_codes(atlas: Atlas, kind: RegionKind) -> tuple[str, ...]:
    codes = []
    for region in atlas.regions_of_kind(kind):
        states = {
            atlas.county_index[f].state for f in region.members if f in atlas.county_index
        }
        if len(states) >= 2:
            codes.append(region.code)
    return tuple(sorted(codes))


def dashboard_stats(atlas: Atlas) -> DashboardStats:
    """High-level counts: regions per kind, county categories, cross-state codes."""
    counts = {c.value: 0 for c in Category}
    dual = 0
    for overlap in atlas.categories.values():
        counts[overlap.category.value] += 1
        if overlap.dual_rigo:
            dual += 1
    return DashboardStats(
        rigo_count=len(atlas.regions_of_kind(RegionKind.RIGO)),
        msa_count=len(atlas.regions_of_kind(RegionKind.MSA)),
        category_counts=counts,
        cross_state_rigos=_cross_state_codes(atlas, RegionKind.RIGO),
        cross_state_msas=_cross_state_codes(atlas, RegionKind.MSA),
        dual_rigo_count=dual,
    )


class Query(str, Enum):
    MORE_RIGOS_OR_MSAS = "more-rigos-or-msas"
    CROSS_STATE_RIGO = "cross-state-rigo"
    CROSS_STATE_MSA = "cross-state-msa"


@dataclass(frozen=True)
class ComparisonAnswer:
    winner: str  # "RIGO" | "MSA" | "Tie"
    rigo_count: int
    msa_count: int

    def to_dict(self) -> dict:
        return {"answer": self.winner, "rigo_count": self.rigo_count, "msa_count": self.msa_count}


@dataclass(frozen=True)
class ExistenceAnswer:
    exists: bool
    evidence: tuple[str, ...] = field(default=())  # capped at EVIDENCE_CAP codes

    def to_dict(self) -> dict:
        return {"answer": self.exists, "evidence": list(self.evidence)}


def answer_query(atlas: Atlas, query: Query | str) -> ComparisonAnswer | ExistenceAnswer:
    query = Query(query)
    stats = atlas.stats if atlas.stats is not None else dashboard_stats(atlas)
    if query is Query.MORE_RIGOS_OR_MSAS:
        if stats.rigo_count > stats.msa_count:
            winner = "RIGO"
        elif stats.msa_count > stats.rigo_count:
            winner = "MSA"
        else:
            winner = "Tie"
        return ComparisonAnswer(winner, stats.rigo_count, stats.msa_count)
    codes = (
        stats.cross_state_rigos if query is Query.CROSS_STATE_RIGO else stats.cross_state_msas
    )
    return ExistenceAnswer(exists=bool(codes), evidence=codes[:EVIDENCE_CAP])
