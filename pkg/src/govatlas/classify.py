"""Overlap categories, region populations, and rank-based saturation bins."""

from __future__ import annotations

from typing import Iterable, Mapping

from .model import Atlas, Category, County, OverlapCategory, Region, RegionKind, SecondaryAffiliation

DEFAULT_BIN_COUNT = 5


def compute_categories(
    county_fips: Iterable[str],
    regions: Iterable[Region],
    secondary: Iterable[SecondaryAffiliation],
) -> dict[str, OverlapCategory]:
    """Per-county overlap category; membership includes secondary RIGO rows."""
    rigo_members: set[str] = set()
    msa_members: set[str] = set()
    for region in regions:
        target = rigo_members if region.kind is RegionKind.RIGO else msa_members
        target.update(region.members)
    dual = {s.fips for s in secondary}
    out: dict[str, OverlapCategory] = {}
    for fips in county_fips:
        in_rigo = fips in rigo_members
        in_msa = fips in msa_members
        if in_rigo and in_msa:
            category = Category.BOTH
        elif in_rigo:
            category = Category.RIGO_ONLY
        elif in_msa:
            category = Category.MSA_ONLY
        else:
            category = Category.NEITHER
        out[fips] = OverlapCategory(category=category, dual_rigo=fips in dual)
    return out


def overlap_category(county: County | str, atlas: Atlas) -> OverlapCategory:
    fips = county if isinstance(county, str) else county.fips
    return compute_categories([fips], atlas.regions, atlas.secondary)[fips]


def region_population(region: Region, atlas: Atlas) -> int:
    """Declared population wins; otherwise the sum over member counties.

    A dual-membership county counts fully toward every RIGO that lists it.
    """
    if region.declared_population is not None:
        return region.declared_population
    return sum(atlas.county_index[f].population for f in region.members)


def assign_bins(values: Mapping[str, int | float], bin_count: int = DEFAULT_BIN_COUNT) -> dict[str, int]:
    """Quantile-style bin per region code, monotone in population.

    Regions sort by (population, code); tied populations share the rank of
    their first occurrence, and bin = floor(rank * bin_count / len(values)),
    clamped to [0, bin_count - 1].
    """
    if bin_count < 1:
        raise ValueError(f"bin_count must be >= 1, got {bin_count}")
    if not values:
        raise ValueError("values must be non-empty")
    ordered = sorted(values.items(), key=lambda kv: (kv[1], kv[0]))
    n = len(ordered)
    bins: dict[str, int] = {}
    first_rank: dict[int | float, int] = {}
    for index, (code, population) in enumerate(ordered):
        rank = first_rank.setdefault(population, index)
        bins[code] = min(rank * bin_count // n, bin_count - 1)
    return bins


def compute_bins(
    regions: Iterable[Region], atlas: Atlas, bin_count: int = DEFAULT_BIN_COUNT
) -> dict[RegionKind, dict[str, int]]:
    """Independent bin assignments per region kind."""
    out: dict[RegionKind, dict[str, int]] = {}
    for kind in RegionKind:
        of_kind = [r for r in regions if r.kind is kind]
        if of_kind:
            out[kind] = assign_bins({r.code: region_population(r, atlas) for r in of_kind}, bin_count)
        else:
            out[kind] = {}
    return out
