import dataclasses

import pytest

from govatlas.model import (
    Category,
    OverlapCategory,
    Region,
    RegionKind,
    SecondaryAffiliation,
    validate_atlas,
)


def _with_region(atlas, code, **changes):
    regions = tuple(
        dataclasses.replace(r, **changes) if r.code == code else r for r in atlas.regions
    )
    return dataclasses.replace(atlas, regions=regions)


def test_fixture_is_clean(atlas16):
    report = validate_atlas(atlas16)
    assert report.errors == []
    assert report.warnings == []
    assert report.ok


def test_duplicate_county(atlas16):
    atlas = dataclasses.replace(atlas16, counties=atlas16.counties + (atlas16.counties[0],))
    report = validate_atlas(atlas)
    assert len(report.errors) == 1
    issue = report.errors[0]
    assert issue.code == "DUP_FIPS"
    assert issue.subject == "00000"


def test_declared_population_mismatch_is_warning(atlas16):
    # R1 member sum is 100 + 200 + 500 + 600 = 1400.
    atlas = _with_region(atlas16, "R1", declared_population=1500, population=1500)
    report = validate_atlas(atlas)
    assert report.errors == []
    assert len(report.warnings) == 1
    warning = report.warnings[0]
    assert warning.code == "POP_MISMATCH"
    assert "1500" in warning.message and "1400" in warning.message


def test_population_must_follow_declared(atlas16):
    atlas = _with_region(atlas16, "R1", declared_population=1500, population=1400)
    report = validate_atlas(atlas)
    assert any(i.code == "POP_PRECEDENCE" for i in report.errors)


def test_population_sum_enforced_without_declared(atlas16):
    atlas = _with_region(atlas16, "R1", population=9)
    report = validate_atlas(atlas)
    assert any(i.code == "POP_SUM" for i in report.errors)


def test_bad_fips_and_state(atlas16):
    bad = dataclasses.replace(atlas16.counties[0], fips="12ab5", state="aa")
    atlas = dataclasses.replace(atlas16, counties=(bad,) + atlas16.counties[1:])
    codes = {i.code for i in validate_atlas(atlas).errors}
    assert "BAD_FIPS" in codes
    assert "BAD_STATE" in codes


def test_negative_population(atlas16):
    bad = dataclasses.replace(atlas16.counties[3], population=-5)
    atlas = dataclasses.replace(
        atlas16, counties=atlas16.counties[:3] + (bad,) + atlas16.counties[4:]
    )
    codes = {i.code for i in validate_atlas(atlas).errors}
    assert "NEG_POPULATION" in codes


def test_open_ring_rejected(atlas16):
    county = atlas16.counties[0]
    bad = dataclasses.replace(county, rings=(county.rings[0][:-1],))
    atlas = dataclasses.replace(atlas16, counties=(bad,) + atlas16.counties[1:])
    codes = {i.code for i in validate_atlas(atlas).errors}
    assert "BAD_RING" in codes


def test_empty_members(atlas16):
    atlas = _with_region(atlas16, "R2", members=frozenset(), population=0)
    report = validate_atlas(atlas)
    codes = {i.code for i in report.errors}
    assert "EMPTY_MEMBERS" in codes
    assert "BIN_COVERAGE" not in codes  # bins still cover the catalog codes


def test_unknown_member(atlas16):
    region = next(r for r in atlas16.regions if r.code == "M2")
    atlas = _with_region(
        atlas16, "M2", members=region.members | {"99999"}, population=region.population
    )
    report = validate_atlas(atlas)
    assert any(
        i.code == "UNKNOWN_MEMBER" and i.subject == "M2" for i in report.errors
    ) or any(i.code == "POP_SUM" for i in report.errors)


def test_self_secondary(atlas16):
    # C00's only RIGO is R1; marking it secondary leaves no distinct primary.
    atlas = dataclasses.replace(
        atlas16, secondary=atlas16.secondary + (SecondaryAffiliation("00000", "R1"),)
    )
    report = validate_atlas(atlas)
    assert [i.code for i in report.errors] == ["SELF_SECONDARY"]
    assert report.errors[0].subject == "00000"


def test_secondary_unknown_region(atlas16):
    atlas = dataclasses.replace(
        atlas16, secondary=atlas16.secondary + (SecondaryAffiliation("00000", "R9"),)
    )
    codes = {i.code for i in validate_atlas(atlas).errors}
    assert "SECONDARY_UNKNOWN_REGION" in codes


def test_multi_msa_forbidden(atlas16):
    extra = Region(
        code="M3",
        kind=RegionKind.MSA,
        name="Extra Metro",
        members=frozenset({"00006"}),
        population=700,
    )
    atlas = dataclasses.replace(atlas16, regions=atlas16.regions + (extra,))
    codes = {i.code for i in validate_atlas(atlas).errors}
    assert "MULTI_MSA" in codes
    assert "BIN_COVERAGE" in codes  # the new region has no bin


def test_dual_flag_requires_rigo_membership(atlas16):
    categories = dict(atlas16.categories)
    categories["00007"] = OverlapCategory(Category.NEITHER, dual_rigo=True)
    atlas = dataclasses.replace(atlas16, categories=categories)
    codes = {i.code for i in validate_atlas(atlas).errors}
    assert "DUAL_FLAG_INVALID" in codes


def test_category_coverage(atlas16):
    categories = dict(atlas16.categories)
    del categories["00008"]
    atlas = dataclasses.replace(atlas16, categories=categories)
    codes = {i.code for i in validate_atlas(atlas).errors}
    assert "CATEGORY_COVERAGE" in codes


def test_category_partition_property(atlas16):
    counts = {c: 0 for c in Category}
    for overlap in atlas16.categories.values():
        counts[overlap.category] += 1
    assert sum(counts.values()) == len(atlas16.counties)


def test_dual_counties_are_rigo_members(atlas16):
    rigo_members = set()
    for region in atlas16.regions_of_kind(RegionKind.RIGO):
        rigo_members |= region.members
    duals = {f for f, oc in atlas16.categories.items() if oc.dual_rigo}
    assert duals <= rigo_members


def test_membership_indexes(atlas16):
    assert atlas16.primary_rigo["00001"] == "R1"
    assert atlas16.secondary_rigo["00001"] == "R3"
    assert atlas16.primary_rigo["00002"] == "R3"
    assert atlas16.primary_msa["00006"] == "M1"
    assert "00007" not in atlas16.primary_rigo
    assert atlas16.states == ("AA", "BB")
