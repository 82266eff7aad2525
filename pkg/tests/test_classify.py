import random

import pytest
from hypothesis import given, strategies as st

from govatlas.classify import assign_bins, overlap_category, region_population
from govatlas.model import Category, RegionKind


def test_fixture_categories(atlas16):
    c10 = overlap_category("00004", atlas16)
    assert c10.category is Category.BOTH and not c10.dual_rigo
    c13 = overlap_category("00007", atlas16)
    assert c13.category is Category.NEITHER and not c13.dual_rigo
    c01 = overlap_category("00001", atlas16)
    assert c01.category is Category.RIGO_ONLY and c01.dual_rigo


def test_fixture_partition_counts(atlas16):
    counts = {c.value: 0 for c in Category}
    for overlap in atlas16.categories.values():
        counts[overlap.category.value] += 1
    assert counts == {"Both": 3, "RigoOnly": 6, "MsaOnly": 1, "Neither": 6}
    assert sum(counts.values()) == 16


def test_stored_categories_match_recomputed(atlas16):
    for fips in atlas16.county_index:
        assert overlap_category(fips, atlas16) == atlas16.categories[fips]


def test_region_population(atlas16):
    r1 = atlas16.region_index[(RegionKind.RIGO, "R1")]
    assert region_population(r1, atlas16) == 1400  # 100 + 200 + 500 + 600
    m2 = atlas16.region_index[(RegionKind.MSA, "M2")]
    assert region_population(m2, atlas16) == 1600


def test_declared_population_precedence(atlas16):
    import dataclasses

    r1 = atlas16.region_index[(RegionKind.RIGO, "R1")]
    declared = dataclasses.replace(r1, declared_population=9999)
    assert region_population(declared, atlas16) == 9999


def test_fixture_bins():
    # Ranks 0, 1, 2 over three RIGO populations; bin = floor(rank * 5 / 3).
    bins = assign_bins({"R3": 500, "R1": 1400, "R2": 5400}, 5)
    assert bins == {"R3": 0, "R1": 1, "R2": 3}


def test_fixture_atlas_bins(atlas16):
    assert atlas16.bins[RegionKind.RIGO] == {"R3": 0, "R1": 1, "R2": 3}
    assert atlas16.bins[RegionKind.MSA] == {"M2": 0, "M1": 2}


def test_all_equal_populations_share_bin_zero():
    assert assign_bins({"A": 7, "B": 7, "C": 7}, 5) == {"A": 0, "B": 0, "C": 0}


def test_single_region():
    assert assign_bins({"A": 123}, 5) == {"A": 0}


def test_bad_inputs():
    with pytest.raises(ValueError):
        assign_bins({}, 5)
    with pytest.raises(ValueError):
        assign_bins({"A": 1}, 0)


populations = st.dictionaries(
    st.text(alphabet="ABCDEFGH", min_size=1, max_size=3),
    st.integers(min_value=0, max_value=10**9),
    min_size=1,
    max_size=30,
)


@given(values=populations, k=st.integers(1, 9))
def test_monotone_and_tie_equal(values, k):
    bins = assign_bins(values, k)
    for a, pa in values.items():
        for b, pb in values.items():
            if pa < pb:
                assert bins[a] <= bins[b]
            elif pa == pb:
                assert bins[a] == bins[b]
            assert 0 <= bins[a] < k


@given(values=populations, k=st.integers(1, 9), seed=st.integers(0, 2**16))
def test_permutation_invariant(values, k, seed):
    items = list(values.items())
    random.Random(seed).shuffle(items)
    assert assign_bins(dict(items), k) == assign_bins(values, k)


@given(values=populations, k=st.integers(1, 9), factor=st.integers(1, 1000))
def test_positive_scaling_invariant(values, k, factor):
    scaled = {code: pop * factor for code, pop in values.items()}
    assert assign_bins(scaled, k) == assign_bins(values, k)
    fractional = {code: pop * 2.5 for code, pop in values.items()}
    assert assign_bins(fractional, k) == assign_bins(values, k)
