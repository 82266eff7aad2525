"""The dashboard numbers and the three comparison queries, answered live."""

from govatlas import Query, answer_query, dashboard_stats
from govatlas.fixtures import fixture_atlas


def main() -> None:
    atlas = fixture_atlas()
    stats = dashboard_stats(atlas)

    print("Overall statistics")
    print(f"   RIGOs: {stats.rigo_count}   MSAs: {stats.msa_count}")
    print(f"   county categories: {stats.category_counts}")
    print(f"   dual-RIGO counties: {stats.dual_rigo_count}")
    print(f"   cross-state RIGOs: {list(stats.cross_state_rigos)}")
    print(f"   cross-state MSAs:  {list(stats.cross_state_msas)}")

    print("\nQueries")
    more = answer_query(atlas, Query.MORE_RIGOS_OR_MSAS)
    print(f"   Are there more RIGOs or MSAs? -> {more.winner} "
          f"({more.rigo_count} vs {more.msa_count})")
    rigo = answer_query(atlas, Query.CROSS_STATE_RIGO)
    print(f"   Can a RIGO span two states? -> {rigo.exists}, e.g. {list(rigo.evidence)}")
    msa = answer_query(atlas, Query.CROSS_STATE_MSA)
    print(f"   Can an MSA span two states? -> {msa.exists}, e.g. {list(msa.evidence)}")


if __name__ == "__main__":
    main()
