#include "kgprof/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace {

using namespace kgprof;
using kgtest::make_triples;

TEST(Rational, ReducesAndEvaluates) {
    const Rational r = Rational::of(6529, 135);
    EXPECT_EQ(r.num, 6529u);
    EXPECT_EQ(r.den, 135u);
    const Rational half = Rational::of(500, 1000);
    EXPECT_EQ(half.num, 1u);
    EXPECT_EQ(half.den, 2u);
    EXPECT_DOUBLE_EQ(half.value(), 0.5);
}

TEST(Rounding, RoundsHalfAwayFromZero) {
    EXPECT_EQ(round_half_away(2.5), 3);
    EXPECT_EQ(round_half_away(-2.5), -3);
    EXPECT_EQ(round_half_away(2.49), 2);
    EXPECT_EQ(round_half_away(142.2857), 142);
    EXPECT_EQ(format_fixed(0.4458, 2), "0.45");
    EXPECT_EQ(format_fixed(-1.00703, 2), "-1.01");
    EXPECT_EQ(format_fixed(2.0, 4), "2.0000");
}

TEST(Summarize, ThreeTripleExample) {
    const TripleStore store =
        build_store(make_triples({{"a", "p", "b"}, {"b", "p", "a"}, {"a", "q", "c"}}));
    const GraphSummary s = summarize(store);
    EXPECT_EQ(s.num_entities, 3u);
    EXPECT_EQ(s.num_relations, 2u);
    EXPECT_EQ(s.num_triples_raw, 3u);
    EXPECT_EQ(s.num_triples_distinct, 3u);
    EXPECT_EQ(s.avg_degree_total.num, 2u);
    EXPECT_EQ(s.avg_degree_total.den, 1u);
    EXPECT_NEAR(s.neg_log10_density, 0.4771, 1e-4);
}

TEST(Summarize, RawCountIncludesDuplicates) {
    const TripleStore store =
        build_store(make_triples({{"a", "p", "b"}, {"a", "p", "b"}, {"b", "q", "a"}}));
    const GraphSummary s = summarize(store);
    EXPECT_EQ(s.num_triples_raw, 3u);
    EXPECT_EQ(s.num_triples_distinct, 2u);
    // Degree averages follow the raw count.
    EXPECT_EQ(s.avg_degree_table.num, 3u);
    EXPECT_EQ(s.avg_degree_table.den, 2u);
}

TEST(Summarize, TotalDegreeIsTwiceTableDegree) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SplitMix64 rng(400 + seed);
        const TripleStore store = build_store(kgtest::random_triples(rng, {}));
        const GraphSummary s = summarize(store);
        // Exact rational identity: 2T/E == 2 * (T/E).
        EXPECT_EQ(s.avg_degree_total.num * s.avg_degree_table.den,
                  2 * s.avg_degree_table.num * s.avg_degree_total.den);
    }
}

TEST(Summarize, DensityDropsAsTriplesGrow) {
    auto triples = make_triples({{"a", "p", "b"}, {"b", "p", "c"}});
    const double before = summarize(build_store(triples)).neg_log10_density;
    kgtest::append_triples(triples, {{"c", "p", "a"}}, Split::unsplit);
    const double after = summarize(build_store(triples)).neg_log10_density;
    EXPECT_LT(after, before);  // same entities, more triples: denser
}

TEST(DegreeHistogram, HandExamples) {
    const TripleStore one = build_store(make_triples({{"a", "p", "b"}}));
    const DegreeHistogram h1 = degree_histogram(one);
    ASSERT_EQ(h1.bins.size(), 1u);
    EXPECT_EQ(h1.bins.at(1), 2u);

    const TripleStore three =
        build_store(make_triples({{"a", "p", "b"}, {"b", "p", "a"}, {"a", "q", "c"}}));
    const DegreeHistogram h3 = degree_histogram(three);
    EXPECT_EQ(h3.bins.at(1), 1u);  // c
    EXPECT_EQ(h3.bins.at(2), 1u);  // b
    EXPECT_EQ(h3.bins.at(3), 1u);  // a
}

TEST(DegreeHistogram, SelfLoopCountsTwice) {
    const TripleStore store = build_store(make_triples({{"a", "p", "a"}}));
    EXPECT_EQ(degree_histogram(store).bins.at(2), 1u);
}

TEST(DegreeHistogram, MassInvariants) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        SplitMix64 rng(500 + seed);
        const TripleStore store = build_store(kgtest::random_triples(rng, {}));
        const DegreeHistogram h = degree_histogram(store);
        EXPECT_EQ(h.total_entities(), store.num_entities());
        EXPECT_EQ(h.weighted_mass(), 2 * store.num_distinct_triples());
    }
}

TEST(RelationLoad, SortsDescendingWithIdTieBreak) {
    const TripleStore store = build_store(make_triples(
        {{"a", "q", "b"}, {"b", "p", "a"}, {"c", "p", "d"}, {"c", "s", "d"}}));
    const RelationLoad load = relation_load(store);
    ASSERT_EQ(load.counts.size(), 3u);
    EXPECT_EQ(load.counts[0].first, *store.vocabulary().relation_id("p"));
    EXPECT_EQ(load.counts[0].second, 2u);
    // q (id 0) and s (id 2) both have 1: ascending-id tie break.
    EXPECT_EQ(load.counts[1].first, *store.vocabulary().relation_id("q"));
    EXPECT_EQ(load.counts[2].first, *store.vocabulary().relation_id("s"));
}

TEST(RelationLoad, SumsToDistinctTriples) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        SplitMix64 rng(600 + seed);
        const TripleStore store = build_store(kgtest::random_triples(rng, {}));
        const RelationLoad load = relation_load(store);
        EXPECT_EQ(load.counts.size(), store.num_relations());
        EXPECT_EQ(load.total(), store.num_distinct_triples());
        for (std::size_t i = 1; i < load.counts.size(); ++i)
            EXPECT_GE(load.counts[i - 1].second, load.counts[i].second);
    }
}

}  // namespace
