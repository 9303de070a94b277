#include "kgprof/metapaths.hpp"

#include <gtest/gtest.h>

#include <limits>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace {

using namespace kgprof;
using kgtest::make_triples;

EntityId eid(const TripleStore& s, const char* label) {
    return *s.vocabulary().entity_id(label);
}

TEST(WalkCounts, LineGraph) {
    const TripleStore store = build_store(make_triples({{"a", "p", "b"}, {"b", "p", "c"}}));
    EXPECT_EQ(count_walks_exact(store, eid(store, "a"), 1), 1);
    EXPECT_EQ(count_walks_exact(store, eid(store, "a"), 2), 1);
    EXPECT_EQ(count_walks_exact(store, eid(store, "a"), 3), 0);
    EXPECT_EQ(count_walks_exact(store, eid(store, "c"), 1), 0);
}

TEST(WalkCounts, ParallelEdgesCountSeparately) {
    // Two relations between the same endpoints double every step using them.
    const TripleStore store = build_store(
        make_triples({{"a", "p", "b"}, {"a", "q", "b"}, {"b", "p", "c"}}));
    EXPECT_EQ(count_walks_exact(store, eid(store, "a"), 1), 2);
    EXPECT_EQ(count_walks_exact(store, eid(store, "a"), 2), 2);
}

TEST(WalkCounts, CyclesAllowRepeatedEntities) {
    const TripleStore store = build_store(make_triples({{"a", "p", "b"}, {"b", "p", "a"}}));
    for (unsigned len = 1; len <= 6; ++len)
        EXPECT_EQ(count_walks_exact(store, eid(store, "a"), len), 1);
    const TripleStore loop = build_store(make_triples({{"x", "p", "x"}}));
    EXPECT_EQ(count_walks_exact(loop, 0, 4), 1);
}

TEST(WalkCounts, CompleteDigraphMatchesClosedForm) {
    // In a complete digraph on n vertices (no self-loops, one relation),
    // every entity has out-degree n-1, so walks of length L number (n-1)^L.
    std::vector<LabeledTriple> triples;
    const int n = 6;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                triples.push_back({"v" + std::to_string(i), "r", "v" + std::to_string(j)});
    const TripleStore store = build_store(triples);
    EXPECT_EQ(count_walks_exact(store, 0, 4), WalkCount(5 * 5 * 5 * 5));
    EXPECT_EQ(count_walks_exact(store, 3, 7), WalkCount(78125));  // 5^7
}

TEST(WalkCounts, GrowPastSixtyFourBits) {
    // 600 parallel edges in both directions: length-8 walks from a number
    // 600^8 = 1.68e22, past what uint64 can hold.
    std::vector<LabeledTriple> triples;
    for (int i = 0; i < 600; ++i) {
        triples.push_back({"a", "r" + std::to_string(i), "b"});
        triples.push_back({"b", "r" + std::to_string(i), "a"});
    }
    const TripleStore store = build_store(triples);
    const WalkCount got = count_walks_exact(store, eid(store, "a"), 8);
    WalkCount expected = 1;
    for (int i = 0; i < 8; ++i) expected *= 600;
    EXPECT_EQ(got, expected);
    EXPECT_GT(got, WalkCount(std::numeric_limits<std::uint64_t>::max()));
}

TEST(WalkCounts, RejectsZeroLength) {
    const TripleStore store = build_store(make_triples({{"a", "p", "b"}}));
    EXPECT_THROW(count_walks_exact(store, 0, 0), std::invalid_argument);
    EXPECT_THROW(count_walks_exact(store, 99, 2), InvalidIdError);
}

TEST(Estimate, DrawsSeededSamplesWithReplacement) {
    const TripleStore store = build_store(make_triples({{"a", "p", "b"}, {"b", "p", "a"}}));
    MetapathConfig cfg;
    cfg.num_samples = 50;
    cfg.seed = 9;
    const MetapathEstimate est = estimate_metapaths(store, cfg);
    ASSERT_EQ(est.sampled_entities.size(), 50u);
    // Two entities, fifty draws: both must appear (replacement, uniform).
    bool saw[2] = {false, false};
    for (EntityId e : est.sampled_entities) {
        ASSERT_LT(e, 2u);
        saw[e] = true;
    }
    EXPECT_TRUE(saw[0] && saw[1]);

    const MetapathEstimate rerun = estimate_metapaths(store, cfg);
    EXPECT_EQ(est.sampled_entities, rerun.sampled_entities);
    EXPECT_EQ(est.counts, rerun.counts);
}

TEST(Estimate, LengthsAreSortedAndDeduplicated) {
    const TripleStore store = build_store(make_triples({{"a", "p", "b"}}));
    MetapathConfig cfg;
    cfg.lengths = {4, 2, 3, 2};
    const MetapathEstimate est = estimate_metapaths(store, cfg);
    EXPECT_EQ(est.lengths, (std::vector<unsigned>{2, 3, 4}));
    ASSERT_EQ(est.counts.size(), 3u);
    EXPECT_EQ(est.counts[0].size(), 3u);
}

TEST(Estimate, MeanIsSumOverSamples) {
    const TripleStore store = build_store(
        make_triples({{"a", "p", "b"}, {"b", "p", "a"}, {"a", "q", "c"}}));
    MetapathConfig cfg;
    cfg.num_samples = 3;
    cfg.seed = 42;
    const MetapathEstimate est = estimate_metapaths(store, cfg);
    for (std::size_t li = 0; li < est.lengths.size(); ++li) {
        WalkCount sum = 0;
        for (std::size_t s = 0; s < est.counts.size(); ++s) sum += est.counts[s][li];
        EXPECT_EQ(est.sum_for_length(li), sum);
        EXPECT_DOUBLE_EQ(est.mean_for_length(li), static_cast<double>(sum) / 3.0);
    }
}

TEST(Estimate, ThreadCountDoesNotChangeResults) {
    SplitMix64 rng(321);
    kgtest::RandomGraphSpec spec;
    spec.max_triples = 200;
    const TripleStore store = build_store(kgtest::random_triples(rng, spec));
    MetapathConfig cfg;
    cfg.num_samples = 7;
    const MetapathEstimate a = estimate_metapaths(store, cfg, 1);
    const MetapathEstimate b = estimate_metapaths(store, cfg, 4);
    EXPECT_EQ(a.sampled_entities, b.sampled_entities);
    EXPECT_EQ(a.counts, b.counts);
}

TEST(Estimate, RejectsBadConfig) {
    const TripleStore store = build_store(make_triples({{"a", "p", "b"}}));
    MetapathConfig no_samples;
    no_samples.num_samples = 0;
    EXPECT_THROW(estimate_metapaths(store, no_samples), std::invalid_argument);
    MetapathConfig zero_len;
    zero_len.lengths = {0, 2};
    EXPECT_THROW(estimate_metapaths(store, zero_len), std::invalid_argument);
}

// The acceptance suite re-runs this comparison at full volume.
TEST(WalkCounts, MatchesDfsEnumeration) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SplitMix64 rng(2000 + seed);
        kgtest::RandomGraphSpec spec;
        spec.max_entities = 18;
        spec.max_relations = 4;
        spec.max_triples = 60;
        const TripleStore store = build_store(kgtest::random_triples(rng, spec));
        for (EntityId e = 0; e < std::min<EntityId>(store.num_entities(), 4); ++e) {
            for (unsigned len = 1; len <= 4; ++len) {
                EXPECT_EQ(count_walks_exact(store, e, len),
                          kgtest::oracle_walks_dfs(store, e, len))
                    << "seed " << seed << " entity " << e << " len " << len;
            }
        }
    }
}

}  // namespace
