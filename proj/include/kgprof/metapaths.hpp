#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "kgprof/parallel.hpp"
#include "kgprof/rng.hpp"
#include "kgprof/store.hpp"

namespace kgprof {

// Walk counts grow like (average degree)^length and overflow fixed-width
// integers on dense graphs, so counters are arbitrary precision.
using WalkCount = boost::multiprecision::cpp_int;

/// Sampling protocol for metapath estimation: entities are drawn uniformly
/// at random with replacement, one exact walk count per requested length
/// per draw. Lengths above 4 are allowed; the CLI warns about them.
struct MetapathConfig {
    std::vector<unsigned> lengths = {2, 3, 4};
    unsigned num_samples = 3;
    std::uint64_t seed = 42;
};

/// Number of directed relation-labeled walks with exactly `length` edges
/// starting at `start`. Entities and edges may repeat; parallel edges
/// (same endpoints, different relation) count separately. Computed by
/// propagating a sparse frontier of walk multiplicities along
/// out-adjacency.
inline WalkCount count_walks_exact(const TripleStore& store, EntityId start, unsigned length) {
    store.check_entity(start);
    if (length == 0) throw std::invalid_argument("walk length must be >= 1");

    std::unordered_map<EntityId, WalkCount> frontier;
    frontier.emplace(start, 1);
    std::unordered_map<EntityId, WalkCount> next;
    for (unsigned step = 0; step < length; ++step) {
        next.clear();
        for (const auto& [entity, count] : frontier) {
            for (const RelationEdge& edge : store.out_neighbors_unchecked(entity))
                next[edge.tail] += count;
        }
        frontier.swap(next);
        if (frontier.empty()) break;
    }
    WalkCount total = 0;
    for (const auto& [entity, count] : frontier) total += count;
    return total;
}

/// Sampled walk counts: per requested length, the per-sample exact counts
/// from `num_samples` uniformly drawn start entities, plus their mean.
struct MetapathEstimate {
    std::vector<unsigned> lengths;              // sorted, deduplicated
    std::vector<EntityId> sampled_entities;     // one per sample, draw order
    std::vector<std::vector<WalkCount>> counts; // counts[sample][length index]

    WalkCount sum_for_length(std::size_t length_index) const {
        WalkCount s = 0;
        for (const auto& per_sample : counts) s += per_sample[length_index];
        return s;
    }
    double mean_for_length(std::size_t length_index) const {
        return sampled_entities.empty()
                   ? 0.0
                   : static_cast<double>(sum_for_length(length_index)) /
                         static_cast<double>(sampled_entities.size());
    }
};

inline MetapathEstimate estimate_metapaths(const TripleStore& store, const MetapathConfig& cfg,
                                           unsigned threads = 1) {
    if (cfg.num_samples == 0) throw std::invalid_argument("num_samples must be >= 1");
    MetapathEstimate est;
    est.lengths = cfg.lengths;
    std::sort(est.lengths.begin(), est.lengths.end());
    est.lengths.erase(std::unique(est.lengths.begin(), est.lengths.end()), est.lengths.end());
    if (est.lengths.empty() || est.lengths.front() == 0)
        throw std::invalid_argument("metapath lengths must be >= 1");

    SplitMix64 rng(cfg.seed);
    for (unsigned s = 0; s < cfg.num_samples; ++s)
        est.sampled_entities.push_back(
            static_cast<EntityId>(rng.next_below(store.num_entities())));

    est.counts.assign(cfg.num_samples, {});
    parallel_for(cfg.num_samples, threads, [&](std::size_t s) {
        std::vector<WalkCount>& row = est.counts[s];
        row.reserve(est.lengths.size());
        for (unsigned len : est.lengths)
            row.push_back(count_walks_exact(store, est.sampled_entities[s], len));
    });
    return est;
}

}  // namespace kgprof
