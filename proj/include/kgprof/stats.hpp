#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "kgprof/rational.hpp"
#include "kgprof/store.hpp"

namespace kgprof {

/// Table-style scalar statistics for one dataset.
///
/// #T follows the raw (split-summed) count; the distinct count is reported
/// alongside. Average degree comes in two flavors: avg_degree_total sums
/// in- and out-degrees (2#T/#E), avg_degree_table is #T/#E, the per-entity
/// triple load that summary tables usually call "deg". Density is
/// #T/#E^2 (triples over possible head-tail pairs), reported as -log10.
struct GraphSummary {
    std::uint64_t num_entities = 0;
    std::uint64_t num_relations = 0;
    std::uint64_t num_triples_raw = 0;
    std::uint64_t num_triples_distinct = 0;
    Rational avg_degree_total;  // 2#T/#E
    Rational avg_degree_table;  // #T/#E
    double neg_log10_density = 0.0;
};

inline GraphSummary summarize(const TripleStore& store) {
    GraphSummary s;
    s.num_entities = store.num_entities();
    s.num_relations = store.num_relations();
    s.num_triples_raw = store.raw_triple_count();
    s.num_triples_distinct = store.num_distinct_triples();
    s.avg_degree_total = Rational::of(2 * s.num_triples_raw, s.num_entities);
    s.avg_degree_table = Rational::of(s.num_triples_raw, s.num_entities);
    const double e = static_cast<double>(s.num_entities);
    s.neg_log10_density = -std::log10(static_cast<double>(s.num_triples_raw) / (e * e));
    return s;
}

/// degree (in+out, over distinct triples) -> number of entities.
struct DegreeHistogram {
    std::map<std::uint64_t, std::uint64_t> bins;

    std::uint64_t total_entities() const {
        std::uint64_t n = 0;
        for (const auto& [d, c] : bins) n += c;
        return n;
    }
    std::uint64_t weighted_mass() const {
        std::uint64_t n = 0;
        for (const auto& [d, c] : bins) n += d * c;
        return n;
    }
};

inline DegreeHistogram degree_histogram(const TripleStore& store) {
    DegreeHistogram h;
    for (EntityId e = 0; e < store.num_entities(); ++e) h.bins[store.degree(e)]++;
    return h;
}

/// Per-relation distinct triple counts, descending; ties by relation id.
struct RelationLoad {
    std::vector<std::pair<RelationId, std::uint64_t>> counts;

    std::uint64_t total() const {
        std::uint64_t n = 0;
        for (const auto& [r, c] : counts) n += c;
        return n;
    }
};

inline RelationLoad relation_load(const TripleStore& store) {
    RelationLoad load;
    load.counts.reserve(store.num_relations());
    for (RelationId r = 0; r < store.num_relations(); ++r)
        load.counts.emplace_back(r, store.relation_size(r));
    std::sort(load.counts.begin(), load.counts.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return load;
}

}  // namespace kgprof
