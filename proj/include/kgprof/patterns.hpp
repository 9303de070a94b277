#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "kgprof/parallel.hpp"
#include "kgprof/rng.hpp"
#include "kgprof/store.hpp"

namespace kgprof {

/// Thresholds for rule mining. A rule is reported when its confidence
/// (fraction of body instances whose head holds) reaches
/// confidence_threshold and its support (body instance count) reaches
/// min_support. Composition joins larger than composite_join_cap pairs are
/// estimated from a seeded uniform sample instead of enumerated.
struct MiningConfig {
    double confidence_threshold = 0.95;
    std::uint64_t min_support = 1;
    std::uint64_t composite_join_cap = 10'000'000;
    std::uint64_t sample_seed = 42;
};

enum class CardinalityClass : std::uint8_t {
    one_to_one,
    one_to_many,
    many_to_one,
    many_to_many,
};

inline const char* to_string(CardinalityClass c) {
    switch (c) {
        case CardinalityClass::one_to_one: return "1-1";
        case CardinalityClass::one_to_many: return "1-M";
        case CardinalityClass::many_to_one: return "M-1";
        case CardinalityClass::many_to_many: return "M-M";
    }
    return "?";
}

/// Head/tail functionality confidences behind a cardinality call.
struct CardinalityScore {
    std::uint64_t heads = 0;             // distinct head entities of r
    std::uint64_t single_tail_heads = 0; // heads with exactly one tail
    std::uint64_t tails = 0;
    std::uint64_t single_head_tails = 0;

    double forward_conf() const {
        return heads ? static_cast<double>(single_tail_heads) / static_cast<double>(heads) : 0.0;
    }
    double backward_conf() const {
        return tails ? static_cast<double>(single_head_tails) / static_cast<double>(tails) : 0.0;
    }

    CardinalityClass classify(double threshold) const {
        const bool fwd = forward_conf() >= threshold;
        const bool bwd = backward_conf() >= threshold;
        if (fwd && bwd) return CardinalityClass::one_to_one;
        if (fwd) return CardinalityClass::many_to_one;
        if (bwd) return CardinalityClass::one_to_many;
        return CardinalityClass::many_to_many;
    }
};

inline CardinalityScore cardinality_score(const TripleStore& store, RelationId r) {
    store.check_relation(r);
    CardinalityScore s;
    const auto fwd = store.relation_forward(r);
    for (std::size_t i = 0; i < fwd.size();) {
        std::size_t j = i;
        while (j < fwd.size() && fwd[j].first == fwd[i].first) ++j;
        s.heads++;
        if (j - i == 1) s.single_tail_heads++;
        i = j;
    }
    const auto bwd = store.relation_backward(r);
    for (std::size_t i = 0; i < bwd.size();) {
        std::size_t j = i;
        while (j < bwd.size() && bwd[j].first == bwd[i].first) ++j;
        s.tails++;
        if (j - i == 1) s.single_head_tails++;
        i = j;
    }
    return s;
}

/// One cardinality class per relation (indexed by RelationId).
inline std::vector<CardinalityClass> classify_cardinality(const TripleStore& store,
                                                          const MiningConfig& cfg) {
    std::vector<CardinalityClass> out(store.num_relations());
    for (RelationId r = 0; r < out.size(); ++r)
        out[r] = cardinality_score(store, r).classify(cfg.confidence_threshold);
    return out;
}

/// Symmetry rule counts for one relation. sym_conf + antisym_conf is 1 by
/// construction: the reverse of each triple is either present or absent.
struct SymmetryScore {
    std::uint64_t reversed_present = 0;  // triples of r whose reverse is in T
    std::uint64_t total = 0;             // |T_r|

    double sym_conf() const {
        return total ? static_cast<double>(reversed_present) / static_cast<double>(total) : 0.0;
    }
    double antisym_conf() const {
        return total ? static_cast<double>(total - reversed_present) / static_cast<double>(total)
                     : 0.0;
    }
};

inline SymmetryScore detect_symmetry(const TripleStore& store, RelationId r) {
    store.check_relation(r);
    const auto fwd = store.relation_forward(r);
    SymmetryScore s;
    s.total = fwd.size();
    for (const EntityPair& p : fwd) {
        // Self-loops are their own reverse and count as symmetric evidence.
        if (std::binary_search(fwd.begin(), fwd.end(), EntityPair{p.second, p.first}))
            s.reversed_present++;
    }
    return s;
}

/// A mined inverse partner r' of r: of the |T_r| body triples (h,r,t),
/// `covered` also have (t,r',h) in T.
struct InversePartner {
    RelationId partner;
    std::uint64_t covered = 0;
    std::uint64_t total = 0;

    double confidence() const {
        return total ? static_cast<double>(covered) / static_cast<double>(total) : 0.0;
    }
};

/// Inverse partners per relation (r' != r, confidence >= threshold,
/// |T_r| >= min_support), sorted by confidence descending then id.
inline std::vector<std::vector<InversePartner>> detect_inverse(const TripleStore& store,
                                                               const MiningConfig& cfg,
                                                               unsigned threads = 1) {
    const std::size_t n_rel = store.num_relations();
    std::vector<std::vector<InversePartner>> out(n_rel);
    parallel_for(n_rel, threads, [&](std::size_t ri) {
        const auto r = static_cast<RelationId>(ri);
        const auto fwd = store.relation_forward(r);
        const std::uint64_t total = fwd.size();
        if (total < cfg.min_support) return;

        std::vector<std::uint64_t> tally(n_rel, 0);
        std::vector<RelationId> touched;
        for (const EntityPair& p : fwd) {
            for (const TripleStore::PairKey& rev : store.pair_range_unchecked(p.second, p.first)) {
                if (rev.relation == r) continue;
                if (tally[rev.relation]++ == 0) touched.push_back(rev.relation);
            }
        }
        std::vector<InversePartner>& partners = out[ri];
        for (RelationId r2 : touched) {
            if (static_cast<double>(tally[r2]) / static_cast<double>(total) >=
                cfg.confidence_threshold)
                partners.push_back({r2, tally[r2], total});
        }
        std::sort(partners.begin(), partners.end(), [](const InversePartner& a, const InversePartner& b) {
            if (a.covered != b.covered) return a.covered > b.covered;  // same denominator
            return a.partner < b.partner;
        });
    });
    return out;
}

/// A composition rule r1;r2 => r that held on the join: of the `support`
/// distinct (x,z) pairs reachable as x --r1--> y --r2--> z, `covered` are
/// connected by r directly. `sampled` marks estimates from a join sample.
struct CompositeWitness {
    RelationId first;
    RelationId second;
    std::uint64_t covered = 0;
    std::uint64_t support = 0;
    bool sampled = false;

    double confidence() const {
        return support ? static_cast<double>(covered) / static_cast<double>(support) : 0.0;
    }
};

namespace detail {

// Shared-intermediate block: x-range in r1's backward list, z-range in
// r2's forward list, and the cumulative path count up to this block.
struct JoinBlock {
    std::size_t x_begin, x_end;
    std::size_t z_begin, z_end;
    std::uint64_t paths_before;
};

inline std::uint64_t pack_pair(EntityId x, EntityId z) {
    return (static_cast<std::uint64_t>(x) << 32) | z;
}

}  // namespace detail

/// Composite witnesses per consequent relation. For every ordered relation
/// pair (r1, r2) the join J = {(x,z) : exists y with (x,r1,y) and (y,r2,z)}
/// is formed as a set of distinct pairs; every relation covering at least
/// confidence_threshold of J (with |J| >= min_support) gets a witness.
/// Joins whose path count exceeds composite_join_cap are estimated from a
/// seeded sample of that many paths, deduplicated. Witness lists are sorted
/// by (r1, r2) and independent of the thread count.
inline std::vector<std::vector<CompositeWitness>> detect_composite(const TripleStore& store,
                                                                   const MiningConfig& cfg,
                                                                   unsigned threads = 1) {
    const std::size_t n_rel = store.num_relations();
    std::uint64_t max_rel_size = 0;
    for (RelationId r = 0; r < n_rel; ++r)
        max_rel_size = std::max(max_rel_size, store.relation_size(r));

    // per_r1[r1] holds (consequent, witness) found with antecedent head r1.
    std::vector<std::vector<std::pair<RelationId, CompositeWitness>>> per_r1(n_rel);

    parallel_for(n_rel, threads, [&](std::size_t r1i) {
        const auto r1 = static_cast<RelationId>(r1i);
        const auto bwd1 = store.relation_backward(r1);  // (tail=y, head=x), sorted by y
        if (bwd1.empty()) return;

        std::vector<detail::JoinBlock> blocks;
        std::vector<std::uint64_t> pair_keys;
        std::vector<std::pair<EntityId, std::uint32_t>> x_blocks;
        std::vector<EntityId> zs;
        std::vector<std::uint64_t> tally(n_rel, 0);
        std::vector<RelationId> touched;

        for (RelationId r2 = 0; r2 < n_rel; ++r2) {
            const auto fwd2 = store.relation_forward(r2);  // (head=y, tail=z), sorted by y
            if (fwd2.empty()) continue;

            // Walk the two y-grouped lists in lockstep.
            blocks.clear();
            std::uint64_t total_paths = 0;
            std::uint64_t max_block = 0;
            std::size_t i = 0, j = 0;
            while (i < bwd1.size() && j < fwd2.size()) {
                const EntityId yi = bwd1[i].first;
                const EntityId yj = fwd2[j].first;
                if (yi < yj) {
                    while (i < bwd1.size() && bwd1[i].first == yi) ++i;
                } else if (yj < yi) {
                    while (j < fwd2.size() && fwd2[j].first == yj) ++j;
                } else {
                    std::size_t ie = i, je = j;
                    while (ie < bwd1.size() && bwd1[ie].first == yi) ++ie;
                    while (je < fwd2.size() && fwd2[je].first == yi) ++je;
                    const std::uint64_t block_paths =
                        static_cast<std::uint64_t>(ie - i) * static_cast<std::uint64_t>(je - j);
                    blocks.push_back({i, ie, j, je, total_paths});
                    total_paths += block_paths;
                    max_block = std::max(max_block, block_paths);
                    i = ie;
                    j = je;
                }
            }
            if (total_paths == 0) continue;

            // |J| >= max_block, and a witness needs some relation with
            // |T_r| >= threshold * |J|; skip pairs no relation can cover.
            if (cfg.confidence_threshold * static_cast<double>(max_block) >
                static_cast<double>(max_rel_size) + 1.0)
                continue;

            std::uint64_t support = 0;
            touched.clear();
            auto tally_pair = [&](EntityId x, EntityId z) {
                support++;
                for (const TripleStore::PairKey& t : store.pair_range_unchecked(x, z)) {
                    if (tally[t.relation]++ == 0) touched.push_back(t.relation);
                }
            };

            bool sampled = false;
            if (total_paths > cfg.composite_join_cap) {
                sampled = true;
                SplitMix64 rng(mix_seed(cfg.sample_seed, r1, r2));
                pair_keys.clear();
                pair_keys.reserve(cfg.composite_join_cap);
                for (std::uint64_t k = 0; k < cfg.composite_join_cap; ++k) {
                    const std::uint64_t idx = rng.next_below(total_paths);
                    // locate the block containing path #idx
                    std::size_t lo = 0, hi = blocks.size();
                    while (hi - lo > 1) {
                        const std::size_t mid = lo + (hi - lo) / 2;
                        if (blocks[mid].paths_before <= idx)
                            lo = mid;
                        else
                            hi = mid;
                    }
                    const detail::JoinBlock& b = blocks[lo];
                    const std::uint64_t local = idx - b.paths_before;
                    const std::size_t z_count = b.z_end - b.z_begin;
                    const EntityId x = bwd1[b.x_begin + local / z_count].second;
                    const EntityId z = fwd2[b.z_begin + local % z_count].second;
                    pair_keys.push_back(detail::pack_pair(x, z));
                }
                std::sort(pair_keys.begin(), pair_keys.end());
                pair_keys.erase(std::unique(pair_keys.begin(), pair_keys.end()),
                                pair_keys.end());
                for (const std::uint64_t key : pair_keys)
                    tally_pair(static_cast<EntityId>(key >> 32),
                               static_cast<EntityId>(key & 0xffffffffu));
            } else {
                // Exact mode streams the join grouped by x so memory stays
                // bounded by the x with the most reachable z's, never by
                // total_paths. Blocks are inverted into (x, block) pairs,
                // then each x's z-lists are merged and deduplicated.
                x_blocks.clear();
                for (std::size_t bi = 0; bi < blocks.size(); ++bi)
                    for (std::size_t xi = blocks[bi].x_begin; xi < blocks[bi].x_end; ++xi)
                        x_blocks.emplace_back(bwd1[xi].second, static_cast<std::uint32_t>(bi));
                std::sort(x_blocks.begin(), x_blocks.end());
                for (std::size_t p = 0; p < x_blocks.size();) {
                    const EntityId x = x_blocks[p].first;
                    zs.clear();
                    for (; p < x_blocks.size() && x_blocks[p].first == x; ++p) {
                        const detail::JoinBlock& b = blocks[x_blocks[p].second];
                        for (std::size_t zi = b.z_begin; zi < b.z_end; ++zi)
                            zs.push_back(fwd2[zi].second);
                    }
                    std::sort(zs.begin(), zs.end());
                    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
                    for (const EntityId z : zs) tally_pair(x, z);
                }
            }

            if (support < cfg.min_support) {
                for (const RelationId r : touched) tally[r] = 0;
                continue;
            }
            std::sort(touched.begin(), touched.end());
            for (const RelationId r : touched) {
                const std::uint64_t covered = tally[r];
                tally[r] = 0;
                if (static_cast<double>(covered) / static_cast<double>(support) >=
                    cfg.confidence_threshold)
                    per_r1[r1i].emplace_back(r, CompositeWitness{r1, r2, covered, support, sampled});
            }
        }
    });

    std::vector<std::vector<CompositeWitness>> out(n_rel);
    for (std::size_t r1i = 0; r1i < n_rel; ++r1i)
        for (const auto& [r, w] : per_r1[r1i]) out[r].push_back(w);
    return out;
}

enum class PatternFlag : std::uint8_t { symmetric, antisymmetric, inverse, composite };

inline const char* to_string(PatternFlag f) {
    switch (f) {
        case PatternFlag::symmetric: return "symmetric";
        case PatternFlag::antisymmetric: return "antisymmetric";
        case PatternFlag::inverse: return "inverse";
        case PatternFlag::composite: return "composite";
    }
    return "?";
}

constexpr std::array<PatternFlag, 4> kAllPatternFlags = {
    PatternFlag::symmetric, PatternFlag::antisymmetric, PatternFlag::inverse,
    PatternFlag::composite};

/// Mined pattern evidence for one relation. Flags hold at the configured
/// thresholds; a relation may carry several at once.
struct PatternReport {
    RelationId relation = 0;
    SymmetryScore symmetry;
    std::vector<InversePartner> inverse_partners;
    std::vector<CompositeWitness> composite_witnesses;
    std::array<bool, 4> flags{};  // indexed by PatternFlag

    bool has_flag(PatternFlag f) const { return flags[static_cast<std::size_t>(f)]; }
};

inline std::vector<PatternReport> mine_patterns(const TripleStore& store, const MiningConfig& cfg,
                                                unsigned threads = 1) {
    const std::size_t n_rel = store.num_relations();
    std::vector<PatternReport> reports(n_rel);
    auto inverse = detect_inverse(store, cfg, threads);
    auto composite = detect_composite(store, cfg, threads);
    parallel_for(n_rel, threads, [&](std::size_t ri) {
        PatternReport& rep = reports[ri];
        rep.relation = static_cast<RelationId>(ri);
        rep.symmetry = detect_symmetry(store, rep.relation);
        rep.inverse_partners = std::move(inverse[ri]);
        rep.composite_witnesses = std::move(composite[ri]);
        const bool enough = rep.symmetry.total >= cfg.min_support;
        rep.flags[static_cast<std::size_t>(PatternFlag::symmetric)] =
            enough && rep.symmetry.sym_conf() >= cfg.confidence_threshold;
        rep.flags[static_cast<std::size_t>(PatternFlag::antisymmetric)] =
            enough && rep.symmetry.antisym_conf() >= cfg.confidence_threshold;
        rep.flags[static_cast<std::size_t>(PatternFlag::inverse)] = !rep.inverse_partners.empty();
        rep.flags[static_cast<std::size_t>(PatternFlag::composite)] =
            !rep.composite_witnesses.empty();
    });
    return reports;
}

/// Per-flag aggregate: how many relations carry the flag, and the share of
/// distinct triples whose relation does. A multi-flag relation contributes
/// its triples to every flag it carries.
struct PatternDistribution {
    struct FlagShare {
        std::uint64_t relation_count = 0;
        std::uint64_t triple_count = 0;
    };
    std::array<FlagShare, 4> per_flag{};  // indexed by PatternFlag
    std::uint64_t total_distinct_triples = 0;

    double triple_share_percent(PatternFlag f) const {
        const auto& s = per_flag[static_cast<std::size_t>(f)];
        return total_distinct_triples
                   ? 100.0 * static_cast<double>(s.triple_count) /
                         static_cast<double>(total_distinct_triples)
                   : 0.0;
    }
};

inline PatternDistribution pattern_distribution(std::span<const PatternReport> reports,
                                                const TripleStore& store) {
    PatternDistribution dist;
    dist.total_distinct_triples = store.num_distinct_triples();
    for (const PatternReport& rep : reports) {
        const std::uint64_t triples = store.relation_size(rep.relation);
        for (PatternFlag f : kAllPatternFlags) {
            if (rep.has_flag(f)) {
                auto& share = dist.per_flag[static_cast<std::size_t>(f)];
                share.relation_count++;
                share.triple_count += triples;
            }
        }
    }
    return dist;
}

}  // namespace kgprof
