#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "kgprof/patterns.hpp"
#include "kgprof/store.hpp"

namespace kgprof {

enum class LeakCause : std::uint8_t { symmetric_self, inverse_partner };

inline const char* to_string(LeakCause c) {
    return c == LeakCause::symmetric_self ? "symmetric_self" : "inverse_partner";
}

/// One leaked held-out triple: its reverse is reachable in train, either
/// through the triple's own (symmetric-flagged) relation or through a mined
/// inverse partner. All ids refer to the audited store's vocabulary and the
/// witness is always a train triple.
struct Leak {
    Triple test_triple;
    LeakCause cause;
    RelationId partner;  // witness relation; equals test_triple.relation for symmetric_self
    Triple witness;
};

/// An inverse pair mined on the train split and consulted by the audit.
struct InversePairUsed {
    RelationId relation;
    RelationId partner;
    std::uint64_t covered = 0;
    std::uint64_t total = 0;

    double confidence() const {
        return total ? static_cast<double>(covered) / static_cast<double>(total) : 0.0;
    }
};

/// Audit of one held-out split against train.
struct SplitAudit {
    Split split = Split::test;
    std::uint64_t total_triples = 0;  // distinct triples in the split
    std::vector<Leak> leaks;

    double leakage_rate() const {
        return total_triples
                   ? static_cast<double>(leaks.size()) / static_cast<double>(total_triples)
                   : 0.0;
    }
};

struct LeakageReport {
    SplitAudit test;
    std::optional<SplitAudit> valid;             // present when the store has a valid split
    std::vector<InversePairUsed> inverse_pairs;  // sorted by (relation, partner)
    std::vector<RelationId> symmetric_relations; // train-flagged, ascending
};

namespace detail {

// Maps ids of `from` into ids of `to` by label; absent labels map to the
// sentinel ~0.
struct IdBridge {
    std::vector<EntityId> entity;
    std::vector<RelationId> relation;
    static constexpr std::uint32_t kNone = ~std::uint32_t{0};

    IdBridge(const Vocabulary& from, const Vocabulary& to) {
        entity.assign(from.num_entities(), kNone);
        for (EntityId e = 0; e < from.num_entities(); ++e)
            if (auto id = to.entity_id(from.entity_label(e))) entity[e] = *id;
        relation.assign(from.num_relations(), kNone);
        for (RelationId r = 0; r < from.num_relations(); ++r)
            if (auto id = to.relation_id(from.relation_label(r))) relation[r] = *id;
    }
};

}  // namespace detail

/// Mines symmetric flags and inverse partners on the train split only, then
/// reports every test (and valid) triple whose reverse is present in train
/// under a flagged relation. Mining on train only mirrors what a trained
/// model could actually exploit; mining on merged splits would let held-out
/// triples certify their own inverses.
inline LeakageReport audit_splits(const TripleStore& store, const MiningConfig& cfg) {
    const std::vector<LabeledTriple> train_labeled = split_triples(store, Split::train);
    if (train_labeled.empty()) throw MissingSplitError("train");
    bool has_test = false, has_valid = false;
    for (std::size_t i = 0; i < store.num_distinct_triples(); ++i) {
        has_test = has_test || store.in_split(i, Split::test);
        has_valid = has_valid || store.in_split(i, Split::valid);
    }
    if (!has_test) throw MissingSplitError("test");

    const TripleStore train = build_store(train_labeled);
    const detail::IdBridge full_to_train(store.vocabulary(), train.vocabulary());
    const detail::IdBridge train_to_full(train.vocabulary(), store.vocabulary());

    // Train-side mining.
    std::vector<bool> symmetric_flag(train.num_relations(), false);
    for (RelationId r = 0; r < train.num_relations(); ++r) {
        const SymmetryScore s = detect_symmetry(train, r);
        symmetric_flag[r] =
            s.total >= cfg.min_support && s.sym_conf() >= cfg.confidence_threshold;
    }
    const auto inverse = detect_inverse(train, cfg);

    LeakageReport report;
    for (RelationId r = 0; r < train.num_relations(); ++r) {
        if (symmetric_flag[r]) report.symmetric_relations.push_back(train_to_full.relation[r]);
        for (const InversePartner& p : inverse[r])
            report.inverse_pairs.push_back({train_to_full.relation[r],
                                            train_to_full.relation[p.partner], p.covered,
                                            p.total});
    }
    std::sort(report.symmetric_relations.begin(), report.symmetric_relations.end());
    std::sort(report.inverse_pairs.begin(), report.inverse_pairs.end(),
              [](const InversePairUsed& a, const InversePairUsed& b) {
                  if (a.relation != b.relation) return a.relation < b.relation;
                  return a.partner < b.partner;
              });

    auto audit_one = [&](Split split) {
        SplitAudit audit;
        audit.split = split;
        const auto& triples = store.triples();
        for (std::size_t i = 0; i < triples.size(); ++i) {
            if (!store.in_split(i, split)) continue;
            audit.total_triples++;
            const Triple t = triples[i];
            const EntityId th = full_to_train.entity[t.head];
            const EntityId tt = full_to_train.entity[t.tail];
            const RelationId tr = full_to_train.relation[t.relation];
            if (th == detail::IdBridge::kNone || tt == detail::IdBridge::kNone ||
                tr == detail::IdBridge::kNone)
                continue;
            if (symmetric_flag[tr] && train.contains_unchecked({tt, tr, th})) {
                audit.leaks.push_back({t, LeakCause::symmetric_self, t.relation,
                                       Triple{t.tail, t.relation, t.head}});
                continue;
            }
            for (const InversePartner& p : inverse[tr]) {
                if (train.contains_unchecked({tt, p.partner, th})) {
                    const RelationId partner_full = train_to_full.relation[p.partner];
                    audit.leaks.push_back({t, LeakCause::inverse_partner, partner_full,
                                           Triple{t.tail, partner_full, t.head}});
                    break;
                }
            }
        }
        return audit;
    };

    report.test = audit_one(Split::test);
    if (has_valid) report.valid = audit_one(Split::valid);
    return report;
}

enum class DeleakStrategy : std::uint8_t { drop_test_triples, drop_inverse_relations };

inline const char* to_string(DeleakStrategy s) {
    return s == DeleakStrategy::drop_test_triples ? "drop-test-triples" : "drop-inverse-relations";
}

/// One removed triple with the reason it was removed.
struct RemovalEntry {
    LabeledTriple triple;  // split field identifies the source split
    std::string cause;
};

/// Repaired splits plus the removal manifest and the audit they came from.
/// Split contents are order-normalized (distinct-triple order).
struct DeleakResult {
    std::vector<LabeledTriple> train;
    std::vector<LabeledTriple> valid;
    std::vector<LabeledTriple> test;
    std::vector<RemovalEntry> removals;
    LeakageReport audit;
};

/// Applies a repair strategy:
///  - drop_test_triples removes exactly the audit's leaked held-out triples
///    (test, and valid when audited), nothing else;
///  - drop_inverse_relations removes, for each mined inverse pair, every
///    triple of the lexicographically-later relation label from all splits.
/// Re-auditing the result under the same config reports zero leaks for the
/// causes the chosen strategy addresses, and a second application is a
/// no-op.
inline DeleakResult deleak(const TripleStore& store, DeleakStrategy strategy,
                           const MiningConfig& cfg) {
    DeleakResult result;
    result.audit = audit_splits(store, cfg);
    const Vocabulary& vocab = store.vocabulary();

    auto label_of = [&](const Triple& t) {
        return LabeledTriple{vocab.entity_label(t.head), vocab.relation_label(t.relation),
                             vocab.entity_label(t.tail)};
    };

    if (strategy == DeleakStrategy::drop_test_triples) {
        struct TripleHash {
            std::size_t operator()(const Triple& t) const {
                std::uint64_t k = (static_cast<std::uint64_t>(t.head) << 32) | t.tail;
                k ^= static_cast<std::uint64_t>(t.relation) * 0x9e3779b97f4a7c15ULL;
                return std::hash<std::uint64_t>{}(k);
            }
        };
        std::unordered_set<Triple, TripleHash> dropped_test, dropped_valid;
        auto record = [&](const SplitAudit& audit, auto& dropped) {
            for (const Leak& leak : audit.leaks) {
                dropped.insert(leak.test_triple);
                LabeledTriple lt = label_of(leak.test_triple);
                lt.split = audit.split;
                std::string cause = to_string(leak.cause);
                if (leak.cause == LeakCause::inverse_partner)
                    cause += ":" + vocab.relation_label(leak.partner);
                result.removals.push_back({std::move(lt), std::move(cause)});
            }
        };
        record(result.audit.test, dropped_test);
        if (result.audit.valid) record(*result.audit.valid, dropped_valid);

        const auto& triples = store.triples();
        for (std::size_t i = 0; i < triples.size(); ++i) {
            if (store.in_split(i, Split::train)) {
                LabeledTriple lt = label_of(triples[i]);
                lt.split = Split::train;
                result.train.push_back(std::move(lt));
            }
            if (store.in_split(i, Split::valid) && !dropped_valid.contains(triples[i])) {
                LabeledTriple lt = label_of(triples[i]);
                lt.split = Split::valid;
                result.valid.push_back(std::move(lt));
            }
            if (store.in_split(i, Split::test) && !dropped_test.contains(triples[i])) {
                LabeledTriple lt = label_of(triples[i]);
                lt.split = Split::test;
                result.test.push_back(std::move(lt));
            }
        }
        return result;
    }

    // drop_inverse_relations: keep the lexicographically-earlier label of
    // each mined pair, drop the later one everywhere.
    std::vector<bool> dropped_relation(store.num_relations(), false);
    std::vector<std::string> drop_cause(store.num_relations());
    for (const InversePairUsed& pair : result.audit.inverse_pairs) {
        const std::string& a = vocab.relation_label(pair.relation);
        const std::string& b = vocab.relation_label(pair.partner);
        const RelationId later = a < b ? pair.partner : pair.relation;
        if (!dropped_relation[later]) {
            dropped_relation[later] = true;
            drop_cause[later] = std::string("inverse_pair_dropped:kept=") +
                                (a < b ? a : b);
        }
    }

    const auto& triples = store.triples();
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const bool drop = dropped_relation[triples[i].relation];
        for (Split s : {Split::train, Split::valid, Split::test}) {
            if (!store.in_split(i, s)) continue;
            LabeledTriple lt = label_of(triples[i]);
            lt.split = s;
            if (drop) {
                result.removals.push_back({std::move(lt), drop_cause[triples[i].relation]});
            } else if (s == Split::train) {
                result.train.push_back(std::move(lt));
            } else if (s == Split::valid) {
                result.valid.push_back(std::move(lt));
            } else {
                result.test.push_back(std::move(lt));
            }
        }
    }
    return result;
}

}  // namespace kgprof
