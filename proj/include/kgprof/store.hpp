#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgprof/errors.hpp"

namespace kgprof {

// Dense 0-based ids assigned in first-appearance order.
using EntityId = std::uint32_t;
using RelationId = std::uint32_t;

struct Triple {
    EntityId head;
    RelationId relation;
    EntityId tail;

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

enum class Split : std::uint8_t { train, valid, test, unsplit };

constexpr std::uint8_t split_bit(Split s) {
    return static_cast<std::uint8_t>(1u << static_cast<std::uint8_t>(s));
}

inline const char* to_string(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::valid: return "valid";
        case Split::test: return "test";
        case Split::unsplit: return "unsplit";
    }
    return "unsplit";
}

inline std::optional<Split> split_from_string(std::string_view s) {
    if (s == "train") return Split::train;
    if (s == "valid") return Split::valid;
    if (s == "test") return Split::test;
    if (s == "unsplit") return Split::unsplit;
    return std::nullopt;
}

/// A triple as it appears in input files, before dictionary encoding.
struct LabeledTriple {
    std::string head;
    std::string relation;
    std::string tail;
    Split split = Split::unsplit;

    friend bool operator==(const LabeledTriple&, const LabeledTriple&) = default;
};

/// One outgoing edge: (relation, tail). Sorted by relation, then tail.
struct RelationEdge {
    RelationId relation;
    EntityId tail;

    friend auto operator<=>(const RelationEdge&, const RelationEdge&) = default;
};

/// An (entity, entity) pair from a per-relation index.
struct EntityPair {
    EntityId first;
    EntityId second;

    friend auto operator<=>(const EntityPair&, const EntityPair&) = default;
};

/// Bidirectional label <-> id maps. Ids are assigned in first-appearance
/// order (head, then relation, then tail within each input triple), which
/// makes every downstream report deterministic for a fixed input order.
///
/// Lookup keys are string_views into deque-held labels, so the type is
/// movable but not copyable.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(const Vocabulary&) = delete;
    Vocabulary& operator=(const Vocabulary&) = delete;
    Vocabulary(Vocabulary&&) = default;
    Vocabulary& operator=(Vocabulary&&) = default;

    EntityId intern_entity(std::string_view label) {
        return intern(label, entity_labels_, entity_ids_);
    }
    RelationId intern_relation(std::string_view label) {
        return intern(label, relation_labels_, relation_ids_);
    }

    std::optional<EntityId> entity_id(std::string_view label) const {
        auto it = entity_ids_.find(label);
        if (it == entity_ids_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<RelationId> relation_id(std::string_view label) const {
        auto it = relation_ids_.find(label);
        if (it == relation_ids_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& entity_label(EntityId id) const {
        if (id >= entity_labels_.size())
            throw InvalidIdError("entity id out of range: " + std::to_string(id));
        return entity_labels_[id];
    }
    const std::string& relation_label(RelationId id) const {
        if (id >= relation_labels_.size())
            throw InvalidIdError("relation id out of range: " + std::to_string(id));
        return relation_labels_[id];
    }

    std::size_t num_entities() const { return entity_labels_.size(); }
    std::size_t num_relations() const { return relation_labels_.size(); }

private:
    static std::uint32_t intern(std::string_view label, std::deque<std::string>& labels,
                                std::unordered_map<std::string_view, std::uint32_t>& ids) {
        auto it = ids.find(label);
        if (it != ids.end()) return it->second;
        const auto id = static_cast<std::uint32_t>(labels.size());
        labels.emplace_back(label);
        ids.emplace(labels.back(), id);
        return id;
    }

    std::deque<std::string> entity_labels_;
    std::deque<std::string> relation_labels_;
    std::unordered_map<std::string_view, EntityId> entity_ids_;
    std::unordered_map<std::string_view, RelationId> relation_ids_;
};

/// Immutable dictionary-encoded triple store with the indexes every
/// analysis reads: the sorted distinct-triple set, per-relation forward and
/// backward pair lists, a (head, tail) pair index for reversed-pair
/// queries, and per-entity out-adjacency.
///
/// Duplicate input triples are collapsed; raw_triple_count() keeps the
/// input multiplicity (Table-style #T sums split sizes, set-semantics
/// analyses use the distinct set). A triple present in several splits
/// carries all the corresponding split bits.
///
/// Safe for unrestricted concurrent reads once built.
class TripleStore {
public:
    /// Pair-index entry; sorted by (head, tail, relation).
    struct PairKey {
        EntityId head;
        EntityId tail;
        RelationId relation;

        friend auto operator<=>(const PairKey&, const PairKey&) = default;
    };

    TripleStore(const TripleStore&) = delete;
    TripleStore& operator=(const TripleStore&) = delete;
    TripleStore(TripleStore&&) = default;
    TripleStore& operator=(TripleStore&&) = default;

    std::size_t num_entities() const { return vocab_.num_entities(); }
    std::size_t num_relations() const { return vocab_.num_relations(); }
    std::size_t num_distinct_triples() const { return triples_.size(); }
    std::uint64_t raw_triple_count() const { return raw_count_; }
    const Vocabulary& vocabulary() const { return vocab_; }

    /// Distinct triples in lexicographic (head, relation, tail) order.
    const std::vector<Triple>& triples() const { return triples_; }

    /// Split bits of the i-th distinct triple (see split_bit()).
    std::uint8_t split_mask(std::size_t index) const { return split_masks_[index]; }
    bool in_split(std::size_t index, Split s) const {
        return (split_masks_[index] & split_bit(s)) != 0;
    }
    /// True when any input triple carried a tag other than unsplit.
    bool has_split_tags() const { return has_split_tags_; }

    bool contains(const Triple& t) const {
        check_entity(t.head);
        check_relation(t.relation);
        check_entity(t.tail);
        return contains_unchecked(t);
    }

    bool contains_unchecked(const Triple& t) const {
        return std::binary_search(triples_.begin(), triples_.end(), t);
    }

    /// All relations r' with (t, r', h) in the store, ascending.
    std::vector<RelationId> relations_on_reversed_pair(EntityId h, EntityId t) const {
        check_entity(h);
        check_entity(t);
        auto range = pair_range_unchecked(t, h);
        std::vector<RelationId> out;
        out.reserve(range.size());
        for (const PairKey& p : range) out.push_back(p.relation);
        return out;
    }

    /// Triples with the given head and tail, ordered by relation id.
    std::span<const PairKey> pair_range_unchecked(EntityId h, EntityId t) const {
        const PairKey lo{h, t, 0};
        const PairKey hi{h, t, ~RelationId{0}};
        auto first = std::lower_bound(by_pair_.begin(), by_pair_.end(), lo);
        auto last = std::upper_bound(first, by_pair_.end(), hi);
        return {by_pair_.data() + (first - by_pair_.begin()),
                static_cast<std::size_t>(last - first)};
    }

    /// Outgoing (relation, tail) edges of e, sorted; empty for sinks.
    std::span<const RelationEdge> out_neighbors(EntityId e) const {
        check_entity(e);
        return out_neighbors_unchecked(e);
    }
    std::span<const RelationEdge> out_neighbors_unchecked(EntityId e) const {
        return {out_edges_.data() + out_offsets_[e], out_offsets_[e + 1] - out_offsets_[e]};
    }

    /// Per-relation (head, tail) pairs in lexicographic order.
    std::span<const EntityPair> relation_forward(RelationId r) const {
        check_relation(r);
        return {fwd_pairs_.data() + fwd_offsets_[r], fwd_offsets_[r + 1] - fwd_offsets_[r]};
    }
    /// Per-relation (tail, head) pairs in lexicographic order.
    std::span<const EntityPair> relation_backward(RelationId r) const {
        check_relation(r);
        return {bwd_pairs_.data() + bwd_offsets_[r], bwd_offsets_[r + 1] - bwd_offsets_[r]};
    }
    std::uint64_t relation_size(RelationId r) const { return relation_forward(r).size(); }

    std::uint64_t out_degree(EntityId e) const {
        check_entity(e);
        return out_offsets_[e + 1] - out_offsets_[e];
    }
    std::uint64_t in_degree(EntityId e) const {
        check_entity(e);
        return in_degree_[e];
    }
    /// In-degree plus out-degree over distinct triples.
    std::uint64_t degree(EntityId e) const { return in_degree(e) + out_degree(e); }

    void check_entity(EntityId e) const {
        if (e >= vocab_.num_entities())
            throw InvalidIdError("entity id out of range: " + std::to_string(e));
    }
    void check_relation(RelationId r) const {
        if (r >= vocab_.num_relations())
            throw InvalidIdError("relation id out of range: " + std::to_string(r));
    }

private:
    friend TripleStore build_store(std::span<const LabeledTriple> input);

    TripleStore() = default;

    Vocabulary vocab_;
    std::vector<Triple> triples_;
    std::vector<std::uint8_t> split_masks_;
    std::uint64_t raw_count_ = 0;
    bool has_split_tags_ = false;

    std::vector<PairKey> by_pair_;  // sorted by (head, tail, relation)

    std::vector<std::size_t> fwd_offsets_;  // num_relations + 1
    std::vector<EntityPair> fwd_pairs_;     // (head, tail)
    std::vector<std::size_t> bwd_offsets_;
    std::vector<EntityPair> bwd_pairs_;     // (tail, head)

    std::vector<std::size_t> out_offsets_;  // num_entities + 1
    std::vector<RelationEdge> out_edges_;
    std::vector<std::uint32_t> in_degree_;
};

/// Encodes labeled triples into a TripleStore: interns labels in
/// first-appearance order, collapses duplicates (merging split bits) and
/// builds all indexes. Throws EmptyDatasetError on empty input.
inline TripleStore build_store(std::span<const LabeledTriple> input) {
    if (input.empty()) throw EmptyDatasetError();

    TripleStore store;
    std::vector<std::pair<Triple, std::uint8_t>> encoded;
    encoded.reserve(input.size());
    for (const LabeledTriple& lt : input) {
        Triple t;
        t.head = store.vocab_.intern_entity(lt.head);
        t.relation = store.vocab_.intern_relation(lt.relation);
        t.tail = store.vocab_.intern_entity(lt.tail);
        encoded.emplace_back(t, split_bit(lt.split));
        if (lt.split != Split::unsplit) store.has_split_tags_ = true;
    }
    store.raw_count_ = encoded.size();

    std::sort(encoded.begin(), encoded.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    store.triples_.reserve(encoded.size());
    store.split_masks_.reserve(encoded.size());
    for (const auto& [t, mask] : encoded) {
        if (!store.triples_.empty() && store.triples_.back() == t) {
            store.split_masks_.back() |= mask;
        } else {
            store.triples_.push_back(t);
            store.split_masks_.push_back(mask);
        }
    }

    const std::size_t n_ent = store.vocab_.num_entities();
    const std::size_t n_rel = store.vocab_.num_relations();
    const std::size_t n_tri = store.triples_.size();

    store.by_pair_.reserve(n_tri);
    for (const Triple& t : store.triples_)
        store.by_pair_.push_back({t.head, t.tail, t.relation});
    std::sort(store.by_pair_.begin(), store.by_pair_.end());

    // Per-relation pair lists. triples_ is sorted by (h, r, t), so appending
    // in scan order yields (h, t)-sorted forward lists; backward lists need
    // a per-relation sort.
    store.fwd_offsets_.assign(n_rel + 1, 0);
    for (const Triple& t : store.triples_) store.fwd_offsets_[t.relation + 1]++;
    for (std::size_t r = 0; r < n_rel; ++r) store.fwd_offsets_[r + 1] += store.fwd_offsets_[r];
    store.bwd_offsets_ = store.fwd_offsets_;

    store.fwd_pairs_.resize(n_tri);
    store.bwd_pairs_.resize(n_tri);
    {
        std::vector<std::size_t> cursor(store.fwd_offsets_.begin(), store.fwd_offsets_.end() - 1);
        for (const Triple& t : store.triples_) {
            const std::size_t pos = cursor[t.relation]++;
            store.fwd_pairs_[pos] = {t.head, t.tail};
            store.bwd_pairs_[pos] = {t.tail, t.head};
        }
    }
    for (std::size_t r = 0; r < n_rel; ++r) {
        std::sort(store.bwd_pairs_.begin() + static_cast<std::ptrdiff_t>(store.bwd_offsets_[r]),
                  store.bwd_pairs_.begin() + static_cast<std::ptrdiff_t>(store.bwd_offsets_[r + 1]));
    }

    // Out-adjacency CSR; scan order gives (relation, tail)-sorted edges per head.
    store.out_offsets_.assign(n_ent + 1, 0);
    for (const Triple& t : store.triples_) store.out_offsets_[t.head + 1]++;
    for (std::size_t e = 0; e < n_ent; ++e) store.out_offsets_[e + 1] += store.out_offsets_[e];
    store.out_edges_.resize(n_tri);
    {
        std::vector<std::size_t> cursor(store.out_offsets_.begin(), store.out_offsets_.end() - 1);
        for (const Triple& t : store.triples_)
            store.out_edges_[cursor[t.head]++] = {t.relation, t.tail};
    }

    store.in_degree_.assign(n_ent, 0);
    for (const Triple& t : store.triples_) store.in_degree_[t.tail]++;

    return store;
}

/// Decodes the distinct triple set back to labels, one LabeledTriple per
/// (triple, split bit). Re-encoding the result reproduces the same store
/// (up to raw multiplicity).
inline std::vector<LabeledTriple> decode(const TripleStore& store) {
    std::vector<LabeledTriple> out;
    out.reserve(store.num_distinct_triples());
    const Vocabulary& v = store.vocabulary();
    const auto& triples = store.triples();
    for (std::size_t i = 0; i < triples.size(); ++i) {
        for (Split s : {Split::train, Split::valid, Split::test, Split::unsplit}) {
            if (store.in_split(i, s)) {
                out.push_back({v.entity_label(triples[i].head), v.relation_label(triples[i].relation),
                               v.entity_label(triples[i].tail), s});
            }
        }
    }
    return out;
}

/// Labeled triples of one split, in distinct-triple order.
inline std::vector<LabeledTriple> split_triples(const TripleStore& store, Split s) {
    std::vector<LabeledTriple> out;
    const Vocabulary& v = store.vocabulary();
    const auto& triples = store.triples();
    for (std::size_t i = 0; i < triples.size(); ++i) {
        if (store.in_split(i, s)) {
            out.push_back({v.entity_label(triples[i].head), v.relation_label(triples[i].relation),
                           v.entity_label(triples[i].tail), s});
        }
    }
    return out;
}

}  // namespace kgprof
