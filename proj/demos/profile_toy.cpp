// Builds a small in-memory graph and walks through the analysis API:
// summary statistics, cardinality, pattern mining, metapath estimates.

#include <iostream>

#include "kgprof/kgprof.hpp"

int main() {
    using namespace kgprof;

    // A toy geography graph. "borders" is symmetric by construction,
    // "capital_of" / "has_capital" form an inverse pair.
    std::vector<LabeledTriple> triples = {
        {"brazil", "borders", "argentina"},
        {"argentina", "borders", "brazil"},
        {"brazil", "borders", "peru"},
        {"peru", "borders", "brazil"},
        {"brasilia", "capital_of", "brazil"},
        {"buenos_aires", "capital_of", "argentina"},
        {"lima", "capital_of", "peru"},
        {"brazil", "has_capital", "brasilia"},
        {"argentina", "has_capital", "buenos_aires"},
        {"peru", "has_capital", "lima"},
        {"brazil", "member_of", "mercosur"},
        {"argentina", "member_of", "mercosur"},
    };

    const TripleStore store = build_store(triples);
    const GraphSummary summary = summarize(store);
    std::cout << "entities:  " << summary.num_entities << "\n"
              << "relations: " << summary.num_relations << "\n"
              << "triples:   " << summary.num_triples_raw << "\n"
              << "avg degree (in+out): " << format_fixed(summary.avg_degree_total.value(), 2)
              << "\n"
              << "-log10(density):     " << format_fixed(summary.neg_log10_density, 2) << "\n\n";

    MiningConfig cfg;
    cfg.confidence_threshold = 0.95;

    const Vocabulary& vocab = store.vocabulary();
    const auto cardinality = classify_cardinality(store, cfg);
    const auto patterns = mine_patterns(store, cfg);
    for (RelationId r = 0; r < store.num_relations(); ++r) {
        std::cout << vocab.relation_label(r) << ": " << to_string(cardinality[r]);
        for (PatternFlag f : kAllPatternFlags)
            if (patterns[r].has_flag(f)) std::cout << " [" << to_string(f) << "]";
        for (const InversePartner& p : patterns[r].inverse_partners)
            std::cout << " inverse-of=" << vocab.relation_label(p.partner);
        std::cout << "\n";
    }

    MetapathConfig mp;
    mp.num_samples = 3;
    mp.seed = 7;
    const MetapathEstimate est = estimate_metapaths(store, mp);
    std::cout << "\nmetapath walk counts (sampled starts:";
    for (EntityId e : est.sampled_entities) std::cout << " " << vocab.entity_label(e);
    std::cout << ")\n";
    for (std::size_t li = 0; li < est.lengths.size(); ++li) {
        std::cout << "  length " << est.lengths[li] << ": mean "
                  << format_fixed(est.mean_for_length(li), 2) << "\n";
    }
    return 0;
}
