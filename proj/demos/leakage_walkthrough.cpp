// Plants an inverse-relation leak across train/test splits, audits it,
// then repairs the splits with both strategies.

#include <iostream>

#include "kgprof/kgprof.hpp"

int main() {
    using namespace kgprof;

    // "cites" and "cited_by" are mutual inverses in train. The test triple
    // (paper_c, cited_by, paper_a) is recoverable by reversing the train
    // triple (paper_a, cites, paper_c): a leak.
    std::vector<LabeledTriple> triples = {
        {"paper_a", "cites", "paper_b", Split::train},
        {"paper_b", "cited_by", "paper_a", Split::train},
        {"paper_a", "cites", "paper_c", Split::train},
        {"paper_d", "cites", "paper_b", Split::train},
        {"paper_b", "cited_by", "paper_d", Split::train},
        {"paper_c", "cited_by", "paper_a", Split::test},
        {"paper_d", "cites", "paper_e", Split::test},
    };

    const TripleStore store = build_store(triples);
    const Vocabulary& vocab = store.vocabulary();
    MiningConfig cfg;
    cfg.confidence_threshold = 0.9;

    const LeakageReport report = audit_splits(store, cfg);
    std::cout << "test triples: " << report.test.total_triples << ", leaks: "
              << report.test.leaks.size() << " (rate "
              << format_fixed(report.test.leakage_rate(), 4) << ")\n";
    for (const Leak& leak : report.test.leaks) {
        std::cout << "  (" << vocab.entity_label(leak.test_triple.head) << ", "
                  << vocab.relation_label(leak.test_triple.relation) << ", "
                  << vocab.entity_label(leak.test_triple.tail) << ") leaked via "
                  << to_string(leak.cause) << " through "
                  << vocab.relation_label(leak.partner) << "\n";
    }

    for (DeleakStrategy strategy :
         {DeleakStrategy::drop_test_triples, DeleakStrategy::drop_inverse_relations}) {
        const DeleakResult repaired = deleak(store, strategy, cfg);
        std::cout << "\n" << to_string(strategy) << ": removed " << repaired.removals.size()
                  << " triple(s)\n";
        for (const RemovalEntry& e : repaired.removals) {
            std::cout << "  [" << to_string(e.triple.split) << "] " << e.triple.head << " "
                      << e.triple.relation << " " << e.triple.tail << "  (" << e.cause << ")\n";
        }
    }
    return 0;
}
