#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "kgprof/leakage.hpp"
#include "kgprof/metapaths.hpp"
#include "kgprof/patterns.hpp"
#include "kgprof/stats.hpp"
#include "kgprof/store.hpp"
#include "kgprof/tsv.hpp"
#include "kgprof/version.hpp"

namespace kgprof {

using ordered_json = nlohmann::ordered_json;

/// Everything cmd_analyze needs beyond the input files. Thread count is
/// deliberately not echoed into reports: output is identical at any
/// parallelism, and echoing it would break that.
struct ProfileConfig {
    MiningConfig mining;
    MetapathConfig metapath;
    unsigned threads = 1;
};

/// Wall-clock stage timings, informational only; excluded from the
/// byte-stability contract.
class StageTimer {
public:
    StageTimer() : last_(std::chrono::steady_clock::now()) {}

    void record(const std::string& stage) {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        stages_.emplace_back(stage, ms);
        last_ = now;
    }

    const std::vector<std::pair<std::string, double>>& stages() const { return stages_; }

private:
    std::chrono::steady_clock::time_point last_;
    std::vector<std::pair<std::string, double>> stages_;
};

namespace detail {

inline ordered_json rational_json(const Rational& r, int places) {
    ordered_json j;
    j["num"] = r.num;
    j["den"] = r.den;
    j["decimal"] = format_fixed(r.value(), places);
    return j;
}

inline ordered_json tool_json() {
    ordered_json j;
    j["name"] = "kgprof";
    j["version"] = std::string(kVersion);
    return j;
}

inline ordered_json config_json(const ProfileConfig& cfg) {
    ordered_json j;
    j["confidence_threshold"] = cfg.mining.confidence_threshold;
    j["min_support"] = cfg.mining.min_support;
    j["composite_join_cap"] = cfg.mining.composite_join_cap;
    j["seed"] = cfg.mining.sample_seed;
    ordered_json lengths = ordered_json::array();
    for (unsigned l : cfg.metapath.lengths) lengths.push_back(l);
    j["metapath_lengths"] = std::move(lengths);
    j["metapath_samples"] = cfg.metapath.num_samples;
    return j;
}

}  // namespace detail

/// All analysis products for one dataset, in id order, ready to serialize.
struct ProfileResult {
    std::string dataset_name;
    std::vector<std::pair<std::string, Split>> files;
    GraphSummary summary;
    DegreeHistogram histogram;
    RelationLoad load;
    std::vector<CardinalityClass> cardinality;
    std::array<std::uint64_t, 4> cardinality_totals{};
    std::vector<PatternReport> patterns;
    PatternDistribution distribution;
    MetapathEstimate metapaths;
};

/// Runs every analysis stage over a built store.
inline ProfileResult profile_store(const TripleStore& store, std::string dataset_name,
                                   std::vector<std::pair<std::string, Split>> files,
                                   const ProfileConfig& cfg, StageTimer* timer = nullptr) {
    ProfileResult r;
    r.dataset_name = std::move(dataset_name);
    r.files = std::move(files);
    r.summary = summarize(store);
    r.histogram = degree_histogram(store);
    r.load = relation_load(store);
    if (timer) timer->record("metrics");
    r.cardinality = classify_cardinality(store, cfg.mining);
    for (CardinalityClass c : r.cardinality)
        r.cardinality_totals[static_cast<std::size_t>(c)]++;
    if (timer) timer->record("cardinality");
    r.patterns = mine_patterns(store, cfg.mining, cfg.threads);
    r.distribution = pattern_distribution(r.patterns, store);
    if (timer) timer->record("patterns");
    r.metapaths = estimate_metapaths(store, cfg.metapath, cfg.threads);
    if (timer) timer->record("metapaths");
    return r;
}

constexpr std::array<CardinalityClass, 4> kAllCardinalityClasses = {
    CardinalityClass::one_to_one, CardinalityClass::one_to_many, CardinalityClass::many_to_one,
    CardinalityClass::many_to_many};

/// Serializes a ProfileResult to the canonical report JSON. Key order is
/// fixed; rationals carry exact numerator/denominator plus a decimal; walk
/// counts are decimal strings (they exceed 2^53 on dense graphs).
inline ordered_json report_to_json(const ProfileResult& r, const TripleStore& store,
                                   const ProfileConfig& cfg,
                                   const StageTimer* timer = nullptr) {
    const Vocabulary& vocab = store.vocabulary();
    ordered_json j;
    j["schema_version"] = 1;
    j["tool"] = detail::tool_json();

    ordered_json dataset;
    dataset["name"] = r.dataset_name;
    ordered_json files = ordered_json::array();
    for (const auto& [path, split] : r.files) {
        ordered_json f;
        f["path"] = path;
        f["split"] = to_string(split);
        files.push_back(std::move(f));
    }
    dataset["files"] = std::move(files);
    j["dataset"] = std::move(dataset);

    j["config"] = detail::config_json(cfg);

    ordered_json summary;
    summary["num_entities"] = r.summary.num_entities;
    summary["num_relations"] = r.summary.num_relations;
    summary["num_triples_raw"] = r.summary.num_triples_raw;
    summary["num_triples_distinct"] = r.summary.num_triples_distinct;
    summary["avg_degree_total"] = detail::rational_json(r.summary.avg_degree_total, 4);
    ordered_json deg_table = detail::rational_json(r.summary.avg_degree_table, 4);
    deg_table["rounded"] = round_half_away(r.summary.avg_degree_table.value());
    summary["avg_degree_table"] = std::move(deg_table);
    ordered_json density;
    density["value"] = r.summary.neg_log10_density;
    density["display"] = format_fixed(r.summary.neg_log10_density, 2);
    summary["neg_log10_density"] = std::move(density);
    j["summary"] = std::move(summary);

    ordered_json hist = ordered_json::array();
    for (const auto& [degree, count] : r.histogram.bins)
        hist.push_back(ordered_json::array({degree, count}));
    j["degree_histogram"] = std::move(hist);

    ordered_json load = ordered_json::array();
    for (const auto& [rel, count] : r.load.counts) {
        ordered_json row;
        row["id"] = rel;
        row["relation"] = vocab.relation_label(rel);
        row["count"] = count;
        load.push_back(std::move(row));
    }
    j["relation_load"] = std::move(load);

    ordered_json card;
    ordered_json card_rows = ordered_json::array();
    for (RelationId rel = 0; rel < r.cardinality.size(); ++rel) {
        ordered_json row;
        row["id"] = rel;
        row["relation"] = vocab.relation_label(rel);
        row["class"] = to_string(r.cardinality[rel]);
        card_rows.push_back(std::move(row));
    }
    card["per_relation"] = std::move(card_rows);
    ordered_json card_totals;
    for (CardinalityClass c : kAllCardinalityClasses)
        card_totals[to_string(c)] = r.cardinality_totals[static_cast<std::size_t>(c)];
    card["totals"] = std::move(card_totals);
    j["cardinality"] = std::move(card);

    ordered_json patterns;
    ordered_json pattern_rows = ordered_json::array();
    for (const PatternReport& rep : r.patterns) {
        ordered_json row;
        row["id"] = rep.relation;
        row["relation"] = vocab.relation_label(rep.relation);
        ordered_json sym;
        sym["reversed_present"] = rep.symmetry.reversed_present;
        sym["total"] = rep.symmetry.total;
        sym["sym_conf"] = rep.symmetry.sym_conf();
        sym["antisym_conf"] = rep.symmetry.antisym_conf();
        row["symmetry"] = std::move(sym);
        ordered_json partners = ordered_json::array();
        for (const InversePartner& p : rep.inverse_partners) {
            ordered_json pj;
            pj["id"] = p.partner;
            pj["relation"] = vocab.relation_label(p.partner);
            pj["covered"] = p.covered;
            pj["total"] = p.total;
            pj["confidence"] = p.confidence();
            partners.push_back(std::move(pj));
        }
        row["inverse_partners"] = std::move(partners);
        ordered_json witnesses = ordered_json::array();
        for (const CompositeWitness& w : rep.composite_witnesses) {
            ordered_json wj;
            wj["first_id"] = w.first;
            wj["first"] = vocab.relation_label(w.first);
            wj["second_id"] = w.second;
            wj["second"] = vocab.relation_label(w.second);
            wj["covered"] = w.covered;
            wj["support"] = w.support;
            wj["confidence"] = w.confidence();
            wj["sampled"] = w.sampled;
            witnesses.push_back(std::move(wj));
        }
        row["composite_witnesses"] = std::move(witnesses);
        ordered_json flags = ordered_json::array();
        for (PatternFlag f : kAllPatternFlags)
            if (rep.has_flag(f)) flags.push_back(to_string(f));
        row["flags"] = std::move(flags);
        pattern_rows.push_back(std::move(row));
    }
    patterns["per_relation"] = std::move(pattern_rows);
    ordered_json dist;
    for (PatternFlag f : kAllPatternFlags) {
        const auto& share = r.distribution.per_flag[static_cast<std::size_t>(f)];
        ordered_json fj;
        fj["relations"] = share.relation_count;
        fj["triples"] = share.triple_count;
        fj["triple_share_percent"] = r.distribution.triple_share_percent(f);
        dist[to_string(f)] = std::move(fj);
    }
    patterns["distribution"] = std::move(dist);
    j["patterns"] = std::move(patterns);

    ordered_json mp;
    ordered_json lengths = ordered_json::array();
    for (unsigned l : r.metapaths.lengths) lengths.push_back(l);
    mp["lengths"] = std::move(lengths);
    ordered_json samples = ordered_json::array();
    for (std::size_t s = 0; s < r.metapaths.sampled_entities.size(); ++s) {
        ordered_json sj;
        sj["entity_id"] = r.metapaths.sampled_entities[s];
        sj["entity"] = vocab.entity_label(r.metapaths.sampled_entities[s]);
        ordered_json counts = ordered_json::array();
        for (const WalkCount& c : r.metapaths.counts[s]) counts.push_back(c.str());
        sj["counts"] = std::move(counts);
        samples.push_back(std::move(sj));
    }
    mp["samples"] = std::move(samples);
    ordered_json means = ordered_json::array();
    for (std::size_t li = 0; li < r.metapaths.lengths.size(); ++li) {
        ordered_json mj;
        mj["length"] = r.metapaths.lengths[li];
        mj["sum"] = r.metapaths.sum_for_length(li).str();
        mj["num_samples"] = r.metapaths.sampled_entities.size();
        mj["mean"] = r.metapaths.mean_for_length(li);
        means.push_back(std::move(mj));
    }
    mp["means"] = std::move(means);
    j["metapaths"] = std::move(mp);

    ordered_json timings = ordered_json::object();
    if (timer)
        for (const auto& [stage, ms] : timer->stages()) timings[stage] = ms;
    j["timings"] = std::move(timings);
    return j;
}

/// Strips the informational timings block; what remains is the
/// byte-stability surface of a report.
inline ordered_json strip_timings(ordered_json report) {
    report.erase("timings");
    return report;
}

// ---------------------------------------------------------------------------
// CSV sidecars (plot-ready data). Layouts are part of the tool contract.

namespace detail {

inline std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    return out;
}

}  // namespace detail

/// degree_histogram.csv: degree,entity_count (ascending degree).
/// When exclude_top_entity is set, one entity is removed from the highest
/// degree bin (the plotting convention for outlier hubs).
inline void write_degree_histogram_csv(const std::filesystem::path& path,
                                       const ordered_json& report,
                                       bool exclude_top_entity = false) {
    auto out = detail::open_csv(path);
    out << "degree,entity_count\n";
    const auto& hist = report.at("degree_histogram");
    const std::size_t skip_last = exclude_top_entity && !hist.empty() ? 1 : 0;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        std::uint64_t count = hist[i][1].get<std::uint64_t>();
        if (skip_last && i + 1 == hist.size() && count > 0) count -= 1;
        if (count > 0) out << hist[i][0].get<std::uint64_t>() << ',' << count << '\n';
    }
}

/// relation_load.csv: rank,relation_id,relation,count (descending count).
inline void write_relation_load_csv(const std::filesystem::path& path,
                                    const ordered_json& report) {
    auto out = detail::open_csv(path);
    out << "rank,relation_id,relation,count\n";
    const auto& load = report.at("relation_load");
    for (std::size_t i = 0; i < load.size(); ++i) {
        out << (i + 1) << ',' << load[i].at("id").get<std::uint64_t>() << ','
            << load[i].at("relation").get<std::string>() << ','
            << load[i].at("count").get<std::uint64_t>() << '\n';
    }
}

/// cardinality_bars.csv: class,relation_count.
inline void write_cardinality_bars_csv(const std::filesystem::path& path,
                                       const ordered_json& report) {
    auto out = detail::open_csv(path);
    out << "class,relation_count\n";
    const auto& totals = report.at("cardinality").at("totals");
    for (CardinalityClass c : kAllCardinalityClasses)
        out << to_string(c) << ',' << totals.at(to_string(c)).get<std::uint64_t>() << '\n';
}

/// pattern_bars.csv: flag,relation_count,triple_share_percent.
inline void write_pattern_bars_csv(const std::filesystem::path& path,
                                   const ordered_json& report) {
    auto out = detail::open_csv(path);
    out << "flag,relation_count,triple_share_percent\n";
    const auto& dist = report.at("patterns").at("distribution");
    for (PatternFlag f : kAllPatternFlags) {
        const auto& fj = dist.at(to_string(f));
        out << to_string(f) << ',' << fj.at("relations").get<std::uint64_t>() << ','
            << format_fixed(fj.at("triple_share_percent").get<double>(), 4) << '\n';
    }
}

/// metapath_means.csv: length,sum,num_samples,mean.
inline void write_metapath_means_csv(const std::filesystem::path& path,
                                     const ordered_json& report) {
    auto out = detail::open_csv(path);
    out << "length,sum,num_samples,mean\n";
    for (const auto& m : report.at("metapaths").at("means")) {
        out << m.at("length").get<std::uint64_t>() << ',' << m.at("sum").get<std::string>() << ','
            << m.at("num_samples").get<std::uint64_t>() << ','
            << format_fixed(m.at("mean").get<double>(), 4) << '\n';
    }
}

/// metapath_samples.csv: sample_index,entity,length,count.
inline void write_metapath_samples_csv(const std::filesystem::path& path,
                                       const ordered_json& report) {
    auto out = detail::open_csv(path);
    out << "sample_index,entity,length,count\n";
    const auto& mp = report.at("metapaths");
    const auto& lengths = mp.at("lengths");
    const auto& samples = mp.at("samples");
    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (std::size_t li = 0; li < lengths.size(); ++li) {
            out << s << ',' << samples[s].at("entity").get<std::string>() << ','
                << lengths[li].get<std::uint64_t>() << ','
                << samples[s].at("counts")[li].get<std::string>() << '\n';
        }
    }
}

/// Writes the full per-dataset CSV bundle under dir, prefixed by the
/// dataset's name.
inline void export_plot_csvs(const ordered_json& report, const std::filesystem::path& dir,
                             bool exclude_top_entity = false) {
    std::filesystem::create_directories(dir);
    const std::string name = report.at("dataset").at("name").get<std::string>();
    write_degree_histogram_csv(dir / (name + "_degree_histogram.csv"), report,
                               exclude_top_entity);
    write_relation_load_csv(dir / (name + "_relation_load.csv"), report);
    write_cardinality_bars_csv(dir / (name + "_cardinality_bars.csv"), report);
    write_pattern_bars_csv(dir / (name + "_pattern_bars.csv"), report);
    write_metapath_means_csv(dir / (name + "_metapath_means.csv"), report);
    write_metapath_samples_csv(dir / (name + "_metapath_samples.csv"), report);
}

// ---------------------------------------------------------------------------
// Multi-dataset comparison (table/scatter source).

/// One comparison row; numeric columns mirror the usual summary table.
struct ComparisonRow {
    std::string dataset;
    std::uint64_t num_entities = 0;
    std::uint64_t num_relations = 0;
    std::uint64_t num_triples = 0;
    long long avg_degree = 0;           // rounded table degree
    double neg_log10_density = 0.0;     // displayed with 2 decimals
    std::string dominant_cardinality;
    std::string dominant_pattern;
};

/// Extracts a comparison row from a report. Dominant cardinality is the
/// class with the most relations; dominant pattern is the flag with the
/// largest triple share. Ties resolve in declaration order.
inline ComparisonRow comparison_row(const ordered_json& report) {
    ComparisonRow row;
    row.dataset = report.at("dataset").at("name").get<std::string>();
    const auto& s = report.at("summary");
    row.num_entities = s.at("num_entities").get<std::uint64_t>();
    row.num_relations = s.at("num_relations").get<std::uint64_t>();
    row.num_triples = s.at("num_triples_raw").get<std::uint64_t>();
    row.avg_degree = s.at("avg_degree_table").at("rounded").get<long long>();
    row.neg_log10_density = s.at("neg_log10_density").at("value").get<double>();

    const auto& totals = report.at("cardinality").at("totals");
    std::uint64_t best_count = 0;
    for (CardinalityClass c : kAllCardinalityClasses) {
        const auto count = totals.at(to_string(c)).get<std::uint64_t>();
        if (count > best_count) {
            best_count = count;
            row.dominant_cardinality = to_string(c);
        }
    }
    const auto& dist = report.at("patterns").at("distribution");
    double best_share = -1.0;
    for (PatternFlag f : kAllPatternFlags) {
        const double share = dist.at(to_string(f)).at("triple_share_percent").get<double>();
        if (share > best_share) {
            best_share = share;
            row.dominant_pattern = to_string(f);
        }
    }
    return row;
}

/// comparison CSV: one row per dataset, sorted by name. Column semantics of
/// the five numeric columns match the summary table.
inline std::string comparison_csv(std::vector<ComparisonRow> rows) {
    std::sort(rows.begin(), rows.end(),
              [](const ComparisonRow& a, const ComparisonRow& b) { return a.dataset < b.dataset; });
    std::string out =
        "dataset,num_entities,num_relations,num_triples,avg_degree,neg_log10_density,"
        "dominant_cardinality,dominant_pattern\n";
    for (const ComparisonRow& r : rows) {
        out += r.dataset;
        out += ',' + std::to_string(r.num_entities);
        out += ',' + std::to_string(r.num_relations);
        out += ',' + std::to_string(r.num_triples);
        out += ',' + std::to_string(r.avg_degree);
        out += ',' + format_fixed(r.neg_log10_density, 2);
        out += ',' + r.dominant_cardinality;
        out += ',' + r.dominant_pattern;
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Leakage report serialization.

inline ordered_json leakage_report_to_json(const LeakageReport& report, const TripleStore& store,
                                           const ProfileConfig& cfg) {
    const Vocabulary& vocab = store.vocabulary();
    auto triple_json = [&](const Triple& t) {
        ordered_json j;
        j["head"] = vocab.entity_label(t.head);
        j["relation"] = vocab.relation_label(t.relation);
        j["tail"] = vocab.entity_label(t.tail);
        return j;
    };
    auto audit_json = [&](const SplitAudit& audit) {
        ordered_json j;
        j["split"] = to_string(audit.split);
        j["total_triples"] = audit.total_triples;
        j["leak_count"] = audit.leaks.size();
        j["leakage_rate"] = audit.leakage_rate();
        j["leakage_rate_display"] = format_fixed(audit.leakage_rate(), 4);
        ordered_json leaks = ordered_json::array();
        for (const Leak& leak : audit.leaks) {
            ordered_json lj;
            lj["triple"] = triple_json(leak.test_triple);
            lj["cause"] = to_string(leak.cause);
            lj["partner"] = vocab.relation_label(leak.partner);
            lj["witness"] = triple_json(leak.witness);
            leaks.push_back(std::move(lj));
        }
        j["leaks"] = std::move(leaks);
        return j;
    };

    ordered_json j;
    j["schema_version"] = 1;
    j["tool"] = detail::tool_json();
    j["config"] = detail::config_json(cfg);
    j["test"] = audit_json(report.test);
    j["valid"] = report.valid ? audit_json(*report.valid) : ordered_json(nullptr);
    ordered_json pairs = ordered_json::array();
    for (const InversePairUsed& p : report.inverse_pairs) {
        ordered_json pj;
        pj["relation"] = vocab.relation_label(p.relation);
        pj["partner"] = vocab.relation_label(p.partner);
        pj["covered"] = p.covered;
        pj["total"] = p.total;
        pj["confidence"] = p.confidence();
        pairs.push_back(std::move(pj));
    }
    j["inverse_pairs"] = std::move(pairs);
    ordered_json syms = ordered_json::array();
    for (RelationId r : report.symmetric_relations) syms.push_back(vocab.relation_label(r));
    j["symmetric_relations"] = std::move(syms);
    return j;
}

/// Removal manifest: split<TAB>head<TAB>relation<TAB>tail<TAB>cause, one
/// removed triple per line.
inline void write_removal_manifest(const std::filesystem::path& path,
                                   std::span<const RemovalEntry> removals) {
    auto out = detail::open_csv(path);
    for (const RemovalEntry& e : removals) {
        out << to_string(e.triple.split) << '\t' << e.triple.head << '\t' << e.triple.relation
            << '\t' << e.triple.tail << '\t' << e.cause << '\n';
    }
}

}  // namespace kgprof
