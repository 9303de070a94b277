// kgprof: structural profiler for triple-based knowledge graph datasets.
//
// Subcommands:
//   analyze       profile a dataset, write a JSON report (+ CSV sidecars)
//   compare       merge reports into a comparison CSV
//   leakage       audit train/test inverse-relation leakage, optionally repair
//   export-plots  regenerate plot CSVs from existing reports
//
// Exit codes: 0 success, 1 parse/IO/data error, 2 invalid flags.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kgprof/kgprof.hpp"

namespace {

using kgprof::ordered_json;

struct CommonFlags {
    double confidence = 0.95;
    std::uint64_t min_support = 1;
    std::uint64_t join_cap = 10'000'000;
    std::vector<unsigned> metapath_lengths = {2, 3, 4};
    unsigned metapath_samples = 3;
    std::uint64_t seed = 42;
    unsigned threads = 1;
};

void add_mining_flags(CLI::App* cmd, CommonFlags* f) {
    cmd->add_option("--confidence", f->confidence, "Rule confidence threshold")
        ->default_val(0.95)
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--min-support", f->min_support, "Minimum rule support (body instances)")
        ->default_val(1);
    cmd->add_option("--join-cap", f->join_cap,
                    "Composite-join path budget before switching to sampling")
        ->default_val(10'000'000)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f->seed, "Seed for all sampling")->default_val(42);
    cmd->add_option("--threads", f->threads, "Worker threads (output is thread-count invariant)")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
}

void add_metapath_flags(CLI::App* cmd, CommonFlags* f) {
    cmd->add_option("--metapath-lengths", f->metapath_lengths,
                    "Walk lengths to count, comma separated")
        ->delimiter(',')
        ->default_str("2,3,4");
    cmd->add_option("--metapath-samples", f->metapath_samples,
                    "Start entities sampled per estimate")
        ->default_val(3)
        ->check(CLI::PositiveNumber);
}

kgprof::ProfileConfig to_config(const CommonFlags& f) {
    kgprof::ProfileConfig cfg;
    cfg.mining.confidence_threshold = f.confidence;
    cfg.mining.min_support = f.min_support;
    cfg.mining.composite_join_cap = f.join_cap;
    cfg.mining.sample_seed = f.seed;
    cfg.metapath.lengths = f.metapath_lengths;
    cfg.metapath.num_samples = f.metapath_samples;
    cfg.metapath.seed = f.seed;
    cfg.threads = f.threads;
    for (unsigned l : f.metapath_lengths) {
        if (l > 4) {
            std::cerr << "warning: metapath length " << l
                      << " can be very slow on dense graphs\n";
        }
    }
    return cfg;
}

/// Split-file flags shared by analyze and leakage. Either a positional
/// manifest or explicit per-split paths.
struct InputFlags {
    std::string manifest_path;
    std::string input;  // single unsplit file
    std::string train, valid, test;
    std::string name;
};

void add_input_flags(CLI::App* cmd, InputFlags* in, bool manifest_positional) {
    if (manifest_positional)
        cmd->add_option("manifest", in->manifest_path, "Dataset manifest file");
    cmd->add_option("--input", in->input, "Single triple file (no split tags)");
    cmd->add_option("--train", in->train, "Train split triple file");
    cmd->add_option("--valid", in->valid, "Validation split triple file");
    cmd->add_option("--test", in->test, "Test split triple file");
    cmd->add_option("--name", in->name, "Dataset name (defaults to file stem)");
}

/// Builds the manifest from whichever input style was used. Returns
/// std::nullopt and prints a message when the combination is invalid.
std::optional<kgprof::DatasetManifest> resolve_input(const InputFlags& in) {
    const bool has_files = !in.input.empty() || !in.train.empty() || !in.valid.empty() ||
                           !in.test.empty();
    if (!in.manifest_path.empty() && has_files) {
        std::cerr << "error: pass either a manifest or --input/--train/--valid/--test, not both\n";
        return std::nullopt;
    }
    if (in.manifest_path.empty() && !has_files) {
        std::cerr << "error: no input given; pass a manifest or --input/--train/--valid/--test\n";
        return std::nullopt;
    }
    if (!in.input.empty() && (!in.train.empty() || !in.valid.empty() || !in.test.empty())) {
        std::cerr << "error: --input cannot be combined with split files\n";
        return std::nullopt;
    }
    if (in.train.empty() && (!in.valid.empty() || !in.test.empty())) {
        std::cerr << "error: --valid/--test require --train\n";
        return std::nullopt;
    }

    if (!in.manifest_path.empty()) {
        kgprof::DatasetManifest m = kgprof::parse_manifest(in.manifest_path);
        if (!in.name.empty()) m.name = in.name;
        return m;
    }
    kgprof::DatasetManifest m;
    if (!in.input.empty()) m.files.emplace_back(in.input, kgprof::Split::unsplit);
    if (!in.train.empty()) m.files.emplace_back(in.train, kgprof::Split::train);
    if (!in.valid.empty()) m.files.emplace_back(in.valid, kgprof::Split::valid);
    if (!in.test.empty()) m.files.emplace_back(in.test, kgprof::Split::test);
    m.name = !in.name.empty()
                 ? in.name
                 : std::filesystem::path(m.files.front().first).stem().string();
    return m;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw kgprof::IoError(path, "cannot open for writing");
    out << text;
    if (!out) throw kgprof::IoError(path, "write failed");
}

ordered_json read_report(const std::string& path) {
    const std::string text = kgprof::read_file(path);
    ordered_json j = ordered_json::parse(text);
    if (!j.is_object() || !j.contains("schema_version") || !j.contains("dataset"))
        throw kgprof::IoError(path, "not a kgprof report");
    return j;
}

void emit(const ordered_json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text(out_path, text);
    }
}

// --- analyze ---------------------------------------------------------------

int cmd_analyze(const InputFlags& in, const CommonFlags& flags, const std::string& out_path,
                const std::string& csv_dir) {
    const auto manifest = resolve_input(in);
    if (!manifest) return 2;
    const kgprof::ProfileConfig cfg = to_config(flags);

    kgprof::StageTimer timer;
    const kgprof::TripleStore store = kgprof::load_dataset(*manifest);
    timer.record("load");
    const kgprof::ProfileResult result =
        kgprof::profile_store(store, manifest->name, manifest->files, cfg, &timer);
    const ordered_json report = kgprof::report_to_json(result, store, cfg, &timer);

    emit(report, out_path);
    if (!csv_dir.empty()) kgprof::export_plot_csvs(report, csv_dir);
    return 0;
}

// --- compare ---------------------------------------------------------------

int cmd_compare(const std::vector<std::string>& report_paths, const std::string& out_path,
                const std::vector<std::string>& exclude) {
    std::vector<kgprof::ComparisonRow> rows;
    for (const std::string& path : report_paths) {
        kgprof::ComparisonRow row = kgprof::comparison_row(read_report(path));
        if (std::find(exclude.begin(), exclude.end(), row.dataset) == exclude.end())
            rows.push_back(std::move(row));
    }
    const std::string csv = kgprof::comparison_csv(std::move(rows));
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        write_text(out_path, csv);
    }
    return 0;
}

// --- leakage ---------------------------------------------------------------

int cmd_leakage(const InputFlags& in, const CommonFlags& flags, const std::string& out_path,
                const std::string& strategy_name, const std::string& out_dir) {
    const auto manifest = resolve_input(in);
    if (!manifest) return 2;
    if (!strategy_name.empty() && out_dir.empty()) {
        std::cerr << "error: --strategy requires --out-dir for the repaired splits\n";
        return 2;
    }
    const kgprof::ProfileConfig cfg = to_config(flags);

    const kgprof::TripleStore store = kgprof::load_dataset(*manifest);
    const kgprof::LeakageReport audit = kgprof::audit_splits(store, cfg.mining);
    ordered_json report = kgprof::leakage_report_to_json(audit, store, cfg);

    if (!strategy_name.empty()) {
        const kgprof::DeleakStrategy strategy =
            strategy_name == "drop-test-triples" ? kgprof::DeleakStrategy::drop_test_triples
                                                 : kgprof::DeleakStrategy::drop_inverse_relations;
        const kgprof::DeleakResult repaired = kgprof::deleak(store, strategy, cfg.mining);

        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        const fs::path dir(out_dir);
        kgprof::write_tsv((dir / "train.tsv").string(), repaired.train);
        if (!repaired.valid.empty()) kgprof::write_tsv((dir / "valid.tsv").string(), repaired.valid);
        kgprof::write_tsv((dir / "test.tsv").string(), repaired.test);
        kgprof::write_removal_manifest(dir / "removals.tsv", repaired.removals);

        ordered_json rj;
        rj["strategy"] = kgprof::to_string(strategy);
        rj["removal_count"] = repaired.removals.size();
        ordered_json files;
        files["train"] = (dir / "train.tsv").string();
        files["valid"] = repaired.valid.empty() ? ordered_json(nullptr)
                                                : ordered_json((dir / "valid.tsv").string());
        files["test"] = (dir / "test.tsv").string();
        files["removals"] = (dir / "removals.tsv").string();
        rj["files"] = std::move(files);

        // Re-audit the repaired splits so the report carries the outcome.
        std::vector<kgprof::LabeledTriple> all = repaired.train;
        all.insert(all.end(), repaired.valid.begin(), repaired.valid.end());
        all.insert(all.end(), repaired.test.begin(), repaired.test.end());
        if (repaired.test.empty()) {
            rj["residual"] = "test split empty after repair; re-audit skipped";
        } else {
            const kgprof::TripleStore repaired_store = kgprof::build_store(all);
            const kgprof::LeakageReport re = kgprof::audit_splits(repaired_store, cfg.mining);
            ordered_json residual;
            residual["test_leaks"] = re.test.leaks.size();
            residual["valid_leaks"] = re.valid ? ordered_json(re.valid->leaks.size())
                                               : ordered_json(nullptr);
            rj["residual"] = std::move(residual);
        }
        report["repair"] = std::move(rj);
    }

    emit(report, out_path);
    if (!out_path.empty()) {
        // Keep a one-line console summary when the full report went to a file.
        std::cout << "test leaks: " << audit.test.leaks.size() << "/" << audit.test.total_triples
                  << " (rate " << kgprof::format_fixed(audit.test.leakage_rate(), 4) << ")\n";
    }
    return 0;
}

// --- export-plots ----------------------------------------------------------

int cmd_export_plots(const std::vector<std::string>& report_paths, const std::string& csv_dir,
                     const std::vector<std::string>& exclude, bool exclude_top_entity) {
    for (const std::string& path : report_paths) {
        const ordered_json report = read_report(path);
        const std::string name = report.at("dataset").at("name").get<std::string>();
        if (std::find(exclude.begin(), exclude.end(), name) != exclude.end()) continue;
        kgprof::export_plot_csvs(report, csv_dir, exclude_top_entity);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural profiler for knowledge graph triple datasets"};
    app.set_version_flag("--version", std::string(kgprof::kVersion));
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Profile a dataset and write a JSON report");
    InputFlags analyze_in;
    CommonFlags analyze_flags;
    std::string analyze_out, analyze_csv_dir;
    add_input_flags(analyze, &analyze_in, true);
    add_mining_flags(analyze, &analyze_flags);
    add_metapath_flags(analyze, &analyze_flags);
    analyze->add_option("--out", analyze_out, "Report path (default: stdout)");
    analyze->add_option("--csv-dir", analyze_csv_dir, "Also write plot CSVs into this directory");

    // compare
    auto* compare = app.add_subcommand("compare", "Merge reports into a comparison CSV");
    std::vector<std::string> compare_reports, compare_exclude;
    std::string compare_out;
    compare->add_option("reports", compare_reports, "Report JSON files")->required();
    compare->add_option("--out", compare_out, "CSV path (default: stdout)");
    compare->add_option("--exclude-dataset", compare_exclude, "Dataset name to skip (repeatable)");

    // leakage
    auto* leakage = app.add_subcommand("leakage", "Audit held-out splits for inverse leakage");
    InputFlags leakage_in;
    CommonFlags leakage_flags;
    std::string leakage_out, leakage_strategy, leakage_out_dir;
    add_input_flags(leakage, &leakage_in, true);
    add_mining_flags(leakage, &leakage_flags);
    leakage->add_option("--out", leakage_out, "Report path (default: stdout)");
    leakage->add_option("--strategy", leakage_strategy, "Repair strategy")
        ->check(CLI::IsMember({"drop-test-triples", "drop-inverse-relations"}));
    leakage->add_option("--out-dir", leakage_out_dir, "Directory for repaired splits");

    // export-plots
    auto* export_plots =
        app.add_subcommand("export-plots", "Regenerate plot CSVs from existing reports");
    std::vector<std::string> export_reports, export_exclude;
    std::string export_csv_dir = ".";
    bool exclude_top_entity = false;
    export_plots->add_option("reports", export_reports, "Report JSON files")->required();
    export_plots->add_option("--csv-dir", export_csv_dir, "Output directory")->default_str(".");
    export_plots->add_option("--exclude-dataset", export_exclude,
                             "Dataset name to skip (repeatable)");
    export_plots->add_flag("--exclude-top-entity", exclude_top_entity,
                           "Drop one entity from the highest degree bin (hub convention)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help / --version
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) return cmd_analyze(analyze_in, analyze_flags, analyze_out, analyze_csv_dir);
        if (*compare) return cmd_compare(compare_reports, compare_out, compare_exclude);
        if (*leakage)
            return cmd_leakage(leakage_in, leakage_flags, leakage_out, leakage_strategy,
                               leakage_out_dir);
        if (*export_plots)
            return cmd_export_plots(export_reports, export_csv_dir, export_exclude,
                                    exclude_top_entity);
    } catch (const kgprof::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed report: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
