#pragma once

// Shared fixtures and filesystem helpers for the test suites.

#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "kgprof/kgprof.hpp"

namespace kgtest {

using kgprof::LabeledTriple;
using kgprof::Split;

inline std::vector<LabeledTriple> make_triples(
    std::initializer_list<std::array<const char*, 3>> rows, Split split = Split::unsplit) {
    std::vector<LabeledTriple> out;
    for (const auto& row : rows) out.push_back({row[0], row[1], row[2], split});
    return out;
}

inline void append_triples(std::vector<LabeledTriple>& dst,
                           std::initializer_list<std::array<const char*, 3>> rows, Split split) {
    for (const auto& row : rows) dst.push_back({row[0], row[1], row[2], split});
}

/// Planted inverse-pair leak: s is a perfect inverse of r on train, and the
/// test triple (h,s,g) is the reversal of the train triple (g,r,h).
/// Expected audit: exactly one leak, cause inverse_partner via r.
inline std::vector<LabeledTriple> inverse_leak_fixture() {
    std::vector<LabeledTriple> t;
    append_triples(t,
                   {{"a", "r", "b"}, {"c", "r", "d"}, {"b", "s", "a"}, {"d", "s", "c"},
                    {"g", "r", "h"}},
                   Split::train);
    append_triples(t, {{"h", "s", "g"}}, Split::test);
    return t;
}

/// Planted symmetric leak: p reverses 2 of its 3 train triples, so p is
/// symmetric-flagged for thresholds <= 2/3, and the test triple (d,p,c)
/// reverses the train triple (c,p,d).
inline std::vector<LabeledTriple> symmetric_leak_fixture() {
    std::vector<LabeledTriple> t;
    append_triples(t, {{"a", "p", "b"}, {"b", "p", "a"}, {"c", "p", "d"}}, Split::train);
    append_triples(t, {{"d", "p", "c"}}, Split::test);
    return t;
}

/// Splits with no reversal structure at all: audits must report zero leaks
/// and deleak must be the identity.
inline std::vector<LabeledTriple> leak_free_fixture() {
    std::vector<LabeledTriple> t;
    append_triples(t, {{"a", "r", "b"}, {"b", "r", "c"}, {"c", "r", "d"}}, Split::train);
    append_triples(t, {{"d", "r", "e"}}, Split::valid);
    append_triples(t, {{"e", "r", "a"}}, Split::test);
    return t;
}

/// Self-deleting temporary directory.
class TempDir {
public:
    TempDir() {
        const auto base = std::filesystem::temp_directory_path();
        for (int i = 0; i < 10000; ++i) {
            auto candidate = base / ("kgprof_test_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(counter_++));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp dir");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string data_file(const std::string& name) {
    return std::string(KGPROF_TEST_DATA_DIR) + "/" + name;
}

}  // namespace kgtest
