#pragma once

#include <zlib.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kgprof/errors.hpp"
#include "kgprof/store.hpp"

namespace kgprof {

namespace detail {

// Table-driven UTF-8 well-formedness check (RFC 3629 ranges, rejects
// overlongs and surrogates).
inline bool is_valid_utf8(std::string_view s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len;
        unsigned char lo = 0x80, hi = 0xBF;
        if (c >= 0xC2 && c <= 0xDF) {
            len = 2;
        } else if (c == 0xE0) {
            len = 3;
            lo = 0xA0;
        } else if (c >= 0xE1 && c <= 0xEC) {
            len = 3;
        } else if (c == 0xED) {
            len = 3;
            hi = 0x9F;
        } else if (c >= 0xEE && c <= 0xEF) {
            len = 3;
        } else if (c == 0xF0) {
            len = 4;
            lo = 0x90;
        } else if (c >= 0xF1 && c <= 0xF3) {
            len = 4;
        } else if (c == 0xF4) {
            len = 4;
            hi = 0x8F;
        } else {
            return false;
        }
        if (i + len > n) return false;
        unsigned char c1 = static_cast<unsigned char>(s[i + 1]);
        if (c1 < lo || c1 > hi) return false;
        for (std::size_t k = 2; k < len; ++k) {
            unsigned char ck = static_cast<unsigned char>(s[i + k]);
            if (ck < 0x80 || ck > 0xBF) return false;
        }
        i += len;
    }
    return true;
}

}  // namespace detail

/// Parses strict 3-column TSV: one `head<TAB>relation<TAB>tail` triple per
/// non-empty line, LF or CRLF endings, byte-exact labels (no Unicode
/// normalization, no comment syntax). Blank lines are skipped. The first
/// malformed line aborts the parse with a ParseFileError carrying the
/// 1-based physical line number.
inline std::vector<LabeledTriple> parse_tsv(std::string_view text, Split split,
                                            std::string_view path = "<memory>") {
    std::vector<LabeledTriple> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        ++line_no;
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos) ? text.substr(pos)
                                                                : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        if (!detail::is_valid_utf8(line))
            throw ParseFileError(std::string(path), line_no, ParseErrorKind::encoding);

        const std::size_t t1 = line.find('\t');
        if (t1 == std::string_view::npos)
            throw ParseFileError(std::string(path), line_no, ParseErrorKind::wrong_arity);
        const std::size_t t2 = line.find('\t', t1 + 1);
        if (t2 == std::string_view::npos)
            throw ParseFileError(std::string(path), line_no, ParseErrorKind::wrong_arity);
        if (line.find('\t', t2 + 1) != std::string_view::npos)
            throw ParseFileError(std::string(path), line_no, ParseErrorKind::wrong_arity);

        std::string_view head = line.substr(0, t1);
        std::string_view relation = line.substr(t1 + 1, t2 - t1 - 1);
        std::string_view tail = line.substr(t2 + 1);
        if (head.empty() || relation.empty() || tail.empty())
            throw ParseFileError(std::string(path), line_no, ParseErrorKind::empty_field);

        out.push_back({std::string(head), std::string(relation), std::string(tail), split});
    }
    return out;
}

/// Reads a whole file into memory; ".gz" files are transparently inflated.
inline std::string read_file(const std::string& path) {
    if (path.size() > 3 && path.ends_with(".gz")) {
        gzFile gz = gzopen(path.c_str(), "rb");
        if (!gz) throw IoError(path, "cannot open");
        std::string content;
        char buf[1 << 16];
        int n;
        while ((n = gzread(gz, buf, sizeof buf)) > 0) content.append(buf, static_cast<std::size_t>(n));
        const bool bad = n < 0;
        gzclose(gz);
        if (bad) throw IoError(path, "gzip decompression failed");
        return content;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError(path, "read failed");
    return ss.str();
}

/// A dataset manifest: a name plus per-split triple files.
struct DatasetManifest {
    std::string name;
    std::vector<std::pair<std::string, Split>> files;  // (path, split)
};

/// Parses the key-value manifest format:
///
///   name  = Nations
///   format = tsv
///   train = nations/train.txt
///   valid = nations/valid.txt
///   test  = nations/test.txt
///
/// `unsplit = path` may repeat; train/valid/test may appear at most once.
/// Relative paths are resolved against the manifest's directory. Blank
/// lines and lines starting with '#' are ignored.
inline DatasetManifest parse_manifest(const std::string& path) {
    const std::string text = read_file(path);
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    DatasetManifest m;
    bool saw_train = false, saw_valid = false, saw_test = false;
    std::size_t line_no = 0;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        return s;
    };
    auto resolve = [&](std::string_view p) {
        std::filesystem::path fp{std::string(p)};
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        const std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw IoError(path, "manifest line " + std::to_string(line_no) + ": expected key = value");
        std::string_view key = trim(sv.substr(0, eq));
        std::string_view value = trim(sv.substr(eq + 1));
        if (value.empty())
            throw IoError(path, "manifest line " + std::to_string(line_no) + ": empty value");
        if (key == "name") {
            m.name = std::string(value);
        } else if (key == "format") {
            if (value != "tsv")
                throw IoError(path, "unsupported format: " + std::string(value));
        } else if (key == "train" || key == "valid" || key == "test") {
            bool& seen = key == "train" ? saw_train : key == "valid" ? saw_valid : saw_test;
            if (seen)
                throw IoError(path, "manifest line " + std::to_string(line_no) + ": duplicate split " +
                                        std::string(key));
            seen = true;
            m.files.emplace_back(resolve(value), *split_from_string(key));
        } else if (key == "unsplit" || key == "file") {
            m.files.emplace_back(resolve(value), Split::unsplit);
        } else {
            throw IoError(path, "manifest line " + std::to_string(line_no) + ": unknown key " +
                                    std::string(key));
        }
    }
    if (m.files.empty()) throw IoError(path, "manifest lists no files");
    if (m.name.empty()) m.name = std::filesystem::path(path).stem().string();
    return m;
}

/// Loads and merges every file of a manifest into one store. Merge order is
/// the manifest order, so id assignment and all downstream reports are
/// deterministic for a fixed manifest.
inline TripleStore load_dataset(const DatasetManifest& manifest) {
    std::vector<LabeledTriple> all;
    for (const auto& [path, split] : manifest.files) {
        const std::string content = read_file(path);
        std::vector<LabeledTriple> triples = parse_tsv(content, split, path);
        all.insert(all.end(), std::make_move_iterator(triples.begin()),
                   std::make_move_iterator(triples.end()));
    }
    return build_store(all);
}

/// Writes triples as TSV (LF endings), in the given order.
inline void write_tsv(const std::string& path, std::span<const LabeledTriple> triples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    for (const LabeledTriple& t : triples)
        out << t.head << '\t' << t.relation << '\t' << t.tail << '\n';
    if (!out) throw IoError(path, "write failed");
}

}  // namespace kgprof
