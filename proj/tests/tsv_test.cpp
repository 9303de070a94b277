#include "kgprof/tsv.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "support/fixtures.hpp"

namespace {

using namespace kgprof;

TEST(ParseTsv, ParsesSingleTriple) {
    const auto triples = parse_tsv("brazil\tneighbor\targentina\n", Split::unsplit);
    ASSERT_EQ(triples.size(), 1u);
    EXPECT_EQ(triples[0].head, "brazil");
    EXPECT_EQ(triples[0].relation, "neighbor");
    EXPECT_EQ(triples[0].tail, "argentina");
    EXPECT_EQ(triples[0].split, Split::unsplit);
}

TEST(ParseTsv, StripsTrailingCarriageReturn) {
    const auto triples = parse_tsv("a\tp\tb\r\nc\tq\td\n", Split::train);
    ASSERT_EQ(triples.size(), 2u);
    EXPECT_EQ(triples[0].tail, "b");
    EXPECT_EQ(triples[1].head, "c");
    EXPECT_EQ(triples[1].split, Split::train);
}

TEST(ParseTsv, SkipsBlankLinesButCountsThem) {
    const auto triples = parse_tsv("\na\tp\tb\n\n\nc\tq\td\n", Split::unsplit);
    ASSERT_EQ(triples.size(), 2u);
    try {
        parse_tsv("\n\nbad line\n", Split::unsplit, "f.tsv");
        FAIL() << "expected ParseFileError";
    } catch (const ParseFileError& e) {
        EXPECT_EQ(e.line_number(), 3u);  // physical line, blanks counted
        EXPECT_EQ(e.kind(), ParseErrorKind::wrong_arity);
        EXPECT_EQ(e.path(), "f.tsv");
    }
}

TEST(ParseTsv, MissingFileNotTolerated) { EXPECT_THROW(read_file("/nonexistent/x.tsv"), IoError); }

TEST(ParseTsv, ReportsWrongArity) {
    try {
        parse_tsv("a\tb\n", Split::unsplit, "two.tsv");
        FAIL() << "expected ParseFileError";
    } catch (const ParseFileError& e) {
        EXPECT_EQ(e.kind(), ParseErrorKind::wrong_arity);
        EXPECT_EQ(e.line_number(), 1u);
        EXPECT_NE(std::string(e.what()).find("two.tsv:1:"), std::string::npos);
    }
    EXPECT_THROW(parse_tsv("a\tp\tb\tc\n", Split::unsplit), ParseFileError);
}

TEST(ParseTsv, ReportsEmptyField) {
    try {
        parse_tsv("a\tp\tb\nx\t\tz\n", Split::unsplit);
        FAIL() << "expected ParseFileError";
    } catch (const ParseFileError& e) {
        EXPECT_EQ(e.kind(), ParseErrorKind::empty_field);
        EXPECT_EQ(e.line_number(), 2u);
    }
}

TEST(ParseTsv, ReportsInvalidUtf8) {
    try {
        parse_tsv("ok\tp\tok\n\xff" "bad\tp\tx\n", Split::unsplit);
        FAIL() << "expected ParseFileError";
    } catch (const ParseFileError& e) {
        EXPECT_EQ(e.kind(), ParseErrorKind::encoding);
        EXPECT_EQ(e.line_number(), 2u);
    }
    // Overlong encodings and lone surrogates are rejected too.
    EXPECT_THROW(parse_tsv("\xc0\xaf\tp\tb\n", Split::unsplit), ParseFileError);
    EXPECT_THROW(parse_tsv("\xed\xa0\x80\tp\tb\n", Split::unsplit), ParseFileError);
    // Multi-byte UTF-8 is fine.
    EXPECT_EQ(parse_tsv("\xc3\xa9l\xc3\xa9phant\tp\t\xe2\x82\xac\n", Split::unsplit).size(), 1u);
}

TEST(ReadFile, DecompressesGzipTransparently) {
    const std::string plain = read_file(kgtest::data_file("tiny.tsv"));
    const std::string gz = read_file(kgtest::data_file("tiny_gz.tsv.gz"));
    EXPECT_EQ(plain, gz);
    EXPECT_EQ(parse_tsv(gz, Split::unsplit).size(), 3u);
}

TEST(Manifest, ParsesSplitsAndResolvesRelativePaths) {
    const DatasetManifest m = parse_manifest(kgtest::data_file("inverse_leak/manifest.txt"));
    EXPECT_EQ(m.name, "inverse_leak");
    ASSERT_EQ(m.files.size(), 2u);
    EXPECT_EQ(m.files[0].second, Split::train);
    EXPECT_EQ(m.files[1].second, Split::test);
    // Relative paths resolved against the manifest directory.
    EXPECT_NE(m.files[0].first.find("inverse_leak/"), std::string::npos);
    const TripleStore store = load_dataset(m);
    EXPECT_EQ(store.raw_triple_count(), 6u);
}

TEST(Manifest, NameDefaultsToFileStem) {
    kgtest::TempDir dir;
    kgtest::write_file(dir.file("somedata.manifest"), "unsplit = t.tsv\n");
    kgtest::write_file(dir.file("t.tsv"), "a\tp\tb\n");
    EXPECT_EQ(parse_manifest(dir.file("somedata.manifest")).name, "somedata");
}

TEST(Manifest, RejectsBadInput) {
    kgtest::TempDir dir;
    kgtest::write_file(dir.file("dup.txt"), "train = a.tsv\ntrain = b.tsv\n");
    EXPECT_THROW(parse_manifest(dir.file("dup.txt")), IoError);
    kgtest::write_file(dir.file("unknown.txt"), "bogus = a.tsv\n");
    EXPECT_THROW(parse_manifest(dir.file("unknown.txt")), IoError);
    kgtest::write_file(dir.file("noeq.txt"), "train a.tsv\n");
    EXPECT_THROW(parse_manifest(dir.file("noeq.txt")), IoError);
    kgtest::write_file(dir.file("empty.txt"), "# nothing\n");
    EXPECT_THROW(parse_manifest(dir.file("empty.txt")), IoError);
    kgtest::write_file(dir.file("badformat.txt"), "format = xml\nunsplit = a.tsv\n");
    EXPECT_THROW(parse_manifest(dir.file("badformat.txt")), IoError);
}

TEST(Manifest, CommentsAndBlankLinesIgnored) {
    kgtest::TempDir dir;
    kgtest::write_file(dir.file("m.txt"), "# comment\n\nname = x\n  format = tsv  \nfile = t.tsv\n");
    kgtest::write_file(dir.file("t.tsv"), "a\tp\tb\n");
    const DatasetManifest m = parse_manifest(dir.file("m.txt"));
    EXPECT_EQ(m.name, "x");
    ASSERT_EQ(m.files.size(), 1u);
    EXPECT_EQ(m.files[0].second, Split::unsplit);
}

TEST(LoadDataset, MergesFilesInManifestOrder) {
    kgtest::TempDir dir;
    kgtest::write_file(dir.file("first.tsv"), "x\tp\ty\n");
    kgtest::write_file(dir.file("second.tsv"), "a\tp\tb\n");
    kgtest::write_file(dir.file("m.txt"), "unsplit = first.tsv\nunsplit = second.tsv\n");
    const TripleStore store = load_dataset(parse_manifest(dir.file("m.txt")));
    // First-appearance ids follow the manifest order: x before a.
    EXPECT_EQ(store.vocabulary().entity_label(0), "x");
    EXPECT_EQ(store.vocabulary().entity_label(2), "a");
}

TEST(LoadDataset, PropagatesParseErrorsWithPath) {
    kgtest::TempDir dir;
    kgtest::write_file(dir.file("m.txt"), "unsplit = bad.tsv\n");
    kgtest::write_file(dir.file("bad.tsv"), "only\ttwo\n");
    try {
        load_dataset(parse_manifest(dir.file("m.txt")));
        FAIL() << "expected ParseFileError";
    } catch (const ParseFileError& e) {
        EXPECT_NE(std::string(e.what()).find("bad.tsv"), std::string::npos);
    }
}

TEST(WriteTsv, RoundTripsDistinctTripleSet) {
    const DatasetManifest m = parse_manifest(kgtest::data_file("tiny_manifest.txt"));
    const TripleStore store = load_dataset(m);

    kgtest::TempDir dir;
    const auto decoded = decode(store);
    write_tsv(dir.file("out.tsv"), decoded);
    const auto reparsed = parse_tsv(read_file(dir.file("out.tsv")), Split::unsplit);

    auto as_set = [](const std::vector<LabeledTriple>& ts) {
        std::set<std::tuple<std::string, std::string, std::string>> s;
        for (const auto& t : ts) s.emplace(t.head, t.relation, t.tail);
        return s;
    };
    EXPECT_EQ(as_set(reparsed), as_set(decoded));
    EXPECT_EQ(reparsed.size(), store.num_distinct_triples());
}

}  // namespace
