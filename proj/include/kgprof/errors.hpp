#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgprof {

/// Base class for all kgprof errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a store would be built from zero triples.
class EmptyDatasetError : public Error {
public:
    EmptyDatasetError() : Error("dataset contains no triples") {}
};

/// Thrown when an entity or relation id is out of range for a store.
class InvalidIdError : public Error {
public:
    explicit InvalidIdError(const std::string& what) : Error(what) {}
};

enum class ParseErrorKind {
    wrong_arity,
    empty_field,
    encoding,
};

inline const char* to_string(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::wrong_arity: return "wrong_arity";
        case ParseErrorKind::empty_field: return "empty_field";
        case ParseErrorKind::encoding: return "encoding";
    }
    return "unknown";
}

/// Malformed triple file. Carries the file path and the 1-based physical
/// line number of the offending line; parsing stops at the first error.
class ParseFileError : public Error {
public:
    ParseFileError(std::string path, std::size_t line_number, ParseErrorKind kind)
        : Error(path + ":" + std::to_string(line_number) + ": " + to_string(kind)),
          path_(std::move(path)),
          line_number_(line_number),
          kind_(kind) {}

    const std::string& path() const { return path_; }
    std::size_t line_number() const { return line_number_; }
    ParseErrorKind kind() const { return kind_; }

private:
    std::string path_;
    std::size_t line_number_;
    ParseErrorKind kind_;
};

/// File could not be opened or read.
class IoError : public Error {
public:
    explicit IoError(const std::string& path, const std::string& detail)
        : Error(path + ": " + detail), path_(path) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// A split required by an operation (train/test for the leakage audit) is absent.
class MissingSplitError : public Error {
public:
    explicit MissingSplitError(const std::string& split)
        : Error("required split is empty or missing: " + split) {}
};

}  // namespace kgprof
