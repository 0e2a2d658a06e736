#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace flowsig {

// Base error carrying a stable machine-readable kind tag. The CLI prints
// errors as "ERROR:<kind>:<detail>" and maps kinds to exit codes, so kind
// strings are part of the external contract.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(detail), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

struct IoError : Error {
    explicit IoError(const std::string& detail) : Error("io", detail) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& detail) : Error("parse", detail) {}
};

struct NoForegroundError : Error {
    explicit NoForegroundError(const std::string& detail)
        : Error("no_foreground", detail) {}
};

struct InvalidIndexError : Error {
    explicit InvalidIndexError(const std::string& detail)
        : Error("invalid_index", detail) {}
};

struct EmptyTableError : Error {
    explicit EmptyTableError(const std::string& detail)
        : Error("empty_table", detail) {}
};

struct InvalidLabelError : Error {
    explicit InvalidLabelError(const std::string& detail)
        : Error("invalid_label", detail) {}
};

struct VersionMismatchError : Error {
    explicit VersionMismatchError(const std::string& detail)
        : Error("version_mismatch", detail) {}
};

struct DegenerateSpecError : Error {
    explicit DegenerateSpecError(const std::string& detail)
        : Error("degenerate_spec", detail) {}
};

}  // namespace flowsig
