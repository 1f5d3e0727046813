#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace divcent {

enum class ErrorKind {
    OutOfRangeNode,
    ParseError,
    MissingNode,
    DuplicateNode,
    BadSimplex,
    SinkPresent,
    NonConvergence,
    DegenerateMass,
    WrongK,
    BadParams,
    DegenerateRange,
    TooFewSamples,
    Disconnected,
    NotSymmetric,
    BadK,
    IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit code without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failures remember the 1-based line they occurred on.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace divcent
