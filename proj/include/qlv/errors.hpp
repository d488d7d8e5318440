#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different ambient spaces.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that violates a semantic constraint (unknown gate, wire
/// out of range, non-unitary matrix, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed concrete syntax. `offset` is the 0-based character offset in the
/// parsed text; `line` and `column` are 1-based.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t offset, std::size_t line, std::size_t column,
               std::vector<std::string> expected = {});

    const std::string& message() const { return message_; }
    std::size_t offset() const { return offset_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::string message_;
    std::size_t offset_;
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

}  // namespace qlv
