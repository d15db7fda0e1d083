#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairgdt {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: unreadable files, malformed data, violated preconditions.
/// The CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// A cell that could not be parsed. Row/column are 1-based file positions
/// (the header is row 1).
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t col)
        : InputError(what + " (row " + std::to_string(row) + ", column " + std::to_string(col) + ")"),
          row(row),
          col(col) {}

    std::size_t row;
    std::size_t col;
};

class MissingValueError : public ParseError {
public:
    using ParseError::ParseError;
};

class SchemaError : public InputError {
public:
    using InputError::InputError;
};

class IoError : public InputError {
public:
    using InputError::InputError;
};

class EmptyTableError : public InputError {
public:
    using InputError::InputError;
};

/// One of the two sensitive groups has no rows at all.
class GroupMissingError : public InputError {
public:
    using InputError::InputError;
};

/// Reference set too degenerate to normalize against (e.g. the median
/// real-to-real nearest-neighbor distance is zero).
class DegenerateReferenceError : public InputError {
public:
    using InputError::InputError;
};

/// Broken internal invariant. The CLI maps these to exit code 3.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace fairgdt
