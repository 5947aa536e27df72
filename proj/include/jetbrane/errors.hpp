#pragma once

#include <stdexcept>
#include <string>

namespace jetbrane {

/// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data: unknown ids, out-of-range indices, bad declarations.
struct SchemaError : Error {
    using Error::Error;
};

/// An expression required to be grading-homogeneous is not.
struct GradingError : Error {
    using Error::Error;
};

/// Substitution image does not match the parity of the generator it replaces.
struct SubstitutionError : Error {
    using Error::Error;
};

/// Operator index ranges do not line up.
struct IndexError : Error {
    using Error::Error;
};

/// Missing or inconsistent configuration (e.g. structure operators absent).
struct ConfigError : Error {
    using Error::Error;
};

/// Internal consistency failure: two independent computation routes disagree.
/// Signals an engine bug, never a user error.
struct InternalError : Error {
    using Error::Error;
};

/// Syntax or semantic error in a theory/aux file, with source position.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int col_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
          line(line_),
          column(col_) {}
};

}  // namespace jetbrane
