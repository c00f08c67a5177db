#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace supercon {

// Machine-readable failure categories. Recoverable per-record problems
// (formula parse issues) are values, not exceptions; see formula.hpp.
enum class ErrorKind {
    UnknownElement,      // symbol missing from the property table
    OutOfRangeElement,   // atomic number beyond table coverage
    NonPositiveProperty, // property value must be > 0 for the requested stat
    BadSchema,           // required column missing or malformed header
    MissingValue,        // cell empty or not a number where one is required
    FileFormat,          // file exists but cannot be understood
    Io,                  // file missing / unreadable / unwritable
    InvalidParams,       // hyperparameter outside its documented range
    NonFiniteInput,      // NaN or infinity where finite values are required
    DimensionMismatch,   // feature vector length differs from the model
    DegenerateLeaf,      // leaf weight undefined (hess + lambda == 0)
    NoSplits,            // importance requested but no tree ever split
    InsufficientRows,    // fewer rows than a well-posed fit needs
    TooFewRows,          // holdout split would leave an empty side
    InvalidGrid,         // grid file malformed or an axis empty
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace supercon
