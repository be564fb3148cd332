#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffrad {

/// Base of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimePower : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct SizeTooLarge : Error { using Error::Error; };
struct InvalidRange : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct TrialsExhausted : Error { using Error::Error; };
struct ContainmentFailure : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };
struct HeaderMismatch : Error { using Error::Error; };

/// A proved size relation failed at runtime. Always a bug.
struct AssertionFailure : Error { using Error::Error; };

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace ffrad
