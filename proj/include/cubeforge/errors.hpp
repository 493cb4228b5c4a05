#pragma once

#include <stdexcept>
#include <string>

namespace cubeforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Index or argument outside the domain of a partial map.
struct DomainError : Error {
    using Error::Error;
};

// A composite A *_i B was requested with d_i^+ A != d_i^- B.
struct CompositionError : Error {
    std::string left_face, right_face;
    CompositionError(const std::string& what, std::string left, std::string right)
        : Error(what), left_face(std::move(left)), right_face(std::move(right)) {}
    explicit CompositionError(const std::string& what) : Error(what) {}
};

struct NotInvertible : Error {
    using Error::Error;
};

struct OracleUnavailable : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct NotInCone : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace cubeforge
