#pragma once

#include <stdexcept>
#include <string>

namespace gaussmax {

// Validation errors (bad arguments, inconsistent configuration).
struct InvalidAlpha : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct HorizonTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RegimeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptySample : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Runtime errors (numerical failures during execution).
struct OscillatingLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmbeddingNotPSD : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidConstants : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gaussmax
