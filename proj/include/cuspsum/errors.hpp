#pragma once

#include <stdexcept>
#include <string>

namespace cuspsum {

// Argument outside a function's supported region (wrong half-plane, X out of
// range, truncation mismatch, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation requested at (or numerically on top of) a pole.
struct pole_error : domain_error {
    using domain_error::domain_error;
};

// Weight / parameter combination the artifact deliberately does not build.
struct unsupported_error : domain_error {
    using domain_error::domain_error;
};

// Request exceeds a runtime policy bound (e.g. exact coefficients past 1e5).
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature refused: integrand failed the decay / honesty checks.
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient cache problems: bad magic, checksum, version, or too short.
struct cache_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cuspsum
