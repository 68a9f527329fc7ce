#pragma once

#include <stdexcept>
#include <string>

namespace polarlab {

// Bad sizes, out-of-range indices, inconsistent parameters.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Decoder / experiment configuration rejected before any work is done.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration refused because it would exceed the configured budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace polarlab
