#pragma once

#include <stdexcept>
#include <string>

namespace volquint {

// Bad or inconsistent input data (CSV parse failures, constraint violations).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A model fit could not be produced (rank deficiency, non-convergence,
// insufficient history where no fallback is allowed).
struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid run configuration (bad key, out-of-range value, malformed session).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace volquint
