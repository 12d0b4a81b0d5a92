#pragma once

#include <stdexcept>
#include <string>

namespace dpr {

/// Rejected input: malformed file, bad column, inconsistent rows, bad config.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Estimation failure: singular design, non-convergent eigenproblem, no long-run solution.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dpr
