#pragma once

#include <stdexcept>
#include <string>

namespace qrd {

// Invalid or inconsistent input data: bad dims, non-PSD matrix, parse failure.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested distortion ceiling lies below the channel-feasible minimum.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver exhausted its budget without meeting its certificate.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}
