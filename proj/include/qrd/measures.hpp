#pragma once

#include <cstdint>

#include "qrd/state.hpp"

namespace qrd {

struct DecompositionSearchConfig {
    int ensemble_size = 0;  // 0 picks rank^2 of the input
    int restarts = 8;
    int max_iters = 5000;
    double step_tolerance = 1e-7;
    std::uint64_t seed = 20260822;
    int stinespring_rank = 0;  // eop environment dim, 0 picks d_E
};

double concurrence_two_qubit(const DensityMatrix& rho_ab);

// Wootters closed form.
double eof_two_qubit(const DensityMatrix& rho_ab);

// Ensemble search over purification isometries; an upper bound on E_F.
double eof_search(const DensityMatrix& rho_ab, const DecompositionSearchConfig& cfg);

// Search over channels E -> E' applied to sigma_BE; an upper bound on E_p.
// Internally sweeps every output dimension up to d_eprime and keeps the best.
double eop_search(const DensityMatrix& rho_ab, int d_eprime,
                  const DecompositionSearchConfig& cfg);

}
