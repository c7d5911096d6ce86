#pragma once

#include <functional>

#include "qrd/linalg.hpp"

namespace qrd::optim {

struct SweepConfig {
    int max_iters = 5000;
    double step_tolerance = 1e-7;
    double initial_step = 0.5;
    double decay = 0.5;
    double min_step = 1e-9;
};

// Minimizes f over isometries of the given shape by hill-climbing coordinate
// moves (row rotations, imaginary rotations, row phases), shrinking the step
// whenever a full sweep stalls. v holds the best point on return.
double sweep_isometry(cmat& v, const std::function<double(const cmat&)>& f,
                      const SweepConfig& cfg);

}
