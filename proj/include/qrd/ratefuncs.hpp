#pragma once

#include <cstdint>
#include <vector>

#include "qrd/channel.hpp"
#include "qrd/distortion.hpp"
#include "qrd/measures.hpp"
#include "qrd/state.hpp"

namespace qrd {

enum class RateTag { closed_form, optimized, upper_bound };

struct RatePoint {
    double d;
    double rate;
    RateTag tag;
};

struct RateCurve {
    std::vector<RatePoint> points;
    bool convexified = false;
};

const char* rate_tag_name(RateTag tag);

struct EaOptimizerOptions {
    double gap_tolerance = 1e-4;
    int max_iters = 20000;
    double lambda_max = 0.0;  // 0 picks the heuristic bracket
    int bisection_cap = 60;
    std::uint64_t seed = 20260822;
};

struct OptimizerResult {
    double rate;
    QuantumChannel channel;
    double lambda;
    int iterations;
    double kkt_residual;  // duality gap plus feasibility slack
    double lower_bound;
    bool converged;
};

double ea_isotropic_closed_form(double d);
double cl_isotropic_closed_form(double d);

// Convex program of the entanglement-assisted rate at distortion ceiling D,
// with a two-sided certificate (feasible upper bound, dual lower bound).
OptimizerResult ea_rate_optimize(const DensityMatrix& rho,
                                 const DistortionObservable& delta, double d_ceiling,
                                 const EaOptimizerOptions& opts = {});

// Same engine with the side-information objective I(R;B'|B)/2 on the
// tripartite purification of rho_ab.
OptimizerResult ea_qsi_rate_optimize(const DensityMatrix& rho_ab,
                                     const DistortionObservable& delta,
                                     double d_ceiling,
                                     const EaOptimizerOptions& opts = {});

// Non-convex outer search for the single-letter classically-assisted term;
// the result is an upper bound witnessed by a feasible channel.
double cl_rate_single_letter(const DensityMatrix& rho, const DistortionObservable& delta,
                             double d_ceiling, const DecompositionSearchConfig& cfg);

RateCurve convex_hull(const RateCurve& curve);

}
