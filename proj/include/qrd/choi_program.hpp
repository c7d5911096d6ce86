#pragma once

#include <vector>

#include "qrd/linalg.hpp"

namespace qrd::choi {

// Weighted entropy term H(marginal over `keep`) of the output state on
// (L, B, T); weights carry the 1/2 factors of the mutual-information form.
struct ObjectiveTerm {
    double weight;
    std::vector<int> keep;
};

struct ProgramSetup {
    cvec phi;   // pure input on L x A x T (set d_t = 1 when T is absent)
    int d_l = 0, d_a = 0, d_t = 1;
    int d_b = 0;
    std::vector<ObjectiveTerm> terms;
    cmat delta;  // distortion observable on L x B
};

struct InnerSolve {
    cmat j;            // strictly positive iterate with Tr_B j = I
    double f = 0.0;    // objective at j, in bits
    double dist = 0.0;
    double lower = 0.0;  // certified lower bound on min_J [f + lambda*dist]
    int iterations = 0;
};

// Convex program over Choi matrices {J >= 0, Tr_B J = I_A}: weighted output
// entropies plus a linear distortion penalty, minimized by mirror descent
// with a trace-preserving sandwich correction after every step.
class ChoiSolver {
public:
    explicit ChoiSolver(ProgramSetup setup);

    int d_a() const { return s_.d_a; }
    int d_b() const { return s_.d_b; }
    long d_j() const { return static_cast<long>(s_.d_a) * s_.d_b; }

    cmat sigma(const cmat& j) const;
    double f_value(const cmat& j) const;
    cmat f_gradient(const cmat& j) const;
    double dist_value(const cmat& j) const;
    const cmat& dist_kernel() const { return g_d_; }

    cmat tp_fix(const cmat& j) const;
    cmat max_mixed() const;

    InnerSolve minimize(double lambda, cmat j0, int max_iters, double f_tol) const;

private:
    ProgramSetup s_;
    cmat k_, kadj_;
    cmat g_d_;
    std::vector<int> sigma_dims_;
};

}
