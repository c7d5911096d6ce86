#pragma once

#include <vector>

#include "qrd/channel.hpp"
#include "qrd/state.hpp"

namespace qrd {

// Non-negative observable Delta on reference x output; distortion is its
// expectation on (id x N)(psi) with psi the canonical purification.
class DistortionObservable {
public:
    DistortionObservable(cmat delta, int d_r, int d_b);

    const cmat& delta() const { return delta_; }
    int d_r() const { return d_r_; }
    int d_b() const { return d_b_; }

private:
    cmat delta_;
    int d_r_, d_b_;
};

double distortion(const DensityMatrix& rho, const QuantumChannel& n,
                  const DistortionObservable& delta);

double entanglement_fidelity_distortion(const DensityMatrix& rho,
                                        const QuantumChannel& n);

// Delta = I - psi for the canonical purification of rho.
DistortionObservable entanglement_fidelity_observable(const DensityMatrix& rho);

// Delta = sum_xy d(x,y) |x><x| x |y><y|.
DistortionObservable classical_distortion_observable(const Eigen::MatrixXd& d_table);

// Delta = sum_y Delta_y x |y><y| for a channel with classical output y.
DistortionObservable qc_distortion_observable(const std::vector<cmat>& deltas);

// (1/n) sum_i d(rho, F_n^(i)) via marginal channels, cross-checked against
// the block-average observable form.
double average_block_distortion(const DensityMatrix& rho, const QuantumChannel& f_n,
                                const DistortionObservable& delta);

}
