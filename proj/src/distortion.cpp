#include "qrd/distortion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qrd/errors.hpp"
#include "qrd/linalg.hpp"
#include "qrd/tolerances.hpp"

namespace qrd {

DistortionObservable::DistortionObservable(cmat delta, int d_r, int d_b)
    : delta_(std::move(delta)), d_r_(d_r), d_b_(d_b) {
    if (d_r_ < 1 || d_b_ < 1) throw InputError("observable dims must be positive");
    const long d = static_cast<long>(d_r_) * d_b_;
    if (delta_.rows() != d || delta_.cols() != d)
        throw InputError("observable shape does not match d_r*d_b");
    if (lin::herm_residual(delta_) > tolerances().hermitian)
        throw InputError("observable must be Hermitian");
    const rvec ev = lin::herm_eigenvalues(lin::hermitize(delta_));
    if (ev(0) < -tolerances().psd)
        throw InputError("observable must be non-negative, min eigenvalue " +
                         std::to_string(ev(0)));
}

namespace {

// reference-output state (id x N)(psi) for the canonical purification of rho
DensityMatrix channel_output_state(const DensityMatrix& rho, const QuantumChannel& n) {
    const DensityMatrix flat(rho.matrix(), {rho.dim()});
    const PureState psi = purify(flat);
    const DensityMatrix joint(psi.density(), psi.dims());
    return apply(n, joint, {1});
}

}  // namespace

double distortion(const DensityMatrix& rho, const QuantumChannel& n,
                  const DistortionObservable& delta) {
    if (delta.d_r() != rho.dim())
        throw InputError("distortion: reference dim must equal the source dim");
    if (n.d_in() != rho.dim())
        throw InputError("distortion: channel input dim must equal the source dim");
    if (delta.d_b() != n.d_out())
        throw InputError("distortion: observable output dim must equal d_out");
    const DensityMatrix omega = channel_output_state(rho, n);
    double val = (delta.delta() * omega.matrix()).trace().real();
    if (val < 0.0 && val > -1e-8) val = 0.0;
    return val;
}

double entanglement_fidelity_distortion(const DensityMatrix& rho,
                                        const QuantumChannel& n) {
    return 1.0 - entanglement_fidelity(rho, n);
}

DistortionObservable entanglement_fidelity_observable(const DensityMatrix& rho) {
    const DensityMatrix flat(rho.matrix(), {rho.dim()});
    const PureState psi = purify(flat);
    const int d = rho.dim();
    cmat delta = cmat::Identity(d * d, d * d) - psi.density();
    return DistortionObservable(std::move(delta), d, d);
}

DistortionObservable classical_distortion_observable(const Eigen::MatrixXd& d_table) {
    const int d_r = static_cast<int>(d_table.rows());
    const int d_b = static_cast<int>(d_table.cols());
    if (d_r < 1 || d_b < 1) throw InputError("distortion table must be nonempty");
    if (d_table.minCoeff() < 0.0)
        throw InputError("distortion table entries must be non-negative");
    cmat delta = cmat::Zero(d_r * d_b, d_r * d_b);
    for (int x = 0; x < d_r; ++x)
        for (int y = 0; y < d_b; ++y) delta(x * d_b + y, x * d_b + y) = d_table(x, y);
    return DistortionObservable(std::move(delta), d_r, d_b);
}

DistortionObservable qc_distortion_observable(const std::vector<cmat>& deltas) {
    if (deltas.empty()) throw InputError("qc observable needs at least one block");
    const int d_r = static_cast<int>(deltas[0].rows());
    const int d_b = static_cast<int>(deltas.size());
    cmat delta = cmat::Zero(d_r * d_b, d_r * d_b);
    for (int y = 0; y < d_b; ++y) {
        const cmat& blk = deltas[y];
        if (blk.rows() != d_r || blk.cols() != d_r)
            throw InputError("qc observable blocks must share a common square shape");
        if (lin::herm_residual(blk) > tolerances().hermitian)
            throw InputError("qc observable block is not Hermitian");
        if (lin::herm_eigenvalues(lin::hermitize(blk))(0) < -tolerances().psd)
            throw InputError("qc observable block is not PSD");
        for (int x = 0; x < d_r; ++x)
            for (int xp = 0; xp < d_r; ++xp)
                delta(x * d_b + y, xp * d_b + y) = blk(x, xp);
    }
    return DistortionObservable(std::move(delta), d_r, d_b);
}

double average_block_distortion(const DensityMatrix& rho, const QuantumChannel& f_n,
                                const DistortionObservable& delta) {
    const int d = rho.dim();
    const int d_b = delta.d_b();
    if (delta.d_r() != d)
        throw InputError("block distortion: reference dim must equal the source dim");

    int n = 0;
    long din = 1, dout = 1;
    for (int k = 1; k <= 3; ++k) {
        din *= d;
        dout *= d_b;
        if (din == f_n.d_in()) {
            n = k;
            break;
        }
    }
    if (n == 0) throw InputError("block map input dim is not d^n for n <= 3");
    if (dout != f_n.d_out())
        throw InputError("block map output dim must be d_b^n");

    // marginal-channel form: embed a basis operator at slot i among rho copies
    const std::vector<int> out_dims(n, d_b);
    double via_marginals = 0.0;
    for (int i = 0; i < n; ++i) {
        cmat j = cmat::Zero(d * d_b, d * d_b);
        for (int a = 0; a < d; ++a)
            for (int ap = 0; ap < d; ++ap) {
                cmat e = cmat::Zero(d, d);
                e(a, ap) = 1.0;
                cmat x(1, 1);
                x(0, 0) = 1.0;
                for (int s = 0; s < n; ++s)
                    x = lin::kron(x, s == i ? e : rho.matrix());
                const cmat slot = lin::partial_trace(f_n.apply_matrix(x), out_dims, {i});
                for (int b = 0; b < d_b; ++b)
                    for (int bp = 0; bp < d_b; ++bp)
                        j(a * d_b + b, ap * d_b + bp) += slot(b, bp);
            }
        const QuantumChannel marginal = QuantumChannel::from_choi(j, d, d_b);
        via_marginals += distortion(rho, marginal, delta);
    }
    via_marginals /= n;

    // block-average observable form on (id x F_n)(psi^{x n})
    const DensityMatrix flat(rho.matrix(), {d});
    const PureState psi = purify(flat);
    PureState block = psi;
    for (int k = 1; k < n; ++k) block = tensor(block, psi);
    std::vector<int> perm;
    for (int k = 0; k < n; ++k) perm.push_back(2 * k);
    for (int k = 0; k < n; ++k) perm.push_back(2 * k + 1);
    const cvec sorted = lin::permute_subsystems(block.vector(), block.dims(), perm);
    std::vector<int> sdims(2 * n, d);
    std::vector<int> targets;
    for (int k = 0; k < n; ++k) targets.push_back(n + k);
    const DensityMatrix omega =
        apply(f_n, DensityMatrix(sorted * sorted.adjoint(), sdims), targets);

    std::vector<int> fine_dims(n, d);
    fine_dims.insert(fine_dims.end(), n, d_b);
    cmat bar = cmat::Zero(omega.dim(), omega.dim());
    for (int i = 0; i < n; ++i)
        bar += lin::embed(delta.delta(), fine_dims, {i, n + i});
    const double via_average = (bar * omega.matrix()).trace().real() / n;

    if (std::abs(via_marginals - via_average) > 1e-9)
        throw std::logic_error("block distortion forms disagree: " +
                               std::to_string(via_marginals) + " vs " +
                               std::to_string(via_average));
    return via_marginals;
}

}  // namespace qrd
