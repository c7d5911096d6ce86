#include "qrd/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qrd/errors.hpp"
#include "qrd/tolerances.hpp"

namespace qrd {

namespace {

constexpr int kDimCap = 256;

void check_dims(const std::vector<int>& dims, int size,
                const std::vector<std::string>& labels) {
    if (dims.empty()) throw InputError("dims list must be non-empty");
    for (int d : dims)
        if (d < 1) throw InputError("subsystem dimensions must be positive");
    if (lin::product(dims) != size)
        throw InputError("product of dims does not match matrix size");
    if (size > kDimCap) throw InputError("total dimension exceeds cap of 256");
    if (!labels.empty() && labels.size() != dims.size())
        throw InputError("labels list must match dims length");
}

}

PureState::PureState(cvec vector, std::vector<int> dims,
                     std::vector<std::string> labels)
    : v_(std::move(vector)), dims_(std::move(dims)), labels_(std::move(labels)) {
    check_dims(dims_, static_cast<int>(v_.size()), labels_);
    if (std::abs(v_.norm() - 1.0) > tolerances().unit_norm)
        throw InputError("pure state vector is not normalized");
}

DensityMatrix PureState::density() const {
    return DensityMatrix(v_ * v_.adjoint(), dims_, labels_);
}

DensityMatrix::DensityMatrix(cmat matrix, std::vector<int> dims,
                             std::vector<std::string> labels)
    : m_(std::move(matrix)), dims_(std::move(dims)), labels_(std::move(labels)) {
    if (m_.rows() != m_.cols()) throw InputError("density matrix must be square");
    check_dims(dims_, static_cast<int>(m_.rows()), labels_);
    const Tolerances& tol = tolerances();
    if (lin::herm_residual(m_) > tol.hermitian)
        throw InputError("density matrix is not Hermitian within tolerance");
    if (std::abs(m_.trace().real() - 1.0) > tol.trace_one ||
        std::abs(m_.trace().imag()) > tol.trace_one)
        throw InputError("density matrix trace is not 1 within tolerance");
    rvec ev = lin::herm_eigenvalues(m_);
    if (ev.minCoeff() < -tol.psd)
        throw InputError("density matrix has an eigenvalue below -1e-9");
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    std::vector<std::string> labels;
    if (!a.labels().empty() && !b.labels().empty()) {
        labels = a.labels();
        labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    }
    return DensityMatrix(lin::kron(a.matrix(), b.matrix()), dims, labels);
}

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    std::vector<std::string> labels;
    if (!a.labels().empty() && !b.labels().empty()) {
        labels = a.labels();
        labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    }
    return PureState(lin::kron(a.vector(), b.vector()), dims, labels);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    cmat reduced = lin::partial_trace(rho.matrix(), rho.dims(), keep);
    std::vector<int> dims;
    std::vector<std::string> labels;
    for (int k : keep) {
        dims.push_back(rho.dims()[k]);
        if (!rho.labels().empty()) labels.push_back(rho.labels()[k]);
    }
    return DensityMatrix(reduced, dims, labels);
}

PureState purify(const DensityMatrix& rho) {
    const int d = rho.dim();
    auto [vals, vecs] = lin::herm_eig(rho.matrix());

    // descending eigenvalue order, stable across equal values
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals(a) > vals(b); });

    cvec psi = cvec::Zero(d * d);
    for (int r = 0; r < d; ++r) {
        double lambda = std::max(vals(order[r]), 0.0);
        if (lambda <= 0.0) continue;
        cvec v = vecs.col(order[r]);
        // phase convention: largest-magnitude entry real positive
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < d; ++i) {
            double a = std::abs(v(i));
            if (a > best + 1e-12) {
                best = a;
                arg = i;
            }
        }
        if (best > 0.0) v *= std::conj(v(arg)) / std::abs(v(arg));
        psi.segment(r * d, d) = std::sqrt(lambda) * v;
    }
    psi /= psi.norm();

    std::vector<int> dims = {d};
    dims.insert(dims.end(), rho.dims().begin(), rho.dims().end());
    return PureState(psi, dims);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dims() != b.dims()) throw InputError("trace_distance dims mismatch");
    rvec ev = lin::herm_eigenvalues(a.matrix() - b.matrix());
    return ev.cwiseAbs().sum();
}

namespace states {

DensityMatrix maximally_mixed(int d) {
    return DensityMatrix(cmat::Identity(d, d) / static_cast<double>(d), {d});
}

PureState basis_ket(int d, int k) {
    cvec v = cvec::Zero(d);
    v(k) = 1.0;
    return PureState(v, {d});
}

namespace {
PureState two_qubit(cxd a00, cxd a01, cxd a10, cxd a11) {
    cvec v(4);
    v << a00, a01, a10, a11;
    return PureState(v / v.norm(), {2, 2});
}
}

PureState bell_phi() { return two_qubit(1, 0, 0, 1); }
PureState bell_phi_minus() { return two_qubit(1, 0, 0, -1); }
PureState bell_psi_plus() { return two_qubit(0, 1, 1, 0); }
PureState bell_psi_minus() { return two_qubit(0, 1, -1, 0); }

DensityMatrix bell_mixture(double D) {
    if (D < 0.0 || D > 1.0) throw InputError("bell_mixture parameter out of range");
    cmat m = (1.0 - D) * bell_phi().density().matrix() +
             (D / 3.0) * (bell_psi_plus().density().matrix() +
                          bell_psi_minus().density().matrix() +
                          bell_phi_minus().density().matrix());
    return DensityMatrix(m, {2, 2});
}

}
}
