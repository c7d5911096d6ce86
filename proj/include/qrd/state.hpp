#pragma once

#include <string>
#include <vector>

#include "qrd/linalg.hpp"

namespace qrd {

class DensityMatrix;

class PureState {
public:
    PureState(cvec vector, std::vector<int> dims,
              std::vector<std::string> labels = {});

    const cvec& vector() const { return v_; }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<std::string>& labels() const { return labels_; }
    int dim() const { return static_cast<int>(v_.size()); }

    DensityMatrix density() const;

private:
    cvec v_;
    std::vector<int> dims_;
    std::vector<std::string> labels_;
};

// Hermitian, unit-trace, numerically PSD matrix over an ordered subsystem list.
class DensityMatrix {
public:
    DensityMatrix(cmat matrix, std::vector<int> dims,
                  std::vector<std::string> labels = {});

    const cmat& matrix() const { return m_; }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<std::string>& labels() const { return labels_; }
    int dim() const { return static_cast<int>(m_.rows()); }

private:
    cmat m_;
    std::vector<int> dims_;
    std::vector<std::string> labels_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Canonical purification: reference system (dimension d, listed first) carries
// the eigenbasis sorted by descending eigenvalue, each eigenvector's phase fixed
// so its largest-magnitude entry is real positive.
PureState purify(const DensityMatrix& rho);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b); // Tr|a-b|

namespace states {

DensityMatrix maximally_mixed(int d);
PureState basis_ket(int d, int k);
PureState bell_phi();        // (|00> + |11>)/sqrt(2)
PureState bell_phi_minus();  // (|00> - |11>)/sqrt(2)
PureState bell_psi_plus();   // (|01> + |10>)/sqrt(2)
PureState bell_psi_minus();  // (|01> - |10>)/sqrt(2)

// (1-D) Phi + D/3 (Psi+ + Psi- + Phi-)
DensityMatrix bell_mixture(double D);

}
}
