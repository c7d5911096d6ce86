#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace qrd {

using cxd = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

namespace lin {

int product(const std::vector<int>& dims);

cmat kron(const cmat& a, const cmat& b);
cvec kron(const cvec& a, const cvec& b);

double herm_residual(const cmat& m);        // max |M - M†| entry
cmat hermitize(const cmat& m);              // (M + M†)/2

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct HermEig {
    rvec values;
    cmat vectors;
};
HermEig herm_eig(const cmat& m);
rvec herm_eigenvalues(const cmat& m);

cmat herm_log(const cmat& m, double floor); // natural log with spectral floor
cmat herm_exp(const cmat& m);
cmat herm_inv_sqrt(const cmat& m, double floor);

// Subsystem reordering: output slot k carries input subsystem perm[k].
cmat permute_subsystems(const cmat& m, const std::vector<int>& dims,
                        const std::vector<int>& perm);
cvec permute_subsystems(const cvec& v, const std::vector<int>& dims,
                        const std::vector<int>& perm);

// Trace over every subsystem not listed in keep (keep strictly ascending).
cmat partial_trace(const cmat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep);

// Embeds op, acting on the ascending subsystem list `on`, into the full space
// described by dims (identity elsewhere).
cmat embed(const cmat& op, const std::vector<int>& dims,
           const std::vector<int>& on);

}
}
