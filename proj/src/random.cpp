#include "qrd/random.hpp"

namespace qrd {
namespace rnd {

cmat ginibre(int rows, int cols, Engine& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    cmat g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            double re = normal(gen);
            double im = normal(gen);
            g(i, j) = cxd(re, im);
        }
    return g;
}

cmat haar_isometry(int rows, int cols, Engine& gen) {
    cmat g = ginibre(rows, rows, gen);
    Eigen::HouseholderQR<cmat> qr(g);
    cmat q = qr.householderQ();
    cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix the QR phase ambiguity so the distribution is Haar
    for (int j = 0; j < rows; ++j) {
        cxd d = r(j, j);
        double a = std::abs(d);
        if (a > 0) q.col(j) *= d / a;
    }
    return q.leftCols(cols);
}

cvec random_unit_vector(int dim, Engine& gen) {
    cmat g = ginibre(dim, 1, gen);
    cvec v = g.col(0);
    return v / v.norm();
}

PureState random_pure(const std::vector<int>& dims, std::uint64_t seed) {
    Engine gen(seed);
    return PureState(random_unit_vector(lin::product(dims), gen), dims);
}

DensityMatrix random_density(const std::vector<int>& dims, int rank,
                             std::uint64_t seed) {
    Engine gen(seed);
    const int d = lin::product(dims);
    if (rank <= 0 || rank > d) rank = d;
    cmat w = ginibre(d, rank, gen);
    cmat rho = w * w.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(rho, dims);
}

}
}
