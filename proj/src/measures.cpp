#include "qrd/measures.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qrd/channel.hpp"
#include "qrd/entropy.hpp"
#include "qrd/errors.hpp"
#include "qrd/linalg.hpp"
#include "qrd/optim.hpp"
#include "qrd/random.hpp"

namespace qrd {

namespace {

void require_bipartite(const DensityMatrix& rho, long dim_cap, const char* who) {
    if (rho.dims().size() != 2)
        throw InputError(std::string(who) + " expects a bipartite state");
    if (rho.dim() > dim_cap)
        throw InputError(std::string(who) + " dimension cap exceeded");
}

// spectral pieces of rho above the weight cutoff, strongest first
struct SpectralPieces {
    std::vector<double> weights;
    cmat vectors;  // columns
};

SpectralPieces leading_spectrum(const DensityMatrix& rho) {
    const auto eig = lin::herm_eig(lin::hermitize(rho.matrix()));
    SpectralPieces out;
    std::vector<int> order;
    for (int k = static_cast<int>(eig.values.size()) - 1; k >= 0; --k)
        if (eig.values(k) > 1e-12) order.push_back(k);
    out.vectors.resize(rho.dim(), static_cast<long>(order.size()));
    for (size_t i = 0; i < order.size(); ++i) {
        out.weights.push_back(eig.values(order[i]));
        out.vectors.col(static_cast<long>(i)) = eig.vectors.col(order[i]);
    }
    return out;
}

std::uint64_t restart_seed(std::uint64_t base, int idx) {
    return base ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(idx + 1));
}

}  // namespace

double concurrence_two_qubit(const DensityMatrix& rho_ab) {
    if (rho_ab.dim() != 4) throw InputError("concurrence needs a two-qubit state");
    const cmat yy = lin::kron(paulis::Y(), paulis::Y());
    const cmat r = rho_ab.matrix() * yy * rho_ab.matrix().conjugate() * yy;
    Eigen::ComplexEigenSolver<cmat> solver(r, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("concurrence eigensolve failed");
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k)
        lam[k] = std::sqrt(std::max(0.0, solver.eigenvalues()(k).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double eof_two_qubit(const DensityMatrix& rho_ab) {
    const double c = concurrence_two_qubit(rho_ab);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

double eof_search(const DensityMatrix& rho_ab, const DecompositionSearchConfig& cfg) {
    require_bipartite(rho_ab, 36, "eof_search");
    if (cfg.restarts < 1) throw InputError("eof_search needs restarts >= 1");
    const int d_a = rho_ab.dims()[0];
    const int d_b = rho_ab.dims()[1];

    const SpectralPieces sp = leading_spectrum(rho_ab);
    const int r = static_cast<int>(sp.weights.size());
    const int m = cfg.ensemble_size == 0 ? r * r : cfg.ensemble_size;
    if (m < r) throw InputError("ensemble_size must be at least the state rank");

    cmat scaled = sp.vectors;  // columns sqrt(lambda_k) |v_k>
    for (int k = 0; k < r; ++k) scaled.col(k) *= std::sqrt(sp.weights[k]);

    auto objective = [&](const cmat& w) {
        double total = 0.0;
        cmat slice(d_a, d_b);
        for (int x = 0; x < m; ++x) {
            const cvec member = scaled * w.row(x).transpose();
            const double p = member.squaredNorm();
            if (p < 1e-14) continue;
            for (int a = 0; a < d_a; ++a)
                slice.row(a) = member.segment(static_cast<long>(a) * d_b, d_b).transpose();
            total += p * detail::entropy_bits((slice * slice.adjoint()) / p);
        }
        return total;
    };

    optim::SweepConfig sweep;
    sweep.max_iters = cfg.max_iters;
    sweep.step_tolerance = cfg.step_tolerance;

    double best = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < cfg.restarts; ++trial) {
        cmat w;
        if (trial == 0) {
            w = cmat::Zero(m, r);
            w.topLeftCorner(r, r) = cmat::Identity(r, r);
        } else {
            rnd::Engine gen(restart_seed(cfg.seed, trial));
            w = rnd::haar_isometry(m, r, gen);
        }
        best = std::min(best, optim::sweep_isometry(w, objective, sweep));
    }
    return best;
}

double eop_search(const DensityMatrix& rho_ab, int d_eprime,
                  const DecompositionSearchConfig& cfg) {
    require_bipartite(rho_ab, 16, "eop_search");
    if (d_eprime < 1) throw InputError("eop_search needs d_eprime >= 1");
    if (cfg.restarts < 1) throw InputError("eop_search needs restarts >= 1");
    const int d_a = rho_ab.dims()[0];
    const int d_b = rho_ab.dims()[1];

    const SpectralPieces sp = leading_spectrum(rho_ab);
    const int r = static_cast<int>(sp.weights.size());

    // sigma_BE from the rank-r purification |phi> = sum_k sqrt(l_k)|v_k>|k>
    cmat phi = cmat::Zero(static_cast<long>(rho_ab.dim()) * r, 1);
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < rho_ab.dim(); ++i)
            phi(static_cast<long>(i) * r + k, 0) =
                std::sqrt(sp.weights[k]) * sp.vectors(i, k);
    const cmat full = phi * phi.adjoint();
    const cmat sigma_be = lin::partial_trace(full, {d_a, d_b, r}, {1, 2});

    const int d_f = cfg.stinespring_rank == 0 ? r : cfg.stinespring_rank;

    optim::SweepConfig sweep;
    sweep.max_iters = cfg.max_iters;
    sweep.step_tolerance = cfg.step_tolerance;

    double best = std::numeric_limits<double>::infinity();
    for (int dp = 1; dp <= d_eprime; ++dp) {
        const int rows = dp * d_f;
        if (rows < r) continue;
        const cmat eye_b = cmat::Identity(d_b, d_b);
        auto objective = [&](const cmat& v) {
            const cmat big = lin::kron(eye_b, v);
            const cmat tau = big * sigma_be * big.adjoint();
            return detail::entropy_bits(lin::partial_trace(tau, {d_b, dp, d_f}, {0, 1}));
        };
        for (int trial = 0; trial < cfg.restarts; ++trial) {
            cmat v;
            if (trial == 0) {
                v = cmat::Zero(rows, r);
                v.topLeftCorner(r, r) = cmat::Identity(r, r);
            } else {
                rnd::Engine gen(restart_seed(cfg.seed ^ (0x51ULL * dp), trial));
                v = rnd::haar_isometry(rows, r, gen);
            }
            best = std::min(best, optim::sweep_isometry(v, objective, sweep));
        }
    }
    if (!std::isfinite(best))
        throw InputError("eop_search ansatz too small for the state rank");
    return best;
}

}  // namespace qrd
