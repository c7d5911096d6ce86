#include "qrd/optim.hpp"

#include <cmath>

#include "qrd/errors.hpp"

namespace qrd::optim {

namespace {

// rows i,j of v mixed by a 2x2 unitary block
void mix_rows(cmat& v, int i, int j, cxd uii, cxd uij, cxd uji, cxd ujj) {
    const Eigen::RowVectorXcd ri = v.row(i);
    const Eigen::RowVectorXcd rj = v.row(j);
    v.row(i) = uii * ri + uij * rj;
    v.row(j) = uji * ri + ujj * rj;
}

}  // namespace

double sweep_isometry(cmat& v, const std::function<double(const cmat&)>& f,
                      const SweepConfig& cfg) {
    if (v.rows() < v.cols()) throw InputError("sweep needs a tall matrix");
    const int m = static_cast<int>(v.rows());
    double best = f(v);
    double step = cfg.initial_step;
    cmat trial = v;

    auto consider = [&](const cmat& cand) {
        const double val = f(cand);
        if (val < best) {
            best = val;
            v = cand;
            return true;
        }
        return false;
    };

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const double before = best;
        const double c = std::cos(step), s = std::sin(step);
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                for (int sign = -1; sign <= 1; sign += 2) {
                    const double ss = sign * s;
                    trial = v;
                    mix_rows(trial, i, j, c, -ss, ss, c);
                    consider(trial);
                    trial = v;
                    mix_rows(trial, i, j, c, cxd(0, -ss), cxd(0, -ss), c);
                    consider(trial);
                }
            }
            for (int sign = -1; sign <= 1; sign += 2) {
                trial = v;
                trial.row(i) *= std::exp(cxd(0, sign * step));
                consider(trial);
            }
        }
        if (before - best < cfg.step_tolerance) {
            step *= cfg.decay;
            if (step < cfg.min_step) break;
        }
    }
    return best;
}

}  // namespace qrd::optim
