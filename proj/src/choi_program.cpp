#include "qrd/choi_program.hpp"

#include <cmath>

#include "qrd/entropy.hpp"
#include "qrd/errors.hpp"
#include "qrd/tolerances.hpp"

namespace qrd::choi {

namespace {

constexpr double kLn2 = 0.6931471805599453;

cvec flatten(const cmat& m) {
    const long n = m.rows();
    cvec v(n * m.cols());
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
    return v;
}

cmat unflatten(const cvec& v, long n) {
    cmat m(n, n);
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) m(r, c) = v(r * n + c);
    return m;
}

// -(log2 m + 1/ln2) on a floored spectrum, the entropy gradient in bits
cmat entropy_gradient(const cmat& m) {
    const auto eig = lin::herm_eig(lin::hermitize(m));
    rvec g(eig.values.size());
    for (long k = 0; k < g.size(); ++k) {
        const double lam = std::max(eig.values(k), 1e-18);
        g(k) = -(std::log(lam) + 1.0) / kLn2;
    }
    return eig.vectors * g.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

ChoiSolver::ChoiSolver(ProgramSetup setup) : s_(std::move(setup)) {
    if (s_.d_l < 1 || s_.d_a < 1 || s_.d_t < 1 || s_.d_b < 1)
        throw InputError("choi program dims must be positive");
    const long d_phi = static_cast<long>(s_.d_l) * s_.d_a * s_.d_t;
    if (s_.phi.size() != d_phi) throw InputError("choi program phi has wrong length");
    const long d_sigma = static_cast<long>(s_.d_l) * s_.d_b * s_.d_t;
    if (d_sigma > 64) throw InputError("choi program combined dims too large");
    const long dj = d_j();
    if (s_.delta.rows() != static_cast<long>(s_.d_l) * s_.d_b ||
        s_.delta.cols() != s_.delta.rows())
        throw InputError("choi program delta must live on L x B");
    for (const auto& term : s_.terms)
        for (size_t i = 0; i < term.keep.size(); ++i) {
            if (term.keep[i] < 0 || term.keep[i] > 2)
                throw InputError("objective keep index out of range");
            if (i > 0 && term.keep[i] <= term.keep[i - 1])
                throw InputError("objective keep sets must be ascending");
        }

    sigma_dims_ = {s_.d_l, s_.d_b, s_.d_t};

    const int dl = s_.d_l, da = s_.d_a, dt = s_.d_t, db = s_.d_b;
    auto phi_at = [&](int l, int a, int t) {
        return s_.phi((static_cast<long>(l) * da + a) * dt + t);
    };
    k_ = cmat::Zero(d_sigma * d_sigma, dj * dj);
    for (int l = 0; l < dl; ++l)
        for (int a = 0; a < da; ++a)
            for (int t = 0; t < dt; ++t) {
                const cxd left = phi_at(l, a, t);
                if (left == cxd(0, 0)) continue;
                for (int lp = 0; lp < dl; ++lp)
                    for (int ap = 0; ap < da; ++ap)
                        for (int tp = 0; tp < dt; ++tp) {
                            const cxd val = left * std::conj(phi_at(lp, ap, tp));
                            if (val == cxd(0, 0)) continue;
                            for (int b = 0; b < db; ++b)
                                for (int bp = 0; bp < db; ++bp) {
                                    const long srow =
                                        (static_cast<long>(l) * db + b) * dt + t;
                                    const long scol =
                                        (static_cast<long>(lp) * db + bp) * dt + tp;
                                    const long jrow = static_cast<long>(a) * db + b;
                                    const long jcol = static_cast<long>(ap) * db + bp;
                                    k_(srow * d_sigma + scol, jrow * dj + jcol) += val;
                                }
                        }
            }
    kadj_ = k_.adjoint();

    const cmat delta_emb = lin::embed(s_.delta, {dl * db, dt}, {0});
    g_d_ = lin::hermitize(unflatten(kadj_ * flatten(delta_emb), dj));
}

cmat ChoiSolver::sigma(const cmat& j) const {
    const long d_sigma = static_cast<long>(s_.d_l) * s_.d_b * s_.d_t;
    return unflatten(k_ * flatten(j), d_sigma);
}

double ChoiSolver::f_value(const cmat& j) const {
    const cmat sig = sigma(j);
    double total = 0.0;
    for (const auto& term : s_.terms)
        total +=
            term.weight * detail::entropy_bits(lin::partial_trace(sig, sigma_dims_,
                                                                  term.keep));
    return total;
}

cmat ChoiSolver::f_gradient(const cmat& j) const {
    const cmat sig = sigma(j);
    const long d_sigma = sig.rows();
    cmat pull = cmat::Zero(d_sigma, d_sigma);
    for (const auto& term : s_.terms) {
        const cmat marg = lin::partial_trace(sig, sigma_dims_, term.keep);
        pull += term.weight * lin::embed(entropy_gradient(marg), sigma_dims_, term.keep);
    }
    return lin::hermitize(unflatten(kadj_ * flatten(pull), d_j()));
}

double ChoiSolver::dist_value(const cmat& j) const {
    return (g_d_ * j).trace().real();
}

cmat ChoiSolver::tp_fix(const cmat& j) const {
    const cmat marg = lin::partial_trace(j, {s_.d_a, s_.d_b}, {0});
    const cmat fix = lin::kron(lin::herm_inv_sqrt(marg, 1e-300), cmat::Identity(s_.d_b, s_.d_b));
    return lin::hermitize(fix * j * fix);
}

cmat ChoiSolver::max_mixed() const {
    return cmat::Identity(d_j(), d_j()) / s_.d_b;
}

InnerSolve ChoiSolver::minimize(double lambda, cmat j0, int max_iters,
                                double f_tol) const {
    InnerSolve out;
    cmat j = tp_fix(lin::hermitize(j0));
    double g_cur = f_value(j) + lambda * dist_value(j);
    double eta = 1.0;
    int stall = 0;

    for (int it = 0; it < max_iters; ++it) {
        ++out.iterations;
        const cmat grad = f_gradient(j) + lambda * g_d_;
        const cmat logj = lin::herm_log(j, 1e-300);
        bool accepted = false;
        for (int bt = 0; bt < 45; ++bt) {
            const cmat cand = tp_fix(lin::herm_exp(logj - eta * grad));
            const double g_new = f_value(cand) + lambda * dist_value(cand);
            if (g_new < g_cur - 1e-14) {
                const double drop = g_cur - g_new;
                j = cand;
                g_cur = g_new;
                accepted = true;
                eta = std::min(eta * 1.3, 64.0);
                if (drop < f_tol)
                    ++stall;
                else
                    stall = 0;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted || stall >= 3) break;
    }

    out.j = j;
    out.f = f_value(j);
    out.dist = dist_value(j);

    // convexity certificate: f(J') + l*d(J') >= f(j) - <grad_f, j> + <G, J'>
    const cmat grad_f = f_gradient(j);
    const cmat g_total = lin::hermitize(grad_f + lambda * g_d_);
    const cmat y0 = lin::hermitize(lin::partial_trace(g_total * j, {s_.d_a, s_.d_b}, {0}));
    const cmat slack =
        g_total - lin::kron(y0, cmat::Identity(s_.d_b, s_.d_b));
    const double lam_min = lin::herm_eigenvalues(lin::hermitize(slack))(0);
    const double phi_y = y0.trace().real() + s_.d_a * lam_min;
    out.lower = out.f - (grad_f * j).trace().real() + phi_y;
    return out;
}

}  // namespace qrd::choi
