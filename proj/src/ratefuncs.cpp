#include "qrd/ratefuncs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrd/choi_program.hpp"
#include "qrd/entropy.hpp"
#include "qrd/errors.hpp"
#include "qrd/optim.hpp"
#include "qrd/random.hpp"
#include "qrd/tolerances.hpp"

namespace qrd {

const char* rate_tag_name(RateTag tag) {
    switch (tag) {
        case RateTag::closed_form: return "closed_form";
        case RateTag::optimized: return "optimized";
        default: return "upper_bound";
    }
}

double ea_isotropic_closed_form(double d) {
    if (d < 0.0 || d > 1.0) throw InputError("distortion must lie in [0,1]");
    if (d >= 0.75) return 0.0;
    return 1.0 - 0.5 * shannon({1.0 - d, d / 3.0, d / 3.0, d / 3.0});
}

double cl_isotropic_closed_form(double d) {
    if (d < 0.0 || d > 1.0) throw InputError("distortion must lie in [0,1]");
    if (d >= 0.5) return 0.0;
    return binary_entropy(0.5 + std::sqrt(d * (1.0 - d)));
}

namespace {

struct RateSolveOutcome {
    cmat j;
    double rate;
    double lambda;
    double lower;
    double gap;
    int iterations;
    bool converged;
};

// Lagrangian sweep with warm starts; certificates from the inner solves give
// a feasible upper bound and a dual lower bound on the constrained value.
RateSolveOutcome solve_choi_rate(const choi::ChoiSolver& solver,
                                 const choi::ChoiSolver& dist_only, double d_ceiling,
                                 const EaOptimizerOptions& opts) {
    const double tol = opts.gap_tolerance;
    const double inner_tol = tol / 50.0;
    const int inner_cap = std::max(300, opts.max_iters / 50);
    int total_iters = 0;

    // certified feasibility probe: minimize the distortion alone
    const choi::InnerSolve lin =
        dist_only.minimize(1.0, dist_only.max_mixed(), inner_cap * 4, inner_tol * 1e-3);
    total_iters += lin.iterations;
    if (d_ceiling < lin.lower - 1e-9)
        throw InfeasibleError("distortion ceiling " + std::to_string(d_ceiling) +
                              " below the channel minimum (certified >= " +
                              std::to_string(lin.lower) + ")");

    double best_upper = std::numeric_limits<double>::infinity();
    cmat best_j;
    double best_lower = -std::numeric_limits<double>::infinity();
    double lambda_at_best = 0.0;

    auto offer_feasible = [&](const cmat& j, double dist) {
        cmat cand = j;
        if (dist > d_ceiling) {
            const double denom = dist - lin.dist;
            if (denom <= 0.0) return;
            double t = (dist - d_ceiling) / denom;
            t = std::min(1.0, t + 1e-12);
            cand = (1.0 - t) * j + t * lin.j;
            if (solver.dist_value(cand) > d_ceiling + 1e-12) return;
        }
        const double f = solver.f_value(cand);
        if (f < best_upper) {
            best_upper = f;
            best_j = cand;
        }
    };

    auto account = [&](const choi::InnerSolve& sol, double lambda) {
        total_iters += sol.iterations;
        const double lb = sol.lower - lambda * d_ceiling;
        if (lb > best_lower) best_lower = lb;
        offer_feasible(sol.j, sol.dist);
    };

    choi::InnerSolve sol = solver.minimize(0.0, solver.max_mixed(), inner_cap, inner_tol);
    account(sol, 0.0);
    double lambda = 0.0;

    if (sol.dist > d_ceiling) {
        const double lam_cap = opts.lambda_max > 0.0
                                   ? opts.lambda_max
                                   : 10.0 * std::log2(static_cast<double>(solver.d_a())) /
                                         std::max(tol, 1e-8);
        double lo = 0.0, hi = 1.0;
        cmat warm = sol.j;
        choi::InnerSolve sol_hi;
        while (true) {
            sol_hi = solver.minimize(hi, warm, inner_cap, inner_tol);
            account(sol_hi, hi);
            warm = sol_hi.j;
            if (sol_hi.dist <= d_ceiling) break;
            lo = hi;
            hi *= 10.0;
            if (hi > lam_cap * 10.0)
                throw InfeasibleError("could not bracket the distortion ceiling " +
                                      std::to_string(d_ceiling));
        }
        lambda = hi;
        for (int round = 0; round < opts.bisection_cap; ++round) {
            if (best_upper - best_lower < tol) break;
            if (total_iters > opts.max_iters) break;
            const double mid = 0.5 * (lo + hi);
            sol = solver.minimize(mid, warm, inner_cap, inner_tol);
            account(sol, mid);
            warm = sol.j;
            if (sol.dist <= d_ceiling) {
                hi = mid;
                lambda = mid;
            } else {
                lo = mid;
            }
        }
    }

    lambda_at_best = lambda;
    RateSolveOutcome out;
    out.j = best_j;
    out.rate = best_upper;
    out.lambda = lambda_at_best;
    out.lower = best_lower;
    out.gap = best_upper - best_lower;
    out.iterations = total_iters;
    out.converged = out.gap < tol;
    return out;
}

OptimizerResult run_rate_program(choi::ProgramSetup setup, double d_ceiling,
                                 const EaOptimizerOptions& opts) {
    choi::ProgramSetup linear = setup;
    linear.terms.clear();
    const choi::ChoiSolver solver(std::move(setup));
    const choi::ChoiSolver dist_only(std::move(linear));
    RateSolveOutcome sol = solve_choi_rate(solver, dist_only, d_ceiling, opts);

    const double slack = std::max(0.0, solver.dist_value(sol.j) - d_ceiling);
    OptimizerResult res{sol.rate,
                        QuantumChannel::from_choi(sol.j, solver.d_a(), solver.d_b()),
                        sol.lambda,
                        sol.iterations,
                        sol.gap + slack,
                        sol.lower,
                        sol.converged};
    return res;
}

bool matches_fidelity_observable(const DensityMatrix& rho,
                                 const DistortionObservable& delta) {
    if (delta.d_b() != rho.dim()) return false;
    const DistortionObservable ref = entanglement_fidelity_observable(rho);
    return (ref.delta() - delta.delta()).cwiseAbs().maxCoeff() < 1e-10;
}

}  // namespace

OptimizerResult ea_rate_optimize(const DensityMatrix& rho,
                                 const DistortionObservable& delta, double d_ceiling,
                                 const EaOptimizerOptions& opts) {
    const int d = rho.dim();
    if (d > 4 || delta.d_b() > 4)
        throw InputError("ea_rate_optimize supports dims up to 4 x 4");
    if (delta.d_r() != d)
        throw InputError("observable reference dim must equal the source dim");
    if (d_ceiling < 0.0) throw InputError("distortion ceiling must be non-negative");

    if (d_ceiling <= 1e-12 && matches_fidelity_observable(rho, delta)) {
        // zero distortion with the fidelity observable pins the identity channel
        const QuantumChannel id = QuantumChannel::identity(d);
        const DensityMatrix flat(rho.matrix(), {d});
        const PureState psi = purify(flat);
        const DensityMatrix omega(psi.density(), psi.dims());
        const double rate = 0.5 * mutual_information(omega, {0}, {1});
        return OptimizerResult{rate, id, 0.0, 0, 0.0, rate, true};
    }

    const DensityMatrix flat(rho.matrix(), {d});
    const PureState psi = purify(flat);
    choi::ProgramSetup setup;
    setup.phi = psi.vector();
    setup.d_l = d;
    setup.d_a = d;
    setup.d_t = 1;
    setup.d_b = delta.d_b();
    setup.delta = delta.delta();
    setup.terms = {{0.5, {0}}, {0.5, {1}}, {-0.5, {0, 1}}};
    return run_rate_program(std::move(setup), d_ceiling, opts);
}

OptimizerResult ea_qsi_rate_optimize(const DensityMatrix& rho_ab,
                                     const DistortionObservable& delta,
                                     double d_ceiling,
                                     const EaOptimizerOptions& opts) {
    if (rho_ab.dims().size() != 2)
        throw InputError("ea_qsi_rate_optimize expects a bipartite source");
    const int d_a = rho_ab.dims()[0];
    const int d_side = rho_ab.dims()[1];
    if (d_a > 4 || delta.d_b() > 4)
        throw InputError("ea_qsi_rate_optimize supports dims up to 4 x 4");
    if (delta.d_r() != rho_ab.dim())
        throw InputError("observable reference dim must equal the purification dim");
    if (d_ceiling < 0.0) throw InputError("distortion ceiling must be non-negative");

    const PureState phi = purify(rho_ab);
    choi::ProgramSetup setup;
    setup.phi = phi.vector();
    setup.d_l = rho_ab.dim();
    setup.d_a = d_a;
    setup.d_t = d_side;
    setup.d_b = delta.d_b();
    setup.delta = delta.delta();
    setup.terms = {{0.5, {0, 2}}, {0.5, {1, 2}}, {-0.5, {2}}, {-0.5, {0, 1, 2}}};
    return run_rate_program(std::move(setup), d_ceiling, opts);
}

namespace {

QuantumChannel channel_from_stinespring(const cmat& v, int d_in, int d_out, int d_env) {
    std::vector<cmat> kraus;
    for (int e = 0; e < d_env; ++e) {
        cmat a(d_out, d_in);
        for (int b = 0; b < d_out; ++b) a.row(b) = v.row(static_cast<long>(b) * d_env + e);
        kraus.push_back(std::move(a));
    }
    return QuantumChannel(std::move(kraus));
}

double formation_of_output(const DensityMatrix& rho, const QuantumChannel& n,
                           const DecompositionSearchConfig& cfg) {
    const DensityMatrix flat(rho.matrix(), {rho.dim()});
    const PureState psi = purify(flat);
    const DensityMatrix omega = apply(n, DensityMatrix(psi.density(), psi.dims()), {1});
    if (omega.dims()[0] == 2 && omega.dims()[1] == 2) return eof_two_qubit(omega);
    DecompositionSearchConfig inner = cfg;
    inner.restarts = std::max(2, cfg.restarts / 4);
    inner.max_iters = std::min(cfg.max_iters, 800);
    return eof_search(omega, inner);
}

}  // namespace

double cl_rate_single_letter(const DensityMatrix& rho, const DistortionObservable& delta,
                             double d_ceiling, const DecompositionSearchConfig& cfg) {
    const int d = rho.dim();
    const int d_b = delta.d_b();
    if (d > 4 || d_b > 4) throw InputError("cl_rate_single_letter supports dims up to 4");
    if (delta.d_r() != d)
        throw InputError("observable reference dim must equal the source dim");
    if (cfg.restarts < 1) throw InputError("cl_rate_single_letter needs restarts >= 1");

    const int d_env = d * d_b;
    const int rows = d_b * d_env;
    const double mu = 400.0;

    auto evaluate = [&](const QuantumChannel& n) {
        return std::pair<double, double>(distortion(rho, n, delta),
                                         formation_of_output(rho, n, cfg));
    };

    auto penalized = [&](const cmat& v) {
        const QuantumChannel n = channel_from_stinespring(v, d, d_b, d_env);
        const auto [dist, value] = evaluate(n);
        const double excess = std::max(0.0, dist - d_ceiling);
        return value + mu * excess * excess;
    };

    optim::SweepConfig sweep;
    sweep.max_iters = cfg.max_iters;
    sweep.step_tolerance = cfg.step_tolerance;

    double best = std::numeric_limits<double>::infinity();
    QuantumChannel best_channel = QuantumChannel::identity(d);
    bool have_feasible = false;

    auto offer = [&](const QuantumChannel& n) {
        const auto [dist, value] = evaluate(n);
        if (dist > d_ceiling) return;
        if (!have_feasible || value < best) {
            best = value;
            best_channel = n;
            have_feasible = true;
        }
    };

    for (int trial = 0; trial < cfg.restarts; ++trial) {
        cmat v;
        if (trial == 0 && d_b == d) {
            v = cmat::Zero(rows, d);
            for (int b = 0; b < d; ++b)
                for (int a = 0; a < d; ++a) v(static_cast<long>(b) * d_env, a) =
                    (a == b) ? 1.0 : 0.0;
        } else {
            rnd::Engine gen(cfg.seed ^ (0xd1342543de82ef95ULL *
                                        static_cast<std::uint64_t>(trial + 1)));
            v = rnd::haar_isometry(rows, d, gen);
        }
        optim::sweep_isometry(v, penalized, sweep);
        offer(channel_from_stinespring(v, d, d_b, d_env));
    }

    if (have_feasible && d == 2 && d_b == 2) {
        offer(clifford_twirl(best_channel));
    }
    if (d == 2 && d_b == 2) {
        // scan the depolarizing line, standard polish for twirl-covariant inputs
        for (int k = 0; k <= 2000; ++k) offer(QuantumChannel::depolarizing(k / 2000.0));
    }

    if (!have_feasible)
        throw InfeasibleError("no feasible channel found at distortion ceiling " +
                              std::to_string(d_ceiling));
    return best;
}

RateCurve convex_hull(const RateCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 2) throw InputError("convex hull needs at least two points");
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1].d <= pts[i].d)
            throw InputError("curve distortions must be strictly increasing");

    std::vector<RatePoint> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& a = hull[hull.size() - 1];
            const double cross =
                (a.d - o.d) * (p.rate - o.rate) - (a.rate - o.rate) * (p.d - o.d);
            if (cross < -1e-15)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    RateCurve out;
    out.points = std::move(hull);
    out.convexified = true;
    return out;
}

}  // namespace qrd
