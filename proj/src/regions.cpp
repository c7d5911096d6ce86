#include "qrd/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qrd/entropy.hpp"
#include "qrd/errors.hpp"
#include "qrd/linalg.hpp"
#include "qrd/optim.hpp"
#include "qrd/random.hpp"

namespace qrd {

namespace {

void check_partition(const QsrPartition& p, size_t n) {
    std::vector<int> seen(n, 0);
    auto mark = [&](const std::vector<int>& group) {
        for (int i : group) {
            if (i < 0 || i >= static_cast<int>(n))
                throw InputError("partition index out of range");
            ++seen[i];
        }
    };
    mark(p.a);
    mark(p.b);
    mark(p.c);
    mark(p.r);
    for (size_t i = 0; i < n; ++i)
        if (seen[i] != 1) throw InputError("groups must partition the subsystems");
}

// entropy of a pure state's marginal, via the smaller Gram side
double pure_marginal_entropy(const cvec& v, const std::vector<int>& dims,
                             std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    if (keep.empty()) return 0.0;
    std::vector<int> perm = keep;
    std::vector<char> in_keep(dims.size(), 0);
    for (int k : keep) in_keep[k] = 1;
    for (size_t i = 0; i < dims.size(); ++i)
        if (!in_keep[i]) perm.push_back(static_cast<int>(i));
    const cvec w = lin::permute_subsystems(v, dims, perm);
    long dk = 1;
    for (int k : keep) dk *= dims[k];
    const long dr = w.size() / dk;
    Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        m(w.data(), dk, dr);
    if (dk <= dr) return detail::entropy_bits(m * m.adjoint());
    return detail::entropy_bits(m.adjoint() * m);
}

double pure_cmi(const cvec& v, const std::vector<int>& dims, std::vector<int> a,
                std::vector<int> b, const std::vector<int>& c) {
    std::vector<int> ac = a, bc = b, abc = a;
    ac.insert(ac.end(), c.begin(), c.end());
    bc.insert(bc.end(), c.begin(), c.end());
    abc.insert(abc.end(), b.begin(), b.end());
    abc.insert(abc.end(), c.begin(), c.end());
    return pure_marginal_entropy(v, dims, ac) + pure_marginal_entropy(v, dims, bc) -
           pure_marginal_entropy(v, dims, c) - pure_marginal_entropy(v, dims, abc);
}

}  // namespace

RateRegion qsr_region(const PureState& psi, const QsrPartition& partition) {
    check_partition(partition, psi.dims().size());
    const cvec& v = psi.vector();
    const auto& dims = psi.dims();

    std::vector<int> cb = partition.c;
    cb.insert(cb.end(), partition.b.begin(), partition.b.end());
    const double q = 0.5 * pure_cmi(v, dims, partition.r, partition.c, partition.b);
    const double h = pure_marginal_entropy(v, dims, cb) -
                     pure_marginal_entropy(v, dims, partition.b);

    const double ibc = pure_marginal_entropy(v, dims, partition.b) +
                       pure_marginal_entropy(v, dims, partition.c) -
                       pure_marginal_entropy(v, dims, cb);
    std::vector<int> ca = partition.c;
    ca.insert(ca.end(), partition.a.begin(), partition.a.end());
    const double iac = pure_marginal_entropy(v, dims, partition.a) +
                       pure_marginal_entropy(v, dims, partition.c) -
                       pure_marginal_entropy(v, dims, ca);
    const double balance = 0.5 * (ibc - iac);

    RateRegion region;
    region.halfspaces = {{1.0, 0.0, q}, {1.0, 1.0, h}};
    region.corner_q = q;
    region.corner_e = h - q;
    region.ebit_balance = balance;
    if (std::abs(region.corner_e + balance) > 1e-9)
        throw std::logic_error("ebit balance identity violated on a pure state");
    return region;
}

RateRegion tradeoff_region(const DensityMatrix& rho, const QuantumChannel& n,
                           const Isometry& v, int k) {
    if (k != 1) throw InputError("only k = 1 is supported");
    if (n.d_in() != rho.dim()) throw InputError("channel input must match the source");
    if (v.in_dims().size() != 1 ||
        v.in_dims()[0] != static_cast<int>(n.kraus().size()))
        throw InputError("split isometry must consume the channel environment");
    if (v.out_dims().size() != 2)
        throw InputError("split isometry must output two registers");

    const DensityMatrix flat(rho.matrix(), {rho.dim()});
    const PureState psi = purify(flat);
    const PureState stage1 = apply(stinespring(n), psi, {1});
    const PureState omega = apply(v, stage1, {2});  // (R, B', E_A, E_B)

    const cvec& w = omega.vector();
    const auto& dims = omega.dims();
    const double hr = pure_marginal_entropy(w, dims, {0});
    const double hbe = pure_marginal_entropy(w, dims, {1, 3});
    const double hall = pure_marginal_entropy(w, dims, {0, 1, 3});
    const double q = 0.5 * (hr + hbe - hall);

    RateRegion region;
    region.halfspaces = {{1.0, 0.0, q}, {1.0, 1.0, hbe}};
    region.corner_q = q;
    region.corner_e = hbe - q;
    return region;
}

namespace {

// phi_RAB with the channel applied to A, as a raw state on (R, B', B)
cmat qsi_output(const DensityMatrix& rho_ab, const QuantumChannel& n,
                std::vector<int>& dims_out) {
    if (rho_ab.dims().size() != 2)
        throw InputError("side-information ops expect a bipartite source");
    if (n.d_in() != rho_ab.dims()[0])
        throw InputError("channel input must match subsystem A");
    const PureState phi = purify(rho_ab);
    const int d_r = phi.dims()[0];
    const int d_b = rho_ab.dims()[1];
    dims_out = {d_r, n.d_out(), d_b};
    cmat omega = cmat::Zero(static_cast<long>(d_r) * n.d_out() * d_b,
                            static_cast<long>(d_r) * n.d_out() * d_b);
    const cmat eye_r = cmat::Identity(d_r, d_r);
    const cmat eye_b = cmat::Identity(d_b, d_b);
    for (const auto& a : n.kraus()) {
        const cvec w = lin::kron(eye_r, lin::kron(a, eye_b)) * phi.vector();
        omega.noalias() += w * w.adjoint();
    }
    return omega;
}

double mixed_cmi(const cmat& m, const std::vector<int>& dims,
                 const std::vector<int>& a, const std::vector<int>& b,
                 const std::vector<int>& c) {
    auto ent = [&](std::vector<int> keep) {
        std::sort(keep.begin(), keep.end());
        return detail::entropy_bits(lin::partial_trace(m, dims, keep));
    };
    std::vector<int> ac = a, bc = b, abc = a;
    ac.insert(ac.end(), c.begin(), c.end());
    bc.insert(bc.end(), c.begin(), c.end());
    abc.insert(abc.end(), b.begin(), b.end());
    abc.insert(abc.end(), c.begin(), c.end());
    const double hc = c.empty() ? 0.0 : ent(c);
    return ent(ac) + ent(bc) - hc - ent(abc);
}

}  // namespace

double qrst_qsi_feedback(const DensityMatrix& rho_ab, const QuantumChannel& n,
                         double e) {
    if (e < 0.0) throw InputError("entanglement rate must be non-negative");
    std::vector<int> dims;
    const cmat omega = qsi_output(rho_ab, n, dims);
    const double cmi = mixed_cmi(omega, dims, {0}, {1}, {2});
    const double hcond = detail::entropy_bits(lin::partial_trace(omega, dims, {1, 2})) -
                         detail::entropy_bits(lin::partial_trace(omega, dims, {2}));
    return std::max(0.5 * cmi, hcond - e);
}

namespace {

// omega vector on (R, B', E_A, E_B, B) for a fixed environment split
cvec split_state(const DensityMatrix& rho_ab, const QuantumChannel& n,
                 const Isometry& v, std::vector<int>& dims_out) {
    if (rho_ab.dims().size() != 2)
        throw InputError("side-information ops expect a bipartite source");
    if (n.d_in() != rho_ab.dims()[0])
        throw InputError("channel input must match subsystem A");
    if (v.in_dims().size() != 1 ||
        v.in_dims()[0] != static_cast<int>(n.kraus().size()))
        throw InputError("split isometry must consume the channel environment");
    if (v.out_dims().size() != 2)
        throw InputError("split isometry must output two registers");
    const PureState phi = purify(rho_ab);
    const PureState stage1 = apply(stinespring(n), phi, {1});
    const PureState omega = apply(v, stage1, {2});
    dims_out = omega.dims();
    return omega.vector();
}

double split_objective(const cvec& w, const std::vector<int>& dims) {
    const double cmi = pure_cmi(w, dims, {0}, {1, 3}, {4});
    const double hcond = pure_marginal_entropy(w, dims, {1, 3, 4}) -
                         pure_marginal_entropy(w, dims, {4});
    return std::max(0.5 * cmi, hcond);
}

}  // namespace

double qrst_qsi_nonfeedback_Ip(const DensityMatrix& rho_ab, const QuantumChannel& n,
                               const Isometry& v) {
    std::vector<int> dims;
    const cvec w = split_state(rho_ab, n, v, dims);
    return split_objective(w, dims);
}

Isometry trivial_split_keep_ea(int d_e) {
    return Isometry(cmat::Identity(d_e, d_e), {d_e}, {d_e, 1});
}

Isometry trivial_split_keep_eb(int d_e) {
    return Isometry(cmat::Identity(d_e, d_e), {d_e}, {1, d_e});
}

double qrst_qsi_nonfeedback_search(const DensityMatrix& rho_ab, const QuantumChannel& n,
                                   const DecompositionSearchConfig& cfg) {
    if (cfg.restarts < 1) throw InputError("split search needs restarts >= 1");
    const int d_e = static_cast<int>(n.kraus().size());
    double best = std::min(
        qrst_qsi_nonfeedback_Ip(rho_ab, n, trivial_split_keep_ea(d_e)),
        qrst_qsi_nonfeedback_Ip(rho_ab, n, trivial_split_keep_eb(d_e)));

    const PureState phi = purify(rho_ab);
    const PureState stage1 = apply(stinespring(n), phi, {1});

    optim::SweepConfig sweep;
    sweep.max_iters = cfg.max_iters;
    sweep.step_tolerance = cfg.step_tolerance;

    auto objective = [&](const cmat& vm) {
        const Isometry v(vm, {d_e}, {d_e, d_e});
        const PureState omega = apply(v, stage1, {2});
        return split_objective(omega.vector(), omega.dims());
    };

    for (int trial = 0; trial < cfg.restarts; ++trial) {
        cmat v;
        if (trial == 0) {
            v = cmat::Zero(static_cast<long>(d_e) * d_e, d_e);
            for (int k = 0; k < d_e; ++k) v(static_cast<long>(k) * d_e, k) = 1.0;
        } else {
            rnd::Engine gen(cfg.seed ^ (0xa0761d6478bd642fULL *
                                        static_cast<std::uint64_t>(trial + 1)));
            v = rnd::haar_isometry(d_e * d_e, d_e, gen);
        }
        best = std::min(best, optim::sweep_isometry(v, objective, sweep));
    }
    return best;
}

std::pair<double, double> max_identity_check(const QuantumChannel& n, int d_r, int d_b,
                                             const DecompositionSearchConfig& cfg) {
    if (d_r < 1 || d_r > 3 || d_b < 1 || d_b > 3)
        throw InputError("max_identity_check supports dims up to 3");
    if (n.d_in() > 3 || n.d_out() > 3)
        throw InputError("max_identity_check supports channels up to dim 3");
    if (cfg.restarts < 1) throw InputError("max_identity_check needs restarts >= 1");
    const int d_a = n.d_in();
    const int d_bp = n.d_out();

    // unassisted side: sup over psi_RA of I(R;B')
    std::vector<cmat> kraus_t;
    for (const auto& a : n.kraus()) kraus_t.push_back(a.transpose());
    auto lhs_value = [&](const cmat& col) {
        Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            t(col.data(), d_r, d_a);
        cmat omega = cmat::Zero(static_cast<long>(d_r) * d_bp,
                                static_cast<long>(d_r) * d_bp);
        for (const auto& at : kraus_t) {
            const cmat out = t * at;
            Eigen::Map<const cvec> w(out.data(), out.size());
            cvec ww(static_cast<long>(d_r) * d_bp);
            for (int r = 0; r < d_r; ++r)
                for (int b = 0; b < d_bp; ++b) ww(static_cast<long>(r) * d_bp + b) = out(r, b);
            omega.noalias() += ww * ww.adjoint();
        }
        const std::vector<int> dims = {d_r, d_bp};
        return detail::entropy_bits(lin::partial_trace(omega, dims, {0})) +
               detail::entropy_bits(lin::partial_trace(omega, dims, {1})) -
               detail::entropy_bits(omega);
    };

    optim::SweepConfig sweep;
    sweep.max_iters = cfg.max_iters;
    sweep.step_tolerance = cfg.step_tolerance;

    double lhs = -std::numeric_limits<double>::infinity();
    cvec psi_best;
    for (int trial = 0; trial < cfg.restarts; ++trial) {
        cmat v;
        if (trial == 0) {
            v = cmat::Zero(static_cast<long>(d_r) * d_a, 1);
            const int s = std::min(d_r, d_a);
            for (int k = 0; k < s; ++k)
                v(static_cast<long>(k) * d_a + k, 0) = 1.0 / std::sqrt(double(s));
        } else {
            rnd::Engine gen(cfg.seed ^ (0xe7037ed1a0b428dbULL *
                                        static_cast<std::uint64_t>(trial + 1)));
            v = cmat(rnd::random_unit_vector(d_r * d_a, gen));
        }
        const double val = -optim::sweep_isometry(
            v, [&](const cmat& c) { return -lhs_value(c); }, sweep);
        if (val > lhs) {
            lhs = val;
            psi_best = v.col(0);
        }
    }

    // assisted side: sup over phi_RAB of I(R;B'|B)
    std::vector<cmat> big_kraus;
    const cmat eye_r = cmat::Identity(d_r, d_r);
    const cmat eye_b = cmat::Identity(d_b, d_b);
    for (const auto& a : n.kraus())
        big_kraus.push_back(lin::kron(eye_r, lin::kron(a, eye_b)));
    const std::vector<int> dims3 = {d_r, d_bp, d_b};
    auto rhs_value = [&](const cmat& col) {
        cmat omega = cmat::Zero(static_cast<long>(d_r) * d_bp * d_b,
                                static_cast<long>(d_r) * d_bp * d_b);
        for (const auto& bk : big_kraus) {
            const cvec w = bk * col.col(0);
            omega.noalias() += w * w.adjoint();
        }
        return mixed_cmi(omega, dims3, {0}, {1}, {2});
    };

    double rhs = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < cfg.restarts; ++trial) {
        cmat v;
        if (trial == 0) {
            // the product embedding psi* x |0>_B certifies rhs >= lhs
            cvec seed = cvec::Zero(static_cast<long>(d_r) * d_a * d_b);
            for (int r = 0; r < d_r; ++r)
                for (int a = 0; a < d_a; ++a)
                    seed((static_cast<long>(r) * d_a + a) * d_b) =
                        std::conj(psi_best(static_cast<long>(r) * d_a + a));
            v = cmat(seed);
        } else {
            rnd::Engine gen(cfg.seed ^ (0x8ebc6af09c88c6e3ULL *
                                        static_cast<std::uint64_t>(trial + 1)));
            v = cmat(rnd::random_unit_vector(d_r * d_a * d_b, gen));
        }
        rhs = std::max(rhs, -optim::sweep_isometry(
                                v, [&](const cmat& c) { return -rhs_value(c); }, sweep));
    }
    return {lhs, rhs};
}

}  // namespace qrd
