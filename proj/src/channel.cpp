#include "qrd/channel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qrd/errors.hpp"
#include "qrd/linalg.hpp"
#include "qrd/random.hpp"
#include "qrd/tolerances.hpp"

namespace qrd {

namespace {

// vec used for Choi outer products: w[(a,b)] = A(b,a), flat index a*d_out + b.
cvec choi_vec(const cmat& a) {
    const int d_out = static_cast<int>(a.rows());
    const int d_in = static_cast<int>(a.cols());
    cvec w(d_in * d_out);
    for (int i = 0; i < d_in; ++i)
        for (int b = 0; b < d_out; ++b) w(i * d_out + b) = a(b, i);
    return w;
}

cmat choi_from_kraus(const std::vector<cmat>& kraus) {
    const int d_in = static_cast<int>(kraus[0].cols());
    const int d_out = static_cast<int>(kraus[0].rows());
    cmat j = cmat::Zero(d_in * d_out, d_in * d_out);
    for (const auto& a : kraus) {
        const cvec w = choi_vec(a);
        j.noalias() += w * w.adjoint();
    }
    return j;
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<cmat> kraus) {
    if (kraus.empty()) throw InputError("channel needs at least one Kraus operator");
    d_out_ = static_cast<int>(kraus[0].rows());
    d_in_ = static_cast<int>(kraus[0].cols());
    if (d_in_ < 1 || d_out_ < 1) throw InputError("Kraus operators must be nonempty");
    for (const auto& a : kraus)
        if (a.rows() != d_out_ || a.cols() != d_in_)
            throw InputError("Kraus operators must share a common shape");
    cmat comp = cmat::Zero(d_in_, d_in_);
    for (const auto& a : kraus) comp.noalias() += a.adjoint() * a;
    const double res = (comp - cmat::Identity(d_in_, d_in_)).cwiseAbs().maxCoeff();
    if (res > tolerances().completeness)
        throw InputError("Kraus family is not trace preserving, residual " +
                         std::to_string(res));
    kraus_ = std::move(kraus);
    choi_ = choi_from_kraus(kraus_);
}

QuantumChannel QuantumChannel::from_choi(const cmat& choi, int d_in, int d_out) {
    if (d_in < 1 || d_out < 1) throw InputError("from_choi: dimensions must be positive");
    if (choi.rows() != static_cast<long>(d_in) * d_out || choi.rows() != choi.cols())
        throw InputError("from_choi: matrix shape does not match d_in*d_out");
    if (lin::herm_residual(choi) > tolerances().hermitian)
        throw InputError("from_choi: matrix is not Hermitian");
    const cmat marg = lin::partial_trace(choi, {d_in, d_out}, {0});
    if ((marg - cmat::Identity(d_in, d_in)).cwiseAbs().maxCoeff() >
        tolerances().choi_marginal)
        throw InputError("from_choi: output marginal is not the identity");

    const auto eig = lin::herm_eig(lin::hermitize(choi));
    if (eig.values(0) < -tolerances().psd)
        throw InputError("from_choi: matrix is not positive semidefinite");

    std::vector<cmat> kraus;
    for (int k = static_cast<int>(eig.values.size()) - 1; k >= 0; --k) {
        const double mu = eig.values(k);
        if (mu < tolerances().kraus_cutoff) break;
        cvec w = eig.vectors.col(k);
        // fix the eigenvector phase so reconstruction is reproducible
        int arg = 0;
        for (int i = 1; i < w.size(); ++i)
            if (std::abs(w(i)) > std::abs(w(arg)) + 1e-12) arg = i;
        if (std::abs(w(arg)) > 0) w *= std::conj(w(arg)) / std::abs(w(arg));
        cmat a(d_out, d_in);
        for (int i = 0; i < d_in; ++i)
            for (int b = 0; b < d_out; ++b) a(b, i) = std::sqrt(mu) * w(i * d_out + b);
        kraus.push_back(std::move(a));
    }
    if (kraus.empty()) throw InputError("from_choi: matrix is numerically zero");
    return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::identity(int d) {
    if (d < 1) throw InputError("identity channel needs d >= 1");
    return QuantumChannel({cmat::Identity(d, d)});
}

QuantumChannel QuantumChannel::depolarizing(double p) {
    if (p < 0.0 || p > 1.0) throw InputError("depolarizing parameter must lie in [0,1]");
    std::vector<cmat> kraus;
    kraus.push_back(std::sqrt(1.0 - p) * paulis::I2());
    if (p > 0.0) {
        const double c = std::sqrt(p / 3.0);
        kraus.push_back(c * paulis::X());
        kraus.push_back(c * paulis::Y());
        kraus.push_back(c * paulis::Z());
    }
    return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::replace_with(const DensityMatrix& sigma, int d_in) {
    if (d_in < 1) throw InputError("replace_with needs d_in >= 1");
    const auto eig = lin::herm_eig(lin::hermitize(sigma.matrix()));
    std::vector<cmat> kraus;
    const int d_out = sigma.dim();
    for (int k = d_out - 1; k >= 0; --k) {
        const double lam = std::max(eig.values(k), 0.0);
        if (lam < tolerances().kraus_cutoff) continue;
        for (int i = 0; i < d_in; ++i) {
            cmat a = cmat::Zero(d_out, d_in);
            a.col(i) = std::sqrt(lam) * eig.vectors.col(k);
            kraus.push_back(std::move(a));
        }
    }
    return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::random_channel(int d_in, int d_out, int n_kraus,
                                              std::uint64_t seed) {
    if (d_in < 1 || d_out < 1 || n_kraus < 1)
        throw InputError("random_channel needs positive dimensions");
    if (static_cast<long>(d_out) * n_kraus < d_in)
        throw InputError("random_channel: d_out*n_kraus must be at least d_in");
    rnd::Engine gen(seed);
    const cmat v = rnd::haar_isometry(d_out * n_kraus, d_in, gen);
    std::vector<cmat> kraus;
    for (int x = 0; x < n_kraus; ++x) {
        cmat a(d_out, d_in);
        for (int b = 0; b < d_out; ++b) a.row(b) = v.row(b * n_kraus + x);
        kraus.push_back(std::move(a));
    }
    return QuantumChannel(std::move(kraus));
}

cmat QuantumChannel::apply_matrix(const cmat& rho) const {
    if (rho.rows() != d_in_ || rho.cols() != d_in_)
        throw InputError("apply_matrix: state dimension mismatch");
    cmat out = cmat::Zero(d_out_, d_out_);
    for (const auto& a : kraus_) out.noalias() += a * rho * a.adjoint();
    return out;
}

Isometry::Isometry(cmat matrix, std::vector<int> in_dims, std::vector<int> out_dims)
    : m_(std::move(matrix)), in_dims_(std::move(in_dims)), out_dims_(std::move(out_dims)) {
    if (lin::product(in_dims_) != m_.cols() || lin::product(out_dims_) != m_.rows())
        throw InputError("isometry dims do not match its matrix shape");
    if (m_.rows() < m_.cols()) throw InputError("isometry cannot shrink the space");
    const double res =
        ((m_.adjoint() * m_) - cmat::Identity(m_.cols(), m_.cols())).cwiseAbs().maxCoeff();
    if (res > tolerances().isometry)
        throw InputError("matrix is not an isometry, residual " + std::to_string(res));
}

namespace {

struct TargetPlan {
    std::vector<int> perm_fwd;       // targets first, then the rest
    std::vector<int> dims_rest;
    std::vector<int> perm_back;      // applied after the map, see below
    std::vector<int> out_dims;       // final subsystem dims
};

// Shared layout bookkeeping for applying a map to a subset of subsystems.
TargetPlan plan_targets(const std::vector<int>& dims, const std::vector<int>& on,
                        const std::vector<int>& block_out_dims) {
    const int n = static_cast<int>(dims.size());
    if (on.empty()) throw InputError("apply: target list is empty");
    for (size_t k = 0; k + 1 < on.size(); ++k)
        if (on[k] >= on[k + 1]) throw InputError("apply: targets must be ascending");
    if (on.front() < 0 || on.back() >= n) throw InputError("apply: target out of range");

    TargetPlan plan;
    plan.perm_fwd = on;
    std::vector<char> is_target(n, 0);
    for (int t : on) is_target[t] = 1;
    for (int i = 0; i < n; ++i)
        if (!is_target[i]) {
            plan.perm_fwd.push_back(i);
            plan.dims_rest.push_back(dims[i]);
        }

    // final layout: block outputs sit where the first target was
    for (int i = 0; i < n; ++i) {
        if (i == on.front())
            for (int d : block_out_dims) plan.out_dims.push_back(d);
        else if (!is_target[i])
            plan.out_dims.push_back(dims[i]);
    }

    // after the map the order is [block..., rest...]; permute to final order
    const int nb = static_cast<int>(block_out_dims.size());
    std::vector<int> current;  // current slot of each final subsystem
    int rest_pos = 0;
    for (int i = 0; i < n; ++i) {
        if (i == on.front())
            for (int k = 0; k < nb; ++k) current.push_back(k);
        else if (!is_target[i])
            current.push_back(nb + rest_pos);
        if (!is_target[i]) ++rest_pos;
    }
    plan.perm_back = current;
    return plan;
}

}  // namespace

DensityMatrix apply(const QuantumChannel& n, const DensityMatrix& rho,
                    const std::vector<int>& on) {
    const auto& dims = rho.dims();
    std::vector<int> tdims;
    for (int t : on) {
        if (t < 0 || t >= static_cast<int>(dims.size()))
            throw InputError("apply: target out of range");
        tdims.push_back(dims[t]);
    }
    if (lin::product(tdims) != n.d_in())
        throw InputError("apply: channel input dimension does not match targets");
    const auto plan = plan_targets(dims, on, {n.d_out()});

    std::vector<int> dims_fwd = tdims;
    dims_fwd.insert(dims_fwd.end(), plan.dims_rest.begin(), plan.dims_rest.end());
    const cmat rearranged = lin::permute_subsystems(rho.matrix(), dims, plan.perm_fwd);

    const long d_rest = lin::product(plan.dims_rest);
    cmat out = cmat::Zero(n.d_out() * d_rest, n.d_out() * d_rest);
    const cmat eye = cmat::Identity(d_rest, d_rest);
    for (const auto& a : n.kraus()) {
        const cmat big = lin::kron(a, eye);
        out.noalias() += big * rearranged * big.adjoint();
    }

    std::vector<int> dims_mid = {n.d_out()};
    dims_mid.insert(dims_mid.end(), plan.dims_rest.begin(), plan.dims_rest.end());
    cmat fin = lin::permute_subsystems(out, dims_mid, plan.perm_back);

    std::vector<std::string> labels;  // labels do not survive a reshaping map
    return DensityMatrix(std::move(fin), plan.out_dims, labels);
}

PureState apply(const Isometry& v, const PureState& psi, const std::vector<int>& on) {
    const auto& dims = psi.dims();
    std::vector<int> tdims;
    for (int t : on) {
        if (t < 0 || t >= static_cast<int>(dims.size()))
            throw InputError("apply: target out of range");
        tdims.push_back(dims[t]);
    }
    if (lin::product(tdims) != v.d_in())
        throw InputError("apply: isometry input dimension does not match targets");
    const auto plan = plan_targets(dims, on, v.out_dims());

    const cvec rearranged = lin::permute_subsystems(psi.vector(), dims, plan.perm_fwd);
    const long d_rest = lin::product(plan.dims_rest);
    const cmat big = lin::kron(v.matrix(), cmat::Identity(d_rest, d_rest));
    cvec mid = big * rearranged;

    std::vector<int> dims_mid = v.out_dims();
    dims_mid.insert(dims_mid.end(), plan.dims_rest.begin(), plan.dims_rest.end());
    cvec fin = lin::permute_subsystems(mid, dims_mid, plan.perm_back);
    return PureState(std::move(fin), plan.out_dims);
}

DensityMatrix apply(const Isometry& v, const DensityMatrix& rho,
                    const std::vector<int>& on) {
    const auto& dims = rho.dims();
    std::vector<int> tdims;
    for (int t : on) {
        if (t < 0 || t >= static_cast<int>(dims.size()))
            throw InputError("apply: target out of range");
        tdims.push_back(dims[t]);
    }
    if (lin::product(tdims) != v.d_in())
        throw InputError("apply: isometry input dimension does not match targets");
    const auto plan = plan_targets(dims, on, v.out_dims());

    const cmat rearranged = lin::permute_subsystems(rho.matrix(), dims, plan.perm_fwd);
    const long d_rest = lin::product(plan.dims_rest);
    const cmat big = lin::kron(v.matrix(), cmat::Identity(d_rest, d_rest));
    const cmat mid = big * rearranged * big.adjoint();

    std::vector<int> dims_mid = v.out_dims();
    dims_mid.insert(dims_mid.end(), plan.dims_rest.begin(), plan.dims_rest.end());
    cmat fin = lin::permute_subsystems(mid, dims_mid, plan.perm_back);
    std::vector<std::string> labels;
    return DensityMatrix(std::move(fin), plan.out_dims, labels);
}

Isometry stinespring(const QuantumChannel& n) {
    const int d_e = static_cast<int>(n.kraus().size());
    const int d_in = n.d_in();
    const int d_out = n.d_out();
    cmat v = cmat::Zero(static_cast<long>(d_out) * d_e, d_in);
    for (int e = 0; e < d_e; ++e) {
        cvec ket = cvec::Zero(d_e);
        ket(e) = 1.0;
        v.noalias() += lin::kron(n.kraus()[e], cmat(ket));
    }
    return Isometry(std::move(v), {d_in}, {d_out, d_e});
}

Isometry split_environment(const Isometry& v, const Isometry& w) {
    if (w.in_dims().size() != 1 || w.in_dims()[0] != v.out_dims().back())
        throw InputError("split_environment: W must consume V's final output");
    const long d_keep = v.d_out() / v.out_dims().back();
    const cmat m = lin::kron(cmat::Identity(d_keep, d_keep), w.matrix()) * v.matrix();
    std::vector<int> out_dims(v.out_dims().begin(), v.out_dims().end() - 1);
    out_dims.insert(out_dims.end(), w.out_dims().begin(), w.out_dims().end());
    return Isometry(m, v.in_dims(), out_dims);
}

namespace paulis {
const cmat& I2() {
    static const cmat m = cmat::Identity(2, 2);
    return m;
}
const cmat& X() {
    static const cmat m = [] {
        cmat v(2, 2);
        v << 0, 1, 1, 0;
        return v;
    }();
    return m;
}
const cmat& Y() {
    static const cmat m = [] {
        cmat v(2, 2);
        v << 0, cxd(0, -1), cxd(0, 1), 0;
        return v;
    }();
    return m;
}
const cmat& Z() {
    static const cmat m = [] {
        cmat v(2, 2);
        v << 1, 0, 0, -1;
        return v;
    }();
    return m;
}
}  // namespace paulis

namespace {

cmat canonical_phase(const cmat& u) {
    int ar = 0, ac = 0;
    double best = -1.0;
    for (int r = 0; r < u.rows(); ++r)
        for (int c = 0; c < u.cols(); ++c)
            if (std::abs(u(r, c)) > best + 1e-9) {
                best = std::abs(u(r, c));
                ar = r;
                ac = c;
            }
    return u * (std::conj(u(ar, ac)) / std::abs(u(ar, ac)));
}

bool same_matrix(const cmat& a, const cmat& b) {
    return (a - b).cwiseAbs().maxCoeff() < 1e-9;
}

std::vector<cmat> build_tetrahedral_group() {
    const cxd mi(0, -1);
    std::vector<cmat> gens;
    gens.push_back(canonical_phase(mi * paulis::X()));
    gens.push_back(canonical_phase(mi * paulis::Y()));
    gens.push_back(canonical_phase(mi * paulis::Z()));
    gens.push_back(canonical_phase(
        0.5 * (paulis::I2() + mi * (paulis::X() + paulis::Y() + paulis::Z()))));

    std::vector<cmat> group = {canonical_phase(paulis::I2())};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<cmat> fresh;
        for (const auto& g : group)
            for (const auto& h : gens) {
                const cmat p = canonical_phase(g * h);
                auto seen = [&](const std::vector<cmat>& set) {
                    for (const auto& q : set)
                        if (same_matrix(p, q)) return true;
                    return false;
                };
                if (!seen(group) && !seen(fresh)) fresh.push_back(p);
            }
        if (!fresh.empty()) {
            grew = true;
            group.insert(group.end(), fresh.begin(), fresh.end());
        }
    }
    if (group.size() != 12)
        throw std::logic_error("tetrahedral closure produced " +
                               std::to_string(group.size()) + " elements");
    return group;
}

}  // namespace

const std::vector<cmat>& tetrahedral_unitaries() {
    static const std::vector<cmat> group = build_tetrahedral_group();
    return group;
}

QuantumChannel clifford_twirl(const QuantumChannel& n) {
    if (n.d_in() != 2 || n.d_out() != 2)
        throw InputError("clifford_twirl expects a qubit channel");
    const auto& group = tetrahedral_unitaries();
    const double scale = 1.0 / std::sqrt(static_cast<double>(group.size()));
    std::vector<cmat> kraus;
    for (const auto& u : group)
        for (const auto& a : n.kraus()) kraus.push_back(scale * u.adjoint() * a * u);
    const cmat j = choi_from_kraus(kraus);
    return QuantumChannel::from_choi(j, 2, 2);
}

double entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& n) {
    if (n.d_in() != rho.dim() || n.d_out() != rho.dim())
        throw InputError("entanglement fidelity needs d_in = d_out = dim(rho)");
    double f = 0.0;
    for (const auto& a : n.kraus()) f += std::norm((rho.matrix() * a).trace());
    return f;
}

double entanglement_fidelity_purified(const DensityMatrix& rho,
                                      const QuantumChannel& n) {
    if (n.d_in() != rho.dim() || n.d_out() != rho.dim())
        throw InputError("entanglement fidelity needs d_in = d_out = dim(rho)");
    const PureState psi = purify(rho);
    std::vector<int> targets;
    for (size_t k = 1; k < psi.dims().size(); ++k)
        targets.push_back(static_cast<int>(k));
    const DensityMatrix omega = apply(n, DensityMatrix(psi.density(), psi.dims()), targets);
    const cxd val = psi.vector().adjoint() * omega.matrix() * psi.vector();
    return val.real();
}

}  // namespace qrd
