#include "qrd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrd/errors.hpp"
#include "qrd/tolerances.hpp"

namespace qrd {

Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

namespace lin {

int product(const std::vector<int>& dims) {
    int p = 1;
    for (int d : dims) p *= d;
    return p;
}

cmat kron(const cmat& a, const cmat& b) {
    cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

cvec kron(const cvec& a, const cvec& b) {
    cvec out(a.size() * b.size());
    for (int i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

double herm_residual(const cmat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

cmat hermitize(const cmat& m) {
    return 0.5 * (m + m.adjoint());
}

HermEig herm_eig(const cmat& m) {
    Eigen::SelfAdjointEigenSolver<cmat> solver(hermitize(m));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

rvec herm_eigenvalues(const cmat& m) {
    Eigen::SelfAdjointEigenSolver<cmat> solver(hermitize(m), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    return solver.eigenvalues();
}

cmat herm_log(const cmat& m, double floor) {
    auto [vals, vecs] = herm_eig(m);
    rvec logged(vals.size());
    for (int i = 0; i < vals.size(); ++i)
        logged(i) = std::log(std::max(vals(i), floor));
    return vecs * logged.asDiagonal() * vecs.adjoint();
}

cmat herm_exp(const cmat& m) {
    auto [vals, vecs] = herm_eig(m);
    rvec expd(vals.size());
    for (int i = 0; i < vals.size(); ++i) expd(i) = std::exp(vals(i));
    return vecs * expd.asDiagonal() * vecs.adjoint();
}

cmat herm_inv_sqrt(const cmat& m, double floor) {
    auto [vals, vecs] = herm_eig(m);
    rvec r(vals.size());
    for (int i = 0; i < vals.size(); ++i)
        r(i) = 1.0 / std::sqrt(std::max(vals(i), floor));
    return vecs * r.asDiagonal() * vecs.adjoint();
}

namespace {

std::vector<int> row_strides(const std::vector<int>& dims) {
    std::vector<int> s(dims.size());
    int acc = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        s[k] = acc;
        acc *= dims[k];
    }
    return s;
}

void check_perm(const std::vector<int>& dims, const std::vector<int>& perm) {
    if (perm.size() != dims.size())
        throw InputError("permutation length does not match subsystem count");
    std::vector<bool> seen(dims.size(), false);
    for (int p : perm) {
        if (p < 0 || p >= static_cast<int>(dims.size()) || seen[p])
            throw InputError("invalid subsystem permutation");
        seen[p] = true;
    }
}

// flat index map old -> new under the permutation
std::vector<int> perm_index_map(const std::vector<int>& dims,
                                const std::vector<int>& perm) {
    const int n = static_cast<int>(dims.size());
    const int total = product(dims);
    auto in_str = row_strides(dims);
    std::vector<int> out_dims(n);
    for (int k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
    auto out_str = row_strides(out_dims);

    std::vector<int> map(total);
    std::vector<int> idx(n, 0);
    for (int flat = 0; flat < total; ++flat) {
        int target = 0;
        for (int k = 0; k < n; ++k) target += idx[perm[k]] * out_str[k];
        map[flat] = target;
        for (int k = n - 1; k >= 0; --k) {
            if (++idx[k] < dims[k]) break;
            idx[k] = 0;
        }
    }
    (void)in_str;
    return map;
}

}

cmat permute_subsystems(const cmat& m, const std::vector<int>& dims,
                        const std::vector<int>& perm) {
    check_perm(dims, perm);
    const int total = product(dims);
    if (m.rows() != total || m.cols() != total)
        throw InputError("matrix size does not match dims");
    auto map = perm_index_map(dims, perm);
    cmat out(total, total);
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j)
            out(map[i], map[j]) = m(i, j);
    return out;
}

cvec permute_subsystems(const cvec& v, const std::vector<int>& dims,
                        const std::vector<int>& perm) {
    check_perm(dims, perm);
    const int total = product(dims);
    if (v.size() != total) throw InputError("vector size does not match dims");
    auto map = perm_index_map(dims, perm);
    cvec out(total);
    for (int i = 0; i < total; ++i) out(map[i]) = v(i);
    return out;
}

cmat partial_trace(const cmat& m, const std::vector<int>& dims,
                   const std::vector<int>& keep) {
    const int n = static_cast<int>(dims.size());
    const int total = product(dims);
    if (m.rows() != total || m.cols() != total)
        throw InputError("matrix size does not match dims");
    for (size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] < 0 || keep[k] >= n)
            throw InputError("partial_trace index out of range");
        if (k > 0 && keep[k] <= keep[k - 1])
            throw InputError("partial_trace keep list must be strictly ascending");
    }

    std::vector<int> traced;
    for (int k = 0; k < n; ++k)
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);

    auto str = row_strides(dims);
    int dk = 1, dt = 1;
    for (int k : keep) dk *= dims[k];
    for (int k : traced) dt *= dims[k];

    // offset of each kept / traced multi-index in the flat index
    std::vector<int> keep_off(dk, 0), tr_off(dt, 0);
    {
        std::vector<int> idx(keep.size(), 0);
        for (int c = 0; c < dk; ++c) {
            int off = 0;
            for (size_t k = 0; k < keep.size(); ++k) off += idx[k] * str[keep[k]];
            keep_off[c] = off;
            for (int k = static_cast<int>(keep.size()) - 1; k >= 0; --k) {
                if (++idx[k] < dims[keep[k]]) break;
                idx[k] = 0;
            }
        }
    }
    {
        std::vector<int> idx(traced.size(), 0);
        for (int c = 0; c < dt; ++c) {
            int off = 0;
            for (size_t k = 0; k < traced.size(); ++k) off += idx[k] * str[traced[k]];
            tr_off[c] = off;
            for (int k = static_cast<int>(traced.size()) - 1; k >= 0; --k) {
                if (++idx[k] < dims[traced[k]]) break;
                idx[k] = 0;
            }
        }
    }

    cmat out = cmat::Zero(dk, dk);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j) {
            cxd acc(0, 0);
            for (int t = 0; t < dt; ++t)
                acc += m(keep_off[i] + tr_off[t], keep_off[j] + tr_off[t]);
            out(i, j) = acc;
        }
    return out;
}

cmat embed(const cmat& op, const std::vector<int>& dims,
           const std::vector<int>& on) {
    const int n = static_cast<int>(dims.size());
    const int total = product(dims);
    for (size_t k = 0; k < on.size(); ++k) {
        if (on[k] < 0 || on[k] >= n) throw InputError("embed index out of range");
        if (k > 0 && on[k] <= on[k - 1])
            throw InputError("embed subsystem list must be strictly ascending");
    }
    int dop = 1;
    for (int k : on) dop *= dims[k];
    if (op.rows() != dop || op.cols() != dop)
        throw InputError("embedded operator size does not match target subsystems");

    std::vector<int> rest;
    for (int k = 0; k < n; ++k)
        if (std::find(on.begin(), on.end(), k) == on.end()) rest.push_back(k);

    auto str = row_strides(dims);
    int dr = 1;
    for (int k : rest) dr *= dims[k];

    std::vector<int> on_off(dop, 0), rest_off(dr, 0);
    {
        std::vector<int> idx(on.size(), 0);
        for (int c = 0; c < dop; ++c) {
            int off = 0;
            for (size_t k = 0; k < on.size(); ++k) off += idx[k] * str[on[k]];
            on_off[c] = off;
            for (int k = static_cast<int>(on.size()) - 1; k >= 0; --k) {
                if (++idx[k] < dims[on[k]]) break;
                idx[k] = 0;
            }
        }
    }
    {
        std::vector<int> idx(rest.size(), 0);
        for (int c = 0; c < dr; ++c) {
            int off = 0;
            for (size_t k = 0; k < rest.size(); ++k) off += idx[k] * str[rest[k]];
            rest_off[c] = off;
            for (int k = static_cast<int>(rest.size()) - 1; k >= 0; --k) {
                if (++idx[k] < dims[rest[k]]) break;
                idx[k] = 0;
            }
        }
    }

    cmat out = cmat::Zero(total, total);
    for (int i = 0; i < dop; ++i)
        for (int j = 0; j < dop; ++j) {
            const cxd v = op(i, j);
            if (v == cxd(0, 0)) continue;
            for (int r = 0; r < dr; ++r)
                out(on_off[i] + rest_off[r], on_off[j] + rest_off[r]) = v;
        }
    return out;
}

}
}
