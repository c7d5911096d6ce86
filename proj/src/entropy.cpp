#include "qrd/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "qrd/errors.hpp"
#include "qrd/tolerances.hpp"

namespace qrd {

namespace detail {

double entropy_bits(const cmat& m, int* clamp_count) {
    rvec ev = lin::herm_eigenvalues(m);
    const double clamp = tolerances().entropy_clamp;
    double mass = 0.0;
    int clamped = 0;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < -tolerances().psd)
            throw InputError("entropy input has an eigenvalue below -1e-9");
        if (ev(i) < clamp) {
            ++clamped;
        } else {
            mass += ev(i);
        }
    }
    double h = 0.0;
    if (mass > 0.0) {
        for (int i = 0; i < ev.size(); ++i) {
            if (ev(i) < clamp) continue;
            double p = ev(i) / mass;
            h -= p * std::log2(p);
        }
    }
    if (clamp_count) *clamp_count = clamped;
    return std::max(h, 0.0);
}

}

namespace {

std::vector<int> merged_sorted(std::initializer_list<const std::vector<int>*> sets) {
    std::vector<int> out;
    for (const auto* s : sets) out.insert(out.end(), s->begin(), s->end());
    std::sort(out.begin(), out.end());
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] == out[i - 1])
            throw InputError("subsystem index sets must be disjoint");
    return out;
}

double marginal_entropy(const DensityMatrix& rho, const std::vector<int>& keep) {
    if (keep.size() == rho.dims().size())
        return detail::entropy_bits(rho.matrix());
    return detail::entropy_bits(lin::partial_trace(rho.matrix(), rho.dims(), keep));
}

}

double von_neumann(const DensityMatrix& rho) {
    return detail::entropy_bits(rho.matrix());
}

EntropyReport von_neumann_report(const DensityMatrix& rho) {
    EntropyReport rep;
    rep.subsystems.resize(rho.dims().size());
    for (size_t i = 0; i < rho.dims().size(); ++i) rep.subsystems[i] = static_cast<int>(i);
    rep.value = detail::entropy_bits(rho.matrix(), &rep.clamp_count);
    return rep;
}

double conditional_entropy(const DensityMatrix& rho,
                           const std::vector<int>& sys_a,
                           const std::vector<int>& sys_b) {
    auto ab = merged_sorted({&sys_a, &sys_b});
    std::vector<int> b = sys_b;
    std::sort(b.begin(), b.end());
    return marginal_entropy(rho, ab) - marginal_entropy(rho, b);
}

double mutual_information(const DensityMatrix& rho,
                          const std::vector<int>& sys_a,
                          const std::vector<int>& sys_b) {
    auto ab = merged_sorted({&sys_a, &sys_b});
    std::vector<int> a = sys_a, b = sys_b;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return marginal_entropy(rho, a) + marginal_entropy(rho, b) -
           marginal_entropy(rho, ab);
}

double conditional_mutual_information(const DensityMatrix& rho,
                                      const std::vector<int>& sys_a,
                                      const std::vector<int>& sys_b,
                                      const std::vector<int>& sys_c) {
    auto ac = merged_sorted({&sys_a, &sys_c});
    auto bc = merged_sorted({&sys_b, &sys_c});
    auto abc = merged_sorted({&sys_a, &sys_b, &sys_c});
    std::vector<int> c = sys_c;
    std::sort(c.begin(), c.end());
    double hc = c.empty() ? 0.0 : marginal_entropy(rho, c);
    return marginal_entropy(rho, ac) + marginal_entropy(rho, bc) - hc -
           marginal_entropy(rho, abc);
}

double binary_entropy(double p) {
    if (p < -1e-12 || p > 1.0 + 1e-12)
        throw InputError("binary_entropy argument out of [0,1]");
    p = std::min(std::max(p, 0.0), 1.0);
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double shannon(const std::vector<double>& dist) {
    double sum = 0.0;
    for (double p : dist) {
        if (p < -1e-12) throw InputError("shannon distribution has a negative entry");
        sum += std::max(p, 0.0);
    }
    if (std::abs(sum - 1.0) > tolerances().prob_sum)
        throw InputError("shannon distribution does not sum to 1");
    double h = 0.0;
    for (double p : dist)
        if (p > 1e-15) h -= p * std::log2(p);
    return h;
}

double alicki_fannes_bound(double eps, int dim_a) {
    if (eps < 0.0) throw InputError("alicki_fannes_bound needs eps >= 0");
    if (dim_a < 2) throw InputError("alicki_fannes_bound needs dimA >= 2");
    return 4.0 * eps * std::log2(static_cast<double>(dim_a)) +
           2.0 * binary_entropy(std::min(eps, 0.5));
}

}
