#pragma once

#include <vector>

#include "qrd/state.hpp"

namespace qrd {

struct EntropyReport {
    double value = 0.0;
    std::vector<int> subsystems;
    int clamp_count = 0;
};

// All entropies are in bits (log base 2).

double von_neumann(const DensityMatrix& rho);
EntropyReport von_neumann_report(const DensityMatrix& rho);

// H(A|B) = H(AB) - H(B)
double conditional_entropy(const DensityMatrix& rho,
                           const std::vector<int>& sys_a,
                           const std::vector<int>& sys_b);

// I(A;B) = H(A) + H(B) - H(AB)
double mutual_information(const DensityMatrix& rho,
                          const std::vector<int>& sys_a,
                          const std::vector<int>& sys_b);

// I(A;B|C) = H(A|C) - H(A|BC)
double conditional_mutual_information(const DensityMatrix& rho,
                                      const std::vector<int>& sys_a,
                                      const std::vector<int>& sys_b,
                                      const std::vector<int>& sys_c);

double binary_entropy(double p);
double shannon(const std::vector<double>& dist);

// Lemma-2 continuity bound: 4 eps log2(dimA) + 2 h2(min(eps, 1/2))
double alicki_fannes_bound(double eps, int dim_a);

namespace detail {
// entropy of a raw Hermitian PSD matrix, spectrum clamped and renormalized
double entropy_bits(const cmat& m, int* clamp_count = nullptr);
}

}
