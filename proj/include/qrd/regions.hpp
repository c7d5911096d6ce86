#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qrd/channel.hpp"
#include "qrd/measures.hpp"
#include "qrd/state.hpp"

namespace qrd {

struct Halfspace {
    double coeff_q, coeff_e, bound;  // coeff_q*Q + coeff_e*E >= bound
};

struct RateRegion {
    std::vector<Halfspace> halfspaces;
    double corner_q = 0.0;
    double corner_e = 0.0;
    // (I(B;C) - I(A;C))/2 where defined; the corner e-coordinate is its negative
    std::optional<double> ebit_balance;
};

struct QsrPartition {
    std::vector<int> a, b, c, r;
};

// State-redistribution region {Q >= I(R;C|B)/2, Q+E >= H(C|B)} of a pure state.
RateRegion qsr_region(const PureState& psi, const QsrPartition& partition);

// {Q >= I(R;B'E_B)/2, Q+E >= H(B'E_B)} on V(U_N(psi)); k must be 1.
RateRegion tradeoff_region(const DensityMatrix& rho, const QuantumChannel& n,
                           const Isometry& v, int k = 1);

// max{I(R;B'|B)/2, H(B'|B) - E} on N(phi_RAB).
double qrst_qsi_feedback(const DensityMatrix& rho_ab, const QuantumChannel& n, double e);

// max{I(R;B'E_B|B)/2, H(B'E_B|B)} at a fixed environment split V.
double qrst_qsi_nonfeedback_Ip(const DensityMatrix& rho_ab, const QuantumChannel& n,
                               const Isometry& v);

// Searches the split; returns an upper bound on the infimum over V.
double qrst_qsi_nonfeedback_search(const DensityMatrix& rho_ab, const QuantumChannel& n,
                                   const DecompositionSearchConfig& cfg);

// identity isometries E -> E x 1 and E -> 1 x E, the degenerate splits
Isometry trivial_split_keep_ea(int d_e);
Isometry trivial_split_keep_eb(int d_e);

// Both sides of the max-identity: max over psi_RA of I(R;B') against
// max over phi_RAB of I(R;B'|B).
std::pair<double, double> max_identity_check(const QuantumChannel& n, int d_r, int d_b,
                                             const DecompositionSearchConfig& cfg);

}
