#pragma once

#include <cstdint>
#include <vector>

#include "qrd/state.hpp"

namespace qrd {

// CPTP map stored as a Kraus family with a cached Choi matrix.
// Choi convention: J(N) = (id ⊗ N)(unnormalized maximally entangled state),
// index order input ⊗ output, so Tr_out J = I_in.
class QuantumChannel {
public:
    explicit QuantumChannel(std::vector<cmat> kraus);

    static QuantumChannel from_choi(const cmat& choi, int d_in, int d_out);
    static QuantumChannel identity(int d);
    static QuantumChannel depolarizing(double p);
    static QuantumChannel replace_with(const DensityMatrix& sigma, int d_in);
    static QuantumChannel random_channel(int d_in, int d_out, int n_kraus,
                                         std::uint64_t seed);

    const std::vector<cmat>& kraus() const { return kraus_; }
    const cmat& choi() const { return choi_; }
    int d_in() const { return d_in_; }
    int d_out() const { return d_out_; }

    cmat apply_matrix(const cmat& rho) const;

private:
    QuantumChannel() = default;
    std::vector<cmat> kraus_;
    cmat choi_;
    int d_in_ = 0;
    int d_out_ = 0;
};

class Isometry {
public:
    Isometry(cmat matrix, std::vector<int> in_dims, std::vector<int> out_dims);

    const cmat& matrix() const { return m_; }
    const std::vector<int>& in_dims() const { return in_dims_; }
    const std::vector<int>& out_dims() const { return out_dims_; }
    int d_in() const { return static_cast<int>(m_.cols()); }
    int d_out() const { return static_cast<int>(m_.rows()); }

private:
    cmat m_;
    std::vector<int> in_dims_, out_dims_;
};

// Channel on the listed subsystems (ascending); they are replaced by a single
// subsystem of dimension d_out at the position of the first target.
DensityMatrix apply(const QuantumChannel& n, const DensityMatrix& rho,
                    const std::vector<int>& on);

// Isometry on the listed subsystems; they are replaced by the isometry's
// output subsystem list at the position of the first target.
PureState apply(const Isometry& v, const PureState& psi,
                const std::vector<int>& on);
DensityMatrix apply(const Isometry& v, const DensityMatrix& rho,
                    const std::vector<int>& on);

// Canonical dilation V: d_in -> d_out x d_E with d_E = number of Kraus terms.
Isometry stinespring(const QuantumChannel& n);

// Composes W : E -> E_A x E_B onto the final (environment) output of V.
Isometry split_environment(const Isometry& v, const Isometry& w);

// Twirl over the fixed 12-element tetrahedral-rotation unitary set.
QuantumChannel clifford_twirl(const QuantumChannel& n);

// F_e per the Kraus-sum form (production path).
double entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& n);
// F_e per the purification overlap form (cross-check path).
double entanglement_fidelity_purified(const DensityMatrix& rho,
                                      const QuantumChannel& n);

namespace paulis {
const cmat& I2();
const cmat& X();
const cmat& Y();
const cmat& Z();
}

// The twirl's unitary set, exposed for property tests.
const std::vector<cmat>& tetrahedral_unitaries();

}
