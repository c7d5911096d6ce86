#pragma once

namespace qrd {

// Global numeric tolerances. Defaults follow the component contracts; callers
// may adjust the singleton before constructing objects that validate against it.
struct Tolerances {
    double hermitian = 1e-10;       // entrywise |M - M†| bound
    double trace_one = 1e-10;       // |Tr ρ - 1| bound
    double psd = 1e-9;              // eigenvalues below -psd are an error
    double unit_norm = 1e-10;       // pure-state norm deviation
    double isometry = 1e-10;        // |V†V - I| bound
    double completeness = 1e-9;     // |Σ A†A - I| bound for Kraus families
    double choi_marginal = 1e-9;    // |Tr_out J - I_in| bound
    double entropy_clamp = 1e-12;   // eigenvalues below this are dropped from logs
    double kraus_cutoff = 1e-12;    // Choi eigenvalues below this yield no Kraus term
    double prob_sum = 1e-9;         // |Σ p - 1| bound for classical distributions
};

Tolerances& tolerances();

}
