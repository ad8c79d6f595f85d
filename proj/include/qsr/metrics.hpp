#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qsr {

// Bhattacharyya overlap sum_i sqrt(p_i q_i) of two coefficient vectors. Both
// arguments are normalized to unit sum internally, so sub-normalized inputs
// cannot push the result above 1. Returns 0 when either vector has no mass.
// Entries below -1e-12 are rejected; round-off negatives are clamped to 0.
double fidelity(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

// One Monte Carlo recovery trial.
struct TrialRecord {
    int sparsity = 0;
    double snr_db = 0.0;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    double fidelity = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool success = false;  // fidelity strictly above the threshold
};

// Fraction of records with fidelity strictly above threshold.
double recovery_probability(const std::vector<TrialRecord>& records, double threshold = 0.95);

// Collapses the mass of each degenerate column group onto the group's first
// index (other group slots become zero); entries outside any group pass
// through. Used to score recoveries where only the group total is
// identifiable.
Eigen::VectorXd merge_degenerate(const Eigen::VectorXd& p,
                                 const std::vector<std::vector<int>>& groups);

}  // namespace qsr
