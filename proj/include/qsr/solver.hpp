#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qsr/sensing.hpp"

namespace qsr {

struct SolverOptions {
    int max_support = 40;            // hard cap on selected atoms
    double rel_residual_tol = 0.02;  // stop once ||r|| <= tol * ||gamma||
    double min_coefficient = 1e-6;   // prune threshold before the final refit
    bool enforce_unit_sum = true;    // renormalize output coefficients to sum 1

    void validate() const;
};

// Nonnegative least squares: x >= 0 minimizing ||a x - b||_2. Lawson-Hanson
// active set with a complete-orthogonal inner solve, so rank-deficient column
// sets return a minimizer instead of failing. Zero columns gives empty x.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

struct RecoveryResult {
    std::vector<int> support;                // ascending column indices (0-based)
    std::vector<double> coefficients;        // aligned with support; renormalized if requested
    std::vector<double> raw_coefficients;    // aligned with support; as fitted
    int iterations = 0;
    double final_rel_residual = 0.0;
    // Degenerate column groups of the sensing matrix that intersect the
    // support: mass inside such a group is identified only as a total.
    std::vector<std::vector<int>> degenerate_groups_touched;
    std::vector<double> residual_history;    // relative residual after each iteration

    Eigen::VectorXd dense(int n_basis) const;
};

// Greedy simplex-constrained recovery:
//   1. residual r = gamma, support empty
//   2. pick the unused column maximizing <r, m_j>/||m_j|| among strictly
//      positive correlations (ties to the lowest index)
//   3. refit by NNLS on the accumulated support, update r
//   4. stop when ||r|| <= rel_residual_tol * ||gamma||, the support cap is
//      reached, or no positively correlated column remains
//   5. prune coefficients below min_coefficient, refit, optionally
//      renormalize to unit sum
// Deterministic for fixed inputs. All-zero gamma yields an empty result.
RecoveryResult constrained_omp(const SensingMatrix& m, const Eigen::VectorXd& gamma,
                               const SolverOptions& opts = {});

}  // namespace qsr
