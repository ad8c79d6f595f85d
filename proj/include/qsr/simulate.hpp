#pragma once

#include <cstdint>
#include <limits>

#include <Eigen/Dense>

#include "qsr/sensing.hpp"

namespace qsr {

// Ground-truth coefficient vector with exactly `sparsity` nonzero entries:
// support drawn uniformly without replacement, values uniform on the simplex
// (flat Dirichlet over the support). Deterministic for a fixed seed.
Eigen::VectorXd random_sparse_state(int n_basis, int sparsity, std::uint64_t seed);

// Coefficient-space depolarizing channel p -> (1 - lambda) p + (lambda/N_b) 1.
// Sum-preserving; every entry ends up >= lambda/N_b.
Eigen::VectorXd depolarize(const Eigen::VectorXd& p, double lambda);

struct Measurements {
    Eigen::VectorXd values;
    double snr_db = std::numeric_limits<double>::infinity();
    double lambda = 0.0;  // depolarization applied upstream, recorded by the caller
    std::uint64_t seed = 0;
};

// Gamma = M p plus i.i.d. Gaussian noise rescaled so the energy ratio hits
// the requested SNR exactly: ||e|| = ||M p|| * 10^(-snr_db/20). Infinite
// snr_db means no noise. Entries are not clamped, so slightly negative
// measurements can occur.
Measurements synthesize_measurements(const SensingMatrix& m, const Eigen::VectorXd& p,
                                     double snr_db, std::uint64_t seed);

// Noise stream for a trial seed; keeps the state draw and the measurement
// noise decoupled while both derive from one published seed.
std::uint64_t derive_noise_seed(std::uint64_t trial_seed);

}  // namespace qsr
