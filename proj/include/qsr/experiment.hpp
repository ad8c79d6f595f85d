#pragma once

#include <cstdint>
#include <vector>

#include "qsr/metrics.hpp"
#include "qsr/sensing.hpp"
#include "qsr/simulate.hpp"
#include "qsr/solver.hpp"

namespace qsr {

// One seeded end-to-end trial: draw a sparse ground truth, depolarize,
// synthesize noisy measurements, recover, score. The fidelity is computed
// against the clean (pre-depolarization) truth after collapsing degenerate
// column groups, so unresolvable coefficient splits are not penalized.
struct TrialParams {
    int sparsity = 7;
    double lambda = 0.0;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    double success_threshold = 0.95;
};

struct TrialOutcome {
    TrialRecord record;
    RecoveryResult result;
    Eigen::VectorXd truth;  // clean ground truth
};

TrialOutcome run_trial(const SensingMatrix& m, const TrialParams& params,
                       const SolverOptions& opts = {});

enum class SweepAxis { sparsity, snr };

struct ExperimentPlan {
    SweepAxis axis = SweepAxis::sparsity;
    std::vector<double> values;  // strictly increasing sweep points
    int sparsity = 7;            // fixed K when sweeping snr
    double snr_db = std::numeric_limits<double>::infinity();  // fixed SNR when sweeping sparsity
    double lambda = 0.0;
    int trials = 100;
    std::uint64_t base_seed = 0;  // trial t uses seed base_seed + t
    double success_threshold = 0.95;
    SolverOptions solver;

    void validate(int n_basis) const;
};

struct SweepPoint {
    double value = 0.0;
    int trials = 0;
    double mean_fidelity = 0.0;
    double std_fidelity = 0.0;  // sample standard deviation
    double recovery_probability = 0.0;
    std::vector<TrialRecord> records;  // ordered by seed
};

// Trials run concurrently over the shared matrix; rows come back ordered by
// (sweep value, seed) regardless of scheduling.
std::vector<SweepPoint> run_sweep(const SensingMatrix& m, const ExperimentPlan& plan,
                                  int threads = 0);

}  // namespace qsr
