#include "qsr/experiment.hpp"

#include <cmath>
#include <stdexcept>

#include "qsr/parallel.hpp"

namespace qsr {

TrialOutcome run_trial(const SensingMatrix& m, const TrialParams& params,
                       const SolverOptions& opts) {
    TrialOutcome out;
    out.truth = random_sparse_state(m.n_basis(), params.sparsity, params.seed);
    const Eigen::VectorXd prepared = depolarize(out.truth, params.lambda);
    const Measurements meas =
        synthesize_measurements(m, prepared, params.snr_db, derive_noise_seed(params.seed));
    out.result = constrained_omp(m, meas.values, opts);

    const double f = fidelity(merge_degenerate(out.truth, m.degenerate_groups),
                              merge_degenerate(out.result.dense(m.n_basis()), m.degenerate_groups));
    out.record = TrialRecord{params.sparsity,
                             params.snr_db,
                             params.lambda,
                             params.seed,
                             f,
                             out.result.final_rel_residual,
                             out.result.iterations,
                             f > params.success_threshold};
    return out;
}

void ExperimentPlan::validate(int n_basis) const {
    if (values.empty()) throw std::invalid_argument("ExperimentPlan: no sweep values");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("ExperimentPlan: sweep values must be strictly increasing");
    if (trials < 1) throw std::invalid_argument("ExperimentPlan: trials >= 1");
    if (axis == SweepAxis::sparsity) {
        for (double v : values)
            if (v < 1.0 || v > n_basis || v != std::floor(v))
                throw std::invalid_argument(
                    "ExperimentPlan: sparsity values must be integers in [1, n_basis]");
    } else {
        if (sparsity < 1 || sparsity > n_basis)
            throw std::invalid_argument("ExperimentPlan: fixed sparsity out of range");
    }
    solver.validate();
}

std::vector<SweepPoint> run_sweep(const SensingMatrix& m, const ExperimentPlan& plan,
                                  int threads) {
    plan.validate(m.n_basis());
    const int points = static_cast<int>(plan.values.size());
    const int total = points * plan.trials;
    std::vector<TrialRecord> records(static_cast<std::size_t>(total));

    parallel_for(total, [&](int slot) {
        const int point = slot / plan.trials;
        const int trial = slot % plan.trials;
        TrialParams params;
        params.lambda = plan.lambda;
        params.seed = plan.base_seed + static_cast<std::uint64_t>(trial);
        params.success_threshold = plan.success_threshold;
        if (plan.axis == SweepAxis::sparsity) {
            params.sparsity = static_cast<int>(plan.values[static_cast<std::size_t>(point)]);
            params.snr_db = plan.snr_db;
        } else {
            params.sparsity = plan.sparsity;
            params.snr_db = plan.values[static_cast<std::size_t>(point)];
        }
        records[static_cast<std::size_t>(slot)] = run_trial(m, params, plan.solver).record;
    }, threads);

    std::vector<SweepPoint> out(static_cast<std::size_t>(points));
    for (int p = 0; p < points; ++p) {
        SweepPoint& pt = out[static_cast<std::size_t>(p)];
        pt.value = plan.values[static_cast<std::size_t>(p)];
        pt.trials = plan.trials;
        pt.records.assign(records.begin() + static_cast<std::ptrdiff_t>(p) * plan.trials,
                          records.begin() + static_cast<std::ptrdiff_t>(p + 1) * plan.trials);
        double mean = 0.0;
        for (const auto& r : pt.records) mean += r.fidelity;
        mean /= plan.trials;
        double var = 0.0;
        for (const auto& r : pt.records) var += (r.fidelity - mean) * (r.fidelity - mean);
        pt.mean_fidelity = mean;
        pt.std_fidelity = plan.trials > 1 ? std::sqrt(var / (plan.trials - 1)) : 0.0;
        pt.recovery_probability = recovery_probability(pt.records, plan.success_threshold);
    }
    return out;
}

}  // namespace qsr
