#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qsr/experiment.hpp"
#include "qsr/lattice.hpp"
#include "qsr/metrics.hpp"
#include "qsr/sensing.hpp"

// File interchange. All waveguide and basis-element indices in files are
// 1-based; in-memory indices are 0-based.

namespace qsr {

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

nlohmann::json spec_to_json(const LatticeSpec& spec);
LatticeSpec spec_from_json(const nlohmann::json& j);

// Sparse state JSON: {"basis": descriptor, "entries": [{"index", "value"}]},
// entries ascending by 1-based basis index.
void save_state(const std::filesystem::path& path, const Eigen::VectorXd& values,
                const nlohmann::json& basis_descriptor);

struct LoadedState {
    Eigen::VectorXd values;
    nlohmann::json basis_descriptor;
};
LoadedState load_state(const std::filesystem::path& path, int n_basis);

// Measurement CSV: header "q,r,value" for two-fold coincidences,
// "q1,...,qG,value" otherwise; one row per detector multiset, indices
// ascending within a row.
void save_measurements(const std::filesystem::path& path, const Eigen::VectorXd& values,
                       const CoincidenceIndex& rows);
Eigen::VectorXd load_measurements(const std::filesystem::path& path,
                                  const CoincidenceIndex& rows);

// Trial record CSV: K,snr_db,lambda,seed,fidelity,residual,iterations,success.
void save_trial_records(const std::filesystem::path& path,
                        const std::vector<TrialRecord>& records);

// Aggregated sweep CSV:
// axis,value,trials,mean_fidelity,recovery_probability,std_fidelity.
void save_sweep(const std::filesystem::path& path, const std::string& axis_name,
                const std::vector<SweepPoint>& points);

// RecoveryResult JSON with 1-based indices.
nlohmann::json recovery_to_json(const RecoveryResult& r);

}  // namespace qsr
