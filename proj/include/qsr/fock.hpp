#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsr/lattice.hpp"

namespace qsr {

// Occupation vector: photons per waveguide, one entry per guide.
using FockConfig = std::vector<int>;

int photon_number(const FockConfig& c);

// C(n, k) in 64 bits; throws std::overflow_error if the count does not fit.
std::uint64_t binomial_checked(int n, int k);

// Canonical bijection between N-photon configurations over n_waveguides modes
// and the integers [0, N_b). Ordering is lexicographically decreasing on the
// occupation vector, so (N,0,...,0) gets index 0 and (0,...,0,N) the last one.
class ConfigIndex {
  public:
    ConfigIndex() = default;
    ConfigIndex(int n_waveguides, int n_photons, std::vector<FockConfig> configs);

    int n_waveguides() const { return n_waveguides_; }
    int n_photons() const { return n_photons_; }
    int size() const { return static_cast<int>(configs_.size()); }

    const FockConfig& config_of(int index) const;
    int index_of(const FockConfig& config) const;  // throws if not a member

    const std::vector<FockConfig>& configs() const { return configs_; }

  private:
    int n_waveguides_ = 0;
    int n_photons_ = 0;
    std::vector<FockConfig> configs_;
};

ConfigIndex enumerate_configs(int n_waveguides, int n_photons);

// Matrix permanent. Direct expansion for n <= 3, Ryser's inclusion-exclusion
// with Gray-code updates for n <= 12; larger inputs are refused.
std::complex<double> permanent(const Eigen::MatrixXcd& m);

// Permanent of the matrix built by taking w(rows[i], cols[j]); rows/cols carry
// repeated mode indices. Shares the size cap with permanent().
std::complex<double> permanent_from_modes(const Eigen::MatrixXcd& w,
                                          const std::vector<int>& rows,
                                          const std::vector<int>& cols);

// Multi-photon transition amplitude <output| U(w) |input>, evaluated as
// Per(W_sub) / sqrt(prod n_k! prod m_q!) with W_sub built from w by repeating
// column k input[k] times and row q output[q] times.
std::complex<double> transition_amplitude(const Propagator& w,
                                          const FockConfig& input,
                                          const FockConfig& output);

// One term of a superposition input state.
using AmplitudeTerm = std::pair<std::complex<double>, FockConfig>;

// Output photon-count distribution over all configurations in `outputs` for a
// normalized (possibly superposed) input with a fixed photon number.
Eigen::VectorXd output_distribution(const Propagator& w,
                                    const std::vector<AmplitudeTerm>& input,
                                    const ConfigIndex& outputs);

}  // namespace qsr
