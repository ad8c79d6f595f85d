#pragma once

#include <Eigen/Dense>

namespace qsr {

// Physical parameters of a coupled-waveguide array: an open chain of
// n_waveguides identical guides with nearest-neighbour coupling.
struct LatticeSpec {
    int n_waveguides = 20;
    double coupling = 1.0;  // C, nearest-neighbour coupling constant [1/length]
    double beta = 0.0;      // propagation constant, common to all guides [1/length]
    double z = 2.5;         // propagation distance [length]

    // Throws std::invalid_argument on violation (n_waveguides >= 2,
    // coupling > 0, z >= 0, all finite).
    void validate() const;
};

// Single-particle Hamiltonian of the open chain: beta on the diagonal,
// coupling on the first off-diagonals, zero elsewhere.
Eigen::MatrixXd build_hamiltonian(const LatticeSpec& spec);

// Single-particle evolution matrix W = exp(i z H1). Unitary and complex
// symmetric; maps input creation operators to the output facet,
// a_n^dag(z) = sum_k W(n,k) a_k^dag(0).
struct Propagator {
    Eigen::MatrixXcd matrix;
    LatticeSpec spec;
};

// Builds W from the closed-form eigenmodes of the open chain,
//   lambda_k = beta + 2 C cos(k pi / (n+1)),
//   v_k(m)   = sqrt(2/(n+1)) sin(m k pi / (n+1)),    k, m = 1..n,
// so W = V diag(exp(i z lambda)) V^T with no iterative solve involved.
// Throws NumericalError if the result fails the unitarity check
// (max-norm of W^dag W - I below 1e-10).
Propagator propagator(const LatticeSpec& spec);

// Output photon-count distribution for a single photon injected into
// input_waveguide (1-based): entry k is |W(k, input)|^2. Sums to one.
Eigen::VectorXd impulse_response(const LatticeSpec& spec, int input_waveguide);

// Infinite-array reference for the impulse response: J_{k-k0}(2 C z)^2,
// with J the Bessel function of the first kind. Valid as a comparison when
// the light cone stays clear of the array edges.
double bessel_impulse_reference(int waveguide, int input_waveguide, double coupling_times_z);

}  // namespace qsr
