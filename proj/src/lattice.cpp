#include "qsr/lattice.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "qsr/errors.hpp"

namespace qsr {

void LatticeSpec::validate() const {
    if (n_waveguides < 2)
        throw std::invalid_argument("LatticeSpec: n_waveguides must be >= 2");
    if (!(coupling > 0.0) || !std::isfinite(coupling))
        throw std::invalid_argument("LatticeSpec: coupling must be positive and finite");
    if (!(z >= 0.0) || !std::isfinite(z))
        throw std::invalid_argument("LatticeSpec: z must be nonnegative and finite");
    if (!std::isfinite(beta))
        throw std::invalid_argument("LatticeSpec: beta must be finite");
}

Eigen::MatrixXd build_hamiltonian(const LatticeSpec& spec) {
    spec.validate();
    const int n = spec.n_waveguides;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = spec.beta;
        if (i + 1 < n) {
            h(i, i + 1) = spec.coupling;
            h(i + 1, i) = spec.coupling;
        }
    }
    return h;
}

Propagator propagator(const LatticeSpec& spec) {
    spec.validate();
    const int n = spec.n_waveguides;
    const double pi = std::acos(-1.0);

    // Sine eigenmodes of the open tridiagonal chain.
    Eigen::MatrixXd modes(n, n);  // modes(m, k) = v_{k+1}(m+1)
    Eigen::VectorXcd phase(n);    // exp(i z lambda_k)
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int k = 0; k < n; ++k) {
        const double theta = (k + 1) * pi / (n + 1);
        const double lambda = spec.beta + 2.0 * spec.coupling * std::cos(theta);
        phase(k) = std::exp(std::complex<double>(0.0, spec.z * lambda));
        for (int m = 0; m < n; ++m)
            modes(m, k) = norm * std::sin((m + 1) * theta);
    }

    // W(i,j) = sum_k v_k(i) e^{iz lambda_k} v_k(j); fill the upper triangle and
    // mirror so the matrix is symmetric to the last bit.
    Eigen::MatrixXcd w(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            std::complex<double> acc(0.0, 0.0);
            for (int k = 0; k < n; ++k) acc += modes(i, k) * phase(k) * modes(j, k);
            w(i, j) = acc;
            w(j, i) = acc;
        }
    }

    const double defect = (w.adjoint() * w - Eigen::MatrixXcd::Identity(n, n))
                              .cwiseAbs()
                              .maxCoeff();
    if (defect >= 1e-10)
        throw NumericalError("propagator: unitarity defect " + std::to_string(defect));

    return Propagator{std::move(w), spec};
}

Eigen::VectorXd impulse_response(const LatticeSpec& spec, int input_waveguide) {
    spec.validate();
    if (input_waveguide < 1 || input_waveguide > spec.n_waveguides)
        throw std::invalid_argument("impulse_response: input waveguide out of range");
    const Propagator w = propagator(spec);
    return w.matrix.col(input_waveguide - 1).cwiseAbs2();
}

double bessel_impulse_reference(int waveguide, int input_waveguide, double coupling_times_z) {
    int order = waveguide - input_waveguide;
    if (order < 0) order = -order;  // J_{-n}(x) = (-1)^n J_n(x), squared anyway
    const double j = std::cyl_bessel_j(static_cast<double>(order), 2.0 * coupling_times_z);
    return j * j;
}

}  // namespace qsr
