#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qsr/errors.hpp"
#include "qsr/lattice.hpp"

using namespace qsr;

namespace {

LatticeSpec make_spec(int n, double c, double beta, double z) {
    LatticeSpec s;
    s.n_waveguides = n;
    s.coupling = c;
    s.beta = beta;
    s.z = z;
    return s;
}

double unitarity_defect(const Eigen::MatrixXcd& w) {
    const auto n = w.rows();
    return (w.adjoint() * w - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("hamiltonian is tridiagonal with beta diagonal and C couplings") {
    const Eigen::MatrixXd h = build_hamiltonian(make_spec(3, 1.0, 2.0, 0.0));
    Eigen::MatrixXd expected(3, 3);
    expected << 2, 1, 0, 1, 2, 1, 0, 1, 2;
    CHECK((h - expected).cwiseAbs().maxCoeff() == 0.0);

    const Eigen::MatrixXd h2 = build_hamiltonian(make_spec(2, 0.5, 0.0, 0.0));
    Eigen::MatrixXd expected2(2, 2);
    expected2 << 0, 0.5, 0.5, 0;
    CHECK((h2 - expected2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian eigenpairs match the closed-form chain modes") {
    // lambda_k = beta + 2C cos(k pi / (n+1)), v_k(m) ~ sin(m k pi / (n+1))
    const int n = 3;
    const Eigen::MatrixXd h = build_hamiltonian(make_spec(n, 1.0, 0.0, 0.0));
    const double pi = std::acos(-1.0);
    for (int k = 1; k <= n; ++k) {
        const double lambda = 2.0 * std::cos(k * pi / (n + 1));
        Eigen::VectorXd v(n);
        for (int m = 1; m <= n; ++m) v(m - 1) = std::sin(m * k * pi / (n + 1));
        CHECK((h * v - lambda * v).cwiseAbs().maxCoeff() < 1e-12);
    }
    // for n=3, beta=0: eigenvalues are {sqrt(2), 0, -sqrt(2)}
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(es.eigenvalues()(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(build_hamiltonian(make_spec(1, 1.0, 0.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(build_hamiltonian(make_spec(3, 0.0, 0.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(build_hamiltonian(make_spec(3, 1.0, 0.0, -1.0)), std::invalid_argument);
}

TEST_CASE("propagator at z=0 is the identity") {
    const Propagator w = propagator(make_spec(7, 1.3, 0.4, 0.0));
    CHECK((w.matrix - Eigen::MatrixXcd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-guide coupler transfers fully at Cz = pi/2") {
    const Propagator w = propagator(make_spec(2, 1.0, 0.0, std::acos(-1.0) / 2.0));
    CHECK(std::abs(w.matrix(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(w.matrix(0, 0)) < 1e-12);
}

TEST_CASE("propagator is unitary and symmetric over random specs") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> n_dist(2, 40);
    std::uniform_real_distribution<double> cz_dist(0.0, 10.0);
    std::uniform_real_distribution<double> beta_dist(-5.0, 5.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = n_dist(rng);
        const Propagator w = propagator(make_spec(n, 1.0, beta_dist(rng), cz_dist(rng)));
        CHECK(unitarity_defect(w.matrix) < 1e-10);
        double asym = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                asym = std::max(asym, std::abs(w.matrix(i, j) - w.matrix(j, i)));
        CHECK(asym < 1e-12);
    }
    CHECK(unitarity_defect(propagator(make_spec(20, 1.0, 3.7, 2.5)).matrix) < 1e-10);
}

TEST_CASE("beta only contributes a global phase") {
    const Eigen::MatrixXcd w0 = propagator(make_spec(9, 1.1, 0.0, 1.7)).matrix;
    const Eigen::MatrixXcd w7 = propagator(make_spec(9, 1.1, 7.0, 1.7)).matrix;
    CHECK((w0.cwiseAbs() - w7.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("propagators compose over distance") {
    const Eigen::MatrixXcd w1 = propagator(make_spec(11, 0.8, 0.9, 1.2)).matrix;
    const Eigen::MatrixXcd w2 = propagator(make_spec(11, 0.8, 0.9, 0.7)).matrix;
    const Eigen::MatrixXcd w12 = propagator(make_spec(11, 0.8, 0.9, 1.9)).matrix;
    CHECK((w1 * w2 - w12).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("closed-form propagator matches a dense eigensolver route") {
    const LatticeSpec spec = make_spec(6, 1.4, -0.6, 2.1);
    const testing::FockAlgebra algebra(6, 1);
    const Eigen::MatrixXcd reference = algebra.evolve_sector(spec, 1);
    CHECK((propagator(spec).matrix - reference).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("impulse response at z=0 is a delta") {
    const Eigen::VectorXd p = impulse_response(make_spec(9, 1.0, 0.3, 0.0), 5);
    for (int k = 0; k < 9; ++k)
        CHECK(p(k) == doctest::Approx(k == 4 ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("impulse response input index is validated") {
    CHECK_THROWS_AS(impulse_response(make_spec(9, 1.0, 0.0, 1.0), 0), std::invalid_argument);
    CHECK_THROWS_AS(impulse_response(make_spec(9, 1.0, 0.0, 1.0), 10), std::invalid_argument);
}

TEST_CASE("central impulse matches the squared-Bessel reference") {
    const LatticeSpec spec = make_spec(61, 1.0, 0.9, 2.0);  // Cz = 2, beta arbitrary
    const Eigen::VectorXd p = impulse_response(spec, 31);
    CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    double worst = 0.0;
    for (int k = 1; k <= 61; ++k)
        worst = std::max(worst, std::abs(p(k - 1) - bessel_impulse_reference(k, 31, 2.0)));
    CHECK(worst < 1e-9);
}

TEST_CASE("impulse response is a probability vector for generic specs") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> cz(0.0, 6.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXd p = impulse_response(make_spec(17, 1.0, 0.0, cz(rng)), 4);
        CHECK(p.minCoeff() >= 0.0);
        CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    }
}
