#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace qsr::testing {

namespace {

ConfigIndex make_sector(int n_modes, int photons) {
    if (photons == 0)
        return ConfigIndex(n_modes, 0, {FockConfig(static_cast<std::size_t>(n_modes), 0)});
    return enumerate_configs(n_modes, photons);
}

}  // namespace

FockAlgebra::FockAlgebra(int n_modes, int n_photons)
    : n_modes_(n_modes), n_photons_(n_photons) {
    if (n_modes < 1 || n_photons < 1)
        throw std::invalid_argument("FockAlgebra: need at least one mode and photon");
    sectors_.reserve(static_cast<std::size_t>(n_photons + 1));
    for (int p = 0; p <= n_photons; ++p) sectors_.push_back(make_sector(n_modes, p));
}

const ConfigIndex& FockAlgebra::sector(int photons) const {
    if (photons < 0 || photons > n_photons_)
        throw std::out_of_range("FockAlgebra: sector out of range");
    return sectors_[static_cast<std::size_t>(photons)];
}

Eigen::MatrixXd FockAlgebra::annihilation(int mode, int from_photons) const {
    const ConfigIndex& from = sector(from_photons);
    const ConfigIndex& to = sector(from_photons - 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(to.size(), from.size());
    for (int col = 0; col < from.size(); ++col) {
        FockConfig c = from.config_of(col);
        const int occ = c[static_cast<std::size_t>(mode)];
        if (occ == 0) continue;
        c[static_cast<std::size_t>(mode)] = occ - 1;
        a(to.index_of(c), col) = std::sqrt(static_cast<double>(occ));
    }
    return a;
}

Eigen::MatrixXd FockAlgebra::hamiltonian_sector(const LatticeSpec& spec, int photons) const {
    const ConfigIndex& idx = sector(photons);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(idx.size(), idx.size());
    for (int col = 0; col < idx.size(); ++col) {
        const FockConfig& c = idx.config_of(col);
        h(col, col) = spec.beta * photons;
        // hopping a_{n+1}^dag a_n and a_n^dag a_{n+1}
        for (int n = 0; n + 1 < n_modes_; ++n) {
            const int occ_left = c[static_cast<std::size_t>(n)];
            const int occ_right = c[static_cast<std::size_t>(n + 1)];
            if (occ_left > 0) {
                FockConfig t = c;
                t[static_cast<std::size_t>(n)] -= 1;
                t[static_cast<std::size_t>(n + 1)] += 1;
                h(idx.index_of(t), col) +=
                    spec.coupling * std::sqrt(static_cast<double>(occ_left) * (occ_right + 1));
            }
            if (occ_right > 0) {
                FockConfig t = c;
                t[static_cast<std::size_t>(n + 1)] -= 1;
                t[static_cast<std::size_t>(n)] += 1;
                h(idx.index_of(t), col) +=
                    spec.coupling * std::sqrt(static_cast<double>(occ_right) * (occ_left + 1));
            }
        }
    }
    return h;
}

Eigen::MatrixXcd FockAlgebra::evolve_sector(const LatticeSpec& spec, int photons) const {
    const Eigen::MatrixXd h = hamiltonian_sector(spec, photons);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    Eigen::VectorXcd phase(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k)
        phase(k) = std::exp(std::complex<double>(0.0, spec.z * lambda(k)));
    return es.eigenvectors().cast<std::complex<double>>() * phase.asDiagonal() *
           es.eigenvectors().transpose().cast<std::complex<double>>();
}

Eigen::VectorXcd FockAlgebra::element_vector(const BasisElement& element) const {
    const ConfigIndex& idx = sector(n_photons_);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(idx.size());
    for (const auto& [amp, config] : element.terms) psi(idx.index_of(config)) += amp;
    return psi;
}

Eigen::VectorXd FockAlgebra::coincidence_column_bruteforce(const LatticeSpec& spec,
                                                           const BasisElement& element,
                                                           int order) const {
    const Eigen::VectorXcd psi_out =
        evolve_sector(spec, n_photons_) * element_vector(element);
    const CoincidenceIndex rows(n_modes_, order);
    Eigen::VectorXd column(rows.size());
    for (int r = 0; r < rows.size(); ++r) {
        Eigen::VectorXcd phi = psi_out;
        int photons = n_photons_;
        for (int q : rows.multiset_of(r)) {
            phi = annihilation(q - 1, photons).cast<std::complex<double>>() * phi;
            --photons;
        }
        column(r) = phi.squaredNorm();
    }
    return column;
}

std::complex<double> permanent_bruteforce(const Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::complex<double> total(0.0, 0.0);
    do {
        std::complex<double> prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= m(i, perm[static_cast<std::size_t>(i)]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

double nnls_best_objective_bruteforce(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(a.cols());
    double best = b.squaredNorm();  // empty active set
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> cols;
        for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) cols.push_back(j);
        Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k)
            sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
        const Eigen::VectorXd x = sub.completeOrthogonalDecomposition().solve(b);
        if ((x.array() >= 0.0).all())
            best = std::min(best, (sub * x - b).squaredNorm());
    }
    return best;
}

}  // namespace qsr::testing
