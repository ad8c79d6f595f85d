#include "qsr/simulate.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace qsr {

Eigen::VectorXd random_sparse_state(int n_basis, int sparsity, std::uint64_t seed) {
    if (n_basis < 1) throw std::invalid_argument("random_sparse_state: n_basis >= 1");
    if (sparsity < 1 || sparsity > n_basis)
        throw std::invalid_argument("random_sparse_state: sparsity must be in [1, n_basis]");

    std::mt19937_64 rng(seed);

    // Support: partial Fisher-Yates over the index range.
    std::vector<int> pool(static_cast<std::size_t>(n_basis));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < sparsity; ++i) {
        std::uniform_int_distribution<int> pick(i, n_basis - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
    }

    // Flat Dirichlet via normalized unit exponentials.
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> weights(static_cast<std::size_t>(sparsity));
    double total = 0.0;
    do {
        total = 0.0;
        for (auto& w : weights) {
            w = expo(rng);
            total += w;
        }
    } while (!(total > 0.0));  // zero draws have measure zero; keep support exact

    Eigen::VectorXd state = Eigen::VectorXd::Zero(n_basis);
    for (int i = 0; i < sparsity; ++i)
        state(pool[static_cast<std::size_t>(i)]) = weights[static_cast<std::size_t>(i)] / total;
    return state;
}

Eigen::VectorXd depolarize(const Eigen::VectorXd& p, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("depolarize: lambda must be in [0, 1]");
    const double background = lambda / static_cast<double>(p.size());
    return (1.0 - lambda) * p + Eigen::VectorXd::Constant(p.size(), background);
}

Measurements synthesize_measurements(const SensingMatrix& m, const Eigen::VectorXd& p,
                                     double snr_db, std::uint64_t seed) {
    if (p.size() != m.n_basis())
        throw std::invalid_argument("synthesize_measurements: state length != matrix columns");

    Measurements out;
    out.snr_db = snr_db;
    out.seed = seed;
    out.values = m.data * p;
    if (std::isinf(snr_db)) return out;
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("synthesize_measurements: snr_db must be finite or +inf");

    const double clean_norm = out.values.norm();
    const double target = clean_norm * std::pow(10.0, -snr_db / 20.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd noise(out.values.size());
    double noise_norm = 0.0;
    do {
        for (int i = 0; i < noise.size(); ++i) noise(i) = gauss(rng);
        noise_norm = noise.norm();
    } while (!(noise_norm > 0.0));
    out.values += noise * (target / noise_norm);
    return out;
}

std::uint64_t derive_noise_seed(std::uint64_t trial_seed) {
    // splitmix64 step, offset so the noise stream never aliases the state one
    std::uint64_t x = trial_seed + 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace qsr
