#include "qsr/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qsr {

int photon_number(const FockConfig& c) {
    return std::accumulate(c.begin(), c.end(), 0);
}

std::uint64_t binomial_checked(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
        if (result > std::numeric_limits<std::uint64_t>::max() / factor)
            throw std::overflow_error("binomial_checked: value exceeds 64 bits");
        result = result * factor / static_cast<std::uint64_t>(i);
    }
    return result;
}

ConfigIndex::ConfigIndex(int n_waveguides, int n_photons, std::vector<FockConfig> configs)
    : n_waveguides_(n_waveguides), n_photons_(n_photons), configs_(std::move(configs)) {}

const FockConfig& ConfigIndex::config_of(int index) const {
    if (index < 0 || index >= size())
        throw std::out_of_range("ConfigIndex: index out of range");
    return configs_[static_cast<std::size_t>(index)];
}

int ConfigIndex::index_of(const FockConfig& config) const {
    // configs_ is sorted lexicographically decreasing
    auto it = std::lower_bound(configs_.begin(), configs_.end(), config,
                               [](const FockConfig& a, const FockConfig& b) { return a > b; });
    if (it == configs_.end() || *it != config)
        throw std::invalid_argument("ConfigIndex: configuration not in index");
    return static_cast<int>(it - configs_.begin());
}

ConfigIndex enumerate_configs(int n_waveguides, int n_photons) {
    if (n_waveguides < 1) throw std::invalid_argument("enumerate_configs: n_waveguides >= 1");
    if (n_photons < 1) throw std::invalid_argument("enumerate_configs: n_photons >= 1");
    const std::uint64_t count = binomial_checked(n_waveguides + n_photons - 1, n_photons);
    if (count > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw std::overflow_error("enumerate_configs: basis too large to index");

    std::vector<FockConfig> configs;
    configs.reserve(count);
    FockConfig current(static_cast<std::size_t>(n_waveguides), 0);
    // Descending lexicographic order: fill the leftmost guide first.
    auto recurse = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == n_waveguides - 1) {
            current[static_cast<std::size_t>(mode)] = remaining;
            configs.push_back(current);
            return;
        }
        for (int occ = remaining; occ >= 0; --occ) {
            current[static_cast<std::size_t>(mode)] = occ;
            self(self, mode + 1, remaining - occ);
        }
        current[static_cast<std::size_t>(mode)] = 0;
    };
    recurse(recurse, 0, n_photons);
    return ConfigIndex(n_waveguides, n_photons, std::move(configs));
}

namespace {

using Cx = std::complex<double>;

// Entry accessor for the repeated-index submatrix: element (i, j) of the
// effective matrix is w(rows[i], cols[j]).
struct ModeView {
    const Eigen::MatrixXcd& w;
    const std::vector<int>& rows;
    const std::vector<int>& cols;
    Cx operator()(int i, int j) const { return w(rows[i], cols[j]); }
};

Cx permanent_small(const ModeView& a, int n) {
    switch (n) {
        case 1:
            return a(0, 0);
        case 2:
            return a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);
        case 3:
            return a(0, 0) * (a(1, 1) * a(2, 2) + a(1, 2) * a(2, 1)) +
                   a(0, 1) * (a(1, 0) * a(2, 2) + a(1, 2) * a(2, 0)) +
                   a(0, 2) * (a(1, 0) * a(2, 1) + a(1, 1) * a(2, 0));
        default:
            throw std::logic_error("permanent_small: n out of range");
    }
}

// Ryser with Gray-code subset updates: per(A) = (-1)^n sum_{S != 0}
// (-1)^{|S|} prod_i sum_{j in S} A(i,j). O(2^n n).
Cx permanent_ryser(const ModeView& a, int n) {
    std::vector<Cx> row_sums(static_cast<std::size_t>(n), Cx(0.0, 0.0));
    Cx total(0.0, 0.0);
    const std::uint32_t subsets = 1u << n;
    std::uint32_t gray = 0;
    for (std::uint32_t s = 1; s < subsets; ++s) {
        const std::uint32_t next_gray = s ^ (s >> 1);
        const std::uint32_t changed = gray ^ next_gray;
        const int j = std::countr_zero(changed);
        const double sign_col = (next_gray & changed) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i)
            row_sums[static_cast<std::size_t>(i)] += sign_col * a(i, j);
        gray = next_gray;

        Cx prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= row_sums[static_cast<std::size_t>(i)];
        const int bits = std::popcount(next_gray);
        total += ((n - bits) % 2 == 0) ? prod : -prod;
    }
    return total;
}

Cx permanent_mode_view(const ModeView& a, int n) {
    if (n == 0) return Cx(1.0, 0.0);
    if (n <= 3) return permanent_small(a, n);
    if (n <= 12) return permanent_ryser(a, n);
    throw std::invalid_argument("permanent: matrices larger than 12x12 are not supported");
}

void expand_modes(const FockConfig& occupations, std::vector<int>& out) {
    out.clear();
    for (int mode = 0; mode < static_cast<int>(occupations.size()); ++mode)
        for (int r = 0; r < occupations[static_cast<std::size_t>(mode)]; ++r)
            out.push_back(mode);
}

double occupation_factorial(const FockConfig& occupations) {
    double f = 1.0;
    for (int n : occupations)
        for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

std::complex<double> permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("permanent: matrix must be square");
    const int n = static_cast<int>(m.rows());
    if (n < 1) throw std::invalid_argument("permanent: matrix must be at least 1x1");
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    return permanent_mode_view(ModeView{m, idx, idx}, n);
}

std::complex<double> permanent_from_modes(const Eigen::MatrixXcd& w,
                                          const std::vector<int>& rows,
                                          const std::vector<int>& cols) {
    if (rows.size() != cols.size())
        throw std::invalid_argument("permanent_from_modes: row/column counts differ");
    return permanent_mode_view(ModeView{w, rows, cols}, static_cast<int>(rows.size()));
}

std::complex<double> transition_amplitude(const Propagator& w,
                                          const FockConfig& input,
                                          const FockConfig& output) {
    const int n_modes = static_cast<int>(w.matrix.rows());
    if (static_cast<int>(input.size()) != n_modes || static_cast<int>(output.size()) != n_modes)
        throw std::invalid_argument("transition_amplitude: config length != mode count");
    if (photon_number(input) != photon_number(output))
        throw std::invalid_argument("transition_amplitude: photon numbers differ");

    std::vector<int> cols, rows;
    expand_modes(input, cols);
    expand_modes(output, rows);
    const Cx per = permanent_mode_view(ModeView{w.matrix, rows, cols},
                                       static_cast<int>(rows.size()));
    return per / std::sqrt(occupation_factorial(input) * occupation_factorial(output));
}

Eigen::VectorXd output_distribution(const Propagator& w,
                                    const std::vector<AmplitudeTerm>& input,
                                    const ConfigIndex& outputs) {
    if (input.empty()) throw std::invalid_argument("output_distribution: empty input");
    const int n_modes = static_cast<int>(w.matrix.rows());
    if (outputs.n_waveguides() != n_modes)
        throw std::invalid_argument("output_distribution: index/mode count mismatch");

    double norm = 0.0;
    const int n_photons = photon_number(input.front().second);
    for (const auto& [amp, config] : input) {
        if (static_cast<int>(config.size()) != n_modes)
            throw std::invalid_argument("output_distribution: config length != mode count");
        if (photon_number(config) != n_photons)
            throw std::invalid_argument("output_distribution: mixed photon numbers in input");
        norm += std::norm(amp);
    }
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("output_distribution: input not normalized");
    if (outputs.n_photons() != n_photons)
        throw std::invalid_argument("output_distribution: index photon number mismatch");

    // Cross terms between distinct input configs survive inside the coherent
    // sum per output configuration.
    std::vector<int> cols, rows;
    std::vector<std::vector<int>> input_cols(input.size());
    std::vector<double> input_fact(input.size());
    for (std::size_t t = 0; t < input.size(); ++t) {
        expand_modes(input[t].second, input_cols[t]);
        input_fact[t] = occupation_factorial(input[t].second);
    }

    Eigen::VectorXd probs(outputs.size());
    for (int i = 0; i < outputs.size(); ++i) {
        const FockConfig& out = outputs.config_of(i);
        expand_modes(out, rows);
        const double out_fact = occupation_factorial(out);
        Cx acc(0.0, 0.0);
        for (std::size_t t = 0; t < input.size(); ++t) {
            const Cx per = permanent_mode_view(ModeView{w.matrix, rows, input_cols[t]},
                                               static_cast<int>(rows.size()));
            acc += input[t].first * per / std::sqrt(input_fact[t] * out_fact);
        }
        probs(i) = std::norm(acc);
    }
    return probs;
}

}  // namespace qsr
