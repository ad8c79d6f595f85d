#include "qsr/sensing.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include "qsr/errors.hpp"
#include "qsr/io.hpp"
#include "qsr/parallel.hpp"

namespace qsr {

CoincidenceIndex::CoincidenceIndex(int n_waveguides, int order)
    : n_waveguides_(n_waveguides), order_(order) {
    if (n_waveguides < 1) throw std::invalid_argument("CoincidenceIndex: n_waveguides >= 1");
    if (order < 1) throw std::invalid_argument("CoincidenceIndex: order >= 1");
    const std::uint64_t count = binomial_checked(n_waveguides + order - 1, order);
    multisets_.reserve(count);
    std::vector<int> current(static_cast<std::size_t>(order));
    auto recurse = [&](auto&& self, int pos, int lowest) -> void {
        if (pos == order) {
            multisets_.push_back(current);
            return;
        }
        for (int q = lowest; q <= n_waveguides; ++q) {
            current[static_cast<std::size_t>(pos)] = q;
            self(self, pos + 1, q);
        }
    };
    recurse(recurse, 0, 1);
}

const std::vector<int>& CoincidenceIndex::multiset_of(int row) const {
    if (row < 0 || row >= size()) throw std::out_of_range("CoincidenceIndex: row out of range");
    return multisets_[static_cast<std::size_t>(row)];
}

int CoincidenceIndex::row_of(const std::vector<int>& multiset) const {
    auto it = std::lower_bound(multisets_.begin(), multisets_.end(), multiset);
    if (it == multisets_.end() || *it != multiset)
        throw std::invalid_argument("CoincidenceIndex: multiset not in enumeration");
    return static_cast<int>(it - multisets_.begin());
}

double CoincidenceIndex::multiplicity(int row) const {
    const auto& ms = multiset_of(row);
    double value = 1.0;
    for (int i = 1; i <= order_; ++i) value *= i;  // G!
    int run = 1;
    for (std::size_t i = 1; i <= ms.size(); ++i) {
        if (i < ms.size() && ms[i] == ms[i - 1]) {
            ++run;
            value /= run;  // divide by g_q! incrementally
        } else {
            run = 1;
        }
    }
    return value;
}

namespace {

// Sparse fold from output-configuration probabilities to coincidence rows:
// for each output config, the rows it feeds and the normally ordered count
// weights prod_q m_q (m_q-1) ... (m_q-g_q+1).
std::vector<std::vector<std::pair<int, double>>> build_coincidence_map(
    const ConfigIndex& outputs, const CoincidenceIndex& rows) {
    std::vector<std::vector<std::pair<int, double>>> map(
        static_cast<std::size_t>(outputs.size()));
    const int order = rows.order();
    std::vector<int> multiset(static_cast<std::size_t>(order));

    for (int j = 0; j < outputs.size(); ++j) {
        const FockConfig& occ = outputs.config_of(j);
        std::vector<int> support;
        for (int q = 0; q < static_cast<int>(occ.size()); ++q)
            if (occ[static_cast<std::size_t>(q)] > 0) support.push_back(q);

        // Enumerate sub-multisets of size `order` with g_q <= m_q.
        auto recurse = [&](auto&& self, int pos, std::size_t support_at, double weight,
                           int prev_mode, int used_on_prev) -> void {
            if (pos == order) {
                map[static_cast<std::size_t>(j)].emplace_back(rows.row_of(multiset), weight);
                return;
            }
            for (std::size_t s = support_at; s < support.size(); ++s) {
                const int mode = support[s];
                const int occ_q = occ[static_cast<std::size_t>(mode)];
                const int used = (mode == prev_mode) ? used_on_prev : 0;
                if (used >= occ_q) continue;
                multiset[static_cast<std::size_t>(pos)] = mode + 1;
                self(self, pos + 1, s, weight * (occ_q - used), mode, used + 1);
            }
        };
        recurse(recurse, 0, 0, 1.0, -1, 0);
        std::sort(map[static_cast<std::size_t>(j)].begin(),
                  map[static_cast<std::size_t>(j)].end());
    }
    return map;
}

Eigen::VectorXd fold_column(const Eigen::VectorXd& probs,
                            const std::vector<std::vector<std::pair<int, double>>>& map,
                            int n_rows) {
    Eigen::VectorXd column = Eigen::VectorXd::Zero(n_rows);
    for (int j = 0; j < probs.size(); ++j)
        for (const auto& [row, weight] : map[static_cast<std::size_t>(j)])
            column(row) += weight * probs(j);
    return column;
}

}  // namespace

Eigen::VectorXd coincidence_column(const Propagator& w, const BasisElement& element, int order) {
    const int n_modes = static_cast<int>(w.matrix.rows());
    if (element.terms.empty()) throw std::invalid_argument("coincidence_column: empty element");
    const int n_photons = photon_number(element.terms.front().second);
    if (order < 1 || order > n_photons)
        throw std::invalid_argument("coincidence_column: order must be in [1, n_photons]");

    const ConfigIndex outputs = enumerate_configs(n_modes, n_photons);
    const CoincidenceIndex rows(n_modes, order);
    const auto map = build_coincidence_map(outputs, rows);
    return fold_column(output_distribution(w, element.terms, outputs), map, rows.size());
}

SensingMatrix build_sensing_matrix(const LatticeSpec& spec, const Basis& basis, int order) {
    spec.validate();
    if (basis.n_waveguides != spec.n_waveguides)
        throw std::invalid_argument("build_sensing_matrix: basis/spec waveguide counts differ");
    if (order < 1 || order > basis.n_photons)
        throw std::invalid_argument("build_sensing_matrix: order must be in [1, n_photons]");

    const Propagator w = propagator(spec);
    const CoincidenceIndex rows(spec.n_waveguides, order);
    const auto map = build_coincidence_map(basis.index, rows);

    SensingMatrix m;
    m.data.resize(rows.size(), basis.size());
    m.spec = spec;
    m.basis_descriptor = basis.descriptor();
    m.n_photons = basis.n_photons;
    m.order = order;
    m.rows = rows;

    parallel_for(basis.size(), [&](int i) {
        const auto probs =
            output_distribution(w, basis.elements[static_cast<std::size_t>(i)].terms, basis.index);
        m.data.col(i) = fold_column(probs, map, rows.size());
    });

    m.degenerate_groups = degenerate_column_groups(m.data, kDegenerateGroupTol);
    return m;
}

std::vector<std::vector<int>> degenerate_column_groups(const Eigen::MatrixXd& m, double tol) {
    if (tol < 0.0) throw std::invalid_argument("degenerate_column_groups: tol must be >= 0");
    const int cols = static_cast<int>(m.cols());
    const int rows = static_cast<int>(m.rows());
    std::vector<char> grouped(static_cast<std::size_t>(cols), 0);
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < cols; ++i) {
        if (grouped[static_cast<std::size_t>(i)]) continue;
        std::vector<int> group{i};
        for (int j = i + 1; j < cols; ++j) {
            if (grouped[static_cast<std::size_t>(j)]) continue;
            bool close = true;
            for (int r = 0; r < rows; ++r) {
                if (std::abs(m(r, i) - m(r, j)) > tol) {
                    close = false;
                    break;
                }
            }
            if (close) group.push_back(j);
        }
        if (group.size() >= 2) {
            for (int g : group) grouped[static_cast<std::size_t>(g)] = 1;
            groups.push_back(std::move(group));
        }
    }
    return groups;
}

namespace {

constexpr char kMagic[4] = {'Q', 'S', 'T', 'M'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(buf, 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(buf, 8);
}

void put_f64(std::ostream& os, double d) {
    put_u64(os, std::bit_cast<std::uint64_t>(d));
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char buf[4];
    if (!is.read(reinterpret_cast<char*>(buf), 4)) throw FormatError("matrix cache: truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) throw FormatError("matrix cache: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& is) {
    return std::bit_cast<double>(get_u64(is));
}

}  // namespace

void save_matrix(const SensingMatrix& m, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("matrix cache: cannot open " + path.string() + " for writing");

    os.write(kMagic, 4);
    put_u32(os, kFormatVersion);
    put_u32(os, static_cast<std::uint32_t>(m.spec.n_waveguides));
    put_u32(os, static_cast<std::uint32_t>(m.n_photons));
    put_u32(os, static_cast<std::uint32_t>(m.order));
    put_u64(os, static_cast<std::uint64_t>(m.n_measurements()));
    put_u64(os, static_cast<std::uint64_t>(m.n_basis()));
    for (int r = 0; r < m.n_measurements(); ++r)
        for (int c = 0; c < m.n_basis(); ++c) put_f64(os, m.data(r, c));

    const nlohmann::json meta{{"spec", spec_to_json(m.spec)}, {"basis", m.basis_descriptor}};
    const std::string blob = meta.dump();
    put_u64(os, blob.size());
    os.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!os) throw FormatError("matrix cache: write failed for " + path.string());
}

SensingMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("matrix cache: cannot open " + path.string());

    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("matrix cache: bad magic bytes");
    const std::uint32_t version = get_u32(is);
    if (version != kFormatVersion)
        throw FormatError("matrix cache: unsupported format version " + std::to_string(version));

    SensingMatrix m;
    const auto n_w = static_cast<int>(get_u32(is));
    m.n_photons = static_cast<int>(get_u32(is));
    m.order = static_cast<int>(get_u32(is));
    const std::uint64_t n_m = get_u64(is);
    const std::uint64_t n_b = get_u64(is);
    if (n_w < 2 || m.n_photons < 1 || m.order < 1 || m.order > m.n_photons)
        throw FormatError("matrix cache: inconsistent header dimensions");
    if (n_m != binomial_checked(n_w + m.order - 1, m.order) ||
        n_b != binomial_checked(n_w + m.n_photons - 1, m.n_photons))
        throw FormatError("matrix cache: dimensions do not match counting formulas");

    m.data.resize(static_cast<Eigen::Index>(n_m), static_cast<Eigen::Index>(n_b));
    for (std::uint64_t r = 0; r < n_m; ++r)
        for (std::uint64_t c = 0; c < n_b; ++c)
            m.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = get_f64(is);

    const std::uint64_t blob_len = get_u64(is);
    std::string blob(blob_len, '\0');
    if (!is.read(blob.data(), static_cast<std::streamsize>(blob_len)))
        throw FormatError("matrix cache: truncated metadata");
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(blob);
        m.spec = spec_from_json(meta.at("spec"));
        m.basis_descriptor = meta.at("basis");
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("matrix cache: bad metadata: ") + e.what());
    }
    if (m.spec.n_waveguides != n_w ||
        m.basis_descriptor.at("n_waveguides").get<int>() != n_w ||
        m.basis_descriptor.at("n_photons").get<int>() != m.n_photons)
        throw FormatError("matrix cache: metadata inconsistent with header");

    m.rows = CoincidenceIndex(n_w, m.order);
    m.degenerate_groups = degenerate_column_groups(m.data, kDegenerateGroupTol);
    return m;
}

}  // namespace qsr
