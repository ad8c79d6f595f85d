#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qsr/basis.hpp"
#include "qsr/fock.hpp"
#include "qsr/lattice.hpp"

namespace qsr {

// Ordered enumeration of all detector multisets of size `order` drawn from
// waveguides {1..n}, each stored as ascending 1-based indices. Lexicographic:
// (1,1), (1,2), ..., (1,n), (2,2), ...
class CoincidenceIndex {
  public:
    CoincidenceIndex() = default;
    CoincidenceIndex(int n_waveguides, int order);

    int n_waveguides() const { return n_waveguides_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(multisets_.size()); }

    const std::vector<int>& multiset_of(int row) const;
    int row_of(const std::vector<int>& multiset) const;  // expects ascending indices

    // Number of ordered detector tuples collapsing onto this multiset,
    // G! / prod_q g_q!.
    double multiplicity(int row) const;

  private:
    int n_waveguides_ = 0;
    int order_ = 0;
    std::vector<std::vector<int>> multisets_;
};

// The linear map from basis coefficients to G-fold coincidence expectations.
struct SensingMatrix {
    Eigen::MatrixXd data;  // n_measurements x n_basis
    LatticeSpec spec;
    nlohmann::json basis_descriptor;
    int n_photons = 0;
    int order = 0;  // G
    CoincidenceIndex rows;
    // Column groups indistinguishable at tolerance degenerate_group_tol,
    // precomputed so solvers can flag unresolvable coefficient splits.
    std::vector<std::vector<int>> degenerate_groups;

    int n_measurements() const { return static_cast<int>(data.rows()); }
    int n_basis() const { return static_cast<int>(data.cols()); }
};

inline constexpr double kDegenerateGroupTol = 1e-8;

// Normally ordered G-fold coincidence expectations at the output facet for a
// single basis element: the entry for a multiset with per-mode multiplicities
// {g_q} is sum_m P(m) prod_q m_q (m_q - 1) ... (m_q - g_q + 1), with P the
// output distribution of the element.
Eigen::VectorXd coincidence_column(const Propagator& w, const BasisElement& element, int order);

// Assembles one coincidence column per basis element. Columns are built in
// parallel; the result is bit-reproducible for fixed inputs.
SensingMatrix build_sensing_matrix(const LatticeSpec& spec, const Basis& basis, int order);

// Groups of column indices whose columns coincide entry-wise within tol
// (max-norm). Only groups of size >= 2 are returned, ordered by their
// smallest member.
std::vector<std::vector<int>> degenerate_column_groups(const Eigen::MatrixXd& m, double tol);

// Binary cache, little-endian throughout:
//   "QSTM" | u32 version | u32 N_w | u32 N | u32 G | u64 N_m | u64 N_b |
//   N_m * N_b f64 row-major | u64 json_len | UTF-8 JSON {spec, basis}.
void save_matrix(const SensingMatrix& m, const std::filesystem::path& path);
SensingMatrix load_matrix(const std::filesystem::path& path);

}  // namespace qsr
