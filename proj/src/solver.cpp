#include "qsr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qsr/errors.hpp"

namespace qsr {

void SolverOptions::validate() const {
    if (max_support < 1) throw std::invalid_argument("SolverOptions: max_support >= 1");
    if (!(rel_residual_tol > 0.0))
        throw std::invalid_argument("SolverOptions: rel_residual_tol > 0");
    if (!(min_coefficient > 0.0))
        throw std::invalid_argument("SolverOptions: min_coefficient > 0");
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(a.cols());
    if (n == 0) return Eigen::VectorXd(0);
    if (a.rows() != b.size()) throw std::invalid_argument("nnls: dimension mismatch");

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<char> passive(static_cast<std::size_t>(n), 0);
    std::vector<int> passive_list;

    const Eigen::VectorXd atb = a.transpose() * b;
    const double scale = atb.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) return x;  // b orthogonal to the column span (or zero)
    const double gradient_tol = 1e-12 * scale;

    auto solve_passive = [&](Eigen::VectorXd& z) {
        Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(passive_list.size()));
        for (std::size_t k = 0; k < passive_list.size(); ++k)
            ap.col(static_cast<Eigen::Index>(k)) = a.col(passive_list[k]);
        // Minimum-norm solution; tolerant of exactly collinear columns.
        z = ap.completeOrthogonalDecomposition().solve(b);
    };

    Eigen::VectorXd w = atb;  // gradient of -1/2 ||ax-b||^2 at x = 0
    const int max_outer = 3 * n + 30;
    for (int outer = 0; outer < max_outer; ++outer) {
        int candidate = -1;
        double best = gradient_tol;
        for (int j = 0; j < n; ++j)
            if (!passive[static_cast<std::size_t>(j)] && w(j) > best) {
                best = w(j);
                candidate = j;
            }
        if (candidate < 0) break;  // KKT satisfied

        passive[static_cast<std::size_t>(candidate)] = 1;
        passive_list.push_back(candidate);

        Eigen::VectorXd z;
        for (;;) {
            solve_passive(z);
            double min_z = std::numeric_limits<double>::infinity();
            for (Eigen::Index k = 0; k < z.size(); ++k) min_z = std::min(min_z, z(k));
            if (min_z > 0.0) break;

            // Step from x toward z until the first coordinate hits zero.
            double alpha = 1.0;
            for (std::size_t k = 0; k < passive_list.size(); ++k) {
                if (z(static_cast<Eigen::Index>(k)) > 0.0) continue;
                const double xk = x(passive_list[k]);
                const double denom = xk - z(static_cast<Eigen::Index>(k));
                if (denom > 0.0) alpha = std::min(alpha, xk / denom);
            }
            std::vector<int> keep;
            for (std::size_t k = 0; k < passive_list.size(); ++k) {
                const int j = passive_list[k];
                const double stepped = x(j) + alpha * (z(static_cast<Eigen::Index>(k)) - x(j));
                const bool hits_zero =
                    z(static_cast<Eigen::Index>(k)) <= 0.0 && stepped <= 1e-12 * scale + 1e-300;
                if (hits_zero) {
                    x(j) = 0.0;
                    passive[static_cast<std::size_t>(j)] = 0;
                } else {
                    x(j) = std::max(stepped, 0.0);
                    keep.push_back(j);
                }
            }
            if (keep.size() == passive_list.size()) {
                // Numerical stall: force the most negative coordinate out.
                std::size_t worst = 0;
                for (std::size_t k = 1; k < passive_list.size(); ++k)
                    if (z(static_cast<Eigen::Index>(k)) < z(static_cast<Eigen::Index>(worst)))
                        worst = k;
                const int j = passive_list[worst];
                x(j) = 0.0;
                passive[static_cast<std::size_t>(j)] = 0;
                keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(worst));
            }
            passive_list = std::move(keep);
            if (passive_list.empty()) break;
        }
        for (std::size_t k = 0; k < passive_list.size(); ++k)
            x(passive_list[k]) = z(static_cast<Eigen::Index>(k));

        w = a.transpose() * (b - a * x);
        for (int j : passive_list) w(j) = 0.0;
    }
    return x;
}

Eigen::VectorXd RecoveryResult::dense(int n_basis) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n_basis);
    for (std::size_t k = 0; k < support.size(); ++k) v(support[k]) = coefficients[k];
    return v;
}

namespace {

Eigen::MatrixXd gather_columns(const Eigen::MatrixXd& m, const std::vector<int>& cols) {
    Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = m.col(cols[k]);
    return out;
}

}  // namespace

RecoveryResult constrained_omp(const SensingMatrix& sm, const Eigen::VectorXd& gamma,
                               const SolverOptions& opts) {
    opts.validate();
    const Eigen::MatrixXd& m = sm.data;
    if (gamma.size() != m.rows())
        throw std::invalid_argument("constrained_omp: measurement length != matrix rows");
    const int n_basis = static_cast<int>(m.cols());

    RecoveryResult out;
    const double gamma_norm = gamma.norm();
    if (gamma_norm == 0.0) return out;  // nothing to explain

    const Eigen::VectorXd column_norms = m.colwise().norm();
    std::vector<char> selected(static_cast<std::size_t>(n_basis), 0);
    std::vector<int> support;  // in selection order
    Eigen::VectorXd residual = gamma;
    Eigen::VectorXd coeffs;
    double prev_norm = gamma_norm;

    while (static_cast<int>(support.size()) < opts.max_support) {
        const Eigen::VectorXd corr = m.transpose() * residual;
        int pick = -1;
        double best_score = 0.0;
        for (int j = 0; j < n_basis; ++j) {
            if (selected[static_cast<std::size_t>(j)]) continue;
            if (!(corr(j) > 0.0) || !(column_norms(j) > 0.0)) continue;
            const double score = corr(j) / column_norms(j);
            if (score > best_score) {  // strict: ties keep the lowest index
                best_score = score;
                pick = j;
            }
        }
        if (pick < 0) break;  // no positively correlated atom left

        selected[static_cast<std::size_t>(pick)] = 1;
        support.push_back(pick);
        const Eigen::MatrixXd ms = gather_columns(m, support);
        coeffs = nnls(ms, gamma);
        residual = gamma - ms * coeffs;
        const double rnorm = residual.norm();
        if (rnorm > prev_norm * (1.0 + 1e-9) + 1e-12 * gamma_norm)
            throw NumericalError("constrained_omp: residual increased across iterations");
        prev_norm = rnorm;
        ++out.iterations;
        out.residual_history.push_back(rnorm / gamma_norm);
        if (rnorm <= opts.rel_residual_tol * gamma_norm) break;
    }

    // Prune insignificant atoms, refit once on the surviving support.
    std::vector<int> pruned;
    for (std::size_t k = 0; k < support.size(); ++k)
        if (coeffs(static_cast<Eigen::Index>(k)) >= opts.min_coefficient)
            pruned.push_back(support[k]);
    std::sort(pruned.begin(), pruned.end());

    Eigen::VectorXd final_coeffs;
    if (!pruned.empty()) {
        if (pruned.size() == support.size()) {
            // Same atoms, same fit; only the ordering changed.
            std::vector<std::size_t> order(support.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
            final_coeffs.resize(static_cast<Eigen::Index>(pruned.size()));
            for (std::size_t k = 0; k < order.size(); ++k)
                final_coeffs(static_cast<Eigen::Index>(k)) =
                    coeffs(static_cast<Eigen::Index>(order[k]));
        } else {
            final_coeffs = nnls(gather_columns(m, pruned), gamma);
        }
    }

    out.support = pruned;
    out.raw_coefficients.assign(final_coeffs.data(), final_coeffs.data() + final_coeffs.size());
    out.coefficients = out.raw_coefficients;
    const double total =
        std::accumulate(out.raw_coefficients.begin(), out.raw_coefficients.end(), 0.0);
    if (opts.enforce_unit_sum && total > 0.0)
        for (auto& c : out.coefficients) c /= total;

    if (pruned.empty()) {
        out.final_rel_residual = 1.0;
    } else {
        const Eigen::VectorXd fitted =
            gather_columns(m, pruned) *
            Eigen::Map<const Eigen::VectorXd>(out.raw_coefficients.data(),
                                              static_cast<Eigen::Index>(pruned.size()));
        out.final_rel_residual = (gamma - fitted).norm() / gamma_norm;
    }

    for (const auto& group : sm.degenerate_groups) {
        const bool touched = std::any_of(group.begin(), group.end(), [&](int idx) {
            return std::binary_search(pruned.begin(), pruned.end(), idx);
        });
        if (touched) out.degenerate_groups_touched.push_back(group);
    }
    return out;
}

}  // namespace qsr
