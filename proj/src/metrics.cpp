#include "qsr/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qsr {

double fidelity(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    if (p.size() != q.size()) throw std::invalid_argument("fidelity: length mismatch");
    double sp = 0.0, sq = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (p(i) < -1e-12 || q(i) < -1e-12)
            throw std::invalid_argument("fidelity: negative entry beyond tolerance");
        sp += std::max(p(i), 0.0);
        sq += std::max(q(i), 0.0);
    }
    if (sp <= 0.0 || sq <= 0.0) return 0.0;
    double f = 0.0;
    for (int i = 0; i < p.size(); ++i)
        f += std::sqrt(std::max(p(i), 0.0) * std::max(q(i), 0.0));
    return f / std::sqrt(sp * sq);
}

double recovery_probability(const std::vector<TrialRecord>& records, double threshold) {
    if (records.empty()) throw std::invalid_argument("recovery_probability: no records");
    int hits = 0;
    for (const auto& r : records)
        if (r.fidelity > threshold) ++hits;
    return static_cast<double>(hits) / static_cast<double>(records.size());
}

Eigen::VectorXd merge_degenerate(const Eigen::VectorXd& p,
                                 const std::vector<std::vector<int>>& groups) {
    Eigen::VectorXd out = p;
    for (const auto& group : groups) {
        if (group.empty()) continue;
        double total = 0.0;
        for (int idx : group) {
            if (idx < 0 || idx >= p.size())
                throw std::invalid_argument("merge_degenerate: group index out of range");
            total += p(idx);
            out(idx) = 0.0;
        }
        out(group.front()) = total;
    }
    return out;
}

}  // namespace qsr
