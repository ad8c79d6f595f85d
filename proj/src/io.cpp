#include "qsr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qsr/errors.hpp"

namespace qsr {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& token, const std::string& context) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    double value = 0.0;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        // from_chars does not accept "inf"/"nan"; fall back for those.
        try {
            std::size_t pos = 0;
            value = std::stod(token, &pos);
            if (pos != token.size()) throw std::invalid_argument(token);
        } catch (...) {
            throw FormatError(context + ": bad number '" + token + "'");
        }
    }
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw FormatError("cannot open " + path.string() + " for writing");
    return os;
}

}  // namespace

nlohmann::json spec_to_json(const LatticeSpec& spec) {
    return {{"n_waveguides", spec.n_waveguides},
            {"coupling", spec.coupling},
            {"beta", spec.beta},
            {"z", spec.z}};
}

LatticeSpec spec_from_json(const nlohmann::json& j) {
    LatticeSpec spec;
    try {
        spec.n_waveguides = j.at("n_waveguides").get<int>();
        spec.coupling = j.at("coupling").get<double>();
        spec.beta = j.at("beta").get<double>();
        spec.z = j.at("z").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("lattice spec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

void save_state(const std::filesystem::path& path, const Eigen::VectorXd& values,
                const nlohmann::json& basis_descriptor) {
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < values.size(); ++i)
        if (values(i) != 0.0) entries.push_back({{"index", i + 1}, {"value", values(i)}});
    const nlohmann::json doc{{"basis", basis_descriptor}, {"entries", entries}};
    auto os = open_out(path);
    os << doc.dump(2) << '\n';
    if (!os) throw FormatError("write failed for " + path.string());
}

LoadedState load_state(const std::filesystem::path& path, int n_basis) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    LoadedState out;
    out.values = Eigen::VectorXd::Zero(n_basis);
    try {
        out.basis_descriptor = doc.at("basis");
        for (const auto& entry : doc.at("entries")) {
            const int index = entry.at("index").get<int>();
            if (index < 1 || index > n_basis)
                throw FormatError(path.string() + ": entry index out of range");
            if (out.values(index - 1) != 0.0)
                throw FormatError(path.string() + ": duplicate entry index");
            out.values(index - 1) = entry.at("value").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    return out;
}

void save_measurements(const std::filesystem::path& path, const Eigen::VectorXd& values,
                       const CoincidenceIndex& rows) {
    if (values.size() != rows.size())
        throw std::invalid_argument("save_measurements: value count != coincidence count");
    auto os = open_out(path);
    if (rows.order() == 2) {
        os << "q,r,value\n";
    } else {
        for (int g = 1; g <= rows.order(); ++g) os << 'q' << g << ',';
        os << "value\n";
    }
    for (int r = 0; r < rows.size(); ++r) {
        for (int q : rows.multiset_of(r)) os << q << ',';
        os << format_double(values(r)) << '\n';
    }
    if (!os) throw FormatError("write failed for " + path.string());
}

Eigen::VectorXd load_measurements(const std::filesystem::path& path,
                                  const CoincidenceIndex& rows) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open " + path.string());
    std::string line;
    if (!std::getline(is, line)) throw FormatError(path.string() + ": empty file");
    const auto header = split_csv_line(line);
    if (static_cast<int>(header.size()) != rows.order() + 1)
        throw FormatError(path.string() + ": header column count does not match order");

    Eigen::VectorXd values(rows.size());
    std::vector<char> seen(static_cast<std::size_t>(rows.size()), 0);
    std::vector<int> multiset(static_cast<std::size_t>(rows.order()));
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != rows.order() + 1)
            throw FormatError(path.string() + ": bad row '" + line + "'");
        for (int g = 0; g < rows.order(); ++g) {
            const double idx = parse_double(fields[static_cast<std::size_t>(g)], path.string());
            multiset[static_cast<std::size_t>(g)] = static_cast<int>(idx);
        }
        int row = -1;
        try {
            row = rows.row_of(multiset);
        } catch (const std::invalid_argument&) {
            throw FormatError(path.string() + ": unknown detector multiset in '" + line + "'");
        }
        if (seen[static_cast<std::size_t>(row)])
            throw FormatError(path.string() + ": duplicate detector multiset");
        seen[static_cast<std::size_t>(row)] = 1;
        values(row) = parse_double(fields.back(), path.string());
    }
    for (int r = 0; r < rows.size(); ++r)
        if (!seen[static_cast<std::size_t>(r)])
            throw FormatError(path.string() + ": missing detector multisets");
    return values;
}

void save_trial_records(const std::filesystem::path& path,
                        const std::vector<TrialRecord>& records) {
    auto os = open_out(path);
    os << "K,snr_db,lambda,seed,fidelity,residual,iterations,success\n";
    for (const auto& r : records) {
        os << r.sparsity << ',' << format_double(r.snr_db) << ',' << format_double(r.lambda)
           << ',' << r.seed << ',' << format_double(r.fidelity) << ','
           << format_double(r.residual) << ',' << r.iterations << ',' << (r.success ? 1 : 0)
           << '\n';
    }
    if (!os) throw FormatError("write failed for " + path.string());
}

void save_sweep(const std::filesystem::path& path, const std::string& axis_name,
                const std::vector<SweepPoint>& points) {
    auto os = open_out(path);
    os << "axis,value,trials,mean_fidelity,recovery_probability,std_fidelity\n";
    for (const auto& p : points) {
        os << axis_name << ',' << format_double(p.value) << ',' << p.trials << ','
           << format_double(p.mean_fidelity) << ',' << format_double(p.recovery_probability)
           << ',' << format_double(p.std_fidelity) << '\n';
    }
    if (!os) throw FormatError("write failed for " + path.string());
}

nlohmann::json recovery_to_json(const RecoveryResult& r) {
    nlohmann::json support = nlohmann::json::array();
    for (int idx : r.support) support.push_back(idx + 1);
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& group : r.degenerate_groups_touched) {
        nlohmann::json g = nlohmann::json::array();
        for (int idx : group) g.push_back(idx + 1);
        groups.push_back(g);
    }
    return {{"support", support},
            {"coefficients", r.coefficients},
            {"raw_coefficients", r.raw_coefficients},
            {"iterations", r.iterations},
            {"final_rel_residual", r.final_rel_residual},
            {"degenerate_groups_touched", groups}};
}

}  // namespace qsr
