#include "qsr/basis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

namespace qsr {

namespace {

Basis make_fock_skeleton(int n_waveguides, int n_photons) {
    Basis b;
    b.kind = BasisKind::fock;
    b.n_waveguides = n_waveguides;
    b.n_photons = n_photons;
    b.index = enumerate_configs(n_waveguides, n_photons);
    b.elements.reserve(static_cast<std::size_t>(b.index.size()));
    for (int i = 0; i < b.index.size(); ++i)
        b.elements.push_back(BasisElement{{{std::complex<double>(1.0, 0.0), b.index.config_of(i)}}});
    return b;
}

}  // namespace

nlohmann::json Basis::descriptor() const {
    nlohmann::json j{{"kind", kind == BasisKind::fock ? "fock" : "entangled"},
                     {"n_waveguides", n_waveguides},
                     {"n_photons", n_photons}};
    if (entangled_pair)
        j["entangled_pair"] = {entangled_pair->first, entangled_pair->second};
    return j;
}

Basis fock_basis(int n_waveguides, int n_photons) {
    return make_fock_skeleton(n_waveguides, n_photons);
}

Basis entangled_basis(int n_waveguides, int n_photons, int wg_a, int wg_b) {
    if (n_photons != 3)
        throw std::invalid_argument("entangled_basis: defined for three photons only");
    if (wg_a == wg_b)
        throw std::invalid_argument("entangled_basis: the two waveguides must differ");
    if (wg_a < 1 || wg_a > n_waveguides || wg_b < 1 || wg_b > n_waveguides)
        throw std::invalid_argument("entangled_basis: waveguide index out of range");
    const int a = std::min(wg_a, wg_b);
    const int b = std::max(wg_a, wg_b);

    Basis basis = make_fock_skeleton(n_waveguides, n_photons);
    basis.kind = BasisKind::entangled;
    basis.entangled_pair = {a, b};

    FockConfig heavy_a(static_cast<std::size_t>(n_waveguides), 0);  // |2_a 1_b>
    heavy_a[static_cast<std::size_t>(a - 1)] = 2;
    heavy_a[static_cast<std::size_t>(b - 1)] = 1;
    FockConfig heavy_b(static_cast<std::size_t>(n_waveguides), 0);  // |1_a 2_b>
    heavy_b[static_cast<std::size_t>(a - 1)] = 1;
    heavy_b[static_cast<std::size_t>(b - 1)] = 2;

    const int slot_plus = basis.index.index_of(heavy_a);
    const int slot_minus = basis.index.index_of(heavy_b);
    const double r = 1.0 / std::sqrt(2.0);
    basis.elements[static_cast<std::size_t>(slot_plus)] =
        BasisElement{{{{r, 0.0}, heavy_a}, {{r, 0.0}, heavy_b}}};
    basis.elements[static_cast<std::size_t>(slot_minus)] =
        BasisElement{{{{r, 0.0}, heavy_a}, {{-r, 0.0}, heavy_b}}};
    return basis;
}

Basis basis_from_descriptor(const nlohmann::json& d) {
    const std::string kind = d.at("kind").get<std::string>();
    const int n_waveguides = d.at("n_waveguides").get<int>();
    const int n_photons = d.at("n_photons").get<int>();
    if (kind == "fock") return fock_basis(n_waveguides, n_photons);
    if (kind == "entangled") {
        const auto& pair = d.at("entangled_pair");
        return entangled_basis(n_waveguides, n_photons, pair.at(0).get<int>(),
                               pair.at(1).get<int>());
    }
    throw std::invalid_argument("basis_from_descriptor: unknown kind '" + kind + "'");
}

std::vector<BasisViolation> validate(const Basis& basis) {
    std::vector<BasisViolation> out;
    const auto report = [&](std::string what, int a = -1, int b = -1) {
        out.push_back(BasisViolation{std::move(what), a, b});
    };

    std::uint64_t expected = 0;
    try {
        expected = binomial_checked(basis.n_waveguides + basis.n_photons - 1, basis.n_photons);
    } catch (const std::overflow_error&) {
        report("element count overflows the index range");
        return out;
    }
    if (static_cast<std::uint64_t>(basis.size()) != expected)
        report("element count " + std::to_string(basis.size()) + " != expected " +
               std::to_string(expected));

    for (int i = 0; i < basis.size(); ++i) {
        const auto& terms = basis.elements[static_cast<std::size_t>(i)].terms;
        if (terms.empty()) {
            report("element has no terms", i);
            continue;
        }
        double norm = 0.0;
        for (const auto& [amp, config] : terms) {
            norm += std::norm(amp);
            if (static_cast<int>(config.size()) != basis.n_waveguides)
                report("config length != n_waveguides", i);
            else if (photon_number(config) != basis.n_photons)
                report("config photon number != basis photon number", i);
            if (std::any_of(config.begin(), config.end(), [](int n) { return n < 0; }))
                report("negative occupation", i);
        }
        if (std::abs(norm - 1.0) > 1e-12)
            report("element not normalized (|alpha|^2 sums to " + std::to_string(norm) + ")", i);
        if (terms.size() == 1 && std::abs(terms[0].first - std::complex<double>(1.0, 0.0)) > 1e-12)
            report("single-term amplitude != 1", i);
    }

    // Pairwise inner products: only pairs that share a configuration can
    // overlap, so gather contributions per shared config.
    std::map<FockConfig, std::vector<std::pair<int, std::complex<double>>>> by_config;
    for (int i = 0; i < basis.size(); ++i)
        for (const auto& [amp, config] : basis.elements[static_cast<std::size_t>(i)].terms)
            by_config[config].emplace_back(i, amp);

    std::map<std::pair<int, int>, std::complex<double>> overlaps;
    for (const auto& [config, holders] : by_config)
        for (std::size_t s = 0; s < holders.size(); ++s)
            for (std::size_t t = s + 1; t < holders.size(); ++t) {
                auto key = std::minmax(holders[s].first, holders[t].first);
                overlaps[{key.first, key.second}] +=
                    std::conj(holders[s].second) * holders[t].second;
            }
    for (const auto& [pair, value] : overlaps)
        if (pair.first != pair.second && std::abs(value) >= 1e-12)
            report("elements not orthogonal (|<a|b>| = " + std::to_string(std::abs(value)) + ")",
                   pair.first, pair.second);
        else if (pair.first == pair.second)
            report("duplicate configuration inside one element", pair.first);

    return out;
}

}  // namespace qsr
