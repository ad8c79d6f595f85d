#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsr/fock.hpp"

namespace qsr {

// One sparsity-basis vector: a normalized superposition of same-photon-number
// Fock configurations. Pure Fock elements have a single term with amplitude 1.
struct BasisElement {
    std::vector<AmplitudeTerm> terms;
};

enum class BasisKind { fock, entangled };

struct Basis {
    BasisKind kind = BasisKind::fock;
    int n_waveguides = 0;
    int n_photons = 0;
    std::optional<std::pair<int, int>> entangled_pair;  // 1-based waveguides, a < b
    ConfigIndex index;
    std::vector<BasisElement> elements;

    int size() const { return static_cast<int>(elements.size()); }

    // {kind, n_waveguides, n_photons, entangled_pair?}. Elements are always
    // rebuilt from the descriptor, never serialized.
    nlohmann::json descriptor() const;
};

// All N-photon Fock configurations, one per basis element, in index order.
Basis fock_basis(int n_waveguides, int n_photons);

// Fock basis with the two elements |2_a 1_b> and |1_a 2_b> replaced by their
// +/- superpositions (|2_a 1_b> +/- |1_a 2_b>)/sqrt(2). The superpositions
// keep the index slots of the configurations they replace; every other
// element is untouched. The pair is unordered: (a, b) and (b, a) build the
// same basis. Only defined for three photons.
Basis entangled_basis(int n_waveguides, int n_photons, int wg_a, int wg_b);

Basis basis_from_descriptor(const nlohmann::json& descriptor);

struct BasisViolation {
    std::string what;
    int element_a = -1;
    int element_b = -1;
};

// Checks element count, photon-number consistency, normalization and pairwise
// orthogonality. Returns the violations found; empty means the basis is valid.
std::vector<BasisViolation> validate(const Basis& basis);

}  // namespace qsr
