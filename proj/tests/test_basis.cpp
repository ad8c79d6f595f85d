#include <doctest.h>

#include <cmath>
#include <complex>

#include "qsr/basis.hpp"

using namespace qsr;
using Cx = std::complex<double>;

TEST_CASE("fock basis enumerates every configuration once") {
    const Basis b = fock_basis(20, 3);
    REQUIRE(b.size() == 1540);
    for (int i = 0; i < b.size(); ++i) {
        const auto& terms = b.elements[static_cast<std::size_t>(i)].terms;
        REQUIRE(terms.size() == 1);
        CHECK(terms[0].first == Cx(1.0, 0.0));
        CHECK(terms[0].second == b.index.config_of(i));
    }
    CHECK(validate(b).empty());
    CHECK(fock_basis(2, 3).size() == 4);
}

TEST_CASE("entangled basis replaces exactly one pair of elements") {
    const Basis b = entangled_basis(20, 3, 3, 7);
    const Basis fock = fock_basis(20, 3);
    REQUIRE(b.size() == 1540);

    int two_term = 0;
    for (int i = 0; i < b.size(); ++i) {
        const auto& terms = b.elements[static_cast<std::size_t>(i)].terms;
        if (terms.size() == 2) {
            ++two_term;
        } else {
            CHECK(terms[0].second == fock.elements[static_cast<std::size_t>(i)].terms[0].second);
        }
    }
    CHECK(two_term == 2);
    CHECK(validate(b).empty());

    // the superpositions sit in the slots of the configurations they replace
    FockConfig heavy_a(20, 0);
    heavy_a[2] = 2;
    heavy_a[6] = 1;
    FockConfig heavy_b(20, 0);
    heavy_b[2] = 1;
    heavy_b[6] = 2;
    const int slot_plus = b.index.index_of(heavy_a);
    const int slot_minus = b.index.index_of(heavy_b);
    const auto& psi = b.elements[static_cast<std::size_t>(slot_plus)].terms;
    const auto& psi_perp = b.elements[static_cast<std::size_t>(slot_minus)].terms;
    REQUIRE(psi.size() == 2);
    REQUIRE(psi_perp.size() == 2);

    // <psi|psi_perp> = 0 exactly: amplitudes are +-1/sqrt(2) on the same configs
    Cx overlap(0.0, 0.0);
    for (const auto& [amp_a, config_a] : psi)
        for (const auto& [amp_b, config_b] : psi_perp)
            if (config_a == config_b) overlap += std::conj(amp_a) * amp_b;
    CHECK(overlap == Cx(0.0, 0.0));
}

TEST_CASE("entangled pair argument order does not matter") {
    const Basis ab = entangled_basis(12, 3, 3, 7);
    const Basis ba = entangled_basis(12, 3, 7, 3);
    REQUIRE(ab.size() == ba.size());
    for (int i = 0; i < ab.size(); ++i) {
        const auto& ta = ab.elements[static_cast<std::size_t>(i)].terms;
        const auto& tb = ba.elements[static_cast<std::size_t>(i)].terms;
        REQUIRE(ta.size() == tb.size());
        for (std::size_t k = 0; k < ta.size(); ++k) {
            CHECK(ta[k].first == tb[k].first);
            CHECK(ta[k].second == tb[k].second);
        }
    }
}

TEST_CASE("entangled basis argument validation") {
    CHECK_THROWS_AS(entangled_basis(20, 3, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(entangled_basis(20, 3, 0, 7), std::invalid_argument);
    CHECK_THROWS_AS(entangled_basis(20, 3, 3, 21), std::invalid_argument);
    CHECK_THROWS_AS(entangled_basis(20, 2, 3, 7), std::invalid_argument);
}

TEST_CASE("validate reports tampered bases") {
    SUBCASE("perturbed amplitude breaks normalization") {
        Basis b = fock_basis(6, 3);
        b.elements[5].terms[0].first = Cx(1.0 + 1e-3, 0.0);
        const auto violations = validate(b);
        REQUIRE(!violations.empty());
        bool found = false;
        for (const auto& v : violations)
            if (v.what.find("not normalized") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("duplicated element breaks orthogonality") {
        Basis b = fock_basis(6, 3);
        b.elements[4] = b.elements[3];
        const auto violations = validate(b);
        bool found = false;
        for (const auto& v : violations)
            if (v.what.find("not orthogonal") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("wrong element count") {
        Basis b = fock_basis(6, 3);
        b.elements.pop_back();
        CHECK(!validate(b).empty());
    }
}

TEST_CASE("descriptor round trip") {
    const Basis fock = fock_basis(9, 3);
    const Basis fock2 = basis_from_descriptor(fock.descriptor());
    CHECK(fock2.descriptor() == fock.descriptor());
    CHECK(fock2.size() == fock.size());

    const Basis ent = entangled_basis(9, 3, 2, 5);
    const Basis ent2 = basis_from_descriptor(ent.descriptor());
    CHECK(ent2.descriptor() == ent.descriptor());
    REQUIRE(ent2.size() == ent.size());
    for (int i = 0; i < ent.size(); ++i)
        CHECK(ent2.elements[static_cast<std::size_t>(i)].terms.size() ==
              ent.elements[static_cast<std::size_t>(i)].terms.size());

    CHECK_THROWS_AS(basis_from_descriptor(nlohmann::json{{"kind", "momentum"},
                                                         {"n_waveguides", 4},
                                                         {"n_photons", 3}}),
                    std::invalid_argument);
}
