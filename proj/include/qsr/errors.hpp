#pragma once

#include <stdexcept>
#include <string>

namespace qsr {

// Malformed or inconsistent data files (matrix caches, CSV, JSON).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical sanity check failed (e.g. a propagator lost unitarity).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsr
