#pragma once

#include <compare>
#include <cstdint>

#include "errors.hpp"

namespace fdolb {

/// Which function-algebra backend carries the base directions.
enum class Backend : std::uint8_t {
    ExactPoint, ///< m = 0: base is a point, everything finite-dimensional over Q(i)
    PolyBase,   ///< m = 1: base coefficients are degree-capped polynomials in w, wbar
};

/// Parameters of one finite model: base dimension m, normal codimension n,
/// formal order r and the polynomial degree cap on the base.
struct ModelConfig {
    int m = 0;          ///< base dimension, 0 or 1
    int n = 1;          ///< normal codimension
    int r = 1;          ///< formal order: z-monomials truncated at |alpha| <= r
    int d_cap = 0;      ///< degree cap for base monomials w^a wbar^b zbar^c

    Backend backend() const { return m == 0 ? Backend::ExactPoint : Backend::PolyBase; }

    auto operator<=>(const ModelConfig&) const = default;
};

inline void require_same(const ModelConfig& a, const ModelConfig& b) {
    if (a != b) throw ModelMismatch();
}

/// A form lives either in the ambient model A^{0,*}(Y) or in the quotient model
/// of the formal neighborhood (no zbar variables, no normal antiholomorphic
/// generators).
enum class Space : std::uint8_t { Ambient, Quotient };

} // namespace fdolb
