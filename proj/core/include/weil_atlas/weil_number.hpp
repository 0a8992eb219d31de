#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weil_atlas/field.hpp"
#include "weil_atlas/ideal.hpp"
#include "weil_atlas/poly.hpp"

namespace weil_atlas {

// Integral pi in K with pi * rho(pi) = q = p^j.
struct WeilNumber {
    KElem value;
    std::uint64_t p = 0;
    unsigned j = 0;
    // ord_P(value) / ord_P(q) per prime of the fiber; empty when p is not
    // completely split (no fiber available).
    std::vector<Rat> slopes;
    QPoly minpoly;

    Int q() const;
};

// x integral with x * rho(x) = p^j.
bool is_weil(const KElem &x, std::uint64_t p, unsigned j);

// Throws InputError unless is_weil(value, fiber.p(), j).
WeilNumber make_weil(const KElem &value, const SplitFiber &fiber, unsigned j);
// Variant for primes that do not split completely; slopes stay empty.
WeilNumber make_weil(const KElem &value, std::uint64_t p, unsigned j);

} // namespace weil_atlas
