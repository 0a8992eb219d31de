#pragma once

#include <cstdint>

#include "weil_atlas/certificate.hpp"
#include "weil_atlas/weil.hpp"

namespace weil_atlas {

// Field, fiber, H(p), orbit, record, equivariance, Kronecker, equivalence
// and endomorphism checks over a finished classification.
CheckReport run_invariant_suite(const Classification &classes, const RunConfig &config);

// For p not completely split in K^(r): pi = p * zeta^k (as elements of K,
// i.e. p times the roots of unity of K) satisfy is_root_of_unity(pi^2/p^2)
// and classify as supersingular.
CheckReport nonsplit_sanity(std::uint64_t r, std::uint64_t p);

} // namespace weil_atlas
