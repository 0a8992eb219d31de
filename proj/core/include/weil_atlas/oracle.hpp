#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weil_atlas/cyclo.hpp"
#include "weil_atlas/weil.hpp"

namespace weil_atlas {

// J(chi^j, phi) = sum_{t != 0, 1} chi^j(t) phi(1 - t) in Z[zeta_r], with
// chi(g^s) = zeta_r^s and phi(g^s) = (-1)^s for the least primitive root g
// of p. Throws InputError unless p = 1 mod r and 1 <= j <= r - 1.
CycloElem jacobi_sum(std::uint64_t p, std::uint64_t r, std::uint64_t j);

// #C(F_(p^k)) for the smooth projective model of y^2 = x^r - 1 (one point
// at infinity). Throws SizeError if p^k exceeds cap.
std::uint64_t point_count(std::uint64_t r, std::uint64_t p, unsigned k, std::uint64_t cap = 2'000'000);

// Largest k <= 2 with p^k <= cap (at least 1).
unsigned oracle_k_max(std::uint64_t p, std::uint64_t cap);

// Trace from Q(zeta_r) to Q.
Rat cyclo_trace(const CycloElem &x);

struct JacobiRecord {
    std::uint64_t j = 0;
    CycloElem value;
    int sign = 1;
    std::optional<std::size_t> matched_orbit;
};

struct PointCount {
    unsigned k = 0;
    std::uint64_t count = 0;
};

// Frobenius eigenvalues sign * J(chi^j, phi), j = 1..r-1, with the single
// sign that reproduces every count as p^k + 1 - sum alpha^k. Throws
// OracleMismatch if neither sign works.
std::vector<JacobiRecord> calibrate_eigenvalues(std::uint64_t p, std::uint64_t r,
                                                const std::vector<PointCount> &counts);

struct OracleReport {
    std::uint64_t r = 0;
    std::uint64_t p = 0;
    std::vector<PointCount> counts;
    std::vector<JacobiRecord> eigenvalues;
    std::size_t matched_orbit = 0;
};

// Maps every calibrated eigenvalue through b_of_weil to its orbit and
// requires a single common orbit, equivalent to that orbit's record. Needs
// a Fermat prime r (K = Q(zeta_r)); other r throw InputError. Mismatches
// throw OracleMismatch.
OracleReport oracle_match(const Classification &classes, const RunConfig &config);

} // namespace weil_atlas
