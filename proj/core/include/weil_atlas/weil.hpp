#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weil_atlas/config.hpp"
#include "weil_atlas/ideal.hpp"
#include "weil_atlas/ptype.hpp"
#include "weil_atlas/weil_number.hpp"

namespace weil_atlas {

// Every slope is 0 or 1. Requires slopes (a split fiber).
bool is_ordinary(const WeilNumber &pi);

// x^(2r) = 1; the roots of unity of K lie in mu_(2r).
bool is_root_of_unity(const KElem &x);

// prod_{sigma in G} (T - sigma(pi)), ascending integer coefficients. Throws
// DegenerateFieldError when Q(pi) != K unless allow_degenerate is set, in
// which case min_poly(pi)^([K:Q]/deg) is returned.
std::vector<Int> frob_charpoly(const WeilNumber &pi, bool allow_degenerate = false);

// Honda equivalence of ordinary Weil numbers over the same p: their ideals
// B lie in one G-orbit. Throws OrdinarityError for non-ordinary input.
bool equivalent(const WeilNumber &a, const WeilNumber &b, const SplitFiber &fiber);

// G-equivariant generators: result[s] generates (sigma^s B)^c where B is the
// orbit representative, and result[s] = sigma^s(result[0]).
std::vector<KElem> canonical_Z(const KElem &z_rep, std::size_t orbit_size);

struct UnitInfo {
    KElem u;
    bool totally_positive = false;
};

// u = z rho(z) / q. Throws InvariantError if u is not a rho-fixed unit.
UnitInfo unit_of(const KElem &z, const Int &q);

// u0 in K_0 with u0^2 = u, or nullopt if none exists. The sign of u0 is
// fixed by a positive first real embedding. Throws PrecisionError if
// max_precision bits do not separate the candidates.
std::optional<KElem> sqrt_unit(const KElem &u, unsigned precision_bits = 128, unsigned max_precision = 8192);

// Pi = q z / rho(z) = z^2 / u as a Weil q^2-number, q = p^c.
WeilNumber build_Pi(const KElem &z, unsigned c, const SplitFiber &fiber);
// Pi0 = +-z / u0 as a Weil q-number, sign fixed by trace_normalized.
WeilNumber build_Pi0(const KElem &z, const KElem &u0, unsigned c, const SplitFiber &fiber);

struct ClassRecord {
    std::size_t orbit_id = 0;
    std::uint64_t p_type_mask = 0;
    IdealHNF rep_ideal = IdealHNF::unit(1);
    unsigned c = 0;
    KElem z;
    KElem u;
    std::optional<KElem> u0;
    WeilNumber pi;
    std::optional<WeilNumber> pi0;
    // Ascending, monic; of Pi0 when present, else of Pi.
    std::vector<Int> charpoly;
    unsigned dim = 0;
    unsigned fod_exponent = 0;
    // Pi0(sigma^s B) = signs[s] * sigma^s(Pi0(B)); empty without Pi0.
    std::vector<int> pi0_signs;
};

struct Classification {
    FieldPtr field;
    SplitFiber fiber;
    std::vector<HpIdeal> hp;
    std::vector<Orbit> orbits;
    std::vector<ClassRecord> records;

    // p^max(c); the level of the q-numbers in the records.
    Int q() const;
};

ClassRecord build_record(const Orbit &orbit, const std::vector<HpIdeal> &hp, const SplitFiber &fiber,
                         const RunConfig &config);

// One record per G-orbit of H(p), built on up to config.workers threads.
Classification classify_all(std::uint64_t r, std::uint64_t p, const RunConfig &config);

} // namespace weil_atlas
