#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "weil_atlas/ideal.hpp"
#include "weil_atlas/weil_number.hpp"

namespace weil_atlas {

// A rho-pair {P, rho(P)} of the fiber; `low` has the smaller residue vector.
struct RhoPair {
    std::size_t low = 0;
    std::size_t high = 0;
};

// The 2^(n-1) rho-pairs, ordered by their `low` member.
std::vector<RhoPair> rho_pairs(const SplitFiber &fiber);

// Bit k of mask picks pairs[k].high, otherwise pairs[k].low.
struct PType {
    std::uint64_t mask = 0;
    // Indices into the fiber, ascending.
    std::vector<std::size_t> primes;

    bool operator==(const PType &o) const { return mask == o.mask && primes == o.primes; }
};

PType ptype_from_mask(const SplitFiber &fiber, std::uint64_t mask);
// Throws InvariantError unless `primes` meets every rho-pair exactly once.
PType ptype_from_primes(const SplitFiber &fiber, std::vector<std::size_t> primes);
bool is_ptype(const SplitFiber &fiber, const std::vector<std::size_t> &primes);
PType galois_ptype(const SplitFiber &fiber, const PType &phi, long long s);
PType conj_ptype(const SplitFiber &fiber, const PType &phi);

inline constexpr std::size_t kNoOrbit = std::numeric_limits<std::size_t>::max();

struct HpIdeal {
    PType ptype;
    IdealHNF ideal;
    std::size_t orbit_id = kNoOrbit;
};

// All B with B * rho(B) = p O_K, indexed by mask. Throws SizeError for
// n >= 6, where the 2^(2^(n-1)) ideals are not materialized.
std::vector<HpIdeal> enumerate_Hp(const SplitFiber &fiber);

// Primes of the fiber containing the ideal.
std::vector<std::size_t> primes_containing(const SplitFiber &fiber, const IdealHNF &ideal);

struct Orbit {
    std::size_t id = 0;
    // Masks of the members; members[s] = sigma^s(members[0]) and members[0]
    // has the least HNF.
    std::vector<std::uint64_t> members;

    std::uint64_t representative() const { return members.front(); }
};

// G-orbits on H(p), ordered by representative HNF; fills hp[*].orbit_id.
std::vector<Orbit> g_orbits(std::vector<HpIdeal> &hp, const SplitFiber &fiber);

// Psi(pi): the primes where pi has slope 1. Throws OrdinarityError if pi is
// not ordinary.
PType psi_of(const WeilNumber &pi, const SplitFiber &fiber);

struct WeilIdeal {
    PType ptype;
    IdealHNF ideal;
    unsigned multiplicity = 0;
};

// The unique B in H(p) with pi O_K = B^m, m = j.
WeilIdeal b_of_weil(const WeilNumber &pi, const SplitFiber &fiber);

} // namespace weil_atlas
