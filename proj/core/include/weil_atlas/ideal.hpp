#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weil_atlas/arith.hpp"
#include "weil_atlas/field.hpp"
#include "weil_atlas/lattice.hpp"

namespace weil_atlas {

// Nonzero integral ideal of O_K, as the column HNF of its Z-basis in period
// coordinates. HNF is canonical, so equality is matrix equality.
class IdealHNF {
  public:
    explicit IdealHNF(IntSquare basis);
    static IdealHNF unit(unsigned dim);

    const IntSquare &basis() const { return basis_; }
    const Int &norm() const { return norm_; }
    unsigned dim() const { return static_cast<unsigned>(basis_.size()); }
    std::vector<IntVec> columns() const;

    bool contains(const KElem &x) const;
    bool is_unit() const { return norm_ == 1; }

    bool operator==(const IdealHNF &o) const { return basis_ == o.basis_; }
    bool operator!=(const IdealHNF &o) const { return !(*this == o); }
    // Lexicographic on the column-major entry sequence.
    bool operator<(const IdealHNF &o) const;

    std::string str() const;

  private:
    IntSquare basis_;
    Int norm_;
};

// x*O_K for integral nonzero x.
IdealHNF principal_ideal(const KElem &x);
IdealHNF ideal_from_generators(const FieldContext &field, const std::vector<KElem> &gens, const Int &modulus);
IdealHNF ideal_mul(const FieldContext &field, const IdealHNF &a, const IdealHNF &b);
IdealHNF ideal_pow(const FieldContext &field, const IdealHNF &a, unsigned e);
// Product of powers; the empty product is O_K.
IdealHNF ideal_product(const FieldContext &field, const std::vector<std::pair<IdealHNF, unsigned>> &factors);
IdealHNF ideal_galois(const FieldContext &field, const IdealHNF &a, long long s);
IdealHNF ideal_conj(const FieldContext &field, const IdealHNF &a);

// p splits completely in K^(r) iff p mod r is a 2^n-th power in F_r^*.
// Throws InputError for p = r (ramified) or non-prime input.
bool splits_completely(std::uint64_t r, std::uint64_t p);

struct PrimeAbove {
    std::uint64_t p = 0;
    IdealHNF ideal = IdealHNF::unit(1);
    // Residue of eta_0 modulo this prime. Distinct primes may share it when
    // p < [K:Q]; the full residue vector below is what identifies P.
    Int root;
    std::size_t rho_partner = 0;
    // g_action[s] = index of sigma_g^s(P) within the fiber.
    std::vector<std::size_t> g_action;
    // Residues of eta_0..eta_(d-1) modulo this prime.
    std::vector<Int> residues;
};

// The 2^n primes of O_K above a completely split p, sorted lexicographically
// by residue vector (hence by root whenever the roots are distinct).
class SplitFiber {
  public:
    SplitFiber(FieldPtr field, std::uint64_t p, std::vector<PrimeAbove> primes, unsigned cached_precision,
               std::vector<std::vector<Int>> cached_idempotents);

    const FieldContext &field() const { return *field_; }
    const FieldPtr &field_ptr() const { return field_; }
    std::uint64_t p() const { return p_; }
    std::size_t size() const { return primes_.size(); }
    const PrimeAbove &operator[](std::size_t i) const { return primes_[i]; }
    const std::vector<PrimeAbove> &primes() const { return primes_; }

    std::size_t rho(std::size_t i) const { return primes_[i].rho_partner; }
    std::size_t galois_image(std::size_t i, long long s) const;
    std::size_t index_of_residues(const std::vector<Int> &residues) const;

    // Images of eta_0..eta_(d-1) in Z/p^precision under K -> K_P = Q_p.
    std::vector<Int> padic_periods(std::size_t i, unsigned precision) const;

    // ord_P(x) for nonzero x; negative for fractional x.
    long ord(const KElem &x, std::size_t i) const;
    std::vector<long> valuations(const KElem &x) const;

    // prod_i P_i^(e_i).
    IdealHNF ideal_with_exponents(const std::vector<unsigned> &exponents) const;

  private:
    FieldPtr field_;
    std::uint64_t p_;
    std::vector<PrimeAbove> primes_;
    unsigned cached_precision_;
    // Idempotent e_P of O_K/p^precision with x*e_P = iota_P(x)*e_P.
    std::vector<std::vector<Int>> cached_idempotents_;
    std::vector<std::vector<Int>> cached_padic_;
};

// Throws SplitError when p does not split completely.
SplitFiber primes_above(FieldPtr field, std::uint64_t p);

long ord_P(const KElem &x, const SplitFiber &fiber, std::size_t prime_index);

struct GeneratorSearchOptions {
    double bound_multiplier = 4.0;
    std::size_t node_cap = 50'000'000;
};

// A generator of I if one lies within the enumeration bound; nullopt is not
// a proof that I is non-principal. Throws SearchExhausted if the node cap
// is hit before the bound is covered.
std::optional<KElem> find_generator(const IdealHNF &ideal, const FieldPtr &field,
                                    const GeneratorSearchOptions &opts = {});

// Whether x generates I exactly.
bool generates(const KElem &x, const IdealHNF &ideal);

struct PrincipalPower {
    unsigned exponent = 0;
    KElem generator;
};

// Known class-group exponents of K^(r); nullopt when not tabulated.
std::optional<unsigned> tabulated_class_exponent(std::uint64_t r);

// Smallest k <= cap with B^k principal, together with its generator. The
// tabulated exponent short-circuits the search when available.
PrincipalPower principal_power(const IdealHNF &b, const FieldPtr &field, unsigned cap,
                               const GeneratorSearchOptions &opts = {}, bool use_table = true);

unsigned class_exponent(const IdealHNF &b, const FieldPtr &field, unsigned cap,
                        const GeneratorSearchOptions &opts = {});

} // namespace weil_atlas
