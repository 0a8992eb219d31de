#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weil_atlas/arith.hpp"

namespace weil_atlas {

// Element of Q(zeta_r) over the power basis 1, zeta, ..., zeta^(r-2).
// Coefficients are kept reduced modulo the r-th cyclotomic polynomial and
// in lowest terms.
class CycloElem {
  public:
    explicit CycloElem(std::uint64_t r);
    CycloElem(std::uint64_t r, std::vector<Rat> coeffs);
    static CycloElem from_rational(std::uint64_t r, const Rat &x);
    // zeta^e for any integer exponent.
    static CycloElem zeta_power(std::uint64_t r, long long e);
    // sum_e counts[e] * zeta^e, e = 0..r-1 (length r).
    static CycloElem from_exponent_counts(std::uint64_t r, const std::vector<Rat> &counts);

    std::uint64_t r() const { return r_; }
    const std::vector<Rat> &coeffs() const { return coeffs_; }

    // Coordinates over zeta^1..zeta^(r-1) (index e-1), the basis in which
    // Galois automorphisms are permutations.
    std::vector<Rat> normal_coords() const;
    static CycloElem from_normal_coords(std::uint64_t r, const std::vector<Rat> &d);

    bool is_zero() const;
    bool is_rational() const;

    CycloElem operator+(const CycloElem &o) const;
    CycloElem operator-(const CycloElem &o) const;
    CycloElem operator-() const;
    CycloElem operator*(const CycloElem &o) const;
    CycloElem operator*(const Rat &c) const;
    bool operator==(const CycloElem &o) const { return r_ == o.r_ && coeffs_ == o.coeffs_; }
    bool operator!=(const CycloElem &o) const { return !(*this == o); }

    CycloElem pow(unsigned e) const;

    std::string str() const;

  private:
    std::uint64_t r_;
    std::vector<Rat> coeffs_;
};

CycloElem cyclo_mul(const CycloElem &a, const CycloElem &b);

// sigma_a : zeta -> zeta^a. Throws InputError when r divides a.
CycloElem galois_apply(long long a, const CycloElem &x);

} // namespace weil_atlas
