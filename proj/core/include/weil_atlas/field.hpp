#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "weil_atlas/arith.hpp"
#include "weil_atlas/cyclo.hpp"
#include "weil_atlas/poly.hpp"

namespace weil_atlas {

class FieldContext;
using FieldPtr = std::shared_ptr<const FieldContext>;

using IntRow = std::vector<Int>;
using IntSquare = std::vector<IntRow>;
using RatSquare = std::vector<std::vector<Rat>>;

// Element of K = K^(r) in coordinates over the Gaussian periods
// eta_0..eta_(d-1), stored as integer numerators over a common positive
// denominator, always in lowest terms. The periods are an integral basis
// of O_K, so an element is integral iff its denominator is 1.
class KElem {
  public:
    explicit KElem(FieldPtr field);
    static KElem from_rational(FieldPtr field, const Rat &x);
    static KElem from_coords(FieldPtr field, const std::vector<Rat> &coords);
    static KElem from_integers(FieldPtr field, std::vector<Int> coords, Int den = 1);
    static KElem period(FieldPtr field, unsigned j);
    // Throws InputError unless x is fixed by the subgroup H.
    static KElem from_cyclo(FieldPtr field, const CycloElem &x);

    const FieldContext &field() const { return *field_; }
    const FieldPtr &field_ptr() const { return field_; }
    unsigned degree() const;

    Rat coord(unsigned j) const;
    std::vector<Rat> coords() const;
    const std::vector<Int> &numerators() const { return num_; }
    const Int &denominator() const { return den_; }

    bool is_integral() const { return den_ == 1; }
    bool is_zero() const;
    bool is_rational() const;
    Rat to_rational() const;

    KElem operator+(const KElem &o) const;
    KElem operator-(const KElem &o) const;
    KElem operator-() const;
    KElem operator*(const KElem &o) const;
    KElem operator*(const Rat &c) const;
    KElem operator/(const KElem &o) const;
    KElem operator/(const Rat &c) const;
    bool operator==(const KElem &o) const { return den_ == o.den_ && num_ == o.num_; }
    bool operator!=(const KElem &o) const { return !(*this == o); }
    // Lexicographic order on the coordinate vector.
    bool lex_less(const KElem &o) const;

    // sigma_g^s, acting on the period basis as the index shift j -> j + s.
    KElem galois(long long s) const;
    // sigma_a for a unit a modulo r.
    KElem galois_by_unit(long long a) const;
    // Complex conjugation rho = sigma_(-1).
    KElem conj() const;

    Rat trace() const;
    Rat norm() const;
    KElem inverse() const;
    KElem pow(unsigned e) const;

    // [Q(x) : Q], the length of the G-orbit of x.
    unsigned orbit_length() const;
    // -x if the first nonzero coordinate is negative, else x.
    KElem sign_normalized() const;
    // Of x and -x, the one with positive trace; sign_normalized on a tie.
    KElem trace_normalized() const;

    CycloElem to_cyclo() const;
    std::string str() const;

  private:
    KElem(FieldPtr field, std::vector<Int> num, Int den);
    void normalize();

    FieldPtr field_;
    std::vector<Int> num_;
    Int den_{1};
};

KElem k_conj(const KElem &x);
// Monic minimal polynomial over Q.
QPoly min_poly(const KElem &x);
// prod_{sigma in G} (T - sigma(x)), i.e. min_poly(x)^([K:Q]/deg).
QPoly field_poly(const KElem &x);

// The field K^(r) inside Q(zeta_r): r - 1 = 2^n m with m odd, H the
// subgroup of order m in (Z/rZ)^*, and K the fixed field of H.
class FieldContext {
  public:
    std::uint64_t r() const { return r_; }
    unsigned n() const { return n_; }
    std::uint64_t m() const { return m_; }
    unsigned degree() const { return d_; }
    std::uint64_t generator() const { return g_; }
    unsigned rho_shift() const { return d_ / 2; }

    const std::vector<std::uint64_t> &subgroup() const { return subgroup_; }
    // Exponents e with eta_j = sum zeta^e.
    const std::vector<std::uint64_t> &period_exponents(unsigned j) const { return periods_[j]; }
    // j with e in period j, for e in 1..r-1.
    unsigned period_of(std::uint64_t e) const { return coset_of_[e % r_]; }
    // Discrete log base g of a unit a modulo r, in [0, r-1).
    std::uint64_t dlog(long long a) const;

    const QPoly &min_poly_eta() const { return min_poly_eta_; }
    // Tr(eta_i * rho(eta_j)), positive definite.
    const IntSquare &trace_gram() const { return gram_; }
    const RatSquare &trace_gram_inverse() const { return gram_inv_; }
    // Row k holds the period coordinates of eta_0^k.
    const IntSquare &eta_power_matrix() const { return eta_pow_; }
    const RatSquare &eta_power_matrix_inverse() const { return eta_pow_inv_; }
    // Double-precision values of eta_j under the identity embedding.
    const std::vector<std::complex<double>> &period_values() const { return period_values_; }

    struct Term {
        unsigned index;
        long coeff;
    };
    // eta_i * eta_j = sum coeff * eta_index.
    const std::vector<Term> &product_terms(unsigned i, unsigned j) const { return mult_[i * d_ + j]; }

    // Integer matrix of y -> x*y on O_K (x integral).
    IntSquare multiplication_matrix(const KElem &x) const;

    std::string describe() const;

  private:
    friend FieldPtr build_field(std::uint64_t r);
    FieldContext() = default;

    std::uint64_t r_ = 0;
    unsigned n_ = 0;
    std::uint64_t m_ = 0;
    unsigned d_ = 0;
    std::uint64_t g_ = 0;
    std::vector<std::uint64_t> subgroup_;
    std::vector<std::vector<std::uint64_t>> periods_;
    std::vector<unsigned> coset_of_;
    std::vector<std::uint64_t> dlog_;
    std::vector<std::vector<Term>> mult_;
    QPoly min_poly_eta_;
    IntSquare gram_;
    RatSquare gram_inv_;
    IntSquare eta_pow_;
    RatSquare eta_pow_inv_;
    std::vector<std::complex<double>> period_values_;
};

// Throws InputError unless r is an odd prime.
FieldPtr build_field(std::uint64_t r);

// Exact inverse of a square rational matrix; throws InvariantError if singular.
RatSquare invert_matrix(const RatSquare &a);

} // namespace weil_atlas
